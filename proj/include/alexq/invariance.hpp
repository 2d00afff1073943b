#pragma once

// Reidemeister-invariance probe: specialized invariants of a diagram compared
// before and after random move sequences.

#include <cstdint>
#include <string>
#include <vector>

#include "alexq/diagram.hpp"
#include "alexq/specialize.hpp"

namespace alexq {

struct SpecializedInvariants {
  std::size_t cokernel_dimension = 0;
  std::size_t coloring_exponent = 0;
  std::size_t kernel_phi_dimension = 0;
  std::size_t quandle_size = 0;
  std::size_t orbit_count = 0;

  friend bool operator==(const SpecializedInvariants&, const SpecializedInvariants&) = default;
};

SpecializedInvariants specialized_invariants(const LinkDiagram& d, const Specialization& s);

struct MoveCheckFailure {
  std::size_t iteration = 0;
  std::vector<std::string> moves;
  Specialization member;
  SpecializedInvariants before;
  SpecializedInvariants after;
};

struct MoveCheckReport {
  std::size_t iterations = 0;
  std::size_t moves_applied = 0;
  std::size_t comparisons = 0;
  std::vector<MoveCheckFailure> failures;
};

// For each iteration, a random sequence of 1..max_length moves (seeded by
// seed and the iteration number) is applied and every battery member's
// invariants are compared with those of the starting diagram.
MoveCheckReport check_move_invariance(const LinkDiagram& d, std::uint64_t seed, std::size_t iterations,
                                      std::size_t max_length, const BatteryConfig& battery);

}  // namespace alexq
