#pragma once

// Prime-field specializations t_i -> u_i of module presentations, coloring
// counts, and the specialization battery used to tell modules apart.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "alexq/diagram.hpp"
#include "alexq/fp.hpp"
#include "alexq/presentation.hpp"

namespace alexq {

struct Specialization {
  std::uint64_t prime = 5;
  std::vector<std::uint64_t> assignments;  // u_1..u_mu, nonzero mod prime

  friend bool operator==(const Specialization&, const Specialization&) = default;
};

// Checks the prime and that every assignment is a nonzero residue; reduces
// the assignments mod p. Throws UsageError.
Specialization make_specialization(std::uint64_t prime, std::vector<std::uint64_t> assignments, std::size_t num_vars);

// Entrywise image of a row (an element or a relation) under t_i -> u_i.
FpVector evaluate_row(const PolyRow& row, const Specialization& s);

// The cokernel of a specialized relation matrix, F_p^n / rowspace.
class SpecializedModule {
 public:
  SpecializedModule(const ModulePresentation& p, const Specialization& s);

  const Specialization& specialization() const { return spec_; }
  const PrimeField& field() const { return echelon_.field(); }
  std::uint64_t prime() const { return spec_.prime; }
  std::size_t ambient_dimension() const { return echelon_.columns(); }
  std::size_t rank() const { return echelon_.rank(); }
  std::size_t dimension() const { return echelon_.nullity(); }
  const std::vector<std::size_t>& free_columns() const { return free_; }

  // Canonical coset representative (zero at pivot columns).
  FpVector representative(FpVector v) const { return echelon_.reduce(std::move(v)); }
  bool equal(const FpVector& x, const FpVector& y) const;

  // Coordinates of a class in the basis given by the free columns, and back.
  FpVector coordinates(const FpVector& v) const;
  FpVector lift(const FpVector& coords) const;

  FpVector generator(std::size_t g) const;
  // Specialized phi: one scalar per generator; well defined on classes.
  const FpVector& phi_functional() const { return phi_; }
  std::uint64_t phi(const FpVector& v) const;

 private:
  Specialization spec_;
  Echelon echelon_;
  std::vector<std::size_t> free_;
  FpVector phi_;
};

struct KernelPhi {
  bool degenerate = false;  // specialized phi vanishes identically
  std::size_t dimension = 0;
  std::vector<FpVector> basis;  // ambient representatives
};

KernelPhi kernel_phi(const SpecializedModule& m);

// log_p of the number of arc labelings by F_p satisfying every specialized
// crossing relation, computed from the diagram triples.
std::size_t coloring_exponent(const LinkDiagram& d, const Specialization& s);

// --- batteries -----------------------------------------------------------------

inline constexpr std::uint64_t kDefaultBatterySeed = 0x5eed'a1e4'0000'0001ULL;

struct BatteryConfig {
  std::vector<std::uint64_t> primes{5, 7, 11, 13};
  std::size_t tuples_per_prime = 4;
  std::uint64_t seed = kDefaultBatterySeed;
  // Used instead of generated members when non-empty.
  std::vector<Specialization> members;
};

// The equality-oracle battery for exact element comparisons: primes 5, 7, 11
// with 8 assignment tuples each.
BatteryConfig equality_battery_config();

// JSON object with optional keys "primes", "tuples", "seed", "members"
// (a list of {"prime": p, "assign": [u1, ...]}). Throws ParseError.
BatteryConfig parse_battery_config(std::string_view json);

// Members for num_vars variables: for each prime, pseudorandom tuples of
// pairwise distinct values outside {0, 1}. Primes too small to supply
// num_vars such values are skipped.
std::vector<Specialization> battery_members(const BatteryConfig& config, std::size_t num_vars);

enum class Verdict { Distinguished, Indistinguishable };
std::string to_string(Verdict v);

struct CompareResult {
  Verdict verdict = Verdict::Indistinguishable;
  // False when there were too many components to try every relabeling.
  bool all_permutations = true;
  std::size_t permutations_tried = 0;
  std::size_t members = 0;
  std::string reason;
};

// "distinguished" when, for every relabeling of B's components, some battery
// member gives different specialized cokernel dimensions. Presentations with
// different numbers of variables are distinguished. Never claims isomorphism.
CompareResult battery_compare(const ModulePresentation& a, const ModulePresentation& b, const BatteryConfig& config);

// Sound inequality test for two elements of one presentation: true when some
// member of the equality battery separates their classes.
bool battery_separates(const ModulePresentation& p, const PolyRow& x, const PolyRow& y);

}  // namespace alexq
