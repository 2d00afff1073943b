#include "alexq/invariance.hpp"

#include "alexq/moves.hpp"
#include "alexq/quandle.hpp"
#include "alexq/rng.hpp"

namespace alexq {

SpecializedInvariants specialized_invariants(const LinkDiagram& d, const Specialization& s) {
  const SpecializedModule m(alexander_matrix(d), s);
  const auto q = generate_QA(m, false);
  SpecializedInvariants out;
  out.cokernel_dimension = m.dimension();
  out.coloring_exponent = coloring_exponent(d, s);
  out.kernel_phi_dimension = kernel_phi(m).dimension;
  out.quandle_size = q.size();
  out.orbit_count = orbits(q).size();
  return out;
}

MoveCheckReport check_move_invariance(const LinkDiagram& d, std::uint64_t seed, std::size_t iterations,
                                      std::size_t max_length, const BatteryConfig& battery) {
  MoveCheckReport report;
  report.iterations = iterations;
  const auto members = battery_members(battery, d.num_components());
  std::vector<SpecializedInvariants> base;
  for (const auto& s : members) base.push_back(specialized_invariants(d, s));

  Rng rng(seed);
  for (std::size_t it = 0; it < iterations; ++it) {
    const auto length = 1 + rng.below(max_length == 0 ? 1 : max_length);
    const auto sequence = random_move_sequence(rng.next(), d, length);
    auto current = d;
    std::vector<std::string> names;
    for (const auto& site : sequence) {
      current = apply_move(current, site);
      names.push_back(move_name(site));
    }
    report.moves_applied += sequence.size();
    for (std::size_t k = 0; k < members.size(); ++k) {
      ++report.comparisons;
      const auto after = specialized_invariants(current, members[k]);
      if (after != base[k]) report.failures.push_back({it, names, members[k], base[k], after});
    }
  }
  return report;
}

}  // namespace alexq
