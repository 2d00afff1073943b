#include "doctest.h"

#include "alexq/error.hpp"
#include "alexq/moves.hpp"
#include "alexq/quandle.hpp"
#include "alexq/specialize.hpp"
#include "support.hpp"

using namespace alexq;

namespace {

SpecializedModule spec(const char* name, std::uint64_t p, std::vector<std::uint64_t> u) {
  return SpecializedModule(alexander_matrix(testing::fixture(name)), Specialization{p, std::move(u)});
}

}  // namespace

TEST_CASE("specialized dimensions of the fixtures") {
  CHECK(spec("unlink3", 7, {2, 3, 4}).dimension() == 3);
  // Split 9_46 plus unknot: two free summands, t1 - 2 vanishes at t1 = 2 and
  // 2 t1 - 1 = 3 does not.
  CHECK(spec("fig5", 5, {2, 3}).dimension() == 3);
  // Both factors of the other link evaluate to 4 mod 5.
  CHECK(spec("fig6", 5, {2, 3}).dimension() == 2);
  CHECK(testing::dense_cokernel_dimension(testing::fixture("fig6"), 5, {2, 3}) == 2);
  CHECK(testing::dense_cokernel_dimension(testing::fixture("fig5"), 5, {2, 3}) == 3);
  // Trefoil: t^2 - t + 1 vanishes at t = 3 mod 7.
  CHECK(spec("trefoil", 7, {3}).dimension() == 2);
  CHECK(spec("trefoil", 7, {2}).dimension() == 1);
}

TEST_CASE("dimensions agree with a dense oracle across batteries") {
  std::vector<LinkDiagram> diagrams;
  for (const auto& name : testing::fixture_names()) diagrams.push_back(testing::fixture(name));
  for (std::uint64_t seed = 0; seed < 20; ++seed) diagrams.push_back(random_diagram(seed, {1 + seed % 3, 2 + seed % 8}));
  for (const auto& d : diagrams) {
    for (const auto& s : battery_members(BatteryConfig{}, d.num_components())) {
      const SpecializedModule m(alexander_matrix(d), s);
      CHECK(m.dimension() == testing::dense_cokernel_dimension(d, s.prime, s.assignments));
      CHECK(coloring_exponent(d, s) == m.dimension());
    }
  }
}

TEST_CASE("crossing relations hold between specialized arc classes") {
  for (const auto& name : testing::fixture_names()) {
    const auto d = testing::fixture(name);
    for (const auto& s : battery_members(BatteryConfig{}, d.num_components())) {
      const SpecializedModule m(alexander_matrix(d), s);
      for (const auto& c : d.crossings()) {
        CHECK(m.equal(m.generator(c.under_left), op_tri(m, m.generator(c.under_right), m.generator(c.over))));
      }
    }
  }
  const auto u3 = spec("unlink3", 5, {2, 3, 4});
  CHECK_FALSE(u3.equal(u3.generator(0), u3.generator(1)));
  CHECK(u3.equal(u3.generator(2), u3.generator(2)));
  CHECK_THROWS_AS(u3.equal({1}, {1, 0, 0}), UsageError);
}

TEST_CASE("coordinates and lifts") {
  const auto m = spec("fig5", 7, {2, 3});
  alexq::Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    FpVector v(m.ambient_dimension());
    for (auto& x : v) x = rng.below(7);
    const auto c = m.coordinates(v);
    CHECK(c.size() == m.dimension());
    CHECK(m.equal(m.lift(c), v));
    CHECK(m.representative(m.representative(v)) == m.representative(v));
    CHECK(m.phi(m.lift(c)) == m.phi(v));
  }
}

TEST_CASE("kernel of the augmentation") {
  const auto k5 = kernel_phi(spec("fig5", 5, {2, 3}));
  CHECK_FALSE(k5.degenerate);
  CHECK(k5.dimension == 2);
  const auto m = spec("fig5", 5, {2, 3});
  for (const auto& b : k5.basis) CHECK(m.phi(b) == 0);
  CHECK(kernel_phi(spec("unknot_r2", 11, {5})).dimension == 0);
  const auto deg = kernel_phi(spec("fig6", 5, {1, 1}));
  CHECK(deg.degenerate);
  CHECK(deg.dimension == spec("fig6", 5, {1, 1}).dimension());
}

TEST_CASE("coloring exponents") {
  CHECK(coloring_exponent(testing::fixture("unlink3"), {5, {2, 3, 4}}) == 3);
  CHECK(coloring_exponent(testing::fixture("unlink2"), {5, {2, 3}}) == 2);
  CHECK(coloring_exponent(testing::fixture("unknot_r1"), {13, {6}}) == 1);
  CHECK(coloring_exponent(testing::fixture("fig5"), {5, {2, 3}}) == 3);
  // Fox 3-colorings of the trefoil: t = -1 mod 3 gives 3^2.
  CHECK(coloring_exponent(testing::fixture("trefoil"), {3, {2}}) == 2);
}

TEST_CASE("specializations are validated") {
  CHECK_THROWS_AS(make_specialization(5, {0, 2}, 2), UsageError);
  CHECK_THROWS_AS(make_specialization(5, {10, 2}, 2), UsageError);
  CHECK_THROWS_AS(make_specialization(5, {2}, 2), UsageError);
  CHECK_THROWS_AS(make_specialization(6, {2}, 1), UsageError);
  CHECK(make_specialization(5, {7, 3}, 2).assignments == std::vector<std::uint64_t>{2, 3});
}

TEST_CASE("battery members") {
  const auto members = battery_members(BatteryConfig{}, 2);
  CHECK(members.size() == 16);
  CHECK(members == battery_members(BatteryConfig{}, 2));
  for (const auto& s : members) {
    CHECK(s.assignments.size() == 2);
    CHECK(s.assignments[0] != s.assignments[1]);
    for (auto u : s.assignments) {
      CHECK(u >= 2);
      CHECK(u < s.prime);
    }
  }
  // Four components need four values outside {0, 1}: p = 5 cannot supply them.
  for (const auto& s : battery_members(BatteryConfig{}, 4)) CHECK(s.prime != 5);
  const auto eq = battery_members(equality_battery_config(), 1);
  CHECK(eq.size() == 24);
}

TEST_CASE("battery configuration files") {
  const auto c = parse_battery_config(R"({"primes": [7, 11], "tuples": 2, "seed": 9})");
  CHECK(c.primes == std::vector<std::uint64_t>{7, 11});
  CHECK(battery_members(c, 2).size() == 4);
  const auto e = parse_battery_config(R"({"members": [{"prime": 5, "assign": [2, 3]}]})");
  CHECK(battery_members(e, 2) == std::vector<Specialization>{{5, {2, 3}}});
  CHECK_THROWS_AS(parse_battery_config("{\"colour\": 1}"), ParseError);
  CHECK_THROWS_AS(parse_battery_config("[1]"), ParseError);
  CHECK_THROWS_AS(parse_battery_config("{\"primes\": [8]}"), UsageError);
}

TEST_CASE("battery comparison") {
  const auto a = alexander_matrix(testing::fixture("fig5"));
  const auto b = alexander_matrix(testing::fixture("fig6"));
  const auto r = battery_compare(a, b, BatteryConfig{});
  CHECK(r.verdict == Verdict::Distinguished);
  CHECK(r.permutations_tried == 2);
  CHECK(battery_compare(reduce(a), reduce(b), BatteryConfig{}).verdict == Verdict::Indistinguishable);
  CHECK(battery_compare(a, alexander_matrix(testing::fixture("trefoil")), BatteryConfig{}).verdict ==
        Verdict::Distinguished);
  // Never distinguishes a diagram from a moved copy.
  std::uint64_t seed = 3;
  for (const auto& name : testing::fixture_names()) {
    const auto d = testing::fixture(name);
    auto cur = d;
    for (const auto& s : random_move_sequence(seed++, d, 8)) cur = apply_move(cur, s);
    CHECK(battery_compare(alexander_matrix(d), alexander_matrix(cur), BatteryConfig{}).verdict ==
          Verdict::Indistinguishable);
  }
  // Relabeling the components of the same link is not a difference.
  const auto swapped = parse_diagram(R"({"arcs": [{"id": "a1", "component": 2}, {"id": "a2", "component": 1}],
      "crossings": [{"over": "a1", "under_right": "a2", "under_left": "a2"},
                    {"over": "a2", "under_right": "a1", "under_left": "a1"}]})");
  CHECK(battery_compare(alexander_matrix(testing::fixture("hopf")), alexander_matrix(swapped), BatteryConfig{}).verdict ==
        Verdict::Indistinguishable);
}

TEST_CASE("inequality of elements via the equality battery") {
  const auto p = alexander_matrix(testing::fixture("trefoil"));
  auto e = [&](std::size_t g) {
    PolyRow r = zero_row(1, 3);
    r[g] = LaurentPoly::constant(1, 1);
    return r;
  };
  // The trefoil's arcs are distinct classes, told apart by specializations
  // where t^2 - t + 1 vanishes (t = 3 or 5 mod 7).
  CHECK(battery_separates(p, e(0), e(1)));
  CHECK_FALSE(battery_separates(p, e(0), e(0)));
}
