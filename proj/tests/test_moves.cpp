#include "doctest.h"

#include "alexq/error.hpp"
#include "alexq/moves.hpp"
#include "alexq/presentation.hpp"
#include "support.hpp"

using namespace alexq;

namespace {

std::vector<LinkDiagram> corpus() {
  std::vector<LinkDiagram> out;
  for (const auto& name : testing::fixture_names()) out.push_back(testing::fixture(name));
  for (std::uint64_t seed = 0; seed < 12; ++seed) out.push_back(random_diagram(seed, {1 + seed % 3, 2 + seed % 5}));
  return out;
}

std::vector<std::size_t> dims(const LinkDiagram& d, std::uint64_t p, const std::vector<std::uint64_t>& u) {
  return {testing::dense_cokernel_dimension(d, p, u)};
}

}  // namespace

TEST_CASE("the three-crossing slide reproduces the expected triples") {
  // The crossings r=(a1,a2,a3), p=(a1,a6,a5), q=(a3,a5,a4), closed up by
  // three further crossings so every arc has two under ends.
  const auto d = parse_diagram(
      "crossing a1 a2 a3\n"
      "crossing a1 a6 a5\n"
      "crossing a3 a5 a4\n"
      "crossing a1 a4 a2\n"
      "crossing a1 a3 a6\n"
      "crossing a2 a1 a1\n");
  const R3 site{Side::Right, Side::Right, 1, 2, 0};
  const auto after = apply_move(d, site);
  auto idx = [&](const char* label) { return *after.find_arc(label); };
  REQUIRE_FALSE(after.find_arc("a5").has_value());
  REQUIRE(after.find_arc("a7").has_value());
  const auto& cs = after.crossings();
  auto has = [&](const char* o, const char* r, const char* l) {
    return std::find(cs.begin(), cs.end(), Crossing{idx(o), idx(r), idx(l)}) != cs.end();
  };
  CHECK(has("a1", "a2", "a3"));
  CHECK(has("a1", "a7", "a4"));
  CHECK(has("a2", "a6", "a7"));
  CHECK(after.num_crossings() == d.num_crossings());
  // Flipping both sides slides the strand back.
  const auto back = apply_move(after, inverse_move(d, site));
  CHECK(testing::isomorphic(back, d));
}

TEST_CASE("every move followed by its inverse gives back an isomorphic diagram") {
  std::size_t checked = 0;
  std::uint64_t seed = 100;
  for (const auto& d : corpus()) {
    for (int round = 0; round < 6; ++round) {
      const auto seq = random_move_sequence(seed++, d, 1);
      REQUIRE(seq.size() == 1);
      const auto after = apply_move(d, seq[0]);
      CAPTURE(move_name(seq[0]));
      const auto back = apply_move(after, inverse_move(d, seq[0]));
      CHECK(testing::isomorphic(back, d));
      CHECK(after.num_components() == d.num_components());
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("removal sites are undone by their inverses") {
  for (const auto& d : corpus()) {
    for (const auto& s : r1_remove_sites(d)) {
      const auto after = apply_move(d, s);
      CHECK(testing::isomorphic(apply_move(after, inverse_move(d, s)), d));
    }
    for (const auto& s : r2_remove_sites(d)) {
      const auto after = apply_move(d, s);
      CHECK(testing::isomorphic(apply_move(after, inverse_move(d, s)), d));
    }
    for (const auto& s : r3_sites(d)) {
      const auto after = apply_move(d, s);
      CHECK(testing::isomorphic(apply_move(after, inverse_move(d, s)), d));
    }
  }
}

TEST_CASE("moves keep the crossing relations' module and augmentation") {
  std::uint64_t seed = 7;
  for (const auto& d : corpus()) {
    const std::vector<std::uint64_t> u{2, 3, 4};
    const std::vector<std::uint64_t> uu(u.begin(), u.begin() + static_cast<long>(d.num_components()));
    const auto base = dims(d, 11, uu);
    for (int round = 0; round < 5; ++round) {
      auto cur = d;
      for (const auto& s : random_move_sequence(seed++, d, 6)) cur = apply_move(cur, s);
      CHECK(dims(cur, 11, uu) == base);
      CHECK(phi_annihilates_relations(alexander_matrix(cur)));
      CHECK(cur.num_components() == d.num_components());
    }
  }
}

TEST_CASE("a kink on a crossing-free loop is a self-crossing") {
  const auto d = testing::fixture("unknot_r0");
  const auto after = apply_move(d, R1Add{0, false, true, std::nullopt, {}});
  CHECK(testing::isomorphic(after, testing::fixture("unknot_r1")));
  const auto sites = r1_remove_sites(after);
  REQUIRE(sites.size() == 1);
  CHECK(testing::isomorphic(apply_move(after, sites[0]), d));
}

TEST_CASE("invalid sites are rejected") {
  const auto d = testing::fixture("trefoil");
  CHECK_THROWS_AS(apply_move(d, R1Remove{0}), UsageError);
  CHECK_THROWS_AS(apply_move(d, R1Add{7, false, true, std::nullopt, {}}), UsageError);
  CHECK_THROWS_AS(apply_move(d, R2Remove{0, 1}), UsageError);
  CHECK_THROWS_AS(apply_move(d, R3{Side::Right, Side::Right, 0, 0, 0}), UsageError);
}
