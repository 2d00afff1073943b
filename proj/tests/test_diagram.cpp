#include "doctest.h"

#include "alexq/diagram.hpp"
#include "alexq/error.hpp"
#include "alexq/presentation.hpp"
#include "support.hpp"

using alexq::parse_diagram;

TEST_CASE("fixtures parse with the expected shape") {
  struct Shape {
    const char* name;
    std::size_t arcs, crossings, components;
  };
  for (const auto& s : std::vector<Shape>{{"fig5", 10, 9, 2},
                                          {"fig6", 12, 12, 2},
                                          {"hopf", 2, 2, 2},
                                          {"trefoil", 3, 3, 1},
                                          {"unknot_r0", 1, 0, 1},
                                          {"unknot_r1", 1, 1, 1},
                                          {"unknot_r2", 2, 2, 1},
                                          {"unknot_r3", 3, 3, 1},
                                          {"unlink2", 2, 0, 2},
                                          {"unlink3", 3, 0, 3}}) {
    CAPTURE(s.name);
    const auto d = testing::fixture(s.name);
    CHECK(d.num_arcs() == s.arcs);
    CHECK(d.num_crossings() == s.crossings);
    CHECK(d.num_components() == s.components);
    for (std::size_t a = 0; a < d.num_arcs(); ++a) {
      const auto ends = d.under_end_count(a);
      CHECK((ends == 0 || ends == 2));
    }
  }
  const auto fig6 = testing::fixture("fig6");
  CHECK(fig6.component(*fig6.find_arc("a8")) == 1);
  CHECK(fig6.component(*fig6.find_arc("a9")) == 2);
}

TEST_CASE("native and JSON serializations round trip") {
  for (const auto& name : testing::fixture_names()) {
    CAPTURE(name);
    const auto d = testing::fixture(name);
    CHECK(parse_diagram(alexq::to_native(d, "round trip")) == d);
    CHECK(parse_diagram(alexq::to_json_text(d)) == d);
    CHECK(alexq::diagram_digest(parse_diagram(alexq::to_native(d))) == alexq::diagram_digest(d));
  }
  CHECK(alexq::diagram_digest(testing::fixture("fig5")) != alexq::diagram_digest(testing::fixture("fig6")));
}

TEST_CASE("malformed diagrams report the offending line") {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_diagram(text);
    } catch (const alexq::ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("arc a1\ncrossing a1 a1\n") == 2);
  CHECK(line_of("arc a1\narc a1\n") == 2);
  CHECK(line_of("# c\narc a1\nfrobnicate a1\n") == 3);
  CHECK_THROWS_AS(parse_diagram(""), alexq::ParseError);
  // a2 passes under only once.
  CHECK_THROWS_AS(parse_diagram("crossing a1 a1 a2\n"), alexq::ParseError);
  // Declared components contradict the under-strand connectivity.
  CHECK_THROWS_AS(parse_diagram("arc a1 1\narc a2 2\ncrossing a1 a1 a2\ncrossing a2 a2 a1\n"), alexq::ParseError);
  CHECK_THROWS_AS(parse_diagram("{\"arcs\": [\"a1\"], \"crossings\": [{\"over\": \"a9\"}]}"), alexq::ParseError);
  CHECK_THROWS_AS(parse_diagram("{\"arcs\": "), alexq::ParseError);
}

TEST_CASE("components follow under-strand connectivity") {
  const auto d = parse_diagram("crossing x y z\ncrossing y z x\ncrossing z x y\n");
  CHECK(d.num_components() == 1);
  const auto j = parse_diagram(R"({"arcs": [{"id": "p", "component": 2}, {"id": "q", "component": 1}],
                                   "crossings": [{"over": "p", "under_right": "q", "under_left": "q"},
                                                 {"over": "q", "under_right": "p", "under_left": "p"}]})");
  CHECK(j.component(*j.find_arc("p")) == 2);
  CHECK(j.component(*j.find_arc("q")) == 1);
}

TEST_CASE("PD codes import to the same diagrams as the fixtures") {
  CHECK(testing::isomorphic(alexq::parse_pd_code("X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]"), testing::fixture("trefoil")));
  CHECK(testing::isomorphic(alexq::parse_pd_code("X[4,1,3,2], X[2,3,1,4]"), testing::fixture("hopf")));
  CHECK(testing::isomorphic(alexq::parse_pd_code("X[1,1,2,2]"), testing::fixture("unknot_r1")));
  // Figure-eight knot: Alexander polynomial t^2 - 3t + 1.
  const auto fig8 = alexq::parse_pd_code("X[4,2,5,1], X[8,6,1,5], X[6,3,7,4], X[2,7,3,8]");
  CHECK(fig8.num_arcs() == 4);
  const auto dec = alexq::cyclic_decomposition(alexq::simplify(alexq::alexander_matrix(fig8)));
  REQUIRE(dec.has_value());
  CHECK(dec->free_rank == 1);
  REQUIRE(dec->torsion.size() == 1);
  CHECK(alexq::associated(dec->torsion[0].factor, testing::poly("t1^2 - 3*t1 + 1", 1)));
  CHECK_THROWS_AS(alexq::parse_pd_code("X[1,2,3]"), alexq::ParseError);
}

TEST_CASE("random diagrams are valid and deterministic") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const alexq::RandomDiagramParams params{1 + seed % 3, seed % 9};
    const auto d = alexq::random_diagram(seed, params);
    CHECK(d.num_components() == params.components);
    CHECK(d.num_crossings() == params.crossings);
    CHECK(d == alexq::random_diagram(seed, params));
    CHECK(parse_diagram(alexq::to_native(d)) == d);
  }
}
