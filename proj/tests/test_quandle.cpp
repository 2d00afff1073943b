#include "doctest.h"

#include <set>

#include "alexq/error.hpp"
#include "alexq/quandle.hpp"
#include "support.hpp"

using namespace alexq;
using testing::poly;

namespace {

std::shared_ptr<const ModulePresentation> unlink3_free() {
  return std::make_shared<const ModulePresentation>(alexander_matrix(testing::fixture("unlink3")));
}

QuandleElement gen(const std::shared_ptr<const ModulePresentation>& p, std::size_t i) {
  return QuandleElement(ModuleElement::generator(p, i));
}

PolyRow row3(const char* a, const char* b, const char* c) { return {poly(a, 3), poly(b, 3), poly(c, 3)}; }

// Closure of the arc classes under both operations over all pairs, computed
// with a private reduced row-echelon form.
struct ClosureOracle {
  std::uint64_t p;
  std::vector<std::uint64_t> u;
  testing::Matrix rref;
  std::vector<std::size_t> pivots;
  std::vector<std::uint64_t> phi;

  ClosureOracle(const LinkDiagram& d, std::uint64_t prime, std::vector<std::uint64_t> assign)
      : p(prime), u(std::move(assign)) {
    auto m = testing::crossing_matrix(d, p, u);
    const auto n = d.num_arcs();
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t piv = rref.size();
      std::size_t r = piv;
      while (r < m.size() && m[r][c] == 0) ++r;
      if (r == m.size()) continue;
      std::swap(m[r], m[piv]);
      const auto inv = testing::pow_mod(m[piv][c], p - 2, p);
      for (auto& x : m[piv]) x = x * inv % p;
      for (std::size_t k = 0; k < m.size(); ++k) {
        if (k == piv || m[k][c] == 0) continue;
        const auto f = m[k][c];
        for (std::size_t j = 0; j < n; ++j) m[k][j] = (m[k][j] + (p - f) * m[piv][j]) % p;
      }
      rref.push_back(m[piv]);
      pivots.push_back(c);
    }
    for (std::size_t a = 0; a < n; ++a) phi.push_back((u[static_cast<std::size_t>(d.component(a) - 1)] + p - 1) % p);
  }

  std::vector<std::uint64_t> reduce(std::vector<std::uint64_t> v) const {
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      const auto f = v[pivots[i]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = (v[j] + (p - f) * rref[i][j]) % p;
    }
    return v;
  }

  std::uint64_t phi_of(const std::vector<std::uint64_t>& v) const {
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < v.size(); ++j) acc = (acc + v[j] * phi[j]) % p;
    return acc;
  }

  std::size_t closure_size() const {
    std::set<std::vector<std::uint64_t>> set;
    for (std::size_t a = 0; a < phi.size(); ++a) {
      std::vector<std::uint64_t> e(phi.size(), 0);
      e[a] = 1;
      set.insert(reduce(e));
    }
    for (bool grew = true; grew;) {
      grew = false;
      const std::vector<std::vector<std::uint64_t>> cur(set.begin(), set.end());
      for (const auto& x : cur) {
        for (const auto& y : cur) {
          const auto px = phi_of(x), py = phi_of(y);
          const auto s = (py + 1) % p;
          const auto inv = testing::pow_mod(s, p - 2, p);
          std::vector<std::uint64_t> a(x.size()), b(x.size());
          for (std::size_t j = 0; j < x.size(); ++j) {
            a[j] = (s * x[j] + (p - px) * y[j]) % p;
            b[j] = inv * ((x[j] + px * y[j]) % p) % p;
          }
          grew |= set.insert(reduce(a)).second;
          grew |= set.insert(reduce(b)).second;
        }
      }
    }
    return set.size();
  }
};

}  // namespace

TEST_CASE("operations on free-module generators") {
  const auto p = unlink3_free();
  // a_i > a_j = t_j a_i - (t_i - 1) a_j
  CHECK(op_tri(gen(p, 0), gen(p, 1)).element.coords == row3("t2", "1 - t1", "0"));
  CHECK(op_tri(gen(p, 2), gen(p, 0)).element.coords == row3("1 - t3", "0", "t1"));
  CHECK(op_tri(gen(p, 1), gen(p, 1)).element.coords == gen(p, 1).element.coords);
  const auto x = op_tri(gen(p, 0), gen(p, 1));
  CHECK(x.phi == poly("t1 - 1", 3));
  CHECK(op_tri_inv(x, gen(p, 1)).element.coords == gen(p, 0).element.coords);
  CHECK(op_tri_inv(gen(p, 0), gen(p, 0)).element.coords == gen(p, 0).element.coords);
}

TEST_CASE("right but not left self-distributivity in the free module of the 3-unlink") {
  const auto p = unlink3_free();
  const auto a1 = gen(p, 0), a2 = gen(p, 1), a3 = gen(p, 2);
  const auto lhs = op_tri(a1, op_tri(a2, a3));
  const auto rhs = op_tri(op_tri(a1, a2), op_tri(a1, a3));
  CHECK(lhs.element.coords == row3("t2", "-(t1 - 1)*t3", "(t1 - 1)*(t2 - 1)"));
  CHECK(rhs.element.coords == row3("t1*t2 - t1*t3 + t3", "-t1*(t1 - 1)", "(t1 - 1)^2"));
  const auto diff = (lhs.element - rhs.element).coords;
  CHECK(diff == row3("t2 - t1*t2 + t1*t3 - t3", "t1*(t1 - 1) - (t1 - 1)*t3", "(t1 - 1)*(t2 - 1) - (t1 - 1)^2"));
  CHECK(std::any_of(diff.begin(), diff.end(), [](const LaurentPoly& f) { return !f.is_zero(); }));
  // Right distributivity holds exactly.
  CHECK(op_tri(op_tri(a1, a2), a3).element.coords == op_tri(op_tri(a1, a3), op_tri(a2, a3)).element.coords);
}

TEST_CASE("membership in U") {
  const auto p = unlink3_free();
  for (std::size_t i = 0; i < 3; ++i) CHECK(in_U(gen(p, i)));
  auto with_phi = [](const char* phi) {
    return QuandleElement(ModuleElement::generator(
        std::make_shared<const ModulePresentation>(make_presentation(1, {"x"}, {}, {poly(phi, 1)})), 0));
  };
  CHECK_FALSE(in_U(with_phi("t1 - 2")));
  CHECK(in_U(with_phi("-1 + t1^5")));
  CHECK(in_U(with_phi("-1 - t1^-3")));
  CHECK(in_U(with_phi("0")));
  const auto bad = with_phi("t1 - 2");
  CHECK_THROWS_AS(op_tri_inv(bad, bad), DomainError);
  CHECK_NOTHROW(op_tri(bad, bad));
}

TEST_CASE("axioms on random specialized elements") {
  alexq::Rng rng(31);
  std::size_t triples = 0;
  for (int module = 0; module < 12; ++module) {
    const auto d = random_diagram(rng.next(), {1 + rng.below(3), 1 + rng.below(8)});
    const std::uint64_t prime = std::vector<std::uint64_t>{5, 7, 11, 13}[rng.below(4)];
    std::vector<std::uint64_t> u;
    for (std::size_t k = 0; k < d.num_components(); ++k) u.push_back(1 + rng.below(prime - 1));
    const SpecializedModule m(alexander_matrix(d), {prime, u});
    auto random_vec = [&] {
      FpVector v(m.ambient_dimension());
      for (auto& x : v) x = rng.below(prime);
      return v;
    };
    for (int t = 0; t < 120; ++t, ++triples) {
      const auto x = random_vec(), y = random_vec(), z = random_vec();
      CHECK(m.equal(op_tri(m, x, x), x));
      CHECK(m.equal(op_tri(m, op_tri(m, x, y), z), op_tri(m, op_tri(m, x, z), op_tri(m, y, z))));
      CHECK(m.phi(op_tri(m, x, y)) == m.phi(x));
      if (in_U(m, y)) {
        CHECK(m.equal(op_tri_inv(m, op_tri(m, x, y), y), x));
        CHECK(m.equal(op_tri(m, op_tri_inv(m, x, y), y), x));
        CHECK(m.phi(op_tri_inv(m, x, y)) == m.phi(x));
      } else {
        CHECK_THROWS_AS(op_tri_inv(m, x, y), DomainError);
      }
    }
  }
  CHECK(triples >= 1000);
}

TEST_CASE("the specialized Hopf module satisfies the second axiom on arc classes") {
  const SpecializedModule m(alexander_matrix(testing::fixture("hopf")), {5, {2, 3}});
  const auto x = m.generator(0), y = m.generator(1);
  CHECK(m.equal(op_tri(m, op_tri_inv(m, x, y), y), x));
  CHECK(m.equal(op_tri_inv(m, op_tri(m, x, y), y), x));
}

TEST_CASE("generated quandles match an exhaustive closure") {
  struct Case {
    const char* name;
    std::uint64_t p;
    std::vector<std::uint64_t> u;
  };
  for (const auto& c : std::vector<Case>{{"unlink2", 5, {2, 3}},
                                         {"fig5", 5, {2, 3}},
                                         {"fig6", 7, {3, 5}},
                                         {"hopf", 5, {2, 3}},
                                         {"trefoil", 7, {3}},
                                         {"unlink3", 5, {2, 3, 4}}}) {
    CAPTURE(c.name);
    const auto d = testing::fixture(c.name);
    const SpecializedModule m(alexander_matrix(d), {c.p, c.u});
    const auto q = generate_QA(m);
    CHECK(q.size() == ClosureOracle(d, c.p, c.u).closure_size());
    REQUIRE(q.has_tables());
    CHECK(check_axioms(q).ok());
    // Closed and phi-preserving.
    for (std::size_t x = 0; x < q.size(); ++x) {
      for (std::size_t y = 0; y < q.size(); ++y) {
        CHECK(q.phi()[q.tri(x, y)] == q.phi()[x]);
        CHECK(q.phi()[q.tri_inv(x, y)] == q.phi()[x]);
      }
    }
    // Same result without tables.
    CHECK(generate_QA(m, false).size() == q.size());
    CHECK(orbits(generate_QA(m, false)).size() == orbits(q).size());
  }
}

TEST_CASE("orbit counts") {
  auto count = [](const char* name, std::uint64_t p, std::vector<std::uint64_t> u) {
    return orbits(generate_QA(SpecializedModule(alexander_matrix(testing::fixture(name)), {p, std::move(u)}))).size();
  };
  CHECK(count("unlink3", 7, {2, 3, 4}) == 3);
  CHECK(count("fig6", 5, {2, 3}) == 2);
  CHECK(count("fig5", 11, {4, 9}) == 2);
  CHECK(count("unknot_r3", 13, {5}) == 1);
  const auto single = FiniteQuandle::from_tables(1, {0}, {0});
  CHECK(orbits(single).size() == 1);
}

TEST_CASE("unknot diagrams generate a single element") {
  for (const auto& name : testing::unknot_names()) {
    for (const auto& s : battery_members(BatteryConfig{}, 1)) {
      const auto q = generate_QA(SpecializedModule(alexander_matrix(testing::fixture(name)), s));
      CHECK(q.size() == 1);
      CHECK(quandle_presentation(q).dimension == 1);
    }
  }
}

TEST_CASE("axiom checks on table quandles") {
  // Trivial quandle x > y = x.
  const std::size_t n = 4;
  std::vector<std::uint32_t> trivial(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) trivial[x * n + y] = static_cast<std::uint32_t>(x);
  }
  CHECK(check_axioms(FiniteQuandle::from_tables(n, trivial, trivial)).ok());
  // Dihedral quandle of order 3: x > y = 2y - x.
  std::vector<std::uint32_t> dihedral(9);
  for (std::uint32_t x = 0; x < 3; ++x) {
    for (std::uint32_t y = 0; y < 3; ++y) dihedral[x * 3 + y] = (2 * y + 3 - x) % 3;
  }
  CHECK(check_axioms(FiniteQuandle::from_tables(3, dihedral, dihedral)).ok());
  // x > y = y + 1 breaks idempotence.
  std::vector<std::uint32_t> shift(9), unshift(9);
  for (std::uint32_t x = 0; x < 3; ++x) {
    for (std::uint32_t y = 0; y < 3; ++y) {
      shift[x * 3 + y] = (x + 1) % 3;
      unshift[x * 3 + y] = (x + 2) % 3;
    }
  }
  const auto r = check_axioms(FiniteQuandle::from_tables(3, shift, unshift));
  CHECK(r.checked);
  CHECK_FALSE(r.q1);
  CHECK(r.q2);
  CHECK_FALSE(r.counterexample.empty());
  CHECK_THROWS_AS(FiniteQuandle::from_tables(3, shift, shift), UsageError);
}

TEST_CASE("left self-distributivity fails in the generated quandle of the 3-unlink") {
  const auto q = generate_QA(SpecializedModule(alexander_matrix(testing::fixture("unlink3")), {7, {2, 3, 4}}));
  REQUIRE(q.has_tables());
  bool fails = false;
  for (std::size_t x = 0; x < q.size() && !fails; ++x) {
    for (std::size_t y = 0; y < q.size() && !fails; ++y) {
      for (std::size_t z = 0; z < q.size() && !fails; ++z) {
        fails = q.tri(x, q.tri(y, z)) != q.tri(q.tri(x, y), q.tri(x, z));
      }
    }
  }
  CHECK(fails);
  CHECK(check_axioms(q).ok());
}

TEST_CASE("quandle presentations recover the module dimension") {
  struct Case {
    const char* name;
    std::uint64_t p;
    std::vector<std::uint64_t> u;
  };
  for (const auto& c : std::vector<Case>{{"unlink2", 5, {2, 3}},
                                         {"fig5", 5, {2, 3}},
                                         {"fig6", 5, {2, 3}},
                                         {"hopf", 7, {2, 3}},
                                         {"trefoil", 7, {3}},
                                         {"unknot_r2", 5, {3}}}) {
    CAPTURE(c.name);
    const SpecializedModule m(alexander_matrix(testing::fixture(c.name)), {c.p, c.u});
    const auto q = generate_QA(m);
    const auto qp = quandle_presentation(q);
    CHECK(qp.dimension == m.dimension());
    CHECK(qp.num_relations == 2 * q.size() * q.size());
    const auto rows = quandle_presentation_rows(q);
    CHECK(q.size() - testing::dense_rank(rows, q.size(), c.p) == qp.dimension);
  }
}

TEST_CASE("quandle words") {
  CHECK(to_string(parse_word("a > b < c")) == "((a > b) < c)");
  CHECK(to_string(parse_word("a > (b < c)")) == "(a > (b < c))");
  CHECK(to_string(parse_word("  (a2>a1) ")) == "(a2 > a1)");
  CHECK_THROWS_AS(parse_word("a >"), ParseError);
  CHECK_THROWS_AS(parse_word("(a > b"), ParseError);
  CHECK_THROWS_AS(parse_word("a b"), ParseError);
  CHECK_THROWS_AS(parse_word(""), ParseError);

  const auto d = testing::fixture("fig6");
  const auto p = std::make_shared<const ModulePresentation>(alexander_matrix(d));
  CHECK(eval_word(parse_word("a4"), p).coords == ModuleElement::generator(p, 3).coords);
  CHECK_THROWS_AS(eval_word(parse_word("a99"), p), UsageError);
  for (const auto& s : battery_members(BatteryConfig{}, 2)) {
    const SpecializedModule m(*p, s);
    for (const auto& c : d.crossings()) {
      const auto w = parse_word("(" + d.label(c.under_right) + " > " + d.label(c.over) + ")");
      CHECK(m.equal(evaluate_row(eval_word(w, p).coords, s), m.generator(c.under_left)));
    }
  }
  // (a > b) < b is a itself, already in the free module.
  CHECK(eval_word(parse_word("(a3 > a10) < a10"), p).coords == ModuleElement::generator(p, 2).coords);
  CHECK(eval_word(parse_word("a1 > a1"), d).coords == ModuleElement::generator(p, 0).coords);
  // A right operand outside U.
  const auto u = std::make_shared<const ModulePresentation>(make_presentation(1, {"x", "y"}, {}, {poly("t1 - 1", 1), poly("t1 - 2", 1)}));
  CHECK_THROWS_AS(eval_word(parse_word("x < y"), u), DomainError);
  CHECK_NOTHROW(eval_word(parse_word("y < x"), u));
}

TEST_CASE("closure capacity") {
  const SpecializedModule m(alexander_matrix(testing::fixture("unlink3")), {13, {2, 3, 4}});
  std::vector<FpVector> gens;
  for (std::size_t g = 0; g < 3; ++g) gens.push_back(m.generator(g));
  CHECK_THROWS_AS(generate_QA(m, gens, 10), CapacityError);
  FpVector outside{12, 0, 0};  // phi = 12 * (2 - 1) = -1
  CHECK_THROWS_AS(generate_QA(m, {outside}), UsageError);
}
