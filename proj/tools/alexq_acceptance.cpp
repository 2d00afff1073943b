// Acceptance checks: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (capped at 10).
//
// usage: alexq_acceptance <fixture-dir>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "alexq/error.hpp"
#include "alexq/invariance.hpp"
#include "alexq/presentation.hpp"
#include "alexq/quandle.hpp"
#include "alexq/rng.hpp"
#include "alexq/specialize.hpp"

using namespace alexq;

namespace {

// Pinned limits, in seconds.
constexpr double kDecomposeLimit = 1.0;
constexpr double kAxiomLimit = 10.0;
constexpr double kMovesLimit = 60.0;
constexpr double kPresentationLimit = 30.0;

constexpr std::size_t kAxiomModules = 12;
constexpr std::size_t kAxiomTriples = 1200;
constexpr std::size_t kMoveSequences = 50;
constexpr std::size_t kMaxMoveLength = 8;
constexpr std::size_t kPresentationMaxSize = 200;
constexpr std::uint64_t kSeed = 20240611;

std::string fixture_dir;

const std::vector<std::string> kFixtures{"fig5",      "fig6",      "hopf",      "trefoil", "unknot_r0",
                                         "unknot_r1", "unknot_r2", "unknot_r3", "unlink2", "unlink3"};
const std::vector<std::string> kUnknots{"unknot_r0", "unknot_r1", "unknot_r2", "unknot_r3"};

LinkDiagram load(const std::string& stem) {
  std::ifstream in(fixture_dir + "/" + stem + ".lnk");
  if (!in) throw UsageError("missing fixture " + stem);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_diagram(ss.str());
}

LaurentPoly P(const std::string& s, std::size_t nv) { return parse_laurent(s, nv); }

bool same_up_to_units(std::vector<LaurentPoly> got, const std::vector<LaurentPoly>& want) {
  if (got.size() != want.size()) return false;
  for (const auto& w : want) {
    const auto it = std::find_if(got.begin(), got.end(), [&](const LaurentPoly& g) { return associated(g, w); });
    if (it == got.end()) return false;
    got.erase(it);
  }
  return true;
}

std::vector<LaurentPoly> factors_of(const ModulePresentation& p, std::size_t* free_rank) {
  const auto dec = cyclic_decomposition(simplify(p));
  if (!dec) return {};
  *free_rank = dec->free_rank;
  std::vector<LaurentPoly> out;
  for (const auto& t : dec->torsion) out.push_back(t.factor);
  return out;
}

std::string join(const std::vector<LaurentPoly>& v) {
  std::string out;
  for (const auto& p : v) out += (out.empty() ? "" : ", ") + to_string(p);
  return "{" + out + "}";
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int n, const std::function<Outcome()>& check, double limit = 0) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit > 0 && secs >= limit) {
    o.pass = false;
    o.detail += "; over the time limit";
  }
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.3fs", secs);
  std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << " (" << o.detail << "; " << timing;
  if (limit > 0) std::cout << " < " << limit << "s";
  std::cout << ")\n";
  if (!o.pass) ++failures;
}

Outcome decomposition_check(const char* stem, const std::vector<LaurentPoly>& want) {
  std::size_t free_rank = 0;
  const auto got = factors_of(alexander_matrix(load(stem)), &free_rank);
  return {free_rank == 2 && same_up_to_units(got, want),
          std::string(stem) + " free_rank " + std::to_string(free_rank) + ", factors " + join(got)};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: alexq_acceptance <fixture-dir>\n";
    return 64;
  }
  fixture_dir = argv[1];

  report(1, [] { return decomposition_check("fig5", {P("2*t1 - t1^2", 2), P("2*t1 - 1", 2)}); }, kDecomposeLimit);
  report(2, [] { return decomposition_check("fig6", {P("t1 + t2 - t1*t2", 2), P("t1 + t2 - 1", 2)}); },
         kDecomposeLimit);

  report(3, [] {
    std::size_t r5 = 0, r6 = 0;
    const auto f5 = factors_of(alexander_matrix(load("fig5")), &r5);
    const auto f6 = factors_of(alexander_matrix(load("fig6")), &r6);
    const std::vector<MonomialUnit> collapse{{1, {1}}, {1, {1}}};
    const std::vector<MonomialUnit> swap{{1, {0, 1}}, {1, {1, 0}}};
    auto image = [](const std::vector<LaurentPoly>& v, const std::vector<MonomialUnit>& g) {
      std::vector<LaurentPoly> out;
      for (const auto& p : v) out.push_back(canonical_up_to_unit(substitute_monomials(p, g)));
      std::sort(out.begin(), out.end());
      return out;
    };
    std::vector<LaurentPoly> target{canonical_up_to_unit(P("2*t - t^2", 1)), canonical_up_to_unit(P("2*t - 1", 1))};
    std::sort(target.begin(), target.end());
    const bool collapse_ok = image(f5, collapse) == target && image(f6, collapse) == target;
    const bool differ = !same_up_to_units(f5, f6) && !same_up_to_units(image(f5, swap), f6);
    return Outcome{collapse_ok && differ && !f5.empty(),
                   "reduced " + join(image(f5, collapse)) + " and " + join(image(f6, collapse)) +
                       (differ ? "; full sets differ under both labelings" : "; full sets agree")};
  });

  report(4, [] {
    const auto p = std::make_shared<const ModulePresentation>(alexander_matrix(load("unlink3")));
    auto g = [&](std::size_t i) { return QuandleElement(ModuleElement::generator(p, i)); };
    const auto lhs = op_tri(g(0), op_tri(g(1), g(2)));
    const auto rhs = op_tri(op_tri(g(0), g(1)), op_tri(g(0), g(2)));
    const PolyRow want_l{P("t2", 3), P("-(t1 - 1)*t3", 3), P("(t1 - 1)*(t2 - 1)", 3)};
    const PolyRow want_r{P("t1*t2 - t1*t3 + t3", 3), P("-t1*(t1 - 1)", 3), P("(t1 - 1)^2", 3)};
    const auto diff = (lhs.element - rhs.element).coords;
    const bool nonzero = std::any_of(diff.begin(), diff.end(), [](const LaurentPoly& f) { return !f.is_zero(); });
    return Outcome{lhs.element.coords == want_l && rhs.element.coords == want_r && nonzero,
                   "a1 > (a2 > a3) and (a1 > a2) > (a1 > a3) match; difference " +
                       std::string(nonzero ? "nonzero" : "zero")};
  });

  report(
      5,
      [] {
        Rng rng(kSeed);
        std::size_t triples = 0, failed = 0, q2_checked = 0;
        for (std::size_t k = 0; k < kAxiomModules; ++k) {
          const auto d = random_diagram(rng.next(), {1 + rng.below(3), 2 + rng.below(8)});
          const std::uint64_t prime = std::vector<std::uint64_t>{5, 7, 11, 13}[rng.below(4)];
          std::vector<std::uint64_t> u;
          for (std::size_t c = 0; c < d.num_components(); ++c) u.push_back(1 + rng.below(prime - 1));
          const SpecializedModule m(alexander_matrix(d), {prime, u});
          auto random_vec = [&] {
            FpVector v(m.ambient_dimension());
            for (auto& x : v) x = rng.below(prime);
            return v;
          };
          for (std::size_t t = 0; t < kAxiomTriples / kAxiomModules; ++t, ++triples) {
            const auto x = random_vec(), y = random_vec(), z = random_vec();
            bool ok = m.equal(op_tri(m, x, x), x) &&
                      m.equal(op_tri(m, op_tri(m, x, y), z), op_tri(m, op_tri(m, x, z), op_tri(m, y, z))) &&
                      m.phi(op_tri(m, x, y)) == m.phi(x);
            if (in_U(m, y)) {
              ++q2_checked;
              ok = ok && m.equal(op_tri_inv(m, op_tri(m, x, y), y), x) && m.equal(op_tri(m, op_tri_inv(m, x, y), y), x);
            }
            if (!ok) ++failed;
          }
        }
        return Outcome{failed == 0 && triples >= 1000,
                       std::to_string(triples) + " triples over " + std::to_string(kAxiomModules) + " modules, " +
                           std::to_string(q2_checked) + " with right operand in U, " + std::to_string(failed) +
                           " failures"};
      },
      kAxiomLimit);

  report(
      6,
      [] {
        std::size_t comparisons = 0, failed = 0, moves = 0;
        for (const auto& name : kFixtures) {
          const auto r = check_move_invariance(load(name), kSeed, kMoveSequences, kMaxMoveLength, BatteryConfig{});
          comparisons += r.comparisons;
          failed += r.failures.size();
          moves += r.moves_applied;
        }
        return Outcome{failed == 0, std::to_string(kFixtures.size() * kMoveSequences) + " sequences, " +
                                        std::to_string(moves) + " moves, " + std::to_string(comparisons) +
                                        " member comparisons, " + std::to_string(failed) + " failures"};
      },
      kMovesLimit);

  report(7, [] {
    std::size_t checked = 0;
    std::string bad;
    for (const auto& name : kFixtures) {
      const auto d = load(name);
      for (const auto& s : battery_members(BatteryConfig{}, d.num_components())) {
        const auto n = orbits(generate_QA(SpecializedModule(alexander_matrix(d), s), false)).size();
        ++checked;
        if (n != d.num_components() && bad.empty()) bad = name + " has " + std::to_string(n) + " orbits";
      }
    }
    return Outcome{bad.empty(), std::to_string(checked) + " fixture/member pairs" + (bad.empty() ? "" : "; " + bad)};
  });

  report(8, [] {
    std::size_t checked = 0;
    std::string bad;
    for (const auto& name : kUnknots) {
      const auto d = load(name);
      for (const auto& s : battery_members(BatteryConfig{}, 1)) {
        const auto n = generate_QA(SpecializedModule(alexander_matrix(d), s), false).size();
        ++checked;
        if (n != 1 && bad.empty()) bad = name + " has " + std::to_string(n) + " elements";
      }
    }
    return Outcome{bad.empty(), std::to_string(checked) + " unknot/member pairs" + (bad.empty() ? "" : "; " + bad)};
  });

  report(
      9,
      [] {
        std::size_t checked = 0, skipped = 0;
        std::string bad;
        for (const auto& name : kFixtures) {
          const auto d = load(name);
          for (const auto& s : battery_members(BatteryConfig{}, d.num_components())) {
            const SpecializedModule m(alexander_matrix(d), s);
            const auto q = generate_QA(m, false);
            if (q.size() > kPresentationMaxSize) {
              ++skipped;
              continue;
            }
            const auto qp = quandle_presentation(generate_QA(m));
            ++checked;
            if (qp.dimension != m.dimension() && bad.empty()) {
              bad = name + ": " + std::to_string(qp.dimension) + " vs " + std::to_string(m.dimension());
            }
          }
        }
        return Outcome{bad.empty() && checked > 0, std::to_string(checked) + " presentations compared, " +
                                                       std::to_string(skipped) + " skipped as larger than " +
                                                       std::to_string(kPresentationMaxSize) +
                                                       (bad.empty() ? "" : "; " + bad)};
      },
      kPresentationLimit);

  report(10, [] {
    const auto a = alexander_matrix(load("fig5"));
    const auto b = alexander_matrix(load("fig6"));
    const auto full = battery_compare(a, b, BatteryConfig{});
    const auto red = battery_compare(reduce(a), reduce(b), BatteryConfig{});
    return Outcome{full.verdict == Verdict::Distinguished && red.verdict == Verdict::Indistinguishable,
                   "full: " + to_string(full.verdict) + ", reduced: " + to_string(red.verdict)};
  });

  return std::min(failures, 10);
}
