#pragma once

// Shared helpers for the test suites. The oracles here deliberately avoid the
// library's own linear algebra so they can cross-check it.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "alexq/diagram.hpp"
#include "alexq/laurent.hpp"
#include "alexq/rng.hpp"

#ifndef ALEXQ_FIXTURE_DIR
#error "ALEXQ_FIXTURE_DIR must be defined"
#endif

namespace testing {

inline std::string fixture_path(const std::string& name) { return std::string(ALEXQ_FIXTURE_DIR) + "/" + name; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline alexq::LinkDiagram fixture(const std::string& stem) {
  return alexq::parse_diagram(read_text(fixture_path(stem + ".lnk")));
}

inline const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"fig5",      "fig6",      "hopf",      "trefoil", "unknot_r0",
                                              "unknot_r1", "unknot_r2", "unknot_r3", "unlink2", "unlink3"};
  return names;
}

inline const std::vector<std::string>& unknot_names() {
  static const std::vector<std::string> names{"unknot_r0", "unknot_r1", "unknot_r2", "unknot_r3"};
  return names;
}

inline alexq::LaurentPoly poly(const std::string& text, std::size_t nv) { return alexq::parse_laurent(text, nv); }

inline alexq::LaurentPoly random_poly(alexq::Rng& rng, std::size_t nv, std::size_t max_terms = 4, int exp_range = 3,
                                      int coeff_range = 9) {
  alexq::LaurentPoly p(nv);
  const auto terms = rng.below(max_terms + 1);
  for (std::size_t t = 0; t < terms; ++t) {
    alexq::Exponents e(nv);
    for (auto& x : e) x = static_cast<std::int32_t>(rng.below(2 * exp_range + 1)) - exp_range;
    const auto c = static_cast<long>(rng.below(2 * coeff_range + 1)) - coeff_range;
    p += alexq::LaurentPoly::monomial(alexq::Coeff(c), e);
  }
  return p;
}

// --- dense linear algebra over F_p (independent of alexq::Echelon) ---------

using Matrix = std::vector<std::vector<std::uint64_t>>;

inline std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  a %= p;
  for (; e > 0; e >>= 1) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
  }
  return r;
}

inline std::size_t dense_rank(Matrix m, std::size_t cols, std::uint64_t p) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] % p == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    const auto inv = pow_mod(m[rank][c], p - 2, p);
    for (auto& x : m[rank]) x = x * inv % p;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] % p == 0) continue;
      const auto f = m[r][c] % p;
      for (std::size_t k = 0; k < cols; ++k) m[r][k] = (m[r][k] + (p - f) * m[rank][k]) % p;
    }
    ++rank;
  }
  return rank;
}

// Value of a Laurent polynomial at a point of F_p^n, by direct term sums.
inline std::uint64_t eval_mod(const alexq::LaurentPoly& f, std::uint64_t p, const std::vector<std::uint64_t>& u) {
  std::uint64_t acc = 0;
  for (const auto& [e, c] : f.terms()) {
    mpz_class cm = c % static_cast<unsigned long>(p);
    if (cm < 0) cm += static_cast<unsigned long>(p);
    std::uint64_t term = cm.get_ui();
    for (std::size_t i = 0; i < e.size(); ++i) {
      const auto base = e[i] >= 0 ? u[i] % p : pow_mod(u[i], p - 2, p);
      term = term * pow_mod(base, static_cast<std::uint64_t>(e[i] >= 0 ? e[i] : -std::int64_t{e[i]}), p) % p;
    }
    acc = (acc + term) % p;
  }
  return acc;
}

// Relation matrix of a diagram evaluated at t_k = u_k, built from the
// crossing triples directly.
inline Matrix crossing_matrix(const alexq::LinkDiagram& d, std::uint64_t p, const std::vector<std::uint64_t>& u) {
  Matrix m;
  auto t = [&](std::size_t arc) { return u[static_cast<std::size_t>(d.component(arc) - 1)] % p; };
  for (const auto& c : d.crossings()) {
    std::vector<std::uint64_t> row(d.num_arcs(), 0);
    row[c.over] = (row[c.over] + 1 + p - t(c.under_right)) % p;
    row[c.under_right] = (row[c.under_right] + t(c.over)) % p;
    row[c.under_left] = (row[c.under_left] + p - 1) % p;
    m.push_back(row);
  }
  return m;
}

inline std::size_t dense_cokernel_dimension(const alexq::LinkDiagram& d, std::uint64_t p,
                                            const std::vector<std::uint64_t>& u) {
  return d.num_arcs() - dense_rank(crossing_matrix(d, p, u), d.num_arcs(), p);
}

// --- diagram isomorphism by backtracking over arc bijections -----------------

inline bool isomorphic(const alexq::LinkDiagram& a, const alexq::LinkDiagram& b, bool keep_components = true) {
  if (a.num_arcs() != b.num_arcs() || a.num_crossings() != b.num_crossings() ||
      a.num_components() != b.num_components()) {
    return false;
  }
  const auto n = a.num_arcs();
  std::vector<long> fwd(n, -1), back(n, -1);
  std::vector<bool> used(b.num_crossings(), false);
  auto bind = [&](std::size_t x, std::size_t y, std::vector<std::size_t>& undo) {
    if (fwd[x] >= 0) return fwd[x] == static_cast<long>(y);
    if (back[y] >= 0) return false;
    if (keep_components && a.component(x) != b.component(y)) return false;
    fwd[x] = static_cast<long>(y);
    back[y] = static_cast<long>(x);
    undo.push_back(x);
    return true;
  };
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == a.num_crossings()) {
      // Crossing-free arcs pair up freely within components.
      std::map<int, int> free_a, free_b;
      for (std::size_t x = 0; x < n; ++x) {
        if (fwd[x] < 0) ++free_a[keep_components ? a.component(x) : 0];
        if (back[x] < 0) ++free_b[keep_components ? b.component(x) : 0];
      }
      return free_a == free_b;
    }
    const auto& ca = a.crossings()[i];
    for (std::size_t j = 0; j < b.num_crossings(); ++j) {
      if (used[j]) continue;
      const auto& cb = b.crossings()[j];
      std::vector<std::size_t> undo;
      if (bind(ca.over, cb.over, undo) && bind(ca.under_right, cb.under_right, undo) &&
          bind(ca.under_left, cb.under_left, undo)) {
        used[j] = true;
        if (rec(i + 1)) return true;
        used[j] = false;
      }
      for (auto x : undo) {
        back[static_cast<std::size_t>(fwd[x])] = -1;
        fwd[x] = -1;
      }
    }
    return false;
  };
  return rec(0);
}

}  // namespace testing
