#include "alexq/presentation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

#include "alexq/error.hpp"

namespace alexq {

PolyRow zero_row(std::size_t num_vars, std::size_t length) { return PolyRow(length, LaurentPoly(num_vars)); }

namespace {

std::size_t nnz(const PolyRow& row) {
  return static_cast<std::size_t>(std::count_if(row.begin(), row.end(), [](const auto& x) { return !x.is_zero(); }));
}

bool is_zero_row(const PolyRow& row) {
  return std::all_of(row.begin(), row.end(), [](const auto& x) { return x.is_zero(); });
}

// u with b == u*a for a unit u, if any.
bool unit_multiple(const PolyRow& a, const PolyRow& b) {
  std::optional<LaurentPoly> u;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero() != b[i].is_zero()) return false;
    if (a[i].is_zero()) continue;
    if (!u) {
      u = exact_divide(b[i], a[i]);
      if (!u || !is_unit(*u)) return false;
    } else if (b[i] != *u * a[i]) {
      return false;
    }
  }
  return u.has_value();
}

std::string fresh_generator_label(const std::vector<std::string>& labels) {
  std::size_t best = 0;
  for (const auto& l : labels) {
    if (l.size() > 1 && l.size() < 12 && l[0] == 'x' &&
        std::all_of(l.begin() + 1, l.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      best = std::max<std::size_t>(best, std::stoull(l.substr(1)));
    }
  }
  return "x" + std::to_string(best + 1);
}

// Applies trace steps to a presentation and records them.
class Work {
 public:
  explicit Work(ModulePresentation p) : p_(std::move(p)) {}

  ModulePresentation& get() { return p_; }
  ModulePresentation take() { return std::move(p_); }

  void apply(const TraceStep& s) {
    std::visit([this](const auto& x) { do_step(x); }, s);
  }

  void eliminate(std::size_t row, std::size_t gen) { apply(step::Eliminate{row, gen, p_.relations.at(row)}); }
  void drop_row(std::size_t row, std::optional<std::size_t> dup) { apply(step::DropRow{row, dup}); }
  void row_add(std::size_t target, std::size_t source, LaurentPoly f) {
    apply(step::RowAdd{target, source, std::move(f)});
  }
  void col_add(std::size_t target, std::size_t source, LaurentPoly f) {
    apply(step::ColumnAdd{target, source, std::move(f)});
  }

 private:
  void do_step(const step::Eliminate& s) {
    auto& rel = p_.relations;
    if (s.row >= rel.size() || s.gen >= p_.num_generators()) throw UsageError("trace step out of range");
    if (rel[s.row] != s.relation) throw UsageError("trace does not match the presentation");
    const auto unit = is_unit(rel[s.row][s.gen]);
    if (!unit) throw UsageError("elimination coefficient is not a unit");
    const PolyRow pivot = rel[s.row];
    const LaurentPoly inv = unit->inverse().to_poly();
    for (std::size_t i = 0; i < rel.size(); ++i) {
      if (i == s.row || rel[i][s.gen].is_zero()) continue;
      const LaurentPoly f = rel[i][s.gen] * inv;
      for (std::size_t g = 0; g < pivot.size(); ++g) {
        if (!pivot[g].is_zero()) rel[i][g] -= f * pivot[g];
      }
    }
    rel.erase(rel.begin() + static_cast<std::ptrdiff_t>(s.row));
    for (auto& r : rel) r.erase(r.begin() + static_cast<std::ptrdiff_t>(s.gen));
    p_.generators.erase(p_.generators.begin() + static_cast<std::ptrdiff_t>(s.gen));
    p_.phi.erase(p_.phi.begin() + static_cast<std::ptrdiff_t>(s.gen));
    p_.definitions.erase(p_.definitions.begin() + static_cast<std::ptrdiff_t>(s.gen));
    p_.basis_trace.push_back(s);
  }

  void do_step(const step::DropRow& s) {
    auto& rel = p_.relations;
    if (s.row >= rel.size()) throw UsageError("trace step out of range");
    if (s.duplicate_of) {
      if (*s.duplicate_of >= rel.size() || *s.duplicate_of == s.row ||
          !unit_multiple(rel[*s.duplicate_of], rel[s.row])) {
        throw UsageError("dropped row is not a unit multiple of the named row");
      }
    } else if (!is_zero_row(rel[s.row])) {
      throw UsageError("dropped row is not zero");
    }
    rel.erase(rel.begin() + static_cast<std::ptrdiff_t>(s.row));
    p_.basis_trace.push_back(s);
  }

  void do_step(const step::RowAdd& s) {
    auto& rel = p_.relations;
    if (s.target >= rel.size() || s.source >= rel.size() || s.target == s.source) {
      throw UsageError("trace step out of range");
    }
    for (std::size_t g = 0; g < p_.num_generators(); ++g) {
      if (!rel[s.source][g].is_zero()) rel[s.target][g] += s.factor * rel[s.source][g];
    }
    p_.basis_trace.push_back(s);
  }

  void do_step(const step::ColumnAdd& s) {
    const auto n = p_.num_generators();
    if (s.target >= n || s.source >= n || s.target == s.source) throw UsageError("trace step out of range");
    for (auto& r : p_.relations) {
      if (!r[s.source].is_zero()) r[s.target] += s.factor * r[s.source];
    }
    p_.phi[s.source] -= s.factor * p_.phi[s.target];
    auto& def = p_.definitions[s.source];
    const auto& base = p_.definitions[s.target];
    for (std::size_t i = 0; i < def.size(); ++i) {
      if (!base[i].is_zero()) def[i] -= s.factor * base[i];
    }
    auto& label = p_.generators[s.source];
    if (label.empty() || label[0] != 'x') label = fresh_generator_label(p_.generators);
    p_.basis_trace.push_back(s);
  }

  ModulePresentation p_;
};

void drop_trivial_rows(Work& w) {
  bool changed = true;
  while (changed) {
    changed = false;
    auto& rel = w.get().relations;
    for (std::size_t i = 0; i < rel.size() && !changed; ++i) {
      if (is_zero_row(rel[i])) {
        w.drop_row(i, std::nullopt);
        changed = true;
      }
    }
    for (std::size_t i = 0; i < rel.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < rel.size() && !changed; ++j) {
        if (unit_multiple(rel[i], rel[j])) {
          w.drop_row(j, i);
          changed = true;
        }
      }
    }
  }
}

// Unit eliminations, fewest nonzero entries first, then generator order.
void eliminate_units(Work& w) {
  for (;;) {
    drop_trivial_rows(w);
    const auto& rel = w.get().relations;
    std::optional<std::tuple<std::size_t, std::size_t, std::size_t>> best;
    for (std::size_t i = 0; i < rel.size(); ++i) {
      const auto count = nnz(rel[i]);
      for (std::size_t g = 0; g < rel[i].size(); ++g) {
        if (rel[i][g].is_zero() || !is_unit(rel[i][g])) continue;
        std::tuple key{count, g, i};
        if (!best || key < *best) best = key;
      }
    }
    if (!best) return;
    w.eliminate(std::get<2>(*best), std::get<1>(*best));
  }
}

// Generators sharing a phi value are rewritten relative to the first one, so
// all but one generator per value has phi = 0.
void normalize_phi(Work& w) {
  const auto n = w.get().num_generators();
  std::vector<bool> done(n, false);
  for (std::size_t base = 0; base < n; ++base) {
    const LaurentPoly value = w.get().phi[base];
    if (done[base] || value.is_zero()) continue;
    for (std::size_t h = base + 1; h < n; ++h) {
      if (!done[h] && w.get().phi[h] == value) {
        w.col_add(base, h, LaurentPoly::constant(value.num_vars(), 1));
        done[h] = true;
      }
    }
  }
}

constexpr std::size_t kSimplifyBudget = 1000;

bool isolated(const std::vector<PolyRow>& rel, std::size_t i, std::size_t j) {
  if (nnz(rel[i]) != 1) return false;
  for (std::size_t l = 0; l < rel.size(); ++l) {
    if (l != i && !rel[l][j].is_zero()) return false;
  }
  return true;
}

// An entry dividing its whole row and column can be isolated by unimodular
// row and column operations.
std::optional<std::pair<std::size_t, std::size_t>> find_divisibility_pivot(const std::vector<PolyRow>& rel) {
  std::optional<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>> best;
  for (std::size_t i = 0; i < rel.size(); ++i) {
    for (std::size_t j = 0; j < rel[i].size(); ++j) {
      const auto& e = rel[i][j];
      if (e.is_zero() || isolated(rel, i, j)) continue;
      bool ok = true;
      std::size_t weight = 0;
      for (std::size_t k = 0; k < rel[i].size() && ok; ++k) {
        if (!rel[i][k].is_zero()) {
          ++weight;
          ok = exact_divide(rel[i][k], e).has_value();
        }
      }
      for (std::size_t l = 0; l < rel.size() && ok; ++l) {
        if (!rel[l][j].is_zero()) {
          ++weight;
          ok = exact_divide(rel[l][j], e).has_value();
        }
      }
      if (!ok) continue;
      std::tuple key{e.term_count(), weight, i, j};
      if (!best || key < *best) best = key;
    }
  }
  if (!best) return std::nullopt;
  return std::pair{std::get<2>(*best), std::get<3>(*best)};
}

void isolate(Work& w, std::size_t i, std::size_t j) {
  const LaurentPoly e = w.get().relations[i][j];
  const auto n = w.get().num_generators();
  for (std::size_t k = 0; k < n; ++k) {
    const auto& x = w.get().relations[i][k];
    if (k == j || x.is_zero()) continue;
    w.col_add(k, j, -*exact_divide(x, e));
  }
  for (std::size_t l = 0; l < w.get().num_relations(); ++l) {
    const auto& x = w.get().relations[l][j];
    if (l == i || x.is_zero()) continue;
    w.row_add(l, i, -*exact_divide(x, e));
  }
}

// One row or column operation with an exact quotient that lowers the number
// of nonzero entries, the largest drop first. Returns false when none does.
bool sparsify_once(Work& w) {
  const auto& rel = w.get().relations;
  const auto m = rel.size();
  const auto n = m == 0 ? 0 : rel[0].size();
  struct Candidate {
    long delta;
    std::size_t size;
    bool column;
    std::size_t target, source;
    LaurentPoly factor;
  };
  std::optional<Candidate> best;
  auto consider = [&](Candidate c) {
    if (c.delta >= 0) return;
    auto key = [](const Candidate& x) { return std::tuple{x.delta, x.size, x.column, x.target, x.source}; };
    if (!best || key(c) < key(*best)) best = std::move(c);
  };
  // col[k] -= q col[j] with q = rel[i][k] / rel[i][j].
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (rel[i][j].is_zero()) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == j || rel[i][k].is_zero()) continue;
        auto q = exact_divide(rel[i][k], rel[i][j]);
        if (!q) continue;
        long delta = 0;
        for (std::size_t l = 0; l < m; ++l) {
          if (rel[l][j].is_zero()) continue;
          const bool before = !rel[l][k].is_zero();
          const bool after = !(rel[l][k] - *q * rel[l][j]).is_zero();
          delta += static_cast<long>(after) - static_cast<long>(before);
        }
        consider({delta, q->term_count(), true, k, j, -*q});
      }
    }
  }
  // row[l] -= q row[i] with q = rel[l][j] / rel[i][j].
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      if (rel[i][j].is_zero()) continue;
      for (std::size_t l = 0; l < m; ++l) {
        if (l == i || rel[l][j].is_zero()) continue;
        auto q = exact_divide(rel[l][j], rel[i][j]);
        if (!q) continue;
        long delta = 0;
        for (std::size_t k = 0; k < n; ++k) {
          if (rel[i][k].is_zero()) continue;
          const bool before = !rel[l][k].is_zero();
          const bool after = !(rel[l][k] - *q * rel[i][k]).is_zero();
          delta += static_cast<long>(after) - static_cast<long>(before);
        }
        consider({delta, q->term_count(), false, l, i, -*q});
      }
    }
  }
  if (!best) return false;
  if (best->column) {
    w.col_add(best->target, best->source, best->factor);
  } else {
    w.row_add(best->target, best->source, best->factor);
  }
  return true;
}

}  // namespace

ModulePresentation make_presentation(std::size_t num_vars, std::vector<std::string> generators,
                                     std::vector<PolyRow> relations, std::vector<LaurentPoly> phi) {
  ModulePresentation p;
  p.num_vars = num_vars;
  p.generators = std::move(generators);
  p.relations = std::move(relations);
  p.phi = std::move(phi);
  const auto n = p.generators.size();
  p.origin_generators = p.generators;
  p.definitions.assign(n, zero_row(num_vars, n));
  for (std::size_t g = 0; g < n; ++g) p.definitions[g][g] = LaurentPoly::constant(num_vars, 1);
  check_shape(p);
  return p;
}

void check_shape(const ModulePresentation& p) {
  const auto n = p.generators.size();
  auto check_poly = [&](const LaurentPoly& x) {
    if (x.num_vars() != p.num_vars) throw UsageError("presentation entries have inconsistent arity");
  };
  if (p.phi.size() != n || p.definitions.size() != n) throw UsageError("presentation has inconsistent lengths");
  for (const auto& r : p.relations) {
    if (r.size() != n) throw UsageError("relation row length differs from the generator count");
    for (const auto& x : r) check_poly(x);
  }
  for (const auto& x : p.phi) check_poly(x);
  for (const auto& d : p.definitions) {
    if (d.size() != p.origin_generators.size()) throw UsageError("definition length differs from the origin");
    for (const auto& x : d) check_poly(x);
  }
}

ModulePresentation alexander_matrix(const LinkDiagram& d) {
  const std::size_t mu = d.num_components();
  const std::size_t n = d.num_arcs();
  auto t = [&](std::size_t arc) { return LaurentPoly::variable(mu, static_cast<std::size_t>(d.component(arc) - 1)); };
  const LaurentPoly one = LaurentPoly::constant(mu, 1);
  std::vector<PolyRow> rows;
  for (const auto& c : d.crossings()) {
    PolyRow row = zero_row(mu, n);
    row[c.over] += one - t(c.under_right);
    row[c.under_right] += t(c.over);
    row[c.under_left] -= one;
    rows.push_back(std::move(row));
  }
  std::vector<LaurentPoly> phi;
  for (std::size_t a = 0; a < n; ++a) phi.push_back(t(a) - one);
  return make_presentation(mu, d.arcs(), std::move(rows), std::move(phi));
}

LaurentPoly phi(const ModulePresentation& p, const PolyRow& coords) {
  if (coords.size() != p.num_generators()) throw UsageError("element length differs from the generator count");
  LaurentPoly out(p.num_vars);
  for (std::size_t g = 0; g < coords.size(); ++g) {
    if (!coords[g].is_zero()) out += coords[g] * p.phi[g];
  }
  return out;
}

bool phi_annihilates_relations(const ModulePresentation& p) {
  return std::all_of(p.relations.begin(), p.relations.end(), [&](const PolyRow& r) { return phi(p, r).is_zero(); });
}

ModuleElement ModuleElement::generator(std::shared_ptr<const ModulePresentation> p, std::size_t index) {
  if (index >= p->num_generators()) throw UsageError("generator index out of range");
  PolyRow coords = zero_row(p->num_vars, p->num_generators());
  coords[index] = LaurentPoly::constant(p->num_vars, 1);
  return {std::move(p), std::move(coords)};
}

ModuleElement operator+(const ModuleElement& a, const ModuleElement& b) {
  if (a.presentation != b.presentation) throw UsageError("elements of different presentations");
  ModuleElement out = a;
  for (std::size_t g = 0; g < out.coords.size(); ++g) out.coords[g] += b.coords[g];
  return out;
}

ModuleElement operator-(const ModuleElement& a, const ModuleElement& b) {
  if (a.presentation != b.presentation) throw UsageError("elements of different presentations");
  ModuleElement out = a;
  for (std::size_t g = 0; g < out.coords.size(); ++g) out.coords[g] -= b.coords[g];
  return out;
}

ModuleElement operator*(const LaurentPoly& c, const ModuleElement& a) {
  ModuleElement out = a;
  for (auto& x : out.coords) x = c * x;
  return out;
}

ModulePresentation simplify(const ModulePresentation& p) {
  check_shape(p);
  Work w(p);
  eliminate_units(w);
  normalize_phi(w);
  for (std::size_t budget = 0; budget < kSimplifyBudget; ++budget) {
    eliminate_units(w);
    if (auto pivot = find_divisibility_pivot(w.get().relations)) {
      isolate(w, pivot->first, pivot->second);
    } else if (!sparsify_once(w)) {
      break;
    }
  }
  eliminate_units(w);
  return w.take();
}

ModulePresentation replay(const ModulePresentation& start, const std::vector<TraceStep>& trace) {
  Work w(start);
  for (const auto& s : trace) w.apply(s);
  return w.take();
}

PolyRow transport(const ModulePresentation& start, const std::vector<TraceStep>& trace, PolyRow v) {
  if (v.size() != start.num_generators()) throw UsageError("element length differs from the generator count");
  for (const auto& s : trace) {
    if (const auto* e = std::get_if<step::Eliminate>(&s)) {
      if (!v[e->gen].is_zero()) {
        const auto unit = is_unit(e->relation[e->gen]);
        if (!unit) throw UsageError("elimination coefficient is not a unit");
        const LaurentPoly f = v[e->gen] * unit->inverse().to_poly();
        for (std::size_t g = 0; g < v.size(); ++g) {
          if (!e->relation[g].is_zero()) v[g] -= f * e->relation[g];
        }
      }
      v.erase(v.begin() + static_cast<std::ptrdiff_t>(e->gen));
    } else if (const auto* c = std::get_if<step::ColumnAdd>(&s)) {
      if (!v[c->source].is_zero()) v[c->target] += c->factor * v[c->source];
    }
  }
  return v;
}

std::optional<CyclicDecomposition> cyclic_decomposition(const ModulePresentation& p) {
  const auto n = p.num_generators();
  std::vector<std::optional<LaurentPoly>> hit(n);
  for (const auto& r : p.relations) {
    if (nnz(r) != 1) return std::nullopt;
    const auto g = static_cast<std::size_t>(
        std::find_if(r.begin(), r.end(), [](const auto& x) { return !x.is_zero(); }) - r.begin());
    if (hit[g]) return std::nullopt;
    hit[g] = r[g];
  }
  CyclicDecomposition out;
  for (std::size_t g = 0; g < n; ++g) {
    if (!hit[g]) {
      out.free_generators.push_back(g);
    } else if (!is_unit(*hit[g])) {
      out.torsion.push_back({g, canonical_up_to_unit(*hit[g])});
    }
  }
  out.free_rank = out.free_generators.size();
  return out;
}

bool equal_in_decomposition(const ModulePresentation& p, const PolyRow& x, const PolyRow& y) {
  auto dec = cyclic_decomposition(p);
  if (!dec) throw UsageError("presentation is not in decomposed form");
  if (x.size() != p.num_generators() || y.size() != p.num_generators()) {
    throw UsageError("element length differs from the generator count");
  }
  std::vector<std::optional<LaurentPoly>> modulus(p.num_generators());
  for (const auto& r : p.relations) {
    for (std::size_t g = 0; g < r.size(); ++g) {
      if (!r[g].is_zero()) modulus[g] = r[g];
    }
  }
  for (std::size_t g = 0; g < x.size(); ++g) {
    const LaurentPoly diff = x[g] - y[g];
    if (diff.is_zero()) continue;
    if (!modulus[g] || !exact_divide(diff, *modulus[g])) return false;
  }
  return true;
}

namespace {

class MinorTable {
 public:
  MinorTable(const std::vector<PolyRow>& rows, std::size_t num_vars, std::size_t limit)
      : rows_(rows), num_vars_(num_vars), limit_(limit) {}

  LaurentPoly det(std::uint32_t row_mask, std::uint32_t col_mask) {
    if (row_mask == 0) return LaurentPoly::constant(num_vars_, 1);
    const std::uint64_t key = (std::uint64_t{row_mask} << 32U) | col_mask;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (memo_.size() >= limit_) throw CapacityError("elementary ideal expansion exceeded its work limit");

    const auto r = static_cast<std::size_t>(__builtin_ctz(row_mask));
    const std::uint32_t rest = row_mask & (row_mask - 1);
    LaurentPoly sum(num_vars_);
    int sign = 1;
    for (std::uint32_t cols = col_mask; cols != 0; cols &= cols - 1) {
      const auto c = static_cast<std::size_t>(__builtin_ctz(cols));
      const auto& entry = rows_[r][c];
      if (!entry.is_zero()) {
        const LaurentPoly sub = det(rest, col_mask & ~(1U << c));
        if (!sub.is_zero()) {
          if (sign > 0) {
            sum += entry * sub;
          } else {
            sum -= entry * sub;
          }
        }
      }
      sign = -sign;
    }
    memo_.emplace(key, sum);
    return sum;
  }

 private:
  const std::vector<PolyRow>& rows_;
  std::size_t num_vars_;
  std::size_t limit_;
  std::unordered_map<std::uint64_t, LaurentPoly> memo_;
};

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(std::uint32_t)>& fn) {
  if (k > n) return;
  if (k == 0) {
    fn(0);
    return;
  }
  std::uint32_t mask = (1U << k) - 1;
  const std::uint32_t end = 1U << n;
  while (mask < end) {
    fn(mask);
    const std::uint32_t low = mask & (~mask + 1);
    const std::uint32_t ripple = mask + low;
    mask = (((ripple ^ mask) >> 2U) / low) | ripple;
  }
}

}  // namespace

std::vector<LaurentPoly> elementary_ideal(const ModulePresentation& p, std::size_t k) {
  const auto n = p.num_generators();
  const auto m = p.num_relations();
  if (k >= n) return {LaurentPoly::constant(p.num_vars, 1)};
  const std::size_t s = n - k;
  if (s > m) return {};
  if (n > kMaxMinorMatrix || m > kMaxMinorMatrix) {
    throw CapacityError("elementary ideals are limited to " + std::to_string(kMaxMinorMatrix) + "x" +
                        std::to_string(kMaxMinorMatrix) + " matrices; simplify first");
  }
  MinorTable table(p.relations, p.num_vars, 400000);
  std::set<LaurentPoly> out;
  for_each_subset(m, s, [&](std::uint32_t rows) {
    for_each_subset(n, s, [&](std::uint32_t cols) {
      LaurentPoly d = table.det(rows, cols);
      if (!d.is_zero()) out.insert(canonical_up_to_unit(d));
    });
  });
  return {out.begin(), out.end()};
}

ModulePresentation substitute(const ModulePresentation& p, std::span<const MonomialUnit> images) {
  if (images.size() != p.num_vars) throw UsageError("one image per variable is required");
  auto sub = [&](const LaurentPoly& x) { return substitute_monomials(x, images); };
  auto sub_row = [&](PolyRow& r) {
    for (auto& x : r) x = sub(x);
  };
  ModulePresentation out = p;
  out.num_vars = images.empty() ? p.num_vars : images.front().num_vars();
  for (auto& r : out.relations) sub_row(r);
  for (auto& x : out.phi) x = sub(x);
  for (auto& r : out.definitions) sub_row(r);
  for (auto& s : out.basis_trace) {
    if (auto* e = std::get_if<step::Eliminate>(&s)) {
      sub_row(e->relation);
    } else if (auto* a = std::get_if<step::RowAdd>(&s)) {
      a->factor = sub(a->factor);
    } else if (auto* c = std::get_if<step::ColumnAdd>(&s)) {
      c->factor = sub(c->factor);
    }
  }
  return out;
}

ModulePresentation reduce(const ModulePresentation& p) {
  std::vector<MonomialUnit> images(p.num_vars, MonomialUnit{1, Exponents{1}});
  return substitute(p, images);
}

}  // namespace alexq
