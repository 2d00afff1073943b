#include "alexq/quandle.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <unordered_map>

#include "alexq/error.hpp"

namespace alexq {

// --- symbolic -----------------------------------------------------------------

QuandleElement op_tri(const QuandleElement& x, const QuandleElement& y) {
  const auto one = LaurentPoly::constant(x.phi.num_vars(), 1);
  return QuandleElement((y.phi + one) * x.element - x.phi * y.element);
}

QuandleElement op_tri_inv(const QuandleElement& x, const QuandleElement& y) {
  const auto one = LaurentPoly::constant(x.phi.num_vars(), 1);
  const auto unit = is_unit(y.phi + one);
  if (!unit) throw DomainError("right operand is not in U: phi + 1 = " + to_string(y.phi + one));
  return QuandleElement(unit->inverse().to_poly() * (x.element + x.phi * y.element));
}

bool in_U(const QuandleElement& x) {
  return is_unit(x.phi + LaurentPoly::constant(x.phi.num_vars(), 1)).has_value();
}

// --- specialized ----------------------------------------------------------------

namespace {

void check_length(const SpecializedModule& m, const FpVector& v) {
  if (v.size() != m.ambient_dimension()) throw UsageError("vector length does not match the ambient dimension");
}

// out = a*x + b*y
FpVector combine(const PrimeField& f, std::uint64_t a, const FpVector& x, std::uint64_t b, const FpVector& y) {
  FpVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = f.add(f.mul(a, x[i] % f.prime()), f.mul(b, y[i] % f.prime()));
  return out;
}

}  // namespace

FpVector op_tri(const SpecializedModule& m, const FpVector& x, const FpVector& y) {
  check_length(m, x);
  check_length(m, y);
  const auto& f = m.field();
  return combine(f, f.add(m.phi(y), 1), x, f.neg(m.phi(x)), y);
}

FpVector op_tri_inv(const SpecializedModule& m, const FpVector& x, const FpVector& y) {
  check_length(m, x);
  check_length(m, y);
  const auto& f = m.field();
  const auto s = f.add(m.phi(y), 1);
  if (s == 0) throw DomainError("right operand is not in U: phi + 1 = 0");
  const auto inv = f.inv(s);
  return combine(f, inv, x, f.mul(inv, m.phi(x)), y);
}

bool in_U(const SpecializedModule& m, const FpVector& x) { return m.field().add(m.phi(x), 1) != 0; }

// --- words ------------------------------------------------------------------------

QuandleWord word_leaf(std::string label) { return QuandleWord{std::move(label)}; }

QuandleWord word_node(WordOp op, QuandleWord left, QuandleWord right) {
  return QuandleWord{std::make_shared<const QuandleWord::Node>(QuandleWord::Node{op, std::move(left), std::move(right)})};
}

namespace {

class WordParser {
 public:
  explicit WordParser(std::string_view text) : text_(text) {}

  QuandleWord parse() {
    auto w = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return w;
  }

 private:
  static bool label_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '.';
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("word, column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }

  QuandleWord expr() {
    auto w = term();
    for (;;) {
      skip_space();
      if (pos_ >= text_.size() || (text_[pos_] != '>' && text_[pos_] != '<')) return w;
      const auto op = text_[pos_++] == '>' ? WordOp::Tri : WordOp::TriInv;
      w = word_node(op, std::move(w), term());
    }
  }

  QuandleWord term() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of word");
    if (text_[pos_] == '(') {
      ++pos_;
      auto w = expr();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return w;
    }
    const auto start = pos_;
    while (pos_ < text_.size() && label_char(text_[pos_])) ++pos_;
    if (pos_ == start) fail("expected a label or '('");
    return word_leaf(std::string(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

QuandleWord parse_word(std::string_view text) { return WordParser(text).parse(); }

std::string to_string(const QuandleWord& w) {
  if (const auto* leaf = std::get_if<std::string>(&w.value)) return *leaf;
  const auto& node = *std::get<std::shared_ptr<const QuandleWord::Node>>(w.value);
  return "(" + to_string(node.left) + (node.op == WordOp::Tri ? " > " : " < ") + to_string(node.right) + ")";
}

namespace {

QuandleElement eval_rec(const QuandleWord& w, const std::shared_ptr<const ModulePresentation>& p) {
  if (const auto* leaf = std::get_if<std::string>(&w.value)) {
    const auto it = std::find(p->generators.begin(), p->generators.end(), *leaf);
    if (it == p->generators.end()) throw UsageError("unknown generator '" + *leaf + "' in word");
    return QuandleElement(ModuleElement::generator(p, static_cast<std::size_t>(it - p->generators.begin())));
  }
  const auto& node = *std::get<std::shared_ptr<const QuandleWord::Node>>(w.value);
  const auto left = eval_rec(node.left, p);
  const auto right = eval_rec(node.right, p);
  return node.op == WordOp::Tri ? op_tri(left, right) : op_tri_inv(left, right);
}

}  // namespace

ModuleElement eval_word(const QuandleWord& w, std::shared_ptr<const ModulePresentation> p) {
  if (!p) throw UsageError("null presentation");
  return eval_rec(w, p).element;
}

ModuleElement eval_word(const QuandleWord& w, const LinkDiagram& d) {
  return eval_word(w, std::make_shared<const ModulePresentation>(alexander_matrix(d)));
}

// --- finite quandles --------------------------------------------------------------

FiniteQuandle FiniteQuandle::from_tables(std::size_t n, std::vector<std::uint32_t> tri,
                                         std::vector<std::uint32_t> tri_inv) {
  if (n > kMaxTableElements) throw CapacityError("table quandles are limited to " + std::to_string(kMaxTableElements) + " elements");
  if (tri.size() != n * n || tri_inv.size() != n * n) throw UsageError("operation tables must have n*n entries");
  for (std::size_t i = 0; i < n * n; ++i) {
    if (tri[i] >= n || tri_inv[i] >= n) throw UsageError("operation table entry out of range");
  }
  FiniteQuandle q;
  q.size_ = n;
  q.tri_ = std::move(tri);
  q.tri_inv_ = std::move(tri_inv);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (q.tri_inv(q.tri(x, y), y) != x) throw UsageError("x < y does not invert x > y");
    }
  }
  // Every element generates; the actions are the table columns.
  for (std::uint32_t y = 0; y < n; ++y) {
    q.generators_.push_back(y);
    std::vector<std::uint32_t> a(n), ai(n);
    for (std::size_t x = 0; x < n; ++x) {
      a[x] = q.tri(x, y);
      ai[x] = q.tri_inv(x, y);
    }
    q.action_.push_back(std::move(a));
    q.action_inv_.push_back(std::move(ai));
  }
  return q;
}

namespace {

struct VectorHash {
  std::size_t operator()(const FpVector& v) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto x : v) {
      h ^= x;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

FiniteQuandle generate_QA(const SpecializedModule& m, const std::vector<FpVector>& generators, std::size_t cap,
                          bool build_tables) {
  const auto& f = m.field();
  const auto& free = m.free_columns();
  const auto dim = free.size();
  FpVector phi_c(dim);
  for (std::size_t i = 0; i < dim; ++i) phi_c[i] = m.phi_functional()[free[i]];
  auto phi_of = [&](const FpVector& c) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < dim; ++i) acc = f.add(acc, f.mul(c[i], phi_c[i]));
    return acc;
  };
  auto tri = [&](const FpVector& x, std::uint64_t px, const FpVector& y, std::uint64_t py) {
    return combine(f, f.add(py, 1), x, f.neg(px), y);
  };
  auto tri_inv = [&](const FpVector& x, std::uint64_t px, const FpVector& y, std::uint64_t py) {
    const auto inv = f.inv(f.add(py, 1));
    return combine(f, inv, x, f.mul(inv, px), y);
  };

  FiniteQuandle q;
  q.prime_ = m.prime();
  std::unordered_map<FpVector, std::uint32_t, VectorHash> index;
  auto intern = [&](FpVector c, ElementOrigin origin) -> std::uint32_t {
    auto [it, inserted] = index.try_emplace(std::move(c), static_cast<std::uint32_t>(q.coords_.size()));
    if (inserted) {
      if (q.coords_.size() >= cap) throw CapacityError("quandle closure exceeds " + std::to_string(cap) + " elements");
      q.coords_.push_back(it->first);
      q.phi_.push_back(phi_of(it->first));
      q.origins_.push_back(origin);
    }
    return it->second;
  };

  for (std::size_t k = 0; k < generators.size(); ++k) {
    const auto c = m.coordinates(generators[k]);
    if (f.add(phi_of(c), 1) == 0) throw UsageError("generator " + std::to_string(k) + " is not in U");
    const auto id = intern(c, {ElementOrigin::Kind::Generator, 0, static_cast<std::uint32_t>(q.generators_.size())});
    q.generators_.push_back(id);
  }
  const auto ng = q.generators_.size();
  q.action_.assign(ng, {});
  q.action_inv_.assign(ng, {});

  // Right actions of the generators suffice: the action of y > g is conjugate
  // to that of y by the action of g, so the closure is a subquandle.
  for (std::size_t x = 0; x < q.coords_.size(); ++x) {
    for (std::size_t k = 0; k < ng; ++k) {
      const auto g = q.generators_[k];
      if (f.add(q.phi_[g], 1) == 0) throw InternalError("generator left U");
      const auto xc = q.coords_[x];
      const auto px = q.phi_[x];
      const auto a = intern(tri(xc, px, q.coords_[g], q.phi_[g]),
                            {ElementOrigin::Kind::Tri, static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(k)});
      const auto b = intern(tri_inv(xc, px, q.coords_[g], q.phi_[g]),
                            {ElementOrigin::Kind::TriInv, static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(k)});
      q.action_[k].push_back(a);
      q.action_inv_[k].push_back(b);
    }
  }
  q.size_ = q.coords_.size();

  if (build_tables && q.size_ <= kMaxTableElements) {
    const auto n = q.size_;
    q.tri_.assign(n * n, 0);
    q.tri_inv_.assign(n * n, 0);
    for (std::size_t y = 0; y < n; ++y) {
      if (f.add(q.phi_[y], 1) == 0) throw InternalError("closure element left U");
      for (std::size_t x = 0; x < n; ++x) {
        const auto a = index.find(tri(q.coords_[x], q.phi_[x], q.coords_[y], q.phi_[y]));
        const auto b = index.find(tri_inv(q.coords_[x], q.phi_[x], q.coords_[y], q.phi_[y]));
        if (a == index.end() || b == index.end()) throw InternalError("generated quandle is not closed");
        q.tri_[x * n + y] = a->second;
        q.tri_inv_[x * n + y] = b->second;
      }
    }
  }
  return q;
}

FiniteQuandle generate_QA(const SpecializedModule& m, bool build_tables) {
  std::vector<FpVector> gens;
  for (std::size_t g = 0; g < m.ambient_dimension(); ++g) gens.push_back(m.generator(g));
  return generate_QA(m, gens, kMaxQuandleElements, build_tables);
}

std::vector<std::vector<std::uint32_t>> orbits(const FiniteQuandle& q) {
  const auto n = q.size();
  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  // Orbits of a generated quandle are orbits of the generators' actions.
  for (std::size_t k = 0; k < q.generators().size(); ++k) {
    for (std::uint32_t x = 0; x < n; ++x) {
      unite(x, q.generator_action()[k][x]);
      unite(x, q.generator_action_inv()[k][x]);
    }
  }
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::int64_t> slot(n, -1);
  for (std::uint32_t x = 0; x < n; ++x) {
    const auto r = find(x);
    if (slot[r] < 0) {
      slot[r] = static_cast<std::int64_t>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(slot[r])].push_back(x);
  }
  return out;
}

AxiomReport check_axioms(const FiniteQuandle& q, std::size_t max_size) {
  AxiomReport r;
  if (!q.has_tables() || q.size() > max_size) return r;
  r.checked = true;
  r.q1 = r.q2 = r.q3 = true;
  const auto n = q.size();
  auto note = [&](std::string what) {
    if (r.counterexample.empty()) r.counterexample = std::move(what);
  };
  for (std::size_t x = 0; x < n; ++x) {
    if (q.tri(x, x) != x) {
      r.q1 = false;
      note("Q1 fails at x=" + std::to_string(x));
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (q.tri_inv(q.tri(x, y), y) != x || q.tri(q.tri_inv(x, y), y) != x) {
        r.q2 = false;
        note("Q2 fails at x=" + std::to_string(x) + ", y=" + std::to_string(y));
      }
    }
  }
  for (std::size_t x = 0; x < n && r.q3; ++x) {
    for (std::size_t y = 0; y < n && r.q3; ++y) {
      const auto xy = q.tri(x, y);
      for (std::size_t z = 0; z < n; ++z) {
        if (q.tri(xy, z) != q.tri(q.tri(x, z), q.tri(y, z))) {
          r.q3 = false;
          note("Q3 fails at x=" + std::to_string(x) + ", y=" + std::to_string(y) + ", z=" + std::to_string(z));
          break;
        }
      }
    }
  }
  return r;
}

namespace {

void require_module_quandle(const FiniteQuandle& q) {
  if (!q.prime()) throw UsageError("quandle presentation needs a quandle generated in a specialized module");
  if (!q.has_tables()) {
    throw CapacityError("quandle presentation needs operation tables (at most " + std::to_string(kMaxTableElements) +
                        " elements)");
  }
}

// Coefficients of the two relation families for the pair (x, y), as
// (x, y, x > y) and (x, y, x < y) weights with t(x) = phi(x) + 1.
struct PairRelations {
  std::uint64_t a1x, a1y, a2x, a2y;
};

PairRelations pair_relations(const PrimeField& f, std::uint64_t phix, std::uint64_t phiy) {
  const auto tx = f.add(phix, 1);
  const auto ty = f.add(phiy, 1);
  const auto ity = f.inv(ty);
  return {ty, f.sub(1, tx), ity, f.mul(ity, f.sub(tx, 1))};
}

}  // namespace

std::vector<FpVector> quandle_presentation_rows(const FiniteQuandle& q) {
  require_module_quandle(q);
  const PrimeField f(*q.prime());
  const auto n = q.size();
  std::vector<FpVector> rows;
  rows.reserve(2 * n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const auto c = pair_relations(f, q.phi()[x], q.phi()[y]);
      FpVector r1(n, 0), r2(n, 0);
      r1[x] = f.add(r1[x], c.a1x);
      r1[y] = f.add(r1[y], c.a1y);
      r1[q.tri(x, y)] = f.sub(r1[q.tri(x, y)], 1);
      r2[x] = f.add(r2[x], c.a2x);
      r2[y] = f.add(r2[y], c.a2y);
      r2[q.tri_inv(x, y)] = f.sub(r2[q.tri_inv(x, y)], 1);
      rows.push_back(std::move(r1));
      rows.push_back(std::move(r2));
    }
  }
  return rows;
}

QuandlePresentation quandle_presentation(const FiniteQuandle& q) {
  require_module_quandle(q);
  const PrimeField f(*q.prime());
  const auto n = q.size();

  // Generating elements become the basis; every other element is rewritten
  // through the relation of the pair it was discovered from, which holds
  // with coefficient -1 on the new element (a Tietze elimination).
  std::vector<std::int64_t> basis_slot(n, -1);
  std::size_t nb = 0;
  for (std::size_t x = 0; x < n; ++x) {
    if (q.origins()[x].kind == ElementOrigin::Kind::Generator) basis_slot[x] = static_cast<std::int64_t>(nb++);
  }
  std::vector<FpVector> expr(n);
  for (std::size_t x = 0; x < n; ++x) {
    const auto& o = q.origins()[x];
    if (o.kind == ElementOrigin::Kind::Generator) {
      expr[x].assign(nb, 0);
      expr[x][static_cast<std::size_t>(basis_slot[x])] = 1;
      continue;
    }
    const auto p = o.parent;
    const auto g = q.generators()[o.generator];
    if (p >= x || g >= x) throw InternalError("discovery order is not triangular");
    const auto c = pair_relations(f, q.phi()[p], q.phi()[g]);
    const auto ax = o.kind == ElementOrigin::Kind::Tri ? c.a1x : c.a2x;
    const auto ay = o.kind == ElementOrigin::Kind::Tri ? c.a1y : c.a2y;
    expr[x] = combine(f, ax, expr[p], ay, expr[g]);
  }

  Echelon e(f, nb);
  for (std::size_t x = 0; x < n && e.rank() < nb; ++x) {
    for (std::size_t y = 0; y < n && e.rank() < nb; ++y) {
      const auto c = pair_relations(f, q.phi()[x], q.phi()[y]);
      auto r1 = combine(f, c.a1x, expr[x], c.a1y, expr[y]);
      f.axpy(r1, f.neg(1), expr[q.tri(x, y)]);
      e.insert(std::move(r1));
      auto r2 = combine(f, c.a2x, expr[x], c.a2y, expr[y]);
      f.axpy(r2, f.neg(1), expr[q.tri_inv(x, y)]);
      e.insert(std::move(r2));
    }
  }
  QuandlePresentation out;
  out.num_generators = n;
  out.num_relations = 2 * n * n;
  out.dimension = nb - e.rank();
  out.rank = n - out.dimension;
  return out;
}

}  // namespace alexq
