#pragma once

// Quandle structure on module elements:
//   x > y  = (phi(y) + 1) x - phi(x) y
//   x < y  = (phi(y) + 1)^-1 (x + phi(x) y)      (needs phi(y) + 1 a unit)
// symbolically over the Laurent ring and numerically in prime-field
// specializations, plus finite quandles generated by arc classes.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "alexq/presentation.hpp"
#include "alexq/specialize.hpp"

namespace alexq {

// --- symbolic -----------------------------------------------------------------

struct QuandleElement {
  ModuleElement element;
  LaurentPoly phi;  // cached phi(element)

  explicit QuandleElement(ModuleElement e) : element(std::move(e)), phi(element.phi()) {}
};

QuandleElement op_tri(const QuandleElement& x, const QuandleElement& y);
// Throws DomainError when phi(y) + 1 is not a unit.
QuandleElement op_tri_inv(const QuandleElement& x, const QuandleElement& y);
bool in_U(const QuandleElement& x);

// --- specialized ----------------------------------------------------------------

// Operations on ambient vectors of a specialized module. Results are not
// reduced; compare classes with SpecializedModule::equal.
FpVector op_tri(const SpecializedModule& m, const FpVector& x, const FpVector& y);
// Throws DomainError when phi(y) + 1 = 0.
FpVector op_tri_inv(const SpecializedModule& m, const FpVector& x, const FpVector& y);
bool in_U(const SpecializedModule& m, const FpVector& x);

// --- words ------------------------------------------------------------------------

enum class WordOp : std::uint8_t { Tri, TriInv };

struct QuandleWord {
  struct Node;
  std::variant<std::string, std::shared_ptr<const Node>> value;  // leaf label or operation
};
struct QuandleWord::Node {
  WordOp op;
  QuandleWord left;
  QuandleWord right;
};

QuandleWord word_leaf(std::string label);
QuandleWord word_node(WordOp op, QuandleWord left, QuandleWord right);

// Grammar: expr := term (('>' | '<') term)*, left associative;
// term := label | '(' expr ')'. Labels are [A-Za-z0-9_.]+. Throws ParseError.
QuandleWord parse_word(std::string_view text);
std::string to_string(const QuandleWord& w);

// Value of the word in the free module on the presentation's generators
// (leaves are generator labels), computed with the presentation's phi.
// Throws UsageError on unknown labels and DomainError when a right operand
// of '<' has phi + 1 not a unit.
ModuleElement eval_word(const QuandleWord& w, std::shared_ptr<const ModulePresentation> p);
ModuleElement eval_word(const QuandleWord& w, const LinkDiagram& d);

// --- finite quandles --------------------------------------------------------------

inline constexpr std::size_t kMaxQuandleElements = 1'000'000;
inline constexpr std::size_t kMaxTableElements = 2048;

// How an element of a generated quandle was first reached.
struct ElementOrigin {
  enum class Kind : std::uint8_t { Generator, Tri, TriInv } kind = Kind::Generator;
  std::uint32_t parent = 0;     // element acted on (Tri / TriInv)
  std::uint32_t generator = 0;  // index into generators() (all kinds)
};

class FiniteQuandle {
 public:
  // Explicit operation tables (row-major, size n*n). Throws UsageError when
  // the tables are not total or x < y fails to invert x > y.
  static FiniteQuandle from_tables(std::size_t n, std::vector<std::uint32_t> tri, std::vector<std::uint32_t> tri_inv);

  std::size_t size() const { return size_; }
  bool has_tables() const { return !tri_.empty() || size_ == 0; }
  std::uint32_t tri(std::size_t x, std::size_t y) const { return tri_[x * size_ + y]; }
  std::uint32_t tri_inv(std::size_t x, std::size_t y) const { return tri_inv_[x * size_ + y]; }

  // Generating elements and their right actions: action[k][x] = x > generators[k].
  const std::vector<std::uint32_t>& generators() const { return generators_; }
  const std::vector<std::vector<std::uint32_t>>& generator_action() const { return action_; }
  const std::vector<std::vector<std::uint32_t>>& generator_action_inv() const { return action_inv_; }

  // Present for quandles generated inside a specialized module: quotient
  // coordinates, phi, and discovery history.
  std::optional<std::uint64_t> prime() const { return prime_; }
  const std::vector<FpVector>& coordinates() const { return coords_; }
  const std::vector<std::uint64_t>& phi() const { return phi_; }
  const std::vector<ElementOrigin>& origins() const { return origins_; }

 private:
  friend FiniteQuandle generate_QA(const SpecializedModule&, const std::vector<FpVector>&, std::size_t, bool);

  std::size_t size_ = 0;
  std::vector<std::uint32_t> tri_;
  std::vector<std::uint32_t> tri_inv_;
  std::vector<std::uint32_t> generators_;
  std::vector<std::vector<std::uint32_t>> action_;
  std::vector<std::vector<std::uint32_t>> action_inv_;
  std::optional<std::uint64_t> prime_;
  std::vector<FpVector> coords_;
  std::vector<std::uint64_t> phi_;
  std::vector<ElementOrigin> origins_;
};

// Smallest subset containing the given classes and closed under > and <,
// found breadth-first; elements are numbered in discovery order. Tables are
// filled when requested and the result has at most kMaxTableElements
// elements; the generator actions are always filled. Throws
// CapacityError beyond `cap` elements and UsageError when a generator is not
// in U.
FiniteQuandle generate_QA(const SpecializedModule& m, const std::vector<FpVector>& generators,
                          std::size_t cap = kMaxQuandleElements, bool build_tables = true);
// Generated by the classes of all generators of the module (the arcs, for a
// diagram presentation).
FiniteQuandle generate_QA(const SpecializedModule& m, bool build_tables = true);

// Classes of x ~ x > y ~ x < y, each sorted, ordered by smallest element.
std::vector<std::vector<std::uint32_t>> orbits(const FiniteQuandle& q);

struct AxiomReport {
  bool checked = false;  // false when the quandle has no tables
  bool q1 = false;
  bool q2 = false;
  bool q3 = false;
  std::string counterexample;  // first failure, empty when all hold
  bool ok() const { return checked && q1 && q2 && q3; }
};

// Exhaustive check of x > x = x; (x > y) < y = x = (x < y) > y;
// (x > y) > z = (x > z) > (y > z). Refuses quandles larger than max_size.
AxiomReport check_axioms(const FiniteQuandle& q, std::size_t max_size = kMaxTableElements);

// The module presented by one generator per element of a generated quandle
// and, for every ordered pair (x, y), the relations
//   t_k(y) x + (1 - t_k(x)) y - (x > y)
//   t_k(y)^-1 x + t_k(y)^-1 (t_k(x) - 1) y - (x < y)
// with t_k(x) = phi(x) + 1 specialized. The dimension is computed exactly by
// using each element's discovery relation to rewrite it over the generators.
struct QuandlePresentation {
  std::size_t num_generators = 0;
  std::size_t num_relations = 0;
  std::size_t rank = 0;
  std::size_t dimension = 0;
};
QuandlePresentation quandle_presentation(const FiniteQuandle& q);

// Dense relation rows of the same presentation, for small quandles.
std::vector<FpVector> quandle_presentation_rows(const FiniteQuandle& q);

}  // namespace alexq
