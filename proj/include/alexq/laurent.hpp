#pragma once

// Exact arithmetic in the Laurent polynomial ring Z[t1^±1, ..., tN^±1].

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace alexq {

using Coeff = mpz_class;
using Exponents = std::vector<std::int32_t>;

inline constexpr std::size_t kMaxVariables = 64;

// Graded-lexicographic comparison with t1 > t2 > ... > tN.
std::strong_ordering graded_lex_compare(const Exponents& a, const Exponents& b);

struct GradedLexLess {
  bool operator()(const Exponents& a, const Exponents& b) const {
    return graded_lex_compare(a, b) < 0;
  }
};

class LaurentPoly;

// A unit of the ring: ±t1^e1 ... tN^eN.
struct MonomialUnit {
  int sign = 1;
  Exponents exponents;

  std::size_t num_vars() const { return exponents.size(); }
  MonomialUnit inverse() const;
  LaurentPoly to_poly() const;

  friend MonomialUnit operator*(const MonomialUnit& a, const MonomialUnit& b);
  friend bool operator==(const MonomialUnit&, const MonomialUnit&) = default;
};

class LaurentPoly {
 public:
  // Terms sorted ascending in graded-lex order; no stored coefficient is zero.
  using TermMap = std::map<Exponents, Coeff, GradedLexLess>;

  explicit LaurentPoly(std::size_t num_vars = 1);

  static LaurentPoly constant(std::size_t num_vars, const Coeff& c);
  // t_{index+1}, i.e. index is zero-based.
  static LaurentPoly variable(std::size_t num_vars, std::size_t index);
  static LaurentPoly monomial(const Coeff& c, Exponents exponents);

  std::size_t num_vars() const { return num_vars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  // Highest term in graded-lex order. Precondition: nonzero.
  const TermMap::value_type& leading_term() const;

  // Coefficient of the given monomial (zero if absent).
  Coeff coefficient(const Exponents& e) const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  LaurentPoly& operator*=(const LaurentPoly& other);
  LaurentPoly& operator*=(const MonomialUnit& u);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const MonomialUnit& u) { return a *= u; }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);
  // Total order (by arity, then term lists in graded-lex order); only used for
  // sorting and deduplication.
  friend bool operator<(const LaurentPoly& a, const LaurentPoly& b);

 private:
  void check_same_arity(const LaurentPoly& other) const;
  void add_term(const Exponents& e, const Coeff& c);

  std::size_t num_vars_;
  TermMap terms_;
};

// Returns the unit when p is ±(single monomial).
std::optional<MonomialUnit> is_unit(const LaurentPoly& p);

// Ring homomorphism t_i -> images[i]. All images share the target arity.
LaurentPoly substitute_monomials(const LaurentPoly& p, std::span<const MonomialUnit> images);

// Image of p under t_i -> assignments[i] in F_prime.
std::uint64_t evaluate_in_prime_field(const LaurentPoly& p, std::uint64_t prime,
                                      std::span<const std::uint64_t> assignments);

// u*p for the unique unit u making every variable's minimum exponent zero and
// the graded-lex leading coefficient positive.
LaurentPoly canonical_up_to_unit(const LaurentPoly& p);
bool associated(const LaurentPoly& a, const LaurentPoly& b);

// q with q*divisor == p, when it exists in the Laurent ring.
std::optional<LaurentPoly> exact_divide(const LaurentPoly& p, const LaurentPoly& divisor);

std::string to_string(const LaurentPoly& p);
// Custom variable names, e.g. {"t"} for the single-variable reduced ring.
std::string to_string(const LaurentPoly& p, std::span<const std::string> names);

// Accepts sums of products of integers, variables t1..tN (or `t` when
// num_vars == 1), parentheses, and `^` with signed integer exponents.
LaurentPoly parse_laurent(std::string_view text, std::size_t num_vars);

}  // namespace alexq
