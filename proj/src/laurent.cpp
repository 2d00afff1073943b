#include "alexq/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "alexq/error.hpp"

namespace alexq {

namespace {

std::int32_t checked_exponent(std::int64_t v) {
  if (v > std::numeric_limits<std::int32_t>::max() || v < std::numeric_limits<std::int32_t>::min()) {
    throw CapacityError("Laurent exponent out of range");
  }
  return static_cast<std::int32_t>(v);
}

Exponents add_exponents(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = checked_exponent(std::int64_t{a[i]} + b[i]);
  }
  return out;
}

// Moduli are primes below 2^31, so the product fits.
std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return (a % m) * (b % m) % m;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mod_mul(result, base, m);
    base = mod_mul(base, base, m);
    exp >>= 1U;
  }
  return result;
}

}  // namespace

std::strong_ordering graded_lex_compare(const Exponents& a, const Exponents& b) {
  std::int64_t da = 0;
  std::int64_t db = 0;
  for (auto e : a) da += e;
  for (auto e : b) db += e;
  if (da != db) return da <=> db;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] <=> b[i];
  }
  return a.size() <=> b.size();
}

// --- MonomialUnit ----------------------------------------------------------

MonomialUnit MonomialUnit::inverse() const {
  MonomialUnit inv{sign, exponents};
  for (auto& e : inv.exponents) e = checked_exponent(-std::int64_t{e});
  return inv;
}

LaurentPoly MonomialUnit::to_poly() const { return LaurentPoly::monomial(Coeff(sign), exponents); }

MonomialUnit operator*(const MonomialUnit& a, const MonomialUnit& b) {
  if (a.num_vars() != b.num_vars()) throw UsageError("monomial units of different arity");
  return MonomialUnit{a.sign * b.sign, add_exponents(a.exponents, b.exponents)};
}

// --- LaurentPoly -----------------------------------------------------------

LaurentPoly::LaurentPoly(std::size_t num_vars) : num_vars_(num_vars) {
  if (num_vars == 0 || num_vars > kMaxVariables) {
    throw UsageError("number of Laurent variables must be in 1.." + std::to_string(kMaxVariables));
  }
}

LaurentPoly LaurentPoly::constant(std::size_t num_vars, const Coeff& c) {
  LaurentPoly p(num_vars);
  p.add_term(Exponents(num_vars, 0), c);
  return p;
}

LaurentPoly LaurentPoly::variable(std::size_t num_vars, std::size_t index) {
  if (index >= num_vars) throw UsageError("variable index out of range");
  Exponents e(num_vars, 0);
  e[index] = 1;
  return monomial(Coeff(1), std::move(e));
}

LaurentPoly LaurentPoly::monomial(const Coeff& c, Exponents exponents) {
  LaurentPoly p(exponents.size());
  p.add_term(exponents, c);
  return p;
}

bool LaurentPoly::is_one() const {
  if (terms_.size() != 1) return false;
  const auto& [e, c] = *terms_.begin();
  return c == 1 && std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
}

const LaurentPoly::TermMap::value_type& LaurentPoly::leading_term() const {
  if (terms_.empty()) throw UsageError("leading term of the zero polynomial");
  return *terms_.rbegin();
}

Coeff LaurentPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Coeff(0) : it->second;
}

void LaurentPoly::check_same_arity(const LaurentPoly& other) const {
  if (num_vars_ != other.num_vars_) {
    throw UsageError("Laurent polynomials over different numbers of variables (" +
                     std::to_string(num_vars_) + " vs " + std::to_string(other.num_vars_) + ")");
  }
}

void LaurentPoly::add_term(const Exponents& e, const Coeff& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  check_same_arity(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  check_same_arity(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  a.check_same_arity(b);
  LaurentPoly out(a.num_vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) out.add_term(add_exponents(ea, eb), ca * cb);
  }
  return out;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& other) { return *this = *this * other; }

LaurentPoly& LaurentPoly::operator*=(const MonomialUnit& u) {
  if (u.num_vars() != num_vars_) throw UsageError("monomial unit of different arity");
  TermMap shifted;
  for (const auto& [e, c] : terms_) {
    shifted.emplace(add_exponents(e, u.exponents), u.sign < 0 ? Coeff(-c) : c);
  }
  terms_ = std::move(shifted);
  return *this;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
}

bool operator<(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.num_vars_ != b.num_vars_) return a.num_vars_ < b.num_vars_;
  auto ia = a.terms_.rbegin();
  auto ib = b.terms_.rbegin();
  for (; ia != a.terms_.rend() && ib != b.terms_.rend(); ++ia, ++ib) {
    auto c = graded_lex_compare(ia->first, ib->first);
    if (c != 0) return c < 0;
    if (ia->second != ib->second) return ia->second < ib->second;
  }
  return ia == a.terms_.rend() && ib != b.terms_.rend();
}

// --- free functions ---------------------------------------------------------

std::optional<MonomialUnit> is_unit(const LaurentPoly& p) {
  if (p.term_count() != 1) return std::nullopt;
  const auto& [e, c] = *p.terms().begin();
  if (c == 1) return MonomialUnit{1, e};
  if (c == -1) return MonomialUnit{-1, e};
  return std::nullopt;
}

LaurentPoly substitute_monomials(const LaurentPoly& p, std::span<const MonomialUnit> images) {
  if (images.size() != p.num_vars()) {
    throw UsageError("substitution needs one image per variable");
  }
  const std::size_t target = images.front().num_vars();
  for (const auto& img : images) {
    if (img.num_vars() != target) throw UsageError("substitution images of mixed arity");
  }
  LaurentPoly out(target);
  for (const auto& [e, c] : p.terms()) {
    MonomialUnit term{1, Exponents(target, 0)};
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      MonomialUnit base = e[i] > 0 ? images[i] : images[i].inverse();
      const std::int64_t n = e[i] > 0 ? e[i] : -std::int64_t{e[i]};
      for (std::size_t j = 0; j < target; ++j) {
        term.exponents[j] = checked_exponent(term.exponents[j] + n * base.exponents[j]);
      }
      if (base.sign < 0 && (n % 2) == 1) term.sign = -term.sign;
    }
    out += LaurentPoly::monomial(term.sign < 0 ? Coeff(-c) : c, term.exponents);
  }
  return out;
}

std::uint64_t evaluate_in_prime_field(const LaurentPoly& p, std::uint64_t prime,
                                      std::span<const std::uint64_t> assignments) {
  if (prime < 2 || prime >= (std::uint64_t{1} << 31)) throw UsageError("evaluation modulus must be a prime below 2^31");
  if (assignments.size() != p.num_vars()) {
    throw UsageError("evaluation needs one assignment per variable");
  }
  std::vector<std::uint64_t> values(assignments.size());
  std::vector<std::uint64_t> inverses(assignments.size());
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    values[i] = assignments[i] % prime;
    if (values[i] == 0) throw UsageError("assignment for t" + std::to_string(i + 1) + " is zero mod p");
    inverses[i] = mod_pow(values[i], prime - 2, prime);
  }
  std::uint64_t acc = 0;
  for (const auto& [e, c] : p.terms()) {
    std::uint64_t term = mpz_fdiv_ui(c.get_mpz_t(), prime);
    for (std::size_t i = 0; i < e.size() && term != 0; ++i) {
      if (e[i] > 0) {
        term = mod_mul(term, mod_pow(values[i], static_cast<std::uint64_t>(e[i]), prime), prime);
      } else if (e[i] < 0) {
        term = mod_mul(term, mod_pow(inverses[i], static_cast<std::uint64_t>(-std::int64_t{e[i]}), prime),
                       prime);
      }
    }
    acc = (acc + term) % prime;
  }
  return acc;
}

namespace {

// Shift that makes every variable's minimum exponent zero.
MonomialUnit normalizing_shift(const LaurentPoly& p) {
  Exponents mins(p.num_vars(), std::numeric_limits<std::int32_t>::max());
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i) mins[i] = std::min(mins[i], e[i]);
  }
  for (auto& m : mins) m = checked_exponent(-std::int64_t{m});
  return MonomialUnit{1, mins};
}

}  // namespace

LaurentPoly canonical_up_to_unit(const LaurentPoly& p) {
  if (p.is_zero()) throw UsageError("canonical form of the zero polynomial");
  LaurentPoly out = p * normalizing_shift(p);
  if (out.leading_term().second < 0) out = -out;
  return out;
}

bool associated(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return canonical_up_to_unit(a) == canonical_up_to_unit(b);
}

std::optional<LaurentPoly> exact_divide(const LaurentPoly& p, const LaurentPoly& divisor) {
  if (divisor.is_zero()) throw DomainError("division by the zero polynomial");
  if (p.num_vars() != divisor.num_vars()) throw UsageError("division across different arities");
  if (p.is_zero()) return LaurentPoly(p.num_vars());

  // Both sides become honest polynomials with no monomial factor; divisibility
  // in the Laurent ring then coincides with divisibility in Z[t].
  const MonomialUnit shift_p = normalizing_shift(p);
  const MonomialUnit shift_d = normalizing_shift(divisor);
  LaurentPoly rem = p * shift_p;
  const LaurentPoly d = divisor * shift_d;
  const auto& [lead_e, lead_c] = d.leading_term();

  LaurentPoly quotient(p.num_vars());
  while (!rem.is_zero()) {
    const auto& [re, rc] = rem.leading_term();
    Exponents qe(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) {
      if (re[i] < lead_e[i]) return std::nullopt;
      qe[i] = re[i] - lead_e[i];
    }
    if (!mpz_divisible_p(rc.get_mpz_t(), lead_c.get_mpz_t())) return std::nullopt;
    Coeff qc = rc / lead_c;
    LaurentPoly term = LaurentPoly::monomial(qc, std::move(qe));
    rem -= term * d;
    quotient += term;
  }
  // p*shift_p = quotient * divisor*shift_d  =>  p = quotient * shift_d / shift_p * divisor.
  return quotient * (shift_d * shift_p.inverse());
}

// --- text -------------------------------------------------------------------

std::string to_string(const LaurentPoly& p) {
  std::vector<std::string> names;
  names.reserve(p.num_vars());
  for (std::size_t i = 0; i < p.num_vars(); ++i) names.push_back("t" + std::to_string(i + 1));
  return to_string(p, names);
}

std::string to_string(const LaurentPoly& p, std::span<const std::string> names) {
  if (names.size() != p.num_vars()) throw UsageError("variable name list of wrong length");
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    const bool negative = c < 0;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;

    std::string vars;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!vars.empty()) vars += "*";
      vars += names[i];
      if (e[i] != 1) vars += "^" + std::to_string(e[i]);
    }
    Coeff mag = abs(c);
    if (vars.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += vars;
    } else {
      out += mag.get_str() + "*" + vars;
    }
  }
  return out;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t num_vars) : text_(text), num_vars_(num_vars) {}

  LaurentPoly parse() {
    LaurentPoly p = parse_sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("polynomial '" + std::string(text_) + "' at column " + std::to_string(pos_ + 1) +
                     ": " + msg);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  LaurentPoly parse_sum() {
    LaurentPoly acc = parse_product();
    for (;;) {
      if (accept('+')) {
        acc += parse_product();
      } else if (accept('-')) {
        acc -= parse_product();
      } else {
        return acc;
      }
    }
  }

  LaurentPoly parse_product() {
    LaurentPoly acc = parse_signed();
    while (accept('*')) acc *= parse_signed();
    return acc;
  }

  LaurentPoly parse_signed() {
    if (accept('-')) return -parse_signed();
    if (accept('+')) return parse_signed();
    return parse_power();
  }

  LaurentPoly parse_power() {
    LaurentPoly base = parse_atom();
    if (!accept('^')) return base;
    skip_space();
    bool negative = false;
    if (accept('-')) {
      negative = true;
    } else {
      accept('+');
    }
    skip_space();
    const std::string digits = read_digits();
    if (digits.empty()) fail("expected an exponent");
    Coeff n(digits);
    if (!n.fits_sint_p()) fail("exponent too large");
    long e = n.get_si();
    if (negative) {
      auto u = is_unit(base);
      if (!u) fail("negative power of a non-unit");
      base = u->inverse().to_poly();
    }
    LaurentPoly out = LaurentPoly::constant(num_vars_, 1);
    LaurentPoly sq = base;
    while (e > 0) {
      if (e & 1L) out *= sq;
      e >>= 1;
      if (e > 0) sq *= sq;
    }
    return out;
  }

  std::string read_digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  LaurentPoly parse_atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      LaurentPoly inner = parse_sum();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return LaurentPoly::constant(num_vars_, Coeff(read_digits()));
    }
    if (c == 't') {
      ++pos_;
      const std::string digits = read_digits();
      std::size_t index = 1;
      if (digits.empty()) {
        if (num_vars_ != 1) fail("bare 't' is only allowed in one variable");
      } else {
        Coeff n(digits);
        if (!n.fits_ulong_p() || n == 0 || n.get_ui() > num_vars_) {
          fail("variable t" + digits + " outside t1..t" + std::to_string(num_vars_));
        }
        index = n.get_ui();
      }
      return LaurentPoly::variable(num_vars_, index - 1);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t num_vars_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly parse_laurent(std::string_view text, std::size_t num_vars) {
  if (num_vars == 0 || num_vars > kMaxVariables) throw UsageError("invalid number of variables");
  return PolyParser(text, num_vars).parse();
}

}  // namespace alexq
