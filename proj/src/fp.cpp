#include "alexq/fp.hpp"

#include <algorithm>

#include "alexq/error.hpp"

namespace alexq {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p >= (std::uint64_t{1} << 31) || !is_prime(p)) {
    throw UsageError(std::to_string(p) + " is not a prime below 2^31");
  }
}

std::uint64_t PrimeField::reduce(std::int64_t v) const {
  const auto m = static_cast<std::int64_t>(p_);
  std::int64_t r = v % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t result = 1 % p_;
  a %= p_;
  while (e > 0) {
    if (e & 1U) result = mul(result, a);
    a = mul(a, a);
    e >>= 1U;
  }
  return result;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  if (a % p_ == 0) throw DomainError("inverse of zero in F_" + std::to_string(p_));
  return pow(a, p_ - 2);
}

void PrimeField::axpy(std::span<std::uint64_t> y, std::uint64_t c, std::span<const std::uint64_t> x) const {
  if (c == 0) return;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (x[i] != 0) y[i] = (y[i] + c * x[i]) % p_;
  }
}

Echelon::Echelon(PrimeField field, std::size_t columns)
    : field_(field), columns_(columns), pivot_row_(columns, -1) {}

void Echelon::reduce_in_place(FpVector& v) const {
  // Fully reduced rows vanish on every other pivot column, so one pass suffices.
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::uint64_t c = v[pivots_[r]];
    if (c != 0) field_.axpy(v, field_.neg(c), rows_[r]);
  }
}

FpVector Echelon::reduce(FpVector v) const {
  if (v.size() != columns_) throw UsageError("vector length does not match the ambient dimension");
  for (auto& x : v) x %= field_.prime();
  reduce_in_place(v);
  return v;
}

bool Echelon::insert(FpVector row) {
  row = reduce(std::move(row));
  auto it = std::find_if(row.begin(), row.end(), [](auto x) { return x != 0; });
  if (it == row.end()) return false;
  const auto pivot = static_cast<std::size_t>(it - row.begin());
  const std::uint64_t scale = field_.inv(row[pivot]);
  for (auto& x : row) x = field_.mul(x, scale);
  for (auto& existing : rows_) {
    const std::uint64_t c = existing[pivot];
    if (c != 0) field_.axpy(existing, field_.neg(c), row);
  }
  pivot_row_[pivot] = static_cast<std::int64_t>(rows_.size());
  rows_.push_back(std::move(row));
  pivots_.push_back(pivot);
  return true;
}

bool Echelon::insert_sparse(std::span<const std::pair<std::size_t, std::uint64_t>> entries) {
  FpVector row(columns_, 0);
  for (const auto& [col, val] : entries) {
    if (col >= columns_) throw UsageError("sparse entry outside the matrix");
    row[col] = field_.add(row[col], val % field_.prime());
  }
  return insert(std::move(row));
}

std::vector<std::size_t> Echelon::free_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < columns_; ++c) {
    if (pivot_row_[c] < 0) out.push_back(c);
  }
  return out;
}

std::size_t fp_rank(const PrimeField& field, std::size_t columns, const std::vector<FpVector>& rows) {
  Echelon e(field, columns);
  for (const auto& r : rows) e.insert(r);
  return e.rank();
}

}  // namespace alexq
