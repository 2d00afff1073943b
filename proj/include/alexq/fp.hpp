#pragma once

// Arithmetic and row reduction over a prime field F_p.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace alexq {

using FpVector = std::vector<std::uint64_t>;

class PrimeField {
 public:
  // Throws UsageError unless p is a prime below 2^31.
  explicit PrimeField(std::uint64_t p);

  std::uint64_t prime() const { return p_; }

  std::uint64_t reduce(std::int64_t v) const;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p_; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p_ - b) % p_; }
  std::uint64_t neg(std::uint64_t a) const { return (p_ - a) % p_; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p_; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  // Throws DomainError on zero.
  std::uint64_t inv(std::uint64_t a) const;

  // y += c*x, elementwise.
  void axpy(std::span<std::uint64_t> y, std::uint64_t c, std::span<const std::uint64_t> x) const;

 private:
  std::uint64_t p_;
};

bool is_prime(std::uint64_t n);

// Row space of a matrix over F_p, kept in fully reduced row-echelon form.
// Rows may be inserted one at a time; the pivot columns of earlier rows are
// cleared from later insertions and vice versa.
class Echelon {
 public:
  Echelon(PrimeField field, std::size_t columns);

  const PrimeField& field() const { return field_; }
  std::size_t columns() const { return columns_; }
  std::size_t rank() const { return rows_.size(); }
  std::size_t nullity() const { return columns_ - rows_.size(); }

  // Returns true when the row was independent of the current row space.
  bool insert(FpVector row);
  // Sparse form: (column, value) pairs.
  bool insert_sparse(std::span<const std::pair<std::size_t, std::uint64_t>> entries);

  // Canonical coset representative: zero at every pivot column. Linear and
  // idempotent; two vectors agree iff their difference is in the row space.
  FpVector reduce(FpVector v) const;

  const std::vector<std::size_t>& pivot_columns() const { return pivots_; }
  // Non-pivot columns in increasing order.
  std::vector<std::size_t> free_columns() const;
  const std::vector<FpVector>& rows() const { return rows_; }

 private:
  void reduce_in_place(FpVector& v) const;

  PrimeField field_;
  std::size_t columns_;
  std::vector<FpVector> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<std::int64_t> pivot_row_;  // column -> row index or -1
};

// rank of a dense matrix given as rows.
std::size_t fp_rank(const PrimeField& field, std::size_t columns, const std::vector<FpVector>& rows);

}  // namespace alexq
