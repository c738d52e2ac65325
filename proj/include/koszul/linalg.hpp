#ifndef KOSZUL_LINALG_HPP
#define KOSZUL_LINALG_HPP

#include "koszul/scalar.hpp"

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace koszul {

/// Sparse vector: entries sorted by index, no stored zeros.
class SparseVector {
public:
  using Entry = std::pair<int, Scalar>;

  SparseVector() = default;
  explicit SparseVector(std::vector<Entry> entries); // sorts and merges
  static SparseVector from_map(const std::map<int, Scalar> &m);
  static SparseVector unit(int index) { return SparseVector({{index, Scalar(1)}}); }

  std::span<const Entry> entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t nnz() const { return entries_.size(); }
  int leading_index() const { return entries_.front().first; }
  const Scalar &leading_value() const { return entries_.front().second; }
  Scalar at(int index) const;

  SparseVector &operator*=(const Scalar &c);
  /// *this += c * other
  void axpy(const Scalar &c, const SparseVector &other);
  Scalar dot(const SparseVector &other) const;

  bool operator==(const SparseVector &) const = default;
  bool operator<(const SparseVector &o) const { return entries_ < o.entries_; }

private:
  std::vector<Entry> entries_;
};

SparseVector operator+(SparseVector a, const SparseVector &b);
SparseVector operator-(SparseVector a, const SparseVector &b);
SparseVector operator*(const Scalar &c, SparseVector v);

/// Sparse exact matrix stored by rows.
class Matrix {
public:
  Matrix(int rows, int cols);
  static Matrix identity(int n);
  static Matrix from_dense(const std::vector<std::vector<Scalar>> &dense);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const SparseVector &row(int r) const { return data_[r]; }
  void set_row(int r, SparseVector v);
  void set(int r, int c, const Scalar &value);
  Scalar at(int r, int c) const { return data_[r].at(c); }

  Matrix transpose() const;
  Matrix operator*(const Matrix &other) const;
  SparseVector apply(const SparseVector &v) const; // M * v
  bool is_zero() const;

private:
  int rows_;
  int cols_;
  std::vector<SparseVector> data_;
};

/// Linear subspace of K^ambient, stored as a reduced row-echelon basis so that
/// equal subspaces have equal representations.
class Subspace {
public:
  explicit Subspace(int ambient = 0) : ambient_(ambient) {}
  static Subspace span(int ambient, std::span<const SparseVector> vectors);
  static Subspace full(int ambient);

  int ambient() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  std::span<const SparseVector> basis() const { return basis_; }
  std::vector<int> pivots() const;

  /// Remainder of v after full reduction against the basis; zero iff v is in the span.
  SparseVector reduce(const SparseVector &v) const;
  bool contains(const SparseVector &v) const { return reduce(v).empty(); }
  bool contains(const Subspace &other) const;

  bool operator==(const Subspace &) const = default;

private:
  friend class Echelon;
  int ambient_;
  std::vector<SparseVector> basis_; // RREF rows, pivots strictly increasing
};

/// Incremental row echelonization; pivot = first nonzero entry in column order.
class Echelon {
public:
  explicit Echelon(int ambient) : ambient_(ambient) {}

  /// Adds v; returns true when it enlarged the span.
  bool add(const SparseVector &v);
  SparseVector reduce(const SparseVector &v) const;
  int rank() const { return static_cast<int>(rows_.size()); }
  bool has_pivot(int col) const { return rows_.count(col) != 0; }
  /// Fully reduced echelon form.
  Subspace to_subspace() const;

private:
  int ambient_;
  std::map<int, SparseVector> rows_; // pivot column -> row with leading entry 1
};

Subspace kernel_basis(const Matrix &m);
int rank(const Matrix &m);
/// {w : w^T * pairing * v = 0 for all v in s}.
/// Inverse of a square matrix; nullopt when singular.
std::optional<Matrix> inverse(const Matrix &m);

Subspace orthogonal_complement(const Subspace &s, const Matrix &pairing);

} // namespace koszul

#endif // KOSZUL_LINALG_HPP
