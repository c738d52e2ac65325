#include "koszul/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace koszul {

SparseVector::SparseVector(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry &a, const Entry &b) { return a.first < b.first; });
  for (auto &e : entries) {
    if (!entries_.empty() && entries_.back().first == e.first)
      entries_.back().second += e.second;
    else
      entries_.push_back(std::move(e));
  }
  std::erase_if(entries_, [](const Entry &e) { return is_zero(e.second); });
}

SparseVector SparseVector::from_map(const std::map<int, Scalar> &m) {
  SparseVector v;
  v.entries_.reserve(m.size());
  for (const auto &[k, c] : m)
    if (!is_zero(c))
      v.entries_.emplace_back(k, c);
  return v;
}

Scalar SparseVector::at(int index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry &e, int i) { return e.first < i; });
  if (it != entries_.end() && it->first == index)
    return it->second;
  return Scalar(0);
}

SparseVector &SparseVector::operator*=(const Scalar &c) {
  if (is_zero(c)) {
    entries_.clear();
    return *this;
  }
  for (auto &e : entries_)
    e.second *= c;
  return *this;
}

void SparseVector::axpy(const Scalar &c, const SparseVector &other) {
  if (is_zero(c) || other.empty())
    return;
  std::vector<Entry> out;
  out.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == entries_.end() || b->first < a->first) {
      out.emplace_back(b->first, c * b->second);
      ++b;
    } else {
      Scalar s = a->second + c * b->second;
      if (!is_zero(s))
        out.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  entries_ = std::move(out);
}

Scalar SparseVector::dot(const SparseVector &other) const {
  Scalar s(0);
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() && b != other.entries_.end()) {
    if (a->first < b->first)
      ++a;
    else if (b->first < a->first)
      ++b;
    else
      s += (a++)->second * (b++)->second;
  }
  return s;
}

SparseVector operator+(SparseVector a, const SparseVector &b) {
  a.axpy(Scalar(1), b);
  return a;
}

SparseVector operator-(SparseVector a, const SparseVector &b) {
  a.axpy(Scalar(-1), b);
  return a;
}

SparseVector operator*(const Scalar &c, SparseVector v) {
  v *= c;
  return v;
}

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {
  if (rows < 0 || cols < 0)
    throw std::invalid_argument("Matrix: negative dimension");
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    m.data_[i] = SparseVector::unit(i);
  return m;
}

Matrix Matrix::from_dense(const std::vector<std::vector<Scalar>> &dense) {
  const int r = static_cast<int>(dense.size());
  const int c = r ? static_cast<int>(dense[0].size()) : 0;
  Matrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(dense[i].size()) != c)
      throw std::invalid_argument("Matrix::from_dense: ragged rows");
    std::vector<SparseVector::Entry> e;
    for (int j = 0; j < c; ++j)
      e.emplace_back(j, dense[i][j]);
    m.data_[i] = SparseVector(std::move(e));
  }
  return m;
}

void Matrix::set_row(int r, SparseVector v) {
  if (!v.empty() && (v.leading_index() < 0 || v.entries().back().first >= cols_))
    throw std::out_of_range("Matrix::set_row: column index out of range");
  data_[r] = std::move(v);
}

void Matrix::set(int r, int c, const Scalar &value) {
  data_[r].axpy(value - data_[r].at(c), SparseVector::unit(c));
}

Matrix Matrix::transpose() const {
  std::vector<std::vector<SparseVector::Entry>> cols(cols_);
  for (int r = 0; r < rows_; ++r)
    for (const auto &[c, v] : data_[r].entries())
      cols[c].emplace_back(r, v);
  Matrix t(cols_, rows_);
  for (int c = 0; c < cols_; ++c)
    t.data_[c] = SparseVector(std::move(cols[c]));
  return t;
}

Matrix Matrix::operator*(const Matrix &other) const {
  if (cols_ != other.rows_)
    throw std::invalid_argument("Matrix product: dimension mismatch");
  Matrix out(rows_, other.cols_);
  for (int r = 0; r < rows_; ++r) {
    SparseVector acc;
    for (const auto &[k, v] : data_[r].entries())
      acc.axpy(v, other.data_[k]);
    out.data_[r] = std::move(acc);
  }
  return out;
}

SparseVector Matrix::apply(const SparseVector &v) const {
  std::vector<SparseVector::Entry> out;
  for (int r = 0; r < rows_; ++r) {
    Scalar s = data_[r].dot(v);
    if (!koszul::is_zero(s))
      out.emplace_back(r, std::move(s));
  }
  return SparseVector(std::move(out));
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const SparseVector &v) { return v.empty(); });
}

// ---------------------------------------------------------------------------

SparseVector Echelon::reduce(const SparseVector &v) const {
  std::map<int, Scalar> work;
  for (const auto &[k, c] : v.entries())
    work.emplace(k, c);
  auto it = work.begin();
  while (it != work.end()) {
    auto row = rows_.find(it->first);
    if (row == rows_.end()) {
      ++it;
      continue;
    }
    const Scalar c = it->second;
    const int key = it->first;
    for (const auto &[k, rv] : row->second.entries()) {
      auto [pos, inserted] = work.try_emplace(k, 0);
      pos->second -= c * rv;
      if (k != key && is_zero(pos->second))
        work.erase(pos);
    }
    it = work.erase(work.find(key));
  }
  return SparseVector::from_map(work);
}

bool Echelon::add(const SparseVector &v) {
  SparseVector r = reduce(v);
  if (r.empty())
    return false;
  if (r.entries().back().first >= ambient_)
    throw std::out_of_range("Echelon::add: index beyond ambient dimension");
  Scalar lead = r.leading_value();
  r *= Scalar(1) / lead;
  const int pivot = r.leading_index();
  rows_.emplace(pivot, std::move(r));
  return true;
}

Subspace Echelon::to_subspace() const {
  std::map<int, SparseVector> reduced;
  for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
    SparseVector row = it->second;
    // Eliminate later pivots (already fully reduced) from this row.
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto &[k, c] : row.entries()) {
        if (k == it->first)
          continue;
        auto p = reduced.find(k);
        if (p != reduced.end()) {
          row.axpy(-c, p->second);
          changed = true;
          break;
        }
      }
    }
    reduced.emplace(it->first, std::move(row));
  }
  Subspace s(ambient_);
  for (auto &[p, row] : reduced)
    s.basis_.push_back(std::move(row));
  return s;
}

Subspace Subspace::span(int ambient, std::span<const SparseVector> vectors) {
  Echelon e(ambient);
  for (const auto &v : vectors)
    e.add(v);
  return e.to_subspace();
}

Subspace Subspace::full(int ambient) {
  Subspace s(ambient);
  for (int i = 0; i < ambient; ++i)
    s.basis_.push_back(SparseVector::unit(i));
  return s;
}

std::vector<int> Subspace::pivots() const {
  std::vector<int> p;
  for (const auto &b : basis_)
    p.push_back(b.leading_index());
  return p;
}

SparseVector Subspace::reduce(const SparseVector &v) const {
  // Rows are in RREF: subtract each pivot's coefficient once, in pivot order.
  SparseVector r = v;
  for (const auto &b : basis_) {
    Scalar c = r.at(b.leading_index());
    if (!is_zero(c))
      r.axpy(-c, b);
  }
  return r;
}

bool Subspace::contains(const Subspace &other) const {
  for (const auto &b : other.basis_)
    if (!contains(b))
      return false;
  return true;
}

// ---------------------------------------------------------------------------

Subspace kernel_basis(const Matrix &m) {
  Echelon e(m.cols());
  for (int r = 0; r < m.rows(); ++r)
    e.add(m.row(r));
  Subspace rref = e.to_subspace();
  std::vector<int> pivots = rref.pivots();
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : pivots)
    is_pivot[p] = true;
  std::vector<SparseVector> kernel;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[f])
      continue;
    std::vector<SparseVector::Entry> entries{{f, Scalar(1)}};
    for (const auto &row : rref.basis()) {
      Scalar c = row.at(f);
      if (!is_zero(c))
        entries.emplace_back(row.leading_index(), -c);
    }
    kernel.emplace_back(std::move(entries));
  }
  return Subspace::span(m.cols(), kernel);
}

int rank(const Matrix &m) {
  Echelon e(m.cols());
  for (int r = 0; r < m.rows(); ++r)
    e.add(m.row(r));
  return e.rank();
}

std::optional<Matrix> inverse(const Matrix &m) {
  const int n = m.rows();
  if (m.cols() != n)
    throw std::invalid_argument("inverse: matrix is not square");
  Echelon e(2 * n);
  for (int r = 0; r < n; ++r) {
    std::vector<SparseVector::Entry> row(m.row(r).entries().begin(), m.row(r).entries().end());
    row.emplace_back(n + r, Scalar(1));
    e.add(SparseVector(std::move(row)));
  }
  const Subspace rref = e.to_subspace();
  if (rref.dim() != n || (n > 0 && rref.basis().back().leading_index() != n - 1))
    return std::nullopt;
  Matrix inv(n, n);
  for (int r = 0; r < n; ++r) {
    std::vector<SparseVector::Entry> right;
    for (const auto &[c, v] : rref.basis()[r].entries())
      if (c >= n)
        right.emplace_back(c - n, v);
    inv.set_row(r, SparseVector(std::move(right)));
  }
  return inv;
}

Subspace orthogonal_complement(const Subspace &s, const Matrix &pairing) {
  if (pairing.rows() != pairing.cols() || pairing.cols() != s.ambient())
    throw std::invalid_argument("orthogonal_complement: dimension mismatch");
  // Constraint rows: (pairing * v)^T for each basis vector v.
  Matrix constraints(s.dim(), pairing.rows());
  for (int i = 0; i < s.dim(); ++i)
    constraints.set_row(i, pairing.apply(s.basis()[i]));
  return kernel_basis(constraints);
}

} // namespace koszul
