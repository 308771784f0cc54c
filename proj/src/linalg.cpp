#include "hermpir/linalg.hpp"

#include <algorithm>
#include <string>

namespace hermpir::linalg {

namespace {

// row_dst -= factor * row_src over the columns from `from` on.
void axpy(std::span<Element> dst, std::span<const Element> src, Element factor, std::size_t from,
          const gf::Field& f) {
  if (factor.is_zero()) return;
  for (std::size_t c = from; c < dst.size(); ++c) {
    if (!src[c].is_zero()) dst[c] = f.sub(dst[c], f.mul(factor, src[c]));
  }
}

}  // namespace

Matrix::Matrix(std::shared_ptr<const gf::Field> field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols) {
  if (!field_) throw InvalidArgument("matrix needs a field");
}

Matrix Matrix::identity(std::shared_ptr<const gf::Field> field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, field->one());
  return m;
}

std::vector<Element> Matrix::column(std::size_t c) const {
  std::vector<Element> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, c);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
  }
  return t;
}

Matrix Matrix::select_rows(std::span<const std::size_t> idx) const {
  Matrix out(field_, idx.size(), cols_);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] >= rows_) throw InvalidArgument("row index out of range");
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(idx[k] * cols_), cols_,
                out.data_.begin() + static_cast<std::ptrdiff_t>(k * cols_));
  }
  return out;
}

Matrix Matrix::select_cols(std::span<const std::size_t> idx) const {
  Matrix out(field_, rows_, idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] >= cols_) throw InvalidArgument("column index out of range");
    for (std::size_t r = 0; r < rows_; ++r) out.set(r, k, at(r, idx[k]));
  }
  return out;
}

Matrix Matrix::hconcat(const Matrix& right) const {
  if (right.rows_ != rows_) throw InvalidArgument("hconcat: row counts differ");
  Matrix out(field_, rows_, cols_ + right.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out.set(r, c, at(r, c));
    for (std::size_t c = 0; c < right.cols_; ++c) out.set(r, cols_ + c, right.at(r, c));
  }
  return out;
}

Matrix Matrix::vconcat(const Matrix& below) const {
  if (below.cols_ != cols_) throw InvalidArgument("vconcat: column counts differ");
  Matrix out(field_, rows_ + below.rows_, cols_);
  std::copy(data_.begin(), data_.end(), out.data_.begin());
  std::copy(below.data_.begin(), below.data_.end(), out.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
  return out;
}

Matrix Matrix::multiply(const Matrix& o) const {
  if (cols_ != o.rows_) throw InvalidArgument("multiply: inner dimensions differ");
  const auto& f = *field_;
  Matrix out(field_, rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Element a = at(r, k);
      if (a.is_zero()) continue;
      for (std::size_t c = 0; c < o.cols_; ++c) out.set(r, c, f.add(out.at(r, c), f.mul(a, o.at(k, c))));
    }
  }
  return out;
}

std::vector<Element> Matrix::multiply(std::span<const Element> v) const {
  if (v.size() != cols_) throw InvalidArgument("multiply: vector length differs");
  const auto& f = *field_;
  std::vector<Element> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Element acc;
    for (std::size_t c = 0; c < cols_; ++c) acc = f.add(acc, f.mul(at(r, c), v[c]));
    out[r] = acc;
  }
  return out;
}

Echelon rref(const Matrix& m) {
  const auto& f = m.field();
  Matrix a = m;
  std::vector<std::size_t> pivots;
  std::vector<Element> scratch(a.cols());
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a.at(p, c).is_zero()) ++p;
    if (p == a.rows()) continue;
    if (p != r) {
      for (std::size_t k = c; k < a.cols(); ++k) {
        const Element t = a.at(r, k);
        a.set(r, k, a.at(p, k));
        a.set(p, k, t);
      }
    }
    const Element inv = f.inv(a.at(r, c));
    for (std::size_t k = c; k < a.cols(); ++k) a.set(r, k, f.mul(a.at(r, k), inv));
    const auto pivot_row = a.row(r);
    std::copy(pivot_row.begin(), pivot_row.end(), scratch.begin());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r) continue;
      const Element factor = a.at(i, c);
      if (factor.is_zero()) continue;
      for (std::size_t k = c; k < a.cols(); ++k) {
        if (!scratch[k].is_zero()) a.set(i, k, f.sub(a.at(i, k), f.mul(factor, scratch[k])));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::vector<Element> solve_prefix(const Matrix& m, std::span<const Element> rhs, std::size_t prefix_len) {
  if (rhs.size() != m.rows()) throw InvalidArgument("solve_prefix: rhs length differs from row count");
  if (prefix_len > m.cols()) throw InvalidArgument("solve_prefix: prefix longer than column count");
  Matrix aug(m.field_ptr(), m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug.set(r, c, m.at(r, c));
    aug.set(r, m.cols(), rhs[r]);
  }
  const auto e = rref(aug);
  const std::size_t n = m.cols();
  if (!e.pivots.empty() && e.pivots.back() == n) throw InconsistentSystem("right-hand side is not in the column space");

  std::vector<bool> is_pivot(n, false);
  for (const auto c : e.pivots) is_pivot[c] = true;
  std::vector<Element> out(prefix_len);
  for (std::size_t row = 0; row < e.pivots.size(); ++row) {
    const std::size_t c = e.pivots[row];
    if (c >= prefix_len) continue;
    for (std::size_t k = 0; k < n; ++k) {
      if (!is_pivot[k] && !e.reduced.at(row, k).is_zero()) {
        throw NonUniquePrefix("coordinate " + std::to_string(c) + " depends on free column " + std::to_string(k));
      }
    }
    out[c] = e.reduced.at(row, n);
  }
  for (std::size_t c = 0; c < prefix_len; ++c) {
    if (!is_pivot[c]) throw NonUniquePrefix("prefix column " + std::to_string(c) + " is not a pivot");
  }
  return out;
}

std::vector<std::size_t> select_full_rank_rows(const Matrix& m, std::size_t target_rank, std::size_t pad_to) {
  if (pad_to > m.rows()) throw InvalidArgument("select_full_rank_rows: not enough rows to pad");
  if (target_rank > pad_to) throw InvalidArgument("select_full_rank_rows: target rank above pad size");
  const auto& f = m.field();
  const std::size_t n = m.cols();
  // Basis rows kept in echelon form, each normalised at its pivot.
  std::vector<std::vector<Element>> basis;
  std::vector<std::size_t> pivot_of;
  std::vector<std::size_t> chosen;
  std::vector<bool> used(m.rows(), false);
  for (std::size_t r = 0; r < m.rows() && basis.size() < target_rank; ++r) {
    std::vector<Element> v(m.row(r).begin(), m.row(r).end());
    for (std::size_t b = 0; b < basis.size(); ++b) axpy(v, basis[b], v[pivot_of[b]], pivot_of[b], f);
    std::size_t p = 0;
    while (p < n && v[p].is_zero()) ++p;
    if (p == n) continue;
    const Element inv = f.inv(v[p]);
    for (std::size_t k = p; k < n; ++k) v[k] = f.mul(v[k], inv);
    basis.push_back(std::move(v));
    pivot_of.push_back(p);
    chosen.push_back(r);
    used[r] = true;
  }
  if (basis.size() < target_rank) {
    throw InvalidArgument("select_full_rank_rows: matrix rank " + std::to_string(basis.size()) + " below target " +
                          std::to_string(target_rank));
  }
  for (std::size_t r = 0; r < m.rows() && chosen.size() < pad_to; ++r) {
    if (!used[r]) chosen.push_back(r);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::vector<std::vector<Element>> kernel_basis(const Matrix& m) {
  const auto& f = m.field();
  const auto e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (const auto c : e.pivots) is_pivot[c] = true;
  std::vector<std::vector<Element>> out;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Element> v(m.cols());
    v[free] = f.one();
    for (std::size_t row = 0; row < e.pivots.size(); ++row) v[e.pivots[row]] = f.neg(e.reduced.at(row, free));
    out.push_back(std::move(v));
  }
  return out;
}

bool in_column_space(const Matrix& m, std::span<const Element> v) {
  if (v.size() != m.rows()) throw InvalidArgument("in_column_space: length differs from row count");
  Matrix col(m.field_ptr(), m.rows(), 1);
  for (std::size_t r = 0; r < m.rows(); ++r) col.set(r, 0, v[r]);
  return rank(m.hconcat(col)) == rank(m);
}

}  // namespace hermpir::linalg
