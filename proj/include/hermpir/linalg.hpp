#pragma once
//
// Dense matrices over a Field and Gaussian elimination with first-nonzero
// pivoting in column order.

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "hermpir/error.hpp"
#include "hermpir/gf.hpp"

namespace hermpir::linalg {

using gf::Element;

class InconsistentSystem : public Error {
 public:
  using Error::Error;
};

class NonUniquePrefix : public Error {
 public:
  using Error::Error;
};

class Matrix {
 public:
  Matrix(std::shared_ptr<const gf::Field> field, std::size_t rows, std::size_t cols);
  static Matrix identity(std::shared_ptr<const gf::Field> field, std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const gf::Field& field() const { return *field_; }
  std::shared_ptr<const gf::Field> field_ptr() const { return field_; }

  Element at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Element v) { data_[r * cols_ + c] = v; }
  std::span<const Element> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::vector<Element> column(std::size_t c) const;

  Matrix transpose() const;
  Matrix select_rows(std::span<const std::size_t> idx) const;
  Matrix select_cols(std::span<const std::size_t> idx) const;
  Matrix hconcat(const Matrix& right) const;
  Matrix vconcat(const Matrix& below) const;
  Matrix multiply(const Matrix& o) const;
  std::vector<Element> multiply(std::span<const Element> v) const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::shared_ptr<const gf::Field> field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Element> data_;
};

struct Echelon {
  Matrix reduced;                    // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

Echelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);

// First prefix_len coordinates of any solution of m * x = rhs. Throws
// InconsistentSystem when rhs is outside the column space and NonUniquePrefix
// when those coordinates are not determined.
std::vector<Element> solve_prefix(const Matrix& m, std::span<const Element> rhs, std::size_t prefix_len);

// Greedy scan in row order keeping rows that raise the rank until target_rank,
// then the lowest unused rows up to pad_to. Sorted ascending.
std::vector<std::size_t> select_full_rank_rows(const Matrix& m, std::size_t target_rank, std::size_t pad_to);

// Basis of {x : m x = 0}, one vector per free column.
std::vector<std::vector<Element>> kernel_basis(const Matrix& m);

bool in_column_space(const Matrix& m, std::span<const Element> v);

}  // namespace hermpir::linalg
