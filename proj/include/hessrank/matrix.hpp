#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hessrank/polynomial.hpp"
#include "hessrank/rational_function.hpp"

namespace hessrank {

using PolyVector = std::vector<Polynomial>;
using RationalVector = std::vector<Rational>;

/// Dense row-major matrix whose entries share a value type.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
    return out;
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 protected:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Matrix of polynomials of a common arity, viewed over the rational function field.
class SymMatrix : public DenseMatrix<Polynomial> {
 public:
  SymMatrix() = default;
  SymMatrix(std::size_t rows, std::size_t cols, std::size_t arity);

  static SymMatrix identity(std::size_t n, std::size_t arity);
  static SymMatrix from_rows(const std::vector<PolyVector>& rows, std::size_t arity);
  static SymMatrix from_columns(const std::vector<PolyVector>& cols, std::size_t arity);

  std::size_t arity() const { return arity_; }

  SymMatrix transpose() const;
  SymMatrix operator*(const SymMatrix& other) const;
  PolyVector operator*(std::span<const Polynomial> v) const;
  SymMatrix append_column(std::span<const Polynomial> v) const;
  SymMatrix append_rows(const SymMatrix& other) const;
  SymMatrix select(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;
  bool is_zero() const;

 private:
  std::size_t arity_ = 0;
};

/// Matrix over Q.
class RationalMatrix : public DenseMatrix<Rational> {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : DenseMatrix(rows, cols, Rational(0)) {}

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from_rows(const std::vector<RationalVector>& rows, std::size_t cols);

  RationalMatrix transpose() const;
  RationalMatrix operator*(const RationalMatrix& other) const;
  RationalVector operator*(std::span<const Rational> v) const;
};

/// Matrix over Q(x).
class RfMatrix : public DenseMatrix<RationalFunction> {
 public:
  RfMatrix() = default;
  RfMatrix(std::size_t rows, std::size_t cols, std::size_t arity);

  static RfMatrix from(const SymMatrix& m);

  std::size_t arity() const { return arity_; }
  RfMatrix operator*(const RfMatrix& other) const;
  RfVector operator*(std::span<const RationalFunction> v) const;

 private:
  std::size_t arity_ = 0;
};

/// Evaluates every entry at a rational point.
RationalMatrix evaluate(const SymMatrix& m, std::span<const Rational> point);

}  // namespace hessrank
