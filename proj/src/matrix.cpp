#include "hessrank/matrix.hpp"

#include <stdexcept>

namespace hessrank {

SymMatrix::SymMatrix(std::size_t rows, std::size_t cols, std::size_t arity)
    : DenseMatrix(rows, cols, Polynomial(arity)), arity_(arity) {}

SymMatrix SymMatrix::identity(std::size_t n, std::size_t arity) {
  SymMatrix out(n, n, arity);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = Polynomial::constant(arity, 1);
  return out;
}

SymMatrix SymMatrix::from_rows(const std::vector<PolyVector>& rows, std::size_t arity) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  SymMatrix out(rows.size(), cols, arity);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) {
      if (rows[i][j].arity() != arity) throw std::invalid_argument("matrix entry arity mismatch");
      out(i, j) = rows[i][j];
    }
  }
  return out;
}

SymMatrix SymMatrix::from_columns(const std::vector<PolyVector>& cols, std::size_t arity) {
  return from_rows(cols, arity).transpose();
}

SymMatrix SymMatrix::transpose() const {
  SymMatrix out(cols_, rows_, arity_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

SymMatrix SymMatrix::operator*(const SymMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("matrix dimension mismatch");
  SymMatrix out(rows_, other.cols_, arity_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Polynomial& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        if (!other(k, j).is_zero()) out(i, j) += a * other(k, j);
      }
    }
  }
  return out;
}

PolyVector SymMatrix::operator*(std::span<const Polynomial> v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
  PolyVector out(rows_, Polynomial(arity_));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!(*this)(i, j).is_zero() && !v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
    }
  }
  return out;
}

SymMatrix SymMatrix::append_column(std::span<const Polynomial> v) const {
  if (v.size() != rows_) throw std::invalid_argument("column length mismatch");
  SymMatrix out(rows_, cols_ + 1, arity_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
    out(i, cols_) = v[i];
  }
  return out;
}

SymMatrix SymMatrix::append_rows(const SymMatrix& other) const {
  if (other.cols_ != cols_) throw std::invalid_argument("row length mismatch");
  SymMatrix out(rows_ + other.rows_, cols_, arity_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
  }
  for (std::size_t i = 0; i < other.rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(rows_ + i, j) = other(i, j);
  }
  return out;
}

SymMatrix SymMatrix::select(std::span<const std::size_t> rows,
                            std::span<const std::size_t> cols) const {
  SymMatrix out(rows.size(), cols.size(), arity_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = (*this)(rows[i], cols[j]);
  }
  return out;
}

bool SymMatrix::is_zero() const {
  for (const auto& e : data_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
  return out;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows,
                                         std::size_t cols) {
  RationalMatrix out(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = rows[i][j];
  }
  return out;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("matrix dimension mismatch");
  RationalMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      if (sgn((*this)(i, k)) == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += (*this)(i, k) * other(k, j);
    }
  }
  return out;
}

RationalVector RationalMatrix::operator*(std::span<const Rational> v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
  RationalVector out(rows_, Rational(0));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  }
  return out;
}

RfMatrix::RfMatrix(std::size_t rows, std::size_t cols, std::size_t arity)
    : DenseMatrix(rows, cols, RationalFunction(arity)), arity_(arity) {}

RfMatrix RfMatrix::from(const SymMatrix& m) {
  RfMatrix out(m.rows(), m.cols(), m.arity());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = RationalFunction(m(i, j));
  }
  return out;
}

RfMatrix RfMatrix::operator*(const RfMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("matrix dimension mismatch");
  RfMatrix out(rows_, other.cols_, arity_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      if ((*this)(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        if (!other(k, j).is_zero()) out(i, j) += (*this)(i, k) * other(k, j);
      }
    }
  }
  return out;
}

RfVector RfMatrix::operator*(std::span<const RationalFunction> v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
  RfVector out(rows_, RationalFunction(arity_));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!(*this)(i, j).is_zero() && !v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
    }
  }
  return out;
}

RationalMatrix evaluate(const SymMatrix& m, std::span<const Rational> point) {
  RationalMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).evaluate(point);
  }
  return out;
}

}  // namespace hessrank
