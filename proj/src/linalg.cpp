#include "hessrank/linalg.hpp"

#include <numeric>
#include <stdexcept>

namespace hessrank {

namespace {

// Exact quotient in a Bareiss step; the division is guaranteed by Sylvester's identity.
Polynomial bareiss_divide(const Polynomial& num, const Polynomial& den) {
  if (den.is_constant()) return num * (Rational(1) / den.constant_term());
  auto q = divide_exact(num, den);
  if (!q) throw std::logic_error("Bareiss division was not exact");
  return *std::move(q);
}

}  // namespace

Elimination eliminate(const SymMatrix& input) {
  SymMatrix a = input;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::vector<std::size_t> row_of(rows);
  std::vector<std::size_t> col_of(cols);
  std::iota(row_of.begin(), row_of.end(), 0);
  std::iota(col_of.begin(), col_of.end(), 0);

  Elimination out;
  Polynomial prev = Polynomial::constant(a.arity(), 1);
  for (std::size_t k = 0; k < std::min(rows, cols); ++k) {
    std::size_t best_i = rows;
    std::size_t best_j = cols;
    std::size_t best_terms = 0;
    for (std::size_t i = k; i < rows; ++i) {
      for (std::size_t j = k; j < cols; ++j) {
        const std::size_t terms = a(i, j).term_count();
        if (terms == 0) continue;
        if (best_i == rows || terms < best_terms) {
          best_i = i;
          best_j = j;
          best_terms = terms;
        }
      }
    }
    if (best_i == rows) break;
    if (best_i != k) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(k, j), a(best_i, j));
      std::swap(row_of[k], row_of[best_i]);
    }
    if (best_j != k) {
      for (std::size_t i = 0; i < rows; ++i) std::swap(a(i, k), a(i, best_j));
      std::swap(col_of[k], col_of[best_j]);
    }
    out.pivot_rows.push_back(row_of[k]);
    out.pivot_cols.push_back(col_of[k]);
    ++out.rank;

    const Polynomial pivot = a(k, k);
    for (std::size_t i = k + 1; i < rows; ++i) {
      const Polynomial factor = a(i, k);
      for (std::size_t j = k + 1; j < cols; ++j) {
        Polynomial value = pivot * a(i, j);
        if (!factor.is_zero() && !a(k, j).is_zero()) value -= factor * a(k, j);
        a(i, j) = bareiss_divide(value, prev);
      }
      a(i, k) = Polynomial(a.arity());
    }
    prev = pivot;
  }
  return out;
}

std::size_t rank(const SymMatrix& m) { return eliminate(m).rank; }

Polynomial determinant(const SymMatrix& input) {
  if (input.rows() != input.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return Polynomial::constant(input.arity(), 1);
  SymMatrix a = input;
  Polynomial prev = Polynomial::constant(a.arity(), 1);
  bool negate = false;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = n;
    for (std::size_t i = k; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      if (best == n || a(i, k).term_count() < a(best, k).term_count()) best = i;
    }
    if (best == n) return Polynomial(a.arity());
    if (best != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(best, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = bareiss_divide(a(k, k) * a(i, j) - a(i, k) * a(k, j), prev);
      }
    }
    prev = a(k, k);
  }
  return negate ? -a(n - 1, n - 1) : a(n - 1, n - 1);
}

PolyVector normalize_vector(PolyVector v) {
  std::optional<Polynomial> g;
  for (const auto& e : v) {
    if (e.is_zero()) continue;
    g = g ? multivariate_gcd(*g, e) : normalize_unit(e);
  }
  if (!g) throw std::invalid_argument("cannot normalize the zero vector");
  if (!g->is_constant()) {
    for (auto& e : v) {
      if (!e.is_zero()) e = *divide_exact(e, *g);
    }
  }
  // Rational content of the whole vector: gcd of numerators over lcm of denominators.
  Integer num = 0;
  Integer den = 1;
  for (const auto& e : v) {
    for (const auto& [m, c] : e.terms()) {
      num = gcd(num, Integer(c.get_num()));
      den = lcm(den, Integer(c.get_den()));
    }
  }
  Rational scale(den, num);
  scale.canonicalize();
  for (const auto& e : v) {
    if (e.is_zero()) continue;
    if (e.leading_coefficient() < 0) scale = -scale;
    break;
  }
  for (auto& e : v) e *= scale;
  return v;
}

std::vector<PolyVector> right_kernel(const SymMatrix& m) {
  const Elimination el = eliminate(m);
  std::vector<bool> is_pivot_col(m.cols(), false);
  for (std::size_t c : el.pivot_cols) is_pivot_col[c] = true;

  const SymMatrix minor = m.select(el.pivot_rows, el.pivot_cols);
  const Polynomial det = determinant(minor);
  std::vector<PolyVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot_col[f]) continue;
    PolyVector v(m.cols(), Polynomial(m.arity()));
    v[f] = det;
    for (std::size_t k = 0; k < el.rank; ++k) {
      SymMatrix replaced = minor;
      for (std::size_t i = 0; i < el.rank; ++i) replaced(i, k) = m(el.pivot_rows[i], f);
      v[el.pivot_cols[k]] = -determinant(replaced);
    }
    basis.push_back(normalize_vector(std::move(v)));
  }
  return basis;
}

std::vector<PolyVector> left_kernel(const SymMatrix& m) { return right_kernel(m.transpose()); }

bool in_column_space(const SymMatrix& m, std::span<const Polynomial> v) {
  if (v.size() != m.rows()) throw std::invalid_argument("vector length differs from row count");
  return rank(m.append_column(v)) == rank(m);
}

Rref rref(RationalMatrix m) {
  Rref out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = m.rows();
    for (std::size_t i = row; i < m.rows(); ++i) {
      if (sgn(m(i, col)) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot == m.rows()) continue;
    if (pivot != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(pivot, j));
    }
    const Rational inv = Rational(1) / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || sgn(m(i, col)) == 0) continue;
      const Rational f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.matrix = std::move(m);
  return out;
}

std::size_t rank(const RationalMatrix& m) { return rref(m).pivots.size(); }

std::vector<RationalVector> nullspace(const RationalMatrix& m) {
  const Rref r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : r.pivots) is_pivot[c] = true;
  std::vector<RationalVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(m.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t k = 0; k < r.pivots.size(); ++k) v[r.pivots[k]] = -r.matrix(k, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<AffineSolution> solve(const RationalMatrix& m, std::span<const Rational> b) {
  if (b.size() != m.rows()) throw std::invalid_argument("right-hand side length mismatch");
  RationalMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const Rref r = rref(aug);
  if (!r.pivots.empty() && r.pivots.back() == m.cols()) return std::nullopt;
  AffineSolution out;
  out.particular.assign(m.cols(), Rational(0));
  for (std::size_t k = 0; k < r.pivots.size(); ++k) out.particular[r.pivots[k]] = r.matrix(k, m.cols());
  out.directions = nullspace(m);
  return out;
}

RationalMatrix inverse(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const Rref r = rref(aug);
  if (r.pivots.size() < n || r.pivots[n - 1] != n - 1) throw std::domain_error("singular matrix");
  RationalMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = r.matrix(i, n + j);
  }
  return out;
}

RfMatrix inverse(const RfMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = m.rows();
  RfMatrix a = m;
  RfMatrix out(n, n, m.arity());
  for (std::size_t i = 0; i < n; ++i) out(i, i) = RationalFunction::constant(m.arity(), 1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    for (std::size_t i = col; i < n; ++i) {
      if (!a(i, col).is_zero()) {
        pivot = i;
        break;
      }
    }
    if (pivot == n) throw std::domain_error("singular matrix");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(col, j), a(pivot, j));
        std::swap(out(col, j), out(pivot, j));
      }
    }
    const RationalFunction inv = a(col, col).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      if (!a(col, j).is_zero()) a(col, j) *= inv;
      if (!out(col, j).is_zero()) out(col, j) *= inv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col).is_zero()) continue;
      const RationalFunction f = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        if (!a(col, j).is_zero()) a(i, j) -= f * a(col, j);
        if (!out(col, j).is_zero()) out(i, j) -= f * out(col, j);
      }
    }
  }
  return out;
}

RationalVector primitive_integer(RationalVector v) {
  Integer num = 0;
  Integer den = 1;
  for (const auto& c : v) {
    if (sgn(c) == 0) continue;
    num = gcd(num, Integer(c.get_num()));
    den = lcm(den, Integer(c.get_den()));
  }
  if (num == 0) throw std::invalid_argument("zero vector has no primitive form");
  Rational scale(den, num);
  scale.canonicalize();
  for (const auto& c : v) {
    if (sgn(c) == 0) continue;
    if (c < 0) scale = -scale;
    break;
  }
  for (auto& c : v) c *= scale;
  return v;
}

std::vector<RationalVector> canonical_basis(const std::vector<RationalVector>& vectors,
                                            std::size_t dim) {
  if (vectors.empty()) return {};
  const Rref r = rref(RationalMatrix::from_rows(vectors, dim));
  std::vector<RationalVector> out;
  for (std::size_t k = 0; k < r.pivots.size(); ++k) out.push_back(primitive_integer(r.matrix.row(k)));
  return out;
}

}  // namespace hessrank
