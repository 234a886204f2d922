#pragma once

#include <optional>
#include <vector>

#include "hessrank/matrix.hpp"
#include "hessrank/rational_function.hpp"

namespace hessrank {

/// A Bezout domain S whose elements are stored as polynomials of the ambient
/// arity: integer constants, or univariate polynomials over Q in one variable.
struct BezoutDomain {
  enum class Kind { Integer, UnivariatePoly };

  Kind kind = Kind::Integer;
  std::size_t variable = 0;

  static BezoutDomain integers() { return {Kind::Integer, 0}; }
  static BezoutDomain polynomials_in(std::size_t var) { return {Kind::UnivariatePoly, var}; }

  bool contains(const Polynomial& a) const;
  /// Associate with positive value (integers) or leading coefficient one.
  Polynomial normalize(const Polynomial& a) const;
  /// Degree used by the leading-form refinement (zero for integers).
  int degree(const Polynomial& a) const;
};

/// g = u a + v b with g = gcd(a, b) normalized.
struct BezoutTriple {
  Polynomial g;
  Polynomial u;
  Polynomial v;
};

BezoutTriple bezout_gcd(const BezoutDomain& s, const Polynomial& a, const Polynomial& b);

/// P = Q A with C Q = I_r, all entries in S.
struct WeakSmith {
  SymMatrix Q;
  SymMatrix A;
  SymMatrix C;
  std::size_t r = 0;
};

WeakSmith weak_smith(const SymMatrix& p, std::size_t r, const BezoutDomain& s);
/// Additionally A(i, j) = 0 for i > j.
WeakSmith weak_smith_upper(const SymMatrix& p, std::size_t r, const BezoutDomain& s);
/// Additionally the leading coefficient matrix of the columns of Q has rank r.
/// Only for univariate polynomial domains.
WeakSmith weak_smith_leading(const SymMatrix& p, std::size_t r, const BezoutDomain& s);

/// Matrix whose i-th column holds the coefficients of t^deg(Q e_i) in Q e_i.
RationalMatrix leading_coefficient_matrix(const SymMatrix& q, const BezoutDomain& s);

/// P = Q D E with Q left invertible (left_inverse Q = I), D square of full rank
/// and E right invertible (E right_inverse = I).
struct DeBondtForm {
  SymMatrix Q;
  SymMatrix D;
  SymMatrix E;
  SymMatrix left_inverse;
  SymMatrix right_inverse;
  std::size_t r = 0;
};

DeBondtForm de_bondt(const SymMatrix& p, const BezoutDomain& s);

/// How the linear forms were normalized.
enum class FormNormalization { Single, PivotShift, Bezout, Primitive };

/// h = g(p^T x, q^T x) with p, q over the parameter ring R and g in the formal
/// arguments t, u (indices arity and arity + 1). g lies in R[t, u] exactly when
/// over_R holds; otherwise its coefficients are in the fraction field of R.
struct LinearFormData {
  PolyVector p;
  std::optional<PolyVector> q;
  RationalFunction g;
  std::size_t pivot = 0;
  FormNormalization method = FormNormalization::Single;
  bool over_R = true;
};

/// Content-normalizes p (and q) and recovers g. The main variables are
/// x_1..x_main_count; the others generate R. Throws std::invalid_argument when h
/// is not a polynomial in the given forms.
LinearFormData normalize_linear_form_data(const Polynomial& h, std::size_t main_count,
                                          const RfVector& p, const std::optional<RfVector>& q);

/// g(p^T x, q^T x) back in the arity of h.
RationalFunction expand_linear_forms(const RationalFunction& g, std::size_t arity,
                                     std::size_t main_count, const PolyVector& p,
                                     const std::optional<PolyVector>& q);

/// Positive rational multiple of v with coprime integer coefficients and the
/// polynomial gcd of the entries removed; v must be nonzero.
PolyVector primitive_vector(const PolyVector& v);

}  // namespace hessrank
