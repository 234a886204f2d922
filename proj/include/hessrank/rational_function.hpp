#pragma once

#include <span>
#include <vector>

#include "hessrank/polynomial.hpp"

namespace hessrank {

/// Quotient of two polynomials, kept in lowest terms: the gcd of numerator and
/// denominator is removed, and the denominator has unit rational content and a
/// positive leading coefficient.
class RationalFunction {
 public:
  explicit RationalFunction(std::size_t arity = 0);
  RationalFunction(Polynomial numerator);  // NOLINT(google-explicit-constructor)
  RationalFunction(Polynomial numerator, Polynomial denominator);

  static RationalFunction constant(std::size_t arity, const Rational& c);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  std::size_t arity() const { return num_.arity(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  /// Numerator divided by the (constant) denominator; throws if not a polynomial.
  Polynomial as_polynomial() const;
  bool uses(std::size_t var) const { return num_.uses(var) || den_.uses(var); }

  RationalFunction with_arity(std::size_t arity) const;

  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);

  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  RationalFunction operator-() const;

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) = default;

  RationalFunction inverse() const;
  RationalFunction pow(unsigned e) const;
  /// d/dvar, in lowest terms.
  RationalFunction derivative(std::size_t var) const;
  /// Numerator of the derivative before dividing by den^2: num'*den - num*den'.
  Polynomial derivative_numerator(std::size_t var) const;

 private:
  void reduce();

  Polynomial num_;
  Polynomial den_;
};

using RfVector = std::vector<RationalFunction>;

/// p(assignment) for rational-function assignments (common-denominator route).
RationalFunction substitute(const Polynomial& p, std::span<const RationalFunction> assignment);

/// Lifts polynomials to rational functions.
RfVector to_rf(std::span<const Polynomial> v);

/// Scales a vector of rational functions by the lcm of its denominators.
std::vector<Polynomial> clear_denominators(std::span<const RationalFunction> v);

}  // namespace hessrank
