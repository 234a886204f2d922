#pragma once

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hessrank {

using Rational = mpq_class;
using Integer = mpz_class;

/// Hard upper bound on the number of variables a polynomial may carry.
inline constexpr std::size_t kMaxArity = 16;

/// Exponent vector of a monomial. Entries past the owning polynomial's arity
/// are always zero.
class Monomial {
 public:
  using Exponent = std::uint16_t;

  Monomial() = default;

  static Monomial variable(std::size_t index, unsigned power = 1);

  Exponent operator[](std::size_t i) const { return exps_[i]; }
  void set(std::size_t i, unsigned e);
  unsigned degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  /// Highest variable index with a nonzero exponent, plus one.
  std::size_t support_end() const;

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  /// Requires divides(other); returns other / *this.
  Monomial quotient_of(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::array<Exponent, kMaxArity> exps_{};
  Exponent degree_ = 0;
};

/// Graded lexicographic order, descending: higher total degree first, ties
/// broken by the larger exponent of the lowest-indexed variable.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial with exact rational coefficients.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexGreater>;

  explicit Polynomial(std::size_t arity = 0);

  static Polynomial constant(std::size_t arity, const Rational& c);
  static Polynomial variable(std::size_t arity, std::size_t index);
  static Polynomial monomial(std::size_t arity, const Monomial& m, const Rational& c);

  std::size_t arity() const { return arity_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant coefficient (zero for the zero polynomial).
  Rational constant_term() const;
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  int degree_in(std::size_t var) const;
  bool uses(std::size_t var) const;
  std::vector<std::size_t> variables() const;
  bool is_homogeneous() const;

  const Monomial& leading_monomial() const;
  const Rational& leading_coefficient() const;
  Rational coefficient(const Monomial& m) const;

  /// Returns a copy with a different arity. Shrinking is allowed only when the
  /// dropped variables do not occur.
  Polynomial with_arity(std::size_t arity) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  Polynomial pow(unsigned e) const;
  Polynomial derivative(std::size_t var) const;
  Rational evaluate(std::span<const Rational> point) const;

  /// Coefficients of var^0, var^1, ..., each free of var.
  std::vector<Polynomial> coefficients_in(std::size_t var) const;
  /// Leading coefficient with respect to var (free of var).
  Polynomial leading_coefficient_in(std::size_t var) const;

  /// Sets the variables in `vars` to zero.
  Polynomial zero_out(std::span<const std::size_t> vars) const;

  /// Inserts a term, merging with an existing one.
  void add_term(const Monomial& m, const Rational& c);

 private:
  void check_same_arity(const Polynomial& other) const;

  std::size_t arity_;
  TermMap terms_;
};

/// Exact division; nullopt when `divisor` does not divide `dividend`.
std::optional<Polynomial> divide_exact(const Polynomial& dividend, const Polynomial& divisor);
bool divides(const Polynomial& divisor, const Polynomial& dividend);

/// Positive rational c such that p / c has coprime integer coefficients.
Rational rational_content(const Polynomial& p);

/// Unit normalization: unit rational content and positive leading coefficient.
Polynomial normalize_unit(const Polynomial& p);

/// Greatest common divisor, normalized by normalize_unit. Throws
/// std::invalid_argument when both inputs are zero.
Polynomial multivariate_gcd(const Polynomial& p, const Polynomial& q);
Polynomial lcm(const Polynomial& p, const Polynomial& q);

struct ContentSplit {
  Polynomial content;
  Polynomial primitive;
};

/// Content over the subring generated by `parameter_vars`, and the cofactor.
/// With no parameter variables the content is the rational content.
ContentSplit content_primitive(const Polynomial& p, std::span<const std::size_t> parameter_vars);

/// Composition p(assignment_0, ..., assignment_{n-1}); all assignments share an
/// arity, which becomes the arity of the result.
Polynomial compose(const Polynomial& p, std::span<const Polynomial> assignment);

/// Monomials in `nvars` variables of total degree <= degree, in grlex
/// descending order.
std::vector<Monomial> monomials_up_to(std::size_t nvars, unsigned degree);

}  // namespace hessrank
