#include "hessrank/rational_function.hpp"

#include <stdexcept>

namespace hessrank {

RationalFunction::RationalFunction(std::size_t arity)
    : num_(arity), den_(Polynomial::constant(arity, 1)) {}

RationalFunction::RationalFunction(Polynomial numerator)
    : num_(std::move(numerator)), den_(Polynomial::constant(num_.arity(), 1)) {}

RationalFunction::RationalFunction(Polynomial numerator, Polynomial denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num_.arity() != den_.arity()) {
    throw std::invalid_argument("rational function arity mismatch");
  }
  reduce();
}

RationalFunction RationalFunction::constant(std::size_t arity, const Rational& c) {
  return RationalFunction(Polynomial::constant(arity, c));
}

void RationalFunction::reduce() {
  if (num_.is_zero()) {
    den_ = Polynomial::constant(num_.arity(), 1);
    return;
  }
  if (!den_.is_constant()) {
    const Polynomial g = multivariate_gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = *divide_exact(num_, g);
      den_ = *divide_exact(den_, g);
    }
  }
  Rational scale = rational_content(den_);
  if (den_.leading_coefficient() < 0) scale = -scale;
  if (scale != 1) {
    const Rational inv = Rational(1) / scale;
    num_ *= inv;
    den_ *= inv;
  }
}

Polynomial RationalFunction::as_polynomial() const {
  if (!is_polynomial()) throw std::domain_error("rational function is not a polynomial");
  return num_ * (Rational(1) / den_.leading_coefficient());
}

RationalFunction RationalFunction::with_arity(std::size_t arity) const {
  RationalFunction out(arity);
  out.num_ = num_.with_arity(arity);
  out.den_ = den_.with_arity(arity);
  return out;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  reduce();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) {
  return *this += -o;
}

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  reduce();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
  return *this *= o.inverse();
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction out(*this);
  out.num_ = -out.num_;
  return out;
}

RationalFunction RationalFunction::inverse() const {
  if (num_.is_zero()) throw std::domain_error("inverse of zero rational function");
  return RationalFunction(den_, num_);
}

RationalFunction RationalFunction::pow(unsigned e) const {
  RationalFunction out(arity());
  out.num_ = num_.pow(e);
  out.den_ = den_.pow(e);
  return out;
}

Polynomial RationalFunction::derivative_numerator(std::size_t var) const {
  return num_.derivative(var) * den_ - num_ * den_.derivative(var);
}

RationalFunction RationalFunction::derivative(std::size_t var) const {
  if (den_.is_constant()) return RationalFunction(num_.derivative(var), den_);
  return RationalFunction(derivative_numerator(var), den_ * den_);
}

RationalFunction substitute(const Polynomial& p, std::span<const RationalFunction> assignment) {
  if (assignment.size() != p.arity()) {
    throw std::invalid_argument("substitution must assign every variable");
  }
  std::size_t target = assignment.empty() ? 0 : assignment.front().arity();
  for (const auto& a : assignment) {
    if (a.arity() != target) throw std::invalid_argument("substitution arity mismatch");
  }
  if (assignment.empty()) return RationalFunction::constant(0, p.constant_term());

  bool all_polynomial = true;
  for (const auto& a : assignment) all_polynomial = all_polynomial && a.is_polynomial();
  if (all_polynomial) {
    std::vector<Polynomial> polys;
    polys.reserve(assignment.size());
    for (const auto& a : assignment) polys.push_back(a.as_polynomial());
    return RationalFunction(compose(p, polys));
  }

  // Common denominator prod_v den_v^{deg_v p}; each term contributes
  // coef * prod_v num_v^{e_v} den_v^{deg_v - e_v}.
  const std::size_t n = p.arity();
  std::vector<int> max_deg(n);
  std::vector<std::vector<Polynomial>> num_pows(n);
  std::vector<std::vector<Polynomial>> den_pows(n);
  for (std::size_t v = 0; v < n; ++v) {
    max_deg[v] = std::max(p.degree_in(v), 0);
    num_pows[v].push_back(Polynomial::constant(target, 1));
    den_pows[v].push_back(Polynomial::constant(target, 1));
    for (int e = 1; e <= max_deg[v]; ++e) {
      num_pows[v].push_back(num_pows[v].back() * assignment[v].numerator());
      den_pows[v].push_back(den_pows[v].back() * assignment[v].denominator());
    }
  }
  Polynomial numerator(target);
  for (const auto& [m, c] : p.terms()) {
    Polynomial term = Polynomial::constant(target, c);
    for (std::size_t v = 0; v < n; ++v) {
      if (max_deg[v] == 0) continue;
      const unsigned e = m[v];
      if (e != 0) term *= num_pows[v][e];
      if (static_cast<int>(e) != max_deg[v]) term *= den_pows[v][max_deg[v] - e];
    }
    numerator += term;
  }
  Polynomial denominator = Polynomial::constant(target, 1);
  for (std::size_t v = 0; v < n; ++v) {
    if (max_deg[v] > 0) denominator *= den_pows[v][max_deg[v]];
  }
  return RationalFunction(std::move(numerator), std::move(denominator));
}

RfVector to_rf(std::span<const Polynomial> v) {
  RfVector out;
  out.reserve(v.size());
  for (const auto& p : v) out.emplace_back(p);
  return out;
}

std::vector<Polynomial> clear_denominators(std::span<const RationalFunction> v) {
  if (v.empty()) return {};
  Polynomial common = Polynomial::constant(v.front().arity(), 1);
  for (const auto& f : v) {
    if (!f.denominator().is_constant()) common = lcm(common, f.denominator());
  }
  std::vector<Polynomial> out;
  out.reserve(v.size());
  for (const auto& f : v) {
    out.push_back(*divide_exact(common * f.numerator(), f.denominator()));
  }
  return out;
}

}  // namespace hessrank
