#include "hessrank/polynomial.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace hessrank {

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::variable(std::size_t index, unsigned power) {
  Monomial m;
  m.set(index, power);
  return m;
}

void Monomial::set(std::size_t i, unsigned e) {
  if (i >= kMaxArity) {
    throw std::out_of_range("monomial variable index exceeds maximum arity");
  }
  const unsigned next_degree = degree_ - exps_[i] + e;
  if (e > std::numeric_limits<Exponent>::max() ||
      next_degree > std::numeric_limits<Exponent>::max()) {
    throw std::overflow_error("monomial exponent overflow");
  }
  exps_[i] = static_cast<Exponent>(e);
  degree_ = static_cast<Exponent>(next_degree);
}

std::size_t Monomial::support_end() const {
  for (std::size_t i = kMaxArity; i > 0; --i) {
    if (exps_[i - 1] != 0) return i;
  }
  return 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  const unsigned total = static_cast<unsigned>(degree_) + other.degree_;
  if (total > std::numeric_limits<Exponent>::max()) {
    throw std::overflow_error("monomial exponent overflow");
  }
  for (std::size_t i = 0; i < kMaxArity; ++i) {
    out.exps_[i] = static_cast<Exponent>(exps_[i] + other.exps_[i]);
  }
  out.degree_ = static_cast<Exponent>(total);
  return out;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < kMaxArity; ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  Monomial out;
  for (std::size_t i = 0; i < kMaxArity; ++i) {
    out.exps_[i] = static_cast<Exponent>(other.exps_[i] - exps_[i]);
  }
  out.degree_ = static_cast<Exponent>(other.degree_ - degree_);
  return out;
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  for (std::size_t i = 0; i < kMaxArity; ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(std::size_t arity) : arity_(arity) {
  if (arity > kMaxArity) {
    throw std::invalid_argument("polynomial arity exceeds maximum of " +
                                std::to_string(kMaxArity));
  }
}

Polynomial Polynomial::constant(std::size_t arity, const Rational& c) {
  Polynomial p(arity);
  if (c != 0) p.terms_.emplace(Monomial{}, c);
  return p;
}

Polynomial Polynomial::variable(std::size_t arity, std::size_t index) {
  if (index >= arity) throw std::out_of_range("variable index out of range");
  Polynomial p(arity);
  p.terms_.emplace(Monomial::variable(index), Rational(1));
  return p;
}

Polynomial Polynomial::monomial(std::size_t arity, const Monomial& m, const Rational& c) {
  if (m.support_end() > arity) throw std::out_of_range("monomial exceeds arity");
  Polynomial p(arity);
  if (c != 0) p.terms_.emplace(m, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::constant_term() const {
  if (terms_.empty()) return 0;
  const auto& last = *terms_.rbegin();
  return last.first.is_one() ? last.second : Rational(0);
}

int Polynomial::degree() const {
  return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first.degree());
}

int Polynomial::degree_in(std::size_t var) const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[var]));
  return d;
}

bool Polynomial::uses(std::size_t var) const {
  if (var >= arity_) return false;
  for (const auto& [m, c] : terms_) {
    if (m[var] != 0) return true;
  }
  return false;
}

std::vector<std::size_t> Polynomial::variables() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < arity_; ++v) {
    if (uses(v)) out.push_back(v);
  }
  return out;
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  const unsigned d = terms_.begin()->first.degree();
  for (const auto& [m, c] : terms_) {
    if (m.degree() != d) return false;
  }
  return true;
}

const Monomial& Polynomial::leading_monomial() const {
  if (terms_.empty()) throw std::domain_error("leading monomial of zero polynomial");
  return terms_.begin()->first;
}

const Rational& Polynomial::leading_coefficient() const {
  if (terms_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
  return terms_.begin()->second;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Polynomial Polynomial::with_arity(std::size_t arity) const {
  if (arity < arity_) {
    for (const auto& [m, c] : terms_) {
      if (m.support_end() > arity) {
        throw std::invalid_argument("cannot shrink arity: dropped variable occurs");
      }
    }
  }
  Polynomial out(arity);
  out.terms_ = terms_;
  return out;
}

void Polynomial::check_same_arity(const Polynomial& other) const {
  if (arity_ != other.arity_) {
    throw std::invalid_argument("polynomial arity mismatch: " + std::to_string(arity_) +
                                " vs " + std::to_string(other.arity_));
  }
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_same_arity(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_same_arity(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_same_arity(b);
  Polynomial out(a.arity_);
  if (a.is_zero() || b.is_zero()) return out;
  Rational prod;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      prod = ca * cb;
      out.add_term(ma * mb, prod);
    }
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coef] : terms_) coef *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(*this);
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return a.arity_ == b.arity_ && a.terms_ == b.terms_;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(arity_, 1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= arity_) throw std::out_of_range("derivative variable out of range");
  Polynomial out(arity_);
  for (const auto& [m, c] : terms_) {
    const unsigned e = m[var];
    if (e == 0) continue;
    Monomial dm = m;
    dm.set(var, e - 1);
    out.add_term(dm, c * e);
  }
  return out;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != arity_) throw std::invalid_argument("evaluation point has wrong length");
  Rational total = 0;
  Rational term;
  Rational power;
  for (const auto& [m, c] : terms_) {
    term = c;
    for (std::size_t v = 0; v < arity_; ++v) {
      const unsigned e = m[v];
      if (e == 0) continue;
      mpz_pow_ui(power.get_num_mpz_t(), point[v].get_num_mpz_t(), e);
      mpz_pow_ui(power.get_den_mpz_t(), point[v].get_den_mpz_t(), e);
      power.canonicalize();
      term *= power;
    }
    total += term;
  }
  return total;
}

std::vector<Polynomial> Polynomial::coefficients_in(std::size_t var) const {
  const int d = degree_in(var);
  std::vector<Polynomial> out(static_cast<std::size_t>(std::max(d + 1, 0)), Polynomial(arity_));
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    rest.set(var, 0);
    out[m[var]].add_term(rest, c);
  }
  return out;
}

Polynomial Polynomial::leading_coefficient_in(std::size_t var) const {
  auto coeffs = coefficients_in(var);
  if (coeffs.empty()) return Polynomial(arity_);
  return coeffs.back();
}

Polynomial Polynomial::zero_out(std::span<const std::size_t> vars) const {
  Polynomial out(arity_);
  for (const auto& [m, c] : terms_) {
    bool keep = true;
    for (std::size_t v : vars) {
      if (m[v] != 0) {
        keep = false;
        break;
      }
    }
    if (keep) out.terms_.emplace_hint(out.terms_.end(), m, c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Division, content, gcd

std::optional<Polynomial> divide_exact(const Polynomial& dividend, const Polynomial& divisor) {
  if (divisor.is_zero()) throw std::domain_error("division by zero polynomial");
  if (dividend.arity() != divisor.arity()) {
    throw std::invalid_argument("polynomial arity mismatch in division");
  }
  const std::size_t n = dividend.arity();
  Polynomial quotient(n);
  if (dividend.is_zero()) return quotient;
  if (divisor.is_constant()) {
    return dividend * (Rational(1) / divisor.leading_coefficient());
  }
  const Monomial& lead = divisor.leading_monomial();
  const Rational lead_inv = Rational(1) / divisor.leading_coefficient();
  Polynomial remainder = dividend;
  while (!remainder.is_zero()) {
    const Monomial& rm = remainder.leading_monomial();
    if (!lead.divides(rm)) return std::nullopt;
    const Monomial qm = lead.quotient_of(rm);
    const Rational qc = remainder.leading_coefficient() * lead_inv;
    quotient.add_term(qm, qc);
    for (const auto& [m, c] : divisor.terms()) remainder.add_term(qm * m, -qc * c);
  }
  return quotient;
}

bool divides(const Polynomial& divisor, const Polynomial& dividend) {
  return divide_exact(dividend, divisor).has_value();
}

Rational rational_content(const Polynomial& p) {
  if (p.is_zero()) return 0;
  Integer num_gcd = 0;
  Integer den_lcm = 1;
  for (const auto& [m, c] : p.terms()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational out(num_gcd, den_lcm);
  out.canonicalize();
  return out;
}

Polynomial normalize_unit(const Polynomial& p) {
  if (p.is_zero()) return p;
  Rational scale = Rational(1) / rational_content(p);
  if (p.leading_coefficient() < 0) scale = -scale;
  return p * scale;
}

namespace {

Polynomial exact_quotient(const Polynomial& a, const Polynomial& b) {
  auto q = divide_exact(a, b);
  if (!q) throw std::logic_error("expected exact polynomial division");
  return std::move(*q);
}

Polynomial gcd_impl(const Polynomial& a, const Polynomial& b);

/// gcd of the coefficients of p viewed as a polynomial in var.
Polynomial content_in(const Polynomial& p, std::size_t var) {
  Polynomial g(p.arity());
  for (const auto& c : p.coefficients_in(var)) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? normalize_unit(c) : gcd_impl(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

/// Pseudo-remainder lc(b)^(deg a - deg b + 1) a mod b with respect to var.
Polynomial pseudo_remainder(Polynomial a, const Polynomial& b, std::size_t var) {
  const int db = b.degree_in(var);
  const Polynomial lb = b.leading_coefficient_in(var);
  int da = a.degree_in(var);
  int steps = da - db + 1;
  while (!a.is_zero() && da >= db) {
    const Polynomial la = a.leading_coefficient_in(var);
    Polynomial shifted =
        Polynomial::monomial(a.arity(), Monomial::variable(var, static_cast<unsigned>(da - db)), 1);
    a = lb * a - la * shifted * b;
    da = a.degree_in(var);
    --steps;
  }
  if (steps > 0 && !a.is_zero()) a *= lb.pow(static_cast<unsigned>(steps));
  return a;
}

Polynomial primitive_in(const Polynomial& p, std::size_t var) {
  if (p.is_zero()) return p;
  return normalize_unit(exact_quotient(p, content_in(p, var)));
}

/// Univariate image of p in var after substituting the other variables.
std::vector<Rational> specialize(const Polynomial& p, std::size_t var,
                                 std::span<const Rational> point) {
  std::vector<Rational> out(static_cast<std::size_t>(std::max(p.degree_in(var), 0)) + 1);
  for (const auto& [m, c] : p.terms()) {
    Rational v = c;
    for (std::size_t k = 0; k < p.arity(); ++k) {
      if (k == var || m[k] == 0) continue;
      Rational x;
      mpz_pow_ui(x.get_num_mpz_t(), point[k].get_num_mpz_t(), m[k]);
      v *= x;
    }
    out[m[var]] += v;
  }
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

/// Degree of the gcd of two dense univariate polynomials over Q.
int univariate_gcd_degree(std::vector<Rational> a, std::vector<Rational> b) {
  auto trim = [](std::vector<Rational>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  trim(a);
  trim(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    while (a.size() >= b.size() && !a.empty()) {
      const Rational f = a.back() / b.back();
      const std::size_t shift = a.size() - b.size();
      for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= f * b[k];
      a.pop_back();
      trim(a);
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

/// True when a specialization proves that the primitive parts of a and b in
/// var are coprime. Leading coefficients must survive the substitution.
bool coprime_by_specialization(const Polynomial& a, const Polynomial& b, std::size_t var) {
  std::vector<Rational> point(a.arity());
  for (std::size_t k = 0; k < point.size(); ++k) point[k] = Rational(static_cast<long>(2 * k + 3), 1) + Rational(1, static_cast<long>(k + 2));
  const auto sa = specialize(a, var, point);
  const auto sb = specialize(b, var, point);
  if (static_cast<int>(sa.size()) - 1 != a.degree_in(var)) return false;
  if (static_cast<int>(sb.size()) - 1 != b.degree_in(var)) return false;
  return univariate_gcd_degree(sa, sb) == 0;
}

Polynomial gcd_impl(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return normalize_unit(b);
  if (b.is_zero()) return normalize_unit(a);
  if (a.is_constant() || b.is_constant()) return Polynomial::constant(a.arity(), 1);
  // Variables used by only one side go into the content; otherwise recurse on
  // the shared variable of least degree.
  std::size_t var = a.arity();
  int best = 0;
  for (std::size_t v = 0; v < a.arity(); ++v) {
    const bool a_has = a.uses(v);
    const bool b_has = b.uses(v);
    if (a_has && !b_has) return gcd_impl(content_in(a, v), b);
    if (b_has && !a_has) return gcd_impl(a, content_in(b, v));
    if (!a_has) continue;
    const int d = std::max(a.degree_in(v), b.degree_in(v));
    if (var == a.arity() || d < best) {
      var = v;
      best = d;
    }
  }

  const Polynomial ca = content_in(a, var);
  const Polynomial cb = content_in(b, var);
  Polynomial pa = exact_quotient(a, ca);
  Polynomial pb = exact_quotient(b, cb);
  const Polynomial c = gcd_impl(ca, cb);
  if (coprime_by_specialization(pa, pb, var)) return c;
  if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);
  if (auto q = divide_exact(pa, pb)) return normalize_unit(c * normalize_unit(pb));

  // Subresultant remainder sequence.
  Polynomial g = Polynomial::constant(a.arity(), 1);
  Polynomial h = g;
  while (true) {
    const int delta = pa.degree_in(var) - pb.degree_in(var);
    Polynomial r = pseudo_remainder(pa, pb, var);
    if (r.is_zero()) break;
    if (r.degree_in(var) == 0) return c;
    pa = std::move(pb);
    pb = exact_quotient(r, g * h.pow(static_cast<unsigned>(delta)));
    g = pa.leading_coefficient_in(var);
    if (delta == 0) continue;
    h = exact_quotient(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
  }
  return normalize_unit(c * primitive_in(pb, var));
}

}  // namespace

Polynomial multivariate_gcd(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() && q.is_zero()) throw std::invalid_argument("gcd of two zero polynomials");
  if (p.arity() != q.arity()) throw std::invalid_argument("polynomial arity mismatch in gcd");
  return gcd_impl(p, q);
}

Polynomial lcm(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() || q.is_zero()) return Polynomial(p.arity());
  return normalize_unit(exact_quotient(p * q, multivariate_gcd(p, q)));
}

ContentSplit content_primitive(const Polynomial& p, std::span<const std::size_t> parameter_vars) {
  if (p.is_zero()) throw std::invalid_argument("content of the zero polynomial");
  const std::size_t n = p.arity();
  if (parameter_vars.empty()) {
    const Rational c = rational_content(p);
    return {Polynomial::constant(n, c), p * (Rational(1) / c)};
  }
  std::vector<bool> is_param(n, false);
  for (std::size_t v : parameter_vars) {
    if (v >= n) throw std::out_of_range("parameter variable out of range");
    is_param[v] = true;
  }
  // Group terms by their non-parameter part; each group is a coefficient in
  // the parameter ring.
  std::map<Monomial, Polynomial, GrlexGreater> groups;
  for (const auto& [m, c] : p.terms()) {
    Monomial outer;
    Monomial inner;
    for (std::size_t v = 0; v < n; ++v) {
      if (is_param[v]) {
        inner.set(v, m[v]);
      } else {
        outer.set(v, m[v]);
      }
    }
    auto [it, inserted] = groups.try_emplace(outer, Polynomial(n));
    it->second.add_term(inner, c);
  }
  Polynomial content(n);
  for (const auto& [outer, coeff] : groups) {
    content = content.is_zero() ? normalize_unit(coeff) : multivariate_gcd(content, coeff);
  }
  return {content, exact_quotient(p, content)};
}

Polynomial compose(const Polynomial& p, std::span<const Polynomial> assignment) {
  if (assignment.size() != p.arity()) {
    throw std::invalid_argument("substitution must assign every variable");
  }
  std::size_t target = 0;
  if (!assignment.empty()) {
    target = assignment.front().arity();
    for (const auto& a : assignment) {
      if (a.arity() != target) throw std::invalid_argument("substitution arity mismatch");
    }
  }
  // Cache powers per variable.
  std::vector<std::vector<Polynomial>> powers(p.arity());
  for (std::size_t v = 0; v < p.arity(); ++v) {
    const int d = p.degree_in(v);
    powers[v].push_back(Polynomial::constant(target, 1));
    for (int e = 1; e <= d; ++e) powers[v].push_back(powers[v].back() * assignment[v]);
  }
  Polynomial out(target);
  for (const auto& [m, c] : p.terms()) {
    Polynomial term = Polynomial::constant(target, c);
    for (std::size_t v = 0; v < p.arity(); ++v) {
      if (m[v] != 0) term *= powers[v][m[v]];
    }
    out += term;
  }
  return out;
}

std::vector<Monomial> monomials_up_to(std::size_t nvars, unsigned degree) {
  std::vector<Monomial> out;
  Monomial current;
  // Enumerate exponent vectors recursively.
  auto recurse = [&](auto&& self, std::size_t var, unsigned remaining) -> void {
    if (var == nvars) {
      out.push_back(current);
      return;
    }
    for (unsigned e = 0; e <= remaining; ++e) {
      current.set(var, e);
      self(self, var + 1, remaining - e);
    }
    current.set(var, 0);
  };
  recurse(recurse, 0, degree);
  std::sort(out.begin(), out.end(), GrlexGreater{});
  return out;
}

}  // namespace hessrank
