#include "hessrank/normform.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <stdexcept>

#include "hessrank/linalg.hpp"

namespace hessrank {

namespace {

bool is_zero_vector(const PolyVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Polynomial& e) { return e.is_zero(); });
}

// Univariate division with remainder in Q[var].
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b, std::size_t var) {
  Polynomial q(a.arity());
  Polynomial r = a;
  const int db = b.degree_in(var);
  const Rational lb = b.leading_coefficient_in(var).constant_term();
  while (!r.is_zero() && r.degree_in(var) >= db) {
    const int dr = r.degree_in(var);
    const Rational c = r.leading_coefficient_in(var).constant_term() / lb;
    const Polynomial step =
        Polynomial::monomial(a.arity(), Monomial::variable(var, static_cast<unsigned>(dr - db)), c);
    q += step;
    r -= step * b;
  }
  return {q, r};
}

Polynomial dot(const PolyVector& c, const PolyVector& v) {
  Polynomial out(v.front().arity());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!c[k].is_zero() && !v[k].is_zero()) out += c[k] * v[k];
  }
  return out;
}

void axpy(PolyVector& y, const Polynomial& a, const PolyVector& x) {
  for (std::size_t k = 0; k < y.size(); ++k) {
    if (!x[k].is_zero()) y[k] -= a * x[k];
  }
}

Polynomial gcd_of(const BezoutDomain& s, const PolyVector& v) {
  Polynomial g(v.front().arity());
  for (const auto& e : v) {
    if (!e.is_zero()) g = bezout_gcd(s, g, e).g;
  }
  return g;
}

// c with c^T p = 1, folding pairwise Bezout identities left to right.
PolyVector bezout_combination(const BezoutDomain& s, const PolyVector& p) {
  const std::size_t arity = p.front().arity();
  PolyVector c(p.size(), Polynomial(arity));
  Polynomial g(arity);
  bool started = false;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k].is_zero()) continue;
    if (!started) {
      c[k] = Polynomial::constant(arity, 1);
      g = p[k];
      started = true;
      continue;
    }
    const BezoutTriple b = bezout_gcd(s, g, p[k]);
    for (std::size_t l = 0; l < k; ++l) {
      if (!c[l].is_zero()) c[l] = c[l] * b.u;
    }
    c[k] = b.v;
    g = b.g;
  }
  // g is an associate of 1; rescale to hit 1 exactly.
  const Rational unit = g.constant_term();
  if (!g.is_constant() || sgn(unit) == 0) throw std::logic_error("pivot column is not primitive");
  for (auto& e : c) e *= Rational(1 / unit);
  return c;
}

// Euclidean quotient in S.
Polynomial quotient(const BezoutDomain& s, const Polynomial& a, const Polynomial& b) {
  if (s.kind == BezoutDomain::Kind::UnivariatePoly) return divmod(a, b, s.variable).first;
  mpz_class q;
  const mpz_class x = a.constant_term().get_num();
  const mpz_class y = b.constant_term().get_num();
  mpz_fdiv_q(q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return Polynomial::constant(a.arity(), Rational(q));
}

// Euclidean size used to pick small pivots: the absolute value for integers;
// the degree, then coefficient bit length, for polynomials.
struct Size {
  int degree = -1;
  mpz_class magnitude = 0;
  bool operator<(const Size& o) const {
    return degree != o.degree ? degree < o.degree : magnitude < o.magnitude;
  }
};

Size element_size(const BezoutDomain& s, const Polynomial& a) {
  Size out{s.degree(a), 0};
  if (s.kind == BezoutDomain::Kind::Integer) {
    out.magnitude = abs(a.constant_term().get_num());
    return out;
  }
  for (const auto& [m, c] : a.terms()) {
    out.magnitude += mpz_sizeinbase(c.get_num_mpz_t(), 2) + mpz_sizeinbase(c.get_den_mpz_t(), 2);
  }
  return out;
}

Size column_size(const BezoutDomain& s, const PolyVector& v) {
  Size out;
  for (const auto& e : v) {
    const Size z = element_size(s, e);
    out.degree = std::max(out.degree, z.degree);
    out.magnitude += z.magnitude;
  }
  return out;
}

std::size_t checked_rank(const SymMatrix& p, std::size_t r, const BezoutDomain& s) {
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) {
      if (!s.contains(p(i, j))) throw std::invalid_argument("matrix entry outside the domain");
    }
  const std::size_t rk = p.rows() == 0 || p.cols() == 0 ? 0 : rank(p);
  if (rk == 0) throw std::invalid_argument("zero matrix");
  if (r < rk) throw std::invalid_argument("requested rank is below the rank of the matrix");
  if (r > p.rows()) throw std::invalid_argument("requested rank exceeds the number of rows");
  return rk;
}

struct Work {
  std::vector<PolyVector> cols;   // columns of Q
  std::vector<PolyVector> arows;  // rows of A
  std::vector<PolyVector> crows;  // rows of C
};

WeakSmith finish(const SymMatrix& p, const Work& w, std::size_t r) {
  WeakSmith out{SymMatrix::from_columns(w.cols, p.arity()), SymMatrix::from_rows(w.arows, p.arity()),
                SymMatrix::from_rows(w.crows, p.arity()), r};
  if (!(out.Q * out.A == p)) throw std::logic_error("weak Smith product differs from the input");
  if (!(out.C * out.Q == SymMatrix::identity(r, p.arity()))) {
    throw std::logic_error("weak Smith left inverse certificate fails");
  }
  return out;
}

// Over Q[t] the nonzero rationals are units: rescales column k to integer
// coefficients with content one and compensates in row k of A.
void rescale_column(Work& w, std::size_t k, const BezoutDomain& s) {
  if (s.kind != BezoutDomain::Kind::UnivariatePoly) return;
  mpz_class den = 1;
  mpz_class num = 0;
  for (const auto& e : w.cols[k]) {
    for (const auto& [m, c] : e.terms()) {
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
    }
  }
  if (num == 0) return;
  const Rational scale(den, num);
  if (scale == 1) return;
  for (auto& e : w.cols[k]) e *= scale;
  const Rational inverse = 1 / scale;
  for (auto& e : w.arows[k]) e *= inverse;
}

// Unimodular column operations bringing the columns to echelon shape by
// Euclid steps on one row at a time; A follows so that QA is unchanged.
void column_echelon(Work& w, const BezoutDomain& s) {
  if (w.cols.empty()) return;
  const std::size_t m = w.cols.front().size();
  std::size_t done = 0;
  for (std::size_t row = 0; row < m && done < w.cols.size(); ++row) {
    while (true) {
      std::size_t pivot = w.cols.size();
      std::size_t nonzero = 0;
      for (std::size_t k = done; k < w.cols.size(); ++k) {
        if (w.cols[k][row].is_zero()) continue;
        ++nonzero;
        if (pivot == w.cols.size() || element_size(s, w.cols[k][row]) < element_size(s, w.cols[pivot][row])) {
          pivot = k;
        }
      }
      if (nonzero == 0) break;
      std::swap(w.cols[done], w.cols[pivot]);
      std::swap(w.arows[done], w.arows[pivot]);
      if (nonzero == 1) {
        ++done;
        break;
      }
      const Polynomial& lead = w.cols[done][row];
      for (std::size_t k = done + 1; k < w.cols.size(); ++k) {
        if (w.cols[k][row].is_zero()) continue;
        const Polynomial f = quotient(s, w.cols[k][row], lead);
        if (f.is_zero()) continue;
        axpy(w.cols[k], f, w.cols[done]);
        for (std::size_t l = 0; l < w.arows[done].size(); ++l) {
          if (!w.arows[k][l].is_zero()) w.arows[done][l] += f * w.arows[k][l];
        }
        rescale_column(w, k, s);
      }
    }
  }
}

Work run_columns(const SymMatrix& p, std::size_t r, const BezoutDomain& s, bool upper) {
  std::size_t rk = checked_rank(p, r, s);
  const std::size_t m = p.rows();
  const std::size_t n = p.cols();
  const std::size_t arity = p.arity();
  Work w;
  for (std::size_t j = 0; j < n; ++j) {
    w.cols.push_back(p.col(j));
    PolyVector e(n, Polynomial(arity));
    e[j] = Polynomial::constant(arity, 1);
    w.arows.push_back(std::move(e));
  }
  // Pad with unit columns until the rank reaches r.
  for (std::size_t k = 0; k < m && rk < r; ++k) {
    PolyVector e(m, Polynomial(arity));
    e[k] = Polynomial::constant(arity, 1);
    auto trial = w.cols;
    trial.push_back(e);
    if (rank(SymMatrix::from_columns(trial, arity)) > rk) {
      ++rk;
      w.cols.push_back(std::move(e));
      w.arows.emplace_back(n, Polynomial(arity));
    }
  }
  if (!upper) column_echelon(w, s);
  for (std::size_t i = 0; i < r; ++i) {
    std::size_t j = i;
    while (j < w.cols.size() && is_zero_vector(w.cols[j])) ++j;
    if (j == w.cols.size()) throw std::logic_error("weak Smith ran out of columns");
    w.cols.erase(w.cols.begin() + static_cast<std::ptrdiff_t>(i),
                 w.cols.begin() + static_cast<std::ptrdiff_t>(j));
    w.arows.erase(w.arows.begin() + static_cast<std::ptrdiff_t>(i),
                  w.arows.begin() + static_cast<std::ptrdiff_t>(j));
    if (!upper) {
      // The smallest remaining column is the pivot.
      std::size_t best = i;
      for (std::size_t k = i + 1; k < w.cols.size(); ++k) {
        if (!is_zero_vector(w.cols[k]) && column_size(s, w.cols[k]) < column_size(s, w.cols[best])) best = k;
      }
      std::swap(w.cols[i], w.cols[best]);
      std::swap(w.arows[i], w.arows[best]);
    }
    PolyVector& q = w.cols[i];
    const Polynomial g = gcd_of(s, q);
    if (!(g.is_constant() && g.constant_term() == 1)) {
      for (auto& e : q) {
        if (!e.is_zero()) e = *divide_exact(e, g);
      }
      for (auto& e : w.arows[i]) {
        if (!e.is_zero()) e = e * g;
      }
    }
    PolyVector c = bezout_combination(s, q);
    if (upper) {
      for (std::size_t k = 0; k < i; ++k) {
        const Polynomial f = dot(c, w.cols[k]);
        if (!f.is_zero()) axpy(c, f, w.crows[k]);
      }
    }
    for (std::size_t k = 0; k < w.cols.size(); ++k) {
      if (k == i) continue;
      const Polynomial d = dot(c, w.cols[k]);
      if (d.is_zero()) continue;
      axpy(w.cols[k], d, w.cols[i]);
      for (std::size_t l = 0; l < n; ++l) {
        if (!w.arows[k][l].is_zero()) w.arows[i][l] += d * w.arows[k][l];
      }
      if (k > i) rescale_column(w, k, s);
    }
    w.crows.push_back(std::move(c));
  }
  for (std::size_t k = r; k < w.cols.size(); ++k) {
    if (!is_zero_vector(w.cols[k])) throw std::logic_error("weak Smith columns beyond the rank");
  }
  w.cols.resize(r);
  w.arows.resize(r);
  return w;
}

int column_degree(const PolyVector& col, const BezoutDomain& s) {
  int d = -1;
  for (const auto& e : col) {
    if (!e.is_zero()) d = std::max(d, s.degree(e));
  }
  return d;
}

RationalVector column_leading(const PolyVector& col, const BezoutDomain& s) {
  const int d = column_degree(col, s);
  const Monomial lead = Monomial::variable(s.variable, static_cast<unsigned>(d));
  RationalVector out;
  for (const auto& e : col) out.push_back(e.coefficient(lead));
  return out;
}

}  // namespace

bool BezoutDomain::contains(const Polynomial& a) const {
  if (kind == Kind::Integer) {
    return a.is_constant() && a.constant_term().get_den() == 1;
  }
  for (std::size_t v : a.variables()) {
    if (v != variable) return false;
  }
  return true;
}

Polynomial BezoutDomain::normalize(const Polynomial& a) const {
  if (a.is_zero()) return a;
  if (kind == Kind::Integer) {
    return sgn(a.constant_term()) < 0 ? -a : a;
  }
  Polynomial out = a;
  out *= Rational(1 / a.leading_coefficient_in(variable).constant_term());
  return out;
}

int BezoutDomain::degree(const Polynomial& a) const {
  if (a.is_zero()) return -1;
  return kind == Kind::Integer ? 0 : a.degree_in(variable);
}

BezoutTriple bezout_gcd(const BezoutDomain& s, const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd of two zeros");
  if (!s.contains(a) || !s.contains(b)) throw std::invalid_argument("element outside the domain");
  const std::size_t arity = a.arity();
  if (s.kind == BezoutDomain::Kind::Integer) {
    mpz_class g;
    mpz_class u;
    mpz_class v;
    const mpz_class x = a.constant_term().get_num();
    const mpz_class y = b.constant_term().get_num();
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return {Polynomial::constant(arity, Rational(g)), Polynomial::constant(arity, Rational(u)),
            Polynomial::constant(arity, Rational(v))};
  }
  Polynomial r0 = a;
  Polynomial r1 = b;
  Polynomial s0 = Polynomial::constant(arity, 1);
  Polynomial s1(arity);
  Polynomial t0(arity);
  Polynomial t1 = Polynomial::constant(arity, 1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1, s.variable);
    r0 = std::exchange(r1, r);
    s0 = std::exchange(s1, s0 - q * s1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  const Rational lc = r0.leading_coefficient_in(s.variable).constant_term();
  const Rational inv = 1 / lc;
  r0 *= inv;
  s0 *= inv;
  t0 *= inv;
  return {r0, s0, t0};
}

WeakSmith weak_smith(const SymMatrix& p, std::size_t r, const BezoutDomain& s) {
  const Work w = run_columns(p, r, s, false);
  return finish(p, w, r);
}

WeakSmith weak_smith_upper(const SymMatrix& p, std::size_t r, const BezoutDomain& s) {
  const Work w = run_columns(p, r, s, true);
  WeakSmith out = finish(p, w, r);
  for (std::size_t i = 0; i < out.A.rows(); ++i)
    for (std::size_t j = 0; j < std::min(i, out.A.cols()); ++j) {
      if (!out.A(i, j).is_zero()) throw std::logic_error("weak Smith factor is not upper triangular");
    }
  return out;
}

RationalMatrix leading_coefficient_matrix(const SymMatrix& q, const BezoutDomain& s) {
  RationalMatrix out(q.rows(), q.cols());
  for (std::size_t j = 0; j < q.cols(); ++j) {
    const RationalVector lead = column_leading(q.col(j), s);
    for (std::size_t i = 0; i < q.rows(); ++i) out(i, j) = lead[i];
  }
  return out;
}

WeakSmith weak_smith_leading(const SymMatrix& p, std::size_t r, const BezoutDomain& s) {
  if (s.kind != BezoutDomain::Kind::UnivariatePoly) {
    throw std::invalid_argument("leading-form refinement needs a polynomial domain");
  }
  Work w = run_columns(p, r, s, false);
  const std::size_t arity = p.arity();
  const std::size_t m = p.rows();
  while (true) {
    std::vector<int> deg(r);
    for (std::size_t k = 0; k < r; ++k) deg[k] = column_degree(w.cols[k], s);
    std::vector<std::size_t> order(r);
    for (std::size_t k = 0; k < r; ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return deg[a] < deg[b]; });
    // First column, in degree order, whose leading part depends on earlier ones.
    bool reduced = false;
    for (std::size_t pos = 1; pos < r && !reduced; ++pos) {
      RationalMatrix earlier(m, pos);
      for (std::size_t k = 0; k < pos; ++k) {
        const RationalVector lead = column_leading(w.cols[order[k]], s);
        for (std::size_t row = 0; row < m; ++row) earlier(row, k) = lead[row];
      }
      const std::size_t i = order[pos];
      const auto sol = solve(earlier, column_leading(w.cols[i], s));
      if (!sol) continue;
      for (std::size_t k = 0; k < pos; ++k) {
        const Rational& c = sol->particular[k];
        if (sgn(c) == 0) continue;
        const std::size_t j = order[k];
        const Polynomial f = Polynomial::monomial(
            arity, Monomial::variable(s.variable, static_cast<unsigned>(deg[i] - deg[j])), c);
        axpy(w.cols[i], f, w.cols[j]);
        axpy(w.arows[j], -f, w.arows[i]);
        axpy(w.crows[j], -f, w.crows[i]);
      }
      reduced = true;
    }
    if (!reduced) break;
  }
  WeakSmith out = finish(p, w, r);
  if (rank(leading_coefficient_matrix(out.Q, s)) != r) {
    throw std::logic_error("leading parts of the weak Smith columns are dependent");
  }
  return out;
}

DeBondtForm de_bondt(const SymMatrix& p, const BezoutDomain& s) {
  const std::size_t r = checked_rank(p, p.rows(), s);
  const WeakSmith first = weak_smith(p, r, s);
  const WeakSmith second = weak_smith(first.A.transpose(), r, s);
  DeBondtForm out{first.Q,
                  second.A.transpose(),
                  second.Q.transpose(),
                  first.C,
                  second.C.transpose(),
                  r};
  if (!(out.Q * out.D * out.E == p)) throw std::logic_error("de Bondt product differs from the input");
  if (rank(out.D) != r) throw std::logic_error("de Bondt middle factor is singular");
  const SymMatrix id = SymMatrix::identity(r, p.arity());
  if (!(out.left_inverse * out.Q == id) || !(out.E * out.right_inverse == id)) {
    throw std::logic_error("de Bondt inverse certificate fails");
  }
  return out;
}

PolyVector primitive_vector(const PolyVector& v) {
  if (v.empty() || is_zero_vector(v)) throw std::invalid_argument("zero vector has no content");
  Polynomial g(v.front().arity());
  for (const auto& e : v) {
    if (!e.is_zero()) g = g.is_zero() ? normalize_unit(e) : multivariate_gcd(g, e);
  }
  PolyVector out;
  for (const auto& e : v) out.push_back(e.is_zero() ? e : *divide_exact(e, g));
  mpz_class num_gcd = 0;
  mpz_class den_lcm = 1;
  for (const auto& e : out) {
    if (e.is_zero()) continue;
    const Rational c = rational_content(e);
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  }
  const Rational scale = Rational(den_lcm) / Rational(num_gcd);
  for (auto& e : out) e *= scale;
  return out;
}

RationalFunction expand_linear_forms(const RationalFunction& g, std::size_t arity,
                                     std::size_t main_count, const PolyVector& p,
                                     const std::optional<PolyVector>& q) {
  auto form = [&](const PolyVector& v) {
    Polynomial out(arity);
    for (std::size_t k = 0; k < main_count; ++k) {
      if (!v[k].is_zero()) out += v[k] * Polynomial::variable(arity, k);
    }
    return RationalFunction(out);
  };
  RfVector assignment;
  for (std::size_t k = 0; k < arity; ++k) assignment.emplace_back(Polynomial::variable(arity, k));
  assignment.push_back(form(p));
  assignment.push_back(q ? form(*q) : RationalFunction(arity));
  const std::span<const RationalFunction> a(assignment.data(), g.arity());
  return substitute(g.numerator(), a) / substitute(g.denominator(), a);
}

LinearFormData normalize_linear_form_data(const Polynomial& h, std::size_t main_count,
                                          const RfVector& p, const std::optional<RfVector>& q) {
  const std::size_t n = h.arity();
  if (main_count > n) throw std::out_of_range("main variable count exceeds arity");
  if (p.size() != main_count || (q && q->size() != main_count)) {
    throw std::invalid_argument("linear form length differs from the main variable count");
  }
  auto lifted = [&](const RfVector& v) {
    RfVector out;
    for (const auto& e : v) out.push_back(e.with_arity(n));
    return out;
  };
  const RfVector pl = lifted(p);
  if (std::all_of(pl.begin(), pl.end(), [](const RationalFunction& e) { return e.is_zero(); })) {
    throw std::invalid_argument("linear form p is zero");
  }
  LinearFormData out;
  out.p = primitive_vector(clear_denominators(pl));

  auto by_degree = [](const PolyVector& v, std::size_t skip, auto&& ok) {
    std::size_t best = v.size();
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (k == skip || v[k].is_zero() || !ok(k)) continue;
      if (best == v.size() || v[k].degree() < v[best].degree()) best = k;
    }
    return best;
  };
  auto any = [](std::size_t) { return true; };

  if (q) {
    const RfVector ql = lifted(*q);
    if (!std::all_of(ql.begin(), ql.end(), [](const RationalFunction& e) { return e.is_zero(); })) {
      PolyVector qq = primitive_vector(clear_denominators(ql));
      const SymMatrix pair = SymMatrix::from_columns({out.p, qq}, n);
      if (rank(pair) == 2) out.q = std::move(qq);
    }
  }

  if (out.q) {
    std::size_t unit_index = main_count;
    for (std::size_t k = 0; k < main_count && unit_index == main_count; ++k) {
      if (!out.p[k].is_zero() && out.p[k].is_constant()) unit_index = k;
    }
    std::vector<std::size_t> params;
    for (const auto& e : out.p)
      for (std::size_t v : e.variables()) params.push_back(v);
    for (const auto& e : *out.q)
      for (std::size_t v : e.variables()) params.push_back(v);
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end()), params.end());
    if (unit_index < main_count) {
      out.method = FormNormalization::PivotShift;
      const Rational inv = 1 / out.p[unit_index].constant_term();
      for (auto& e : out.p) e *= inv;
      PolyVector shifted = *out.q;
      const Polynomial qi = shifted[unit_index];
      for (std::size_t k = 0; k < main_count; ++k) {
        if (!out.p[k].is_zero()) shifted[k] -= qi * out.p[k];
      }
      out.q = primitive_vector(shifted);
      out.pivot = unit_index;
    } else if (params.size() <= 1) {
      out.method = FormNormalization::Bezout;
      const BezoutDomain s = BezoutDomain::polynomials_in(params.empty() ? 0 : params.front());
      const WeakSmith ws = weak_smith(SymMatrix::from_columns({out.p, *out.q}, n), 2, s);
      out.p = ws.Q.col(0);
      out.q = ws.Q.col(1);
      out.pivot = by_degree(out.p, main_count, any);
    } else {
      out.method = FormNormalization::Primitive;
      out.pivot = by_degree(out.p, main_count, any);
    }
  } else {
    out.method = FormNormalization::Single;
    out.pivot = by_degree(out.p, main_count, any);
  }

  // Recover g by restricting h to the pivot coordinates and inverting the
  // linear forms there.
  const std::size_t i = out.pivot;
  const std::size_t t = n;
  const std::size_t u = n + 1;
  RfVector assignment;
  for (std::size_t k = 0; k < n; ++k) {
    assignment.emplace_back(k < main_count ? Polynomial(n + 2) : Polynomial::variable(n + 2, k));
  }
  const RationalFunction tv(Polynomial::variable(n + 2, t));
  const RationalFunction uv(Polynomial::variable(n + 2, u));
  auto lift2 = [&](const Polynomial& e) { return RationalFunction(e.with_arity(n + 2)); };
  if (!out.q) {
    assignment[i] = tv / lift2(out.p[i]);
  } else {
    const PolyVector& pv = out.p;
    const PolyVector& qv = *out.q;
    const std::size_t j = by_degree(qv, i, [&](std::size_t k) {
      return !(pv[i] * qv[k] - pv[k] * qv[i]).is_zero();
    });
    if (j == main_count) throw std::logic_error("no invertible pivot minor for independent forms");
    const RationalFunction det = lift2(pv[i] * qv[j] - pv[j] * qv[i]);
    assignment[i] = (lift2(qv[j]) * tv - lift2(pv[j]) * uv) / det;
    assignment[j] = (lift2(pv[i]) * uv - lift2(qv[i]) * tv) / det;
  }
  out.g = substitute(h, assignment);
  if (!(expand_linear_forms(out.g, n, main_count, out.p, out.q) == RationalFunction(h))) {
    throw std::invalid_argument("polynomial is not a function of the given linear forms");
  }
  out.over_R = out.g.is_polynomial();
  return out;
}

}  // namespace hessrank
