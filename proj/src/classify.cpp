#include "hessrank/classify.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "hessrank/linalg.hpp"
#include "hessrank/relations.hpp"

namespace hessrank {

const char* form_name(Form f) {
  switch (f) {
    case Form::GradConstant: return "i";
    case Form::GradAffine: return "ii";
    case Form::SingleForm: return "iii";
    case Form::SingleFormShifted: return "iv";
    case Form::DoubleForm: return "v";
    case Form::Plane: return "plane";
  }
  return "?";
}

namespace {

std::vector<std::size_t> range(std::size_t from, std::size_t to) {
  std::vector<std::size_t> out(to - from);
  std::iota(out.begin(), out.end(), from);
  return out;
}

Polynomial linear_part(const PolyVector& a, std::size_t arity) {
  Polynomial out(arity);
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!a[k].is_zero()) out += a[k].with_arity(arity) * Polynomial::variable(arity, k);
  }
  return out;
}

/// Gradient with the main variables set to zero.
PolyVector gradient_at_origin(const PolyMap& grad) {
  const auto main = range(0, grad.main_vars().size());
  PolyVector out;
  for (const auto& c : grad.components()) out.push_back(c.zero_out(main));
  return out;
}

PolyVector constants(const RationalVector& v, std::size_t arity) {
  PolyVector out;
  for (const auto& c : v) out.push_back(Polynomial::constant(arity, c));
  return out;
}

int max_degree(const PolyVector& v) {
  int d = -1;
  for (const auto& e : v) d = std::max(d, e.degree());
  return d;
}

std::optional<std::size_t> first_nonzero_row(const SymMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_zero()) return i;
    }
  }
  return std::nullopt;
}

void finish(Decomposition& d, const Polynomial& h) {
  d.coefficient_ring = range(d.main_count, d.arity);
  d.verified = expand(d) == RationalFunction(h);
  if (!d.verified) throw std::logic_error("decomposition does not reconstruct h");
}

// Lüroth-style certificates: transcendence degrees over K(gamma).

struct Certifier {
  std::size_t n;  // arity of h; t and u are n and n + 1
  std::vector<std::size_t> params;

  RationalFunction lift(const Polynomial& e) const { return RationalFunction(e.with_arity(n + 2)); }
  RationalFunction lift(const RationalFunction& e) const { return e.with_arity(n + 2); }

  std::size_t trdeg_over(const RationalFunction& gamma, RfVector v,
                         std::vector<std::size_t> wrt) const {
    v.push_back(lift(gamma));
    return trdeg(v, wrt) - 1;
  }

  /// trdeg over K(gamma) of K(gamma)(var * v), var being t or u.
  std::size_t scaled(const RationalFunction& gamma, const PolyVector& v, std::size_t var) const {
    RfVector w;
    const RationalFunction x(Polynomial::variable(n + 2, var));
    for (const auto& e : v) w.push_back(lift(e) * x);
    auto wrt = params;
    wrt.push_back(var);
    return trdeg_over(gamma, w, wrt);
  }

  std::size_t plain(const RationalFunction& gamma, const RfVector& v) const {
    RfVector w;
    for (const auto& e : v) w.push_back(lift(e));
    return trdeg_over(gamma, w, params);
  }

  bool transcendental(const RationalFunction& gamma) const {
    const RfVector one{lift(gamma)};
    return trdeg(one, params) == 1;
  }
};

/// Ratios v_j / v_k and entries of v, ordered by total degree of numerator
/// plus denominator, larger numerator first on ties.
void add_candidates(const RfVector& v, std::vector<RationalFunction>& out) {
  std::vector<RationalFunction> fresh;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j].is_zero()) continue;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (k == j || v[k].is_zero()) continue;
      fresh.push_back(v[j] / v[k]);
    }
  }
  for (const auto& e : v) fresh.push_back(e);
  for (auto& c : fresh) {
    if (c.is_constant()) continue;
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
  }
}

void sort_candidates(std::vector<RationalFunction>& c) {
  std::stable_sort(c.begin(), c.end(), [](const RationalFunction& a, const RationalFunction& b) {
    const int da = a.numerator().degree() + a.denominator().degree();
    const int db = b.numerator().degree() + b.denominator().degree();
    if (da != db) return da < db;
    return a.numerator().degree() > b.numerator().degree();
  });
}

RfVector lift_vector(const PolyVector& v) {
  RfVector out;
  for (const auto& e : v) out.emplace_back(e);
  return out;
}

/// gamma with trdeg_{K(gamma)} K(gamma)(t p) = target.
std::optional<RationalFunction> single_gamma(const Certifier& c, const PolyVector& p,
                                             std::size_t target) {
  std::vector<RationalFunction> cands;
  add_candidates(lift_vector(p), cands);
  sort_candidates(cands);
  for (const auto& g : cands) {
    if (c.transcendental(g) && c.scaled(g, p, c.n) == target) return g;
  }
  return std::nullopt;
}

/// (lambda, gamma) with trdeg(t p) + trdeg(b - lambda p) = 1 over K(gamma).
std::optional<std::pair<RationalFunction, RationalFunction>> shifted_certificate(
    const Certifier& c, const PolyVector& p, const PolyVector& b) {
  const std::size_t n = c.n;
  std::vector<RationalFunction> lambdas{RationalFunction(n)};
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j].is_zero()) continue;
    RationalFunction l(b[j], p[j]);
    if (std::find(lambdas.begin(), lambdas.end(), l) == lambdas.end()) lambdas.push_back(l);
  }
  // Prefer the shift with the most vanishing entries.
  auto shift = [&](const RationalFunction& lambda) {
    RfVector out;
    for (std::size_t j = 0; j < p.size(); ++j) out.push_back(RationalFunction(b[j]) - lambda * p[j]);
    return out;
  };
  auto zeros = [&](const RationalFunction& lambda) {
    const RfVector v = shift(lambda);
    return std::count_if(v.begin(), v.end(), [](const RationalFunction& e) { return e.is_zero(); });
  };
  std::stable_sort(lambdas.begin(), lambdas.end(),
                   [&](const RationalFunction& x, const RationalFunction& y) { return zeros(x) > zeros(y); });
  for (const auto& lambda : lambdas) {
    const RfVector shifted = shift(lambda);
    std::vector<RationalFunction> cands;
    add_candidates(lift_vector(p), cands);
    add_candidates(shifted, cands);
    sort_candidates(cands);
    for (const auto& g : cands) {
      if (!c.transcendental(g)) continue;
      if (c.scaled(g, p, n) + c.plain(g, shifted) == 1) return std::make_pair(lambda, g);
    }
  }
  return std::nullopt;
}

std::optional<RationalFunction> double_gamma(const Certifier& c, const PolyVector& p,
                                             const PolyVector& q) {
  std::vector<RationalFunction> cands;
  add_candidates(lift_vector(p), cands);
  add_candidates(lift_vector(q), cands);
  sort_candidates(cands);
  for (const auto& g : cands) {
    if (!c.transcendental(g)) continue;
    if (c.scaled(g, p, c.n) + c.scaled(g, q, c.n + 1) == 2) return g;
  }
  return std::nullopt;
}

void apply_forms(Decomposition& d, const Polynomial& rest, const RfVector& p,
                 const std::optional<RfVector>& q) {
  const LinearFormData lf = normalize_linear_form_data(rest, d.main_count, p, q);
  d.g = lf.g;
  d.p = lf.p;
  d.q = lf.q;
  d.over_L_fallback = !lf.over_R;
}

}  // namespace

RationalFunction expand(const Decomposition& d) {
  const std::size_t n = d.arity;
  const PolyVector p = d.p ? *d.p : PolyVector(d.main_count, Polynomial(n));
  RationalFunction out = expand_linear_forms(d.g, n, d.main_count, p, d.q);
  return out + RationalFunction(linear_part(d.a_or_b, n));
}

bool degree_bounds_hold(const Decomposition& d) {
  if (d.coefficient_ring.empty()) return true;
  switch (d.form) {
    case Form::GradAffine: return max_degree(d.a_or_b) >= 2;
    case Form::SingleFormShifted: return d.p.has_value() || max_degree(d.a_or_b) >= 2;
    case Form::SingleForm: return d.p && max_degree(*d.p) >= 2;
    default: return true;
  }
}

bool same_image_relations(const Decomposition& d, const Polynomial& h, unsigned degree) {
  if (!d.p) throw std::invalid_argument("decomposition has no linear form");
  const std::size_t n = d.arity;
  const std::size_t m = d.main_count;
  const PolyMap grad = gradient(h, m);
  PolyVector lhs;
  for (const auto& c : grad.components()) lhs.push_back(c.with_arity(n + 2));
  PolyVector rhs;
  const Polynomial t = Polynomial::variable(n + 2, n);
  const Polynomial u = Polynomial::variable(n + 2, n + 1);
  for (std::size_t k = 0; k < m; ++k) {
    Polynomial e = d.a_or_b[k].with_arity(n + 2) + t * (*d.p)[k].with_arity(n + 2);
    if (d.q) e += u * (*d.q)[k].with_arity(n + 2);
    rhs.push_back(std::move(e));
  }
  return same_relations_over_K(lhs, rhs, degree);
}

DbReduction db_reduce(const Polynomial& h, std::size_t n_target, std::uint64_t seed) {
  const std::size_t n = h.arity();
  if (n_target == 0 || n_target > n) throw std::invalid_argument("target variable count out of range");
  const SymMatrix hess = hessian(h, n);
  const std::size_t r = rank(hess);
  const auto lead = range(0, n_target);
  const auto cols = range(0, n);
  if (rank(hess.select(lead, cols)) != r) {
    throw std::invalid_argument("leading Hessian rows do not generate the row space");
  }

  DbReduction out;
  out.h = h;
  out.C = RationalMatrix::identity(n);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pool(-8, 7);
  constexpr std::size_t kBudget = 20;

  for (std::size_t cur = n; cur > n_target; --cur) {
    bool accepted = false;
    for (std::size_t attempt = 0; attempt < kBudget && !accepted; ++attempt) {
      int c = pool(rng);
      if (c >= 0) ++c;
      ++out.tries;
      std::vector<Polynomial> assignment;
      for (std::size_t k = 0; k + 1 < cur; ++k) assignment.push_back(Polynomial::variable(cur - 1, k));
      assignment.push_back(Rational(c) * Polynomial::variable(cur - 1, cur - 2));
      const Polynomial next = compose(out.h, assignment);
      if (hessian_rank(next, cur - 1) != r) continue;
      RationalMatrix step(cur, cur - 1);
      for (std::size_t k = 0; k + 1 < cur; ++k) step(k, k) = 1;
      step(cur - 1, cur - 2) = c;
      out.C = out.C * step;
      out.h = next;
      ++out.rounds;
      accepted = true;
    }
    if (!accepted) throw std::runtime_error("retry budget exhausted in variable reduction");
  }
  return out;
}

PencilNormalization pencil_normalize(const RfMatrix& P, const RfVector& b) {
  const std::size_t m = P.rows();
  const std::size_t n = P.cols();
  if (b.size() != m) throw std::invalid_argument("pencil offset has wrong length");
  std::vector<PolyVector> rows;
  for (std::size_t i = 0; i < m; ++i) rows.push_back(clear_denominators(P.row(i)));
  const Elimination e = eliminate(SymMatrix::from_rows(rows, P.arity()));
  const std::size_t r = e.rank;
  if (r == 0) throw std::invalid_argument("pencil matrix is zero");

  auto order = [](std::vector<std::size_t> pivots, std::size_t size) {
    std::sort(pivots.begin(), pivots.end());
    std::vector<std::size_t> out = pivots;
    for (std::size_t k = 0; k < size; ++k) {
      if (!std::binary_search(pivots.begin(), pivots.end(), k)) out.push_back(k);
    }
    return out;
  };
  PencilNormalization out;
  out.r = r;
  out.row_order = order(e.pivot_rows, m);
  out.col_order = order(e.pivot_cols, n);

  const std::size_t arity = P.arity();
  RfMatrix Pp(m, n, arity);
  RfVector bp;
  for (std::size_t i = 0; i < m; ++i) {
    bp.push_back(b[out.row_order[i]]);
    for (std::size_t j = 0; j < n; ++j) Pp(i, j) = P(out.row_order[i], out.col_order[j]);
  }
  RfMatrix M(r, r, arity);
  RfMatrix lead_cols(m, r, arity);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      lead_cols(i, j) = Pp(i, j);
      if (i < r) M(i, j) = Pp(i, j);
    }
  }
  const RfMatrix Minv = inverse(M);
  out.Q = lead_cols * Minv;
  out.A = RfMatrix(r, n, arity);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) out.A(i, j) = Pp(i, j);

  const RfVector beta(bp.begin(), bp.begin() + static_cast<std::ptrdiff_t>(r));
  const RfVector head = Minv * beta;
  out.lambda.assign(n, RationalFunction(arity));
  for (std::size_t j = 0; j < r; ++j) out.lambda[j] = head[j];
  const RfVector shift = Pp * out.lambda;
  for (std::size_t i = 0; i < m; ++i) out.a.push_back(bp[i] - shift[i]);

  if (!(out.Q * out.A == Pp)) throw std::logic_error("pencil factorization failed");
  for (std::size_t i = 0; i < r; ++i) {
    if (!out.a[i].is_zero()) throw std::logic_error("pencil offset has a nonzero prefix");
    for (std::size_t j = 0; j < r; ++j) {
      const bool ok = i == j ? out.Q(i, j) == RationalFunction::constant(arity, 1) : out.Q(i, j).is_zero();
      if (!ok) throw std::logic_error("pencil leading block is not the identity");
    }
  }
  return out;
}

Decomposition classify_small_rank(const Polynomial& h, std::size_t main_count,
                                  unsigned relation_degree) {
  const std::size_t n = h.arity();
  const std::size_t m = main_count;
  if (m > n) throw std::out_of_range("main variable count exceeds arity");
  if (n - m > 1) throw std::invalid_argument("coefficient ring has more than one parameter");
  const SymMatrix block = hessian(h, m);
  const Elimination e = eliminate(block);
  if (e.rank > 2) throw std::invalid_argument("Hessian rank exceeds 2");

  const PolyMap grad = gradient(h, m);
  Decomposition d;
  d.form = Form::Plane;
  d.arity = n;
  d.main_count = m;
  d.a_or_b = gradient_at_origin(grad);
  const Polynomial rest = h - linear_part(d.a_or_b, n);
  if (e.rank == 0) {
    d.g = RationalFunction(rest.with_arity(n + 2));
  } else {
    const RfVector p = lift_vector(block.col(e.pivot_cols[0]));
    std::optional<RfVector> q;
    if (e.rank == 2) q = lift_vector(block.col(e.pivot_cols[1]));
    apply_forms(d, rest, p, q);
  }
  finish(d, h);
  if (d.over_L_fallback) throw std::logic_error("Bezout normalization left coefficients outside R");

  // The image closure of H is b + L p + L q.
  if (d.p) {
    const auto main = range(0, m);
    std::vector<std::size_t> main_ext = main;
    main_ext.push_back(n);
    main_ext.push_back(n + 1);
    PolyVector lhs, rhs;
    const Polynomial t = Polynomial::variable(n + 2, n);
    const Polynomial u = Polynomial::variable(n + 2, n + 1);
    for (std::size_t k = 0; k < m; ++k) {
      lhs.push_back(grad[k].with_arity(n + 2));
      Polynomial v = d.a_or_b[k].with_arity(n + 2) + t * (*d.p)[k].with_arity(n + 2);
      if (d.q) v += u * (*d.q)[k].with_arity(n + 2);
      rhs.push_back(std::move(v));
    }
    if (!same_relations_over_L(lhs, rhs, relation_degree, main_ext)) {
      throw std::logic_error("image of the gradient differs from the affine plane");
    }
  }
  return d;
}

Decomposition classify_gradrel(const Polynomial& h, std::size_t main_count) {
  const std::size_t n = h.arity();
  const std::size_t m = main_count;
  if (m > n) throw std::out_of_range("main variable count exceeds arity");
  const PolyMap grad = gradient(h, m);
  if (!projective_apex_space(grad).empty()) {
    throw std::invalid_argument("gradient has a rational projective image apex");
  }
  const std::size_t k = trdeg(grad, Base::K);
  if (k > 3) throw std::invalid_argument("transcendence degree exceeds 3");
  const std::optional<ImageApexSet> apex = image_apex_affine(grad);
  if (k == 3 && !apex) throw std::invalid_argument("transcendence degree 3 without a rational image apex");

  Decomposition d;
  d.arity = n;
  d.main_count = m;
  const SymMatrix block = hessian(h, m);
  const Certifier cert{n, range(m, n)};
  const auto origin = gradient_at_origin(grad);

  if (k <= 1) {
    if (!block.is_zero()) throw std::logic_error("Hessian block of an affine gradient is nonzero");
    d.form = k == 0 ? Form::GradConstant : Form::GradAffine;
    d.a_or_b = grad.components();
    if (k == 0) {
      for (const auto& c : d.a_or_b) {
        if (!c.is_constant()) throw std::logic_error("gradient of transcendence degree 0 is not constant");
      }
      if (!apex) throw std::logic_error("constant gradient without an image apex");
    } else if (apex) {
      throw std::logic_error("gradient of transcendence degree 1 has a rational image apex");
    }
    d.g = RationalFunction((h - linear_part(d.a_or_b, n)).with_arity(n + 2));
    finish(d, h);
    return d;
  }

  const Elimination e = eliminate(block);
  if (apex) {
    d.form = k == 3 && e.rank == 2 ? Form::DoubleForm : Form::SingleForm;
    d.a_or_b = constants(apex->point, n);
    const Polynomial rest = h - linear_part(d.a_or_b, n);
    if (e.rank == 0) {
      PolyVector p;
      for (std::size_t i = 0; i < m; ++i) p.push_back(grad[i] - d.a_or_b[i]);
      apply_forms(d, rest, lift_vector(p), std::nullopt);
    } else {
      std::optional<RfVector> q;
      if (d.form == Form::DoubleForm) q = lift_vector(block.col(e.pivot_cols[1]));
      apply_forms(d, rest, lift_vector(block.col(e.pivot_cols[0])), q);
    }
    finish(d, h);
    if (d.form == Form::DoubleForm) {
      d.gamma = double_gamma(cert, *d.p, *d.q);
    } else {
      d.gamma = single_gamma(cert, *d.p, k - 1);
    }
    return d;
  }

  d.form = Form::SingleFormShifted;
  d.a_or_b = origin;
  const Polynomial rest = h - linear_part(d.a_or_b, n);
  if (e.rank == 0) {
    d.g = RationalFunction(rest.with_arity(n + 2));
    finish(d, h);
    RfVector b = lift_vector(d.a_or_b);
    std::vector<RationalFunction> cands;
    add_candidates(b, cands);
    sort_candidates(cands);
    for (const auto& g : cands) {
      if (cert.transcendental(g) && cert.plain(g, b) == 1) {
        d.gamma = g;
        break;
      }
    }
    return d;
  }
  if (e.rank != 1) throw std::logic_error("Hessian block rank exceeds 1 in transcendence degree 2");
  const auto row = *first_nonzero_row(block);
  apply_forms(d, rest, lift_vector(block.row(row)), std::nullopt);
  finish(d, h);
  if (auto lg = shifted_certificate(cert, *d.p, d.a_or_b)) {
    d.lambda = lg->first;
    d.gamma = lg->second;
  }
  return d;
}

HessianClassification classify_hessian(const Polynomial& h) {
  const std::size_t n = h.arity();
  HessianClassification out;
  out.profile = rank_profile(h, n);
  const PolyMap grad = gradient(h, n);
  out.apex = apex_report(grad);
  out.has_image_apex = out.apex.image_apex_set.has_value();
  const std::size_t r = out.profile.r_hessian;
  const std::size_t s = out.apex.s();
  const bool homogeneous = h.is_homogeneous();

  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::logic_error(what);
  };
  if (out.has_image_apex && r <= 2) require(s == r, "image apex and r <= 2 but s != r");
  if (homogeneous && r >= 1) require(out.has_image_apex, "homogeneous gradient without image apex");
  if (homogeneous && r >= 1 && r <= 3) require(s == r, "homogeneous with r <= 3 but s != r");
  if (homogeneous && r == 4) require(s == 4 || s == 2, "homogeneous with r = 4 but s not in {2, 4}");
  if (!out.has_image_apex && r <= 2) require(r == 2 && s == 1, "no image apex and r <= 2 but (r, s) != (2, 1)");
  if (!out.has_image_apex && r == 3 && s >= 1) require(s <= 2, "no image apex, r = 3 and s > 2");
  if (out.has_image_apex && r == 3) require(s == 3 || s == 1, "image apex, r = 3 and s not in {1, 3}");
  if (out.has_image_apex && r == 4 && s >= 1) require(s != 3, "image apex, r = 4 and s = 3");

  // Columns: unit vectors off the pivots of the apex basis, then the basis.
  std::vector<bool> pivot(n, false);
  for (const auto& v : out.apex.projective_basis) {
    const auto it = std::find_if(v.begin(), v.end(), [](const Rational& c) { return c != 0; });
    pivot[static_cast<std::size_t>(it - v.begin())] = true;
  }
  const std::size_t m = n - s;
  RationalMatrix S(n, n);
  std::size_t col = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!pivot[i]) S(i, col++) = 1;
  }
  for (const auto& v : out.apex.projective_basis) {
    for (std::size_t i = 0; i < n; ++i) S(i, col) = v[i];
    ++col;
  }
  out.transform = inverse(S).transpose();
  out.main_count = m;

  std::vector<Polynomial> assignment;
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial xi(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (out.transform(i, j) != 0) xi += out.transform(i, j) * Polynomial::variable(n, j);
    }
    assignment.push_back(std::move(xi));
  }
  out.transformed = n == 0 ? h : compose(h, assignment);

  const PolyMap moved = gradient(out.transformed, n);
  require(projective_apex_space(moved).size() == s, "coordinate change altered the apex count");
  for (std::size_t j = m; j < n; ++j) {
    RationalVector e(n, Rational(0));
    e[j] = 1;
    require(is_projective_image_apex(moved, e, Base::K), "transported apex is not a unit vector");
  }

  const PolyMap inner = gradient(out.transformed, m);
  const std::size_t k = trdeg(inner, Base::K);
  require(k + s == r, "transcendence degree of the reduced gradient is not r - s");

  if (r > 4 || (r == 4 && !homogeneous && !out.has_image_apex) ||
      (r == 3 && s == 0 && !out.has_image_apex)) {
    out.out_of_reach = "Hessian rank " + std::to_string(r) + " with s = " + std::to_string(s);
    return out;
  }
  if (k > 3 || (k == 3 && !image_apex_affine(inner))) {
    out.out_of_reach = "transcendence degree " + std::to_string(k) + " of the reduced gradient";
    return out;
  }
  out.decomposition = classify_gradrel(out.transformed, m);
  const Form f = out.decomposition->form;

  if (out.has_image_apex) {
    if (r <= 2) require(f == Form::GradConstant, "image apex and r <= 2 but form is not (i)");
    if (r == 3) {
      require((s == 3 && f == Form::GradConstant) || (s == 1 && f == Form::SingleForm),
              "image apex and r = 3 with an unexpected form");
    }
    if (r == 4 && s >= 1) {
      require((s == 4 && f == Form::GradConstant) || (s == 2 && f == Form::SingleForm) ||
                  (s == 1 && (f == Form::DoubleForm || f == Form::SingleForm)),
              "image apex and r = 4 with an unexpected form");
    }
  } else {
    if (r == 2) require(f == Form::GradAffine, "no image apex and r = 2 but form is not (ii)");
    if (r == 3 && s >= 1) {
      require((s == 2 && f == Form::GradAffine) || (s == 1 && f == Form::SingleFormShifted),
              "no image apex and r = 3 with an unexpected form");
    }
  }
  if (homogeneous && r >= 1 && f == Form::GradConstant) {
    for (const auto& a : out.decomposition->a_or_b) require(a.is_zero(), "homogeneous h with a != 0");
  }
  return out;
}

}  // namespace hessrank
