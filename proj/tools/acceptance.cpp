// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "hessrank/apex.hpp"
#include "hessrank/classify.hpp"
#include "hessrank/diffcalc.hpp"
#include "hessrank/linalg.hpp"
#include "hessrank/normform.hpp"
#include "support.hpp"

using namespace hessrank;
using namespace hessrank::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Failure counter with the first few messages kept for the report.
struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first = what;
  }
  // Runs body and records an exception as a failure.
  void guard(const std::string& what, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      check(false, what + ": " + e.what());
    }
  }
};

const std::size_t kApexCorpus = 120;

RationalVector combine(const Rational& a, const RationalVector& u, const Rational& b, const RationalVector& v) {
  RationalVector out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = a * u[i] + b * v[i];
  return out;
}

bool is_zero(const RationalVector& v) {
  for (const auto& c : v) {
    if (sgn(c) != 0) return false;
  }
  return true;
}

Rational random_rational(std::mt19937_64& rng) { return Rational(small_int(rng, -7, 7), small_int(rng, 1, 5)); }

RationalVector random_vector(std::mt19937_64& rng, std::size_t m) {
  RationalVector out;
  for (std::size_t i = 0; i < m; ++i) out.emplace_back(small_int(rng, -3, 3));
  return out;
}

RationalVector extend(RationalVector v, int last) {
  v.emplace_back(last);
  return v;
}

PolyMap apex_instance(std::size_t seed) {
  std::mt19937_64 rng(seed);
  return random_map(rng);
}

void criterion_apex_laws(Tally& t) {
  for (std::size_t seed = 0; seed < kApexCorpus; ++seed) {
    const std::string tag = "seed " + std::to_string(seed);
    t.guard(tag, [&] {
      const PolyMap h = apex_instance(seed);
      std::mt19937_64 rng(seed + 100000);
      const auto basis = projective_apex_space(h);
      // Subspace law.
      for (const auto& p : basis) t.check(is_projective_image_apex(h, p, Base::K), tag + ": basis vector");
      if (!basis.empty()) {
        const RationalVector sum = combine(random_rational(rng), basis[rng() % basis.size()], random_rational(rng),
                                           basis[rng() % basis.size()]);
        if (!is_zero(sum)) t.check(is_projective_image_apex(h, sum, Base::K), tag + ": subspace");
      }
      // Affine law.
      const auto set = image_apex_affine(h);
      if (set) {
        RationalVector a = set->point, b = set->point;
        for (const auto& d : set->directions) {
          a = combine(1, a, random_rational(rng), d);
          b = combine(1, b, random_rational(rng), d);
        }
        const Rational lambda = random_rational(rng);
        t.check(is_image_apex(h, a, Base::K) && is_image_apex(h, b, Base::K), tag + ": affine members");
        t.check(is_image_apex(h, combine(1 - lambda, a, lambda, b), Base::K), tag + ": affine line");
        for (const auto& p : basis) {
          t.check(is_image_apex(h, combine(1, a, random_rational(rng), p), Base::K), tag + ": apex plus direction");
        }
      }
      // Transport under x -> B x + c.
      const RationalMatrix b = random_invertible(rng, h.size());
      const RationalVector c = random_vector(rng, h.size());
      const PolyMap moved = transform(h, b, c);
      t.check(projective_apex_space(moved).size() == basis.size(), tag + ": transported dimension");
      for (const auto& p : basis) t.check(is_projective_image_apex(moved, b * p, Base::K), tag + ": transport");
      if (set) {
        RationalVector a = b * set->point;
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += c[i];
        t.check(is_image_apex(moved, a, Base::K), tag + ": affine transport");
      }
      // Homogenization.
      const PolyMap hom = homogenize_map(h);
      std::vector<RationalVector> candidates = basis;
      candidates.push_back(random_vector(rng, h.size()));
      if (set) candidates.push_back(set->point);
      for (const auto& v : candidates) {
        t.check(is_image_apex(h, v, Base::K) == is_projective_image_apex(hom, extend(v, 1), Base::K),
                tag + ": homogenized image apex");
        if (!is_zero(v)) {
          t.check(is_projective_image_apex(h, v, Base::K) == is_projective_image_apex(hom, extend(v, 0), Base::K),
                  tag + ": homogenized projective apex");
        }
      }
    });
  }
}

void criterion_dual_route(Tally& t) {
  for (std::size_t seed = 0; seed < kApexCorpus; ++seed) {
    const std::string tag = "seed " + std::to_string(seed);
    t.guard(tag, [&] {
      const PolyMap h = apex_instance(seed);
      std::mt19937_64 rng(seed + 200000);
      std::vector<RationalVector> candidates = projective_apex_space(h);
      for (std::size_t i = 0; i < h.size(); ++i) {
        RationalVector e(h.size(), Rational(0));
        e[i] = 1;
        candidates.push_back(e);
      }
      for (int k = 0; k < 3; ++k) candidates.push_back(random_vector(rng, h.size()));
      for (const auto& v : candidates) {
        if (is_zero(v)) continue;
        t.check(is_projective_image_apex(h, v, Base::K) ==
                    in_jacobian_column_space(h, to_rf_vector(v, h.arity()), Base::K),
                tag + ": routes disagree");
      }
    });
  }
}

void criterion_unit_vector_and_split(Tally& t) {
  for (std::size_t seed = 0; seed < kApexCorpus; ++seed) {
    const std::string tag = "seed " + std::to_string(seed);
    t.guard(tag, [&] {
      const PolyMap h = apex_instance(seed);
      const std::size_t m = h.size();
      const std::size_t r = trdeg(h, Base::K);
      for (std::size_t i = 0; i < m; ++i) {
        std::vector<Polynomial> rest;
        for (std::size_t j = 0; j < m; ++j) {
          if (j != i) rest.push_back(h[j]);
        }
        const std::size_t r_rest = trdeg(PolyMap(rest, h.arity(), h.arity()), Base::K);
        RationalVector e(m, Rational(0));
        e[i] = 1;
        t.check(is_projective_image_apex(h, e, Base::K) == (r == r_rest + 1), tag + ": unit vector criterion");
      }
      // Split identity: trdeg H = trdeg of the components off the apex block + s.
      const auto basis = projective_apex_space(h);
      const std::size_t s = basis.size();
      std::vector<RationalVector> cols = basis;
      for (std::size_t i = 0; i < m && cols.size() < m; ++i) {
        RationalVector e(m, Rational(0));
        e[i] = 1;
        auto trial = cols;
        trial.push_back(e);
        std::vector<std::vector<Rational>> rows(trial.begin(), trial.end());
        if (oracle_rank(rows) == trial.size()) cols = std::move(trial);
      }
      const RationalMatrix mcols = RationalMatrix::from_rows(cols, m).transpose();
      const PolyMap moved = transform(h, inverse(mcols), RationalVector(m, Rational(0)));
      const std::vector<Polynomial> tail(moved.components().begin() + static_cast<std::ptrdiff_t>(s),
                                         moved.components().end());
      t.check(r == trdeg(PolyMap(tail, h.arity(), h.arity()), Base::K) + s, tag + ": split identity");
    });
  }
}

bool in_domain(const SymMatrix& m, const BezoutDomain& s) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!s.contains(m(i, j))) return false;
  return true;
}

void criterion_weak_smith(Tally& t) {
  for (int seed = 0; seed < 500; ++seed) {
    const bool poly = seed % 2 == 1;
    const std::string tag = std::string(poly ? "Q[t]" : "Z") + " seed " + std::to_string(seed);
    t.guard(tag, [&] {
      std::mt19937_64 rng(static_cast<std::uint64_t>(seed) + 300000);
      const BezoutDomain s = poly ? BezoutDomain::polynomials_in(0) : BezoutDomain::integers();
      const std::size_t m = 1 + rng() % 5, n = 1 + rng() % 5, inner = 1 + rng() % 5;
      auto entry = [&] {
        if (!poly) return Polynomial::constant(1, small_int(rng, -3, 3));
        Polynomial e(1);
        for (unsigned d = 0; d <= 2; ++d) {
          if (rng() % 2 == 0) e += Polynomial::monomial(1, Monomial::variable(0, d), small_int(rng, -2, 2));
        }
        return e;
      };
      SymMatrix a(m, inner, 1), b(inner, n, 1);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < inner; ++k) a(i, k) = entry();
      for (std::size_t k = 0; k < inner; ++k)
        for (std::size_t j = 0; j < n; ++j) b(k, j) = entry();
      const SymMatrix p = a * b;
      const std::size_t rk = numeric_rank(p, static_cast<std::uint64_t>(seed));
      if (rk == 0) return;
      const std::size_t r = rk + rng() % (m - rk + 1);
      auto weak = [&](const WeakSmith& ws, const char* name) {
        t.check(ws.Q * ws.A == p, tag + " " + name + ": QA = P");
        t.check(ws.C * ws.Q == SymMatrix::identity(r, 1), tag + " " + name + ": CQ = I");
        t.check(in_domain(ws.Q, s) && in_domain(ws.A, s) && in_domain(ws.C, s), tag + " " + name + ": domain");
      };
      weak(weak_smith(p, r, s), "plain");
      const WeakSmith up = weak_smith_upper(p, r, s);
      weak(up, "upper");
      bool upper = true;
      for (std::size_t i = 0; i < up.A.rows(); ++i)
        for (std::size_t j = 0; j < std::min(i, up.A.cols()); ++j) upper = upper && up.A(i, j).is_zero();
      t.check(upper, tag + ": upper triangular");
      if (poly) {
        const WeakSmith lead = weak_smith_leading(p, r, s);
        weak(lead, "leading");
        t.check(rank(leading_coefficient_matrix(lead.Q, s)) == r, tag + ": leading rank");
      }
      const DeBondtForm f = de_bondt(p, s);
      const SymMatrix id = SymMatrix::identity(rk, 1);
      t.check(f.r == rk && f.Q * f.D * f.E == p, tag + ": QDE = P");
      t.check(f.D.rows() == rk && f.D.cols() == rk && numeric_rank(f.D, 5) == rk, tag + ": D square full rank");
      t.check(f.left_inverse * f.Q == id && f.E * f.right_inverse == id, tag + ": de Bondt certificates");
      t.check(in_domain(f.Q, s) && in_domain(f.D, s) && in_domain(f.E, s) && in_domain(f.left_inverse, s) &&
                  in_domain(f.right_inverse, s),
              tag + ": de Bondt domain");
    });
  }
}

Polynomial parse_in(const char* text, std::size_t arity) { return P(text, arity); }

RationalFunction rf(const char* text, std::size_t arity) {
  ParseOptions opt;
  opt.x_count = arity;
  return parse_rational_function(text, opt);
}

std::vector<Decomposition> g_decompositions;

void record(const Decomposition& d) { g_decompositions.push_back(d); }

// Each fixture also respects the 10 second budget.
void timed_fixture(Tally& t, const std::string& tag, const std::function<void()>& body) {
  const auto start = Clock::now();
  t.guard(tag, body);
  t.check(seconds_since(start) <= 10.0, tag + ": over 10 s");
}

void criterion_fixtures(Tally& t) {
  timed_fixture(t, "shifted single form", [&] {
    const char* p[] = {"-x5^3", "(x4*x5+1)^3", "(x4*x5+1)^2*x5"};
    const char* b[] = {"(-x4*x5+1)*x5", "x4^2*(x4*x5+1)^2", "x4^2*(x4*x5+1)*x5"};
    Polynomial form(5), lin(5);
    PolyVector pv, bv;
    for (std::size_t k = 0; k < 3; ++k) {
      pv.push_back(parse_in(p[k], 5));
      bv.push_back(parse_in(b[k], 5));
      form += pv[k] * Polynomial::variable(5, k);
      lin += bv[k] * Polynomial::variable(5, k);
    }
    const Polynomial h = form * form + lin;
    const Decomposition d = classify_gradrel(h, 3);
    record(d);
    t.check(d.form == Form::SingleFormShifted, "(iv): form");
    t.check(d.verified && expand(d) == RationalFunction(h), "(iv): reconstruction");
    ParseOptions g_opt;
    g_opt.x_count = 5;
    g_opt.arity = 7;
    t.check(d.g == RationalFunction(parse_polynomial("t^2", g_opt)), "(iv): g = t^2");
    const RationalFunction gamma = rf("(x4*x5+1)/x5", 5);
    t.check(d.gamma && (*d.gamma == gamma || *d.gamma == gamma.inverse()), "(iv): gamma");
    PolyVector neg;
    for (const auto& e : pv) neg.push_back(e * Rational(-1));
    const bool flipped = d.p && *d.p == neg;
    t.check(d.p && (*d.p == pv || flipped), "(iv): p up to sign");
    const RationalFunction lambda = rf("x4^2/(x4*x5+1)", 5);
    t.check(d.lambda && *d.lambda == (flipped ? -lambda : lambda), "(iv): lambda");
    t.check(d.a_or_b == bv, "(iv): b");
  });
  timed_fixture(t, "Gordan-Noether cubic", [&] {
    const HessianClassification c = classify_hessian(parse_in("x1^2*x3 + x1*x2*x4 + x2^2*x5", 5));
    t.check(c.profile.r_hessian == 4 && c.apex.s() == 2, "GN: (r, s) = (4, 2)");
    t.check(c.decomposition && c.decomposition->form == Form::SingleForm && c.decomposition->verified,
            "GN: verified form (iii)");
    if (c.decomposition) {
      record(*c.decomposition);
      t.check(expand(*c.decomposition) == RationalFunction(c.transformed), "GN: reconstruction");
    }
  });
  timed_fixture(t, "toy (i)", [&] {
    const HessianClassification c = classify_hessian(parse_in("x1^2 + 5*x2^2", 2));
    t.check(c.profile.r_hessian == 2 && c.apex.s() == 2, "(i): (r, s)");
    t.check(c.decomposition && c.decomposition->form == Form::GradConstant, "(i): form");
    if (c.decomposition) {
      record(*c.decomposition);
      t.check(expand(*c.decomposition) == RationalFunction(c.transformed), "(i): reconstruction");
    }
  });
  timed_fixture(t, "toy (ii)", [&] {
    const Polynomial h = parse_in("x4^2*x1 + x4^3*x2", 4);
    const Decomposition d = classify_gradrel(h, 2);
    record(d);
    t.check(d.form == Form::GradAffine, "(ii): form");
    t.check(expand(d) == RationalFunction(h), "(ii): reconstruction");
  });
  timed_fixture(t, "toy (iii)", [&] {
    const Polynomial h = parse_in("(x4^2*x1 + x4*x5*x2 + x5^2*x3)^2", 5);
    const Decomposition d = classify_gradrel(h, 3);
    record(d);
    t.check(d.form == Form::SingleForm, "(iii): form");
    t.check(expand(d) == RationalFunction(h), "(iii): reconstruction");
  });
}

Polynomial top_component(const Polynomial& h) {
  Polynomial out(h.arity());
  for (const auto& [m, c] : h.terms()) {
    if (static_cast<int>(m.degree()) == h.degree()) out.add_term(m, c);
  }
  return out;
}

void criterion_rank_apex_consistency(Tally& t) {
  std::vector<std::pair<std::string, Polynomial>> fixtures = {
      {"GN", parse_in("x1^2*x3 + x1*x2*x4 + x2^2*x5", 5)},
      {"quadric", parse_in("x1^2 + 5*x2^2", 2)},
      {"cube", parse_in("(x1 + 2*x2)^3", 2)},
      {"no apex", parse_in("x3^2*x1 + x3^3*x2", 3)},
  };
  // Homogeneous and inhomogeneous random fixtures.
  for (int seed = 0; seed < 40; ++seed) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed) + 400000);
    const std::size_t n = static_cast<std::size_t>(small_int(rng, 2, 4));
    Polynomial h = random_polynomial(rng, n, 3, static_cast<std::size_t>(small_int(rng, 1, 4)));
    if (seed % 2 == 0) h = top_component(h);
    fixtures.emplace_back("random " + std::to_string(seed), h);
  }
  for (const auto& [tag, h] : fixtures) {
    t.guard(tag, [&] {
      const HessianClassification c = classify_hessian(h);
      const std::size_t r = c.profile.r_hessian, s = c.apex.s();
      if (c.has_image_apex && r <= 2) t.check(s == r, tag + ": image apex, r <= 2 but s != r");
      if (h.is_homogeneous() && r <= 3) t.check(s == r, tag + ": homogeneous, r <= 3 but s != r");
      if (tag == "GN") t.check(r == 4 && s == 2, "GN: (r, s) != (4, 2)");
      if (c.decomposition) record(*c.decomposition);
    });
  }
}

std::size_t g_resamples = 0;

void criterion_db_reduce(Tally& t) {
  const std::size_t instances = 50;
  for (std::size_t seed = 0; seed < instances; ++seed) {
    const std::string tag = "seed " + std::to_string(seed);
    t.guard(tag, [&] {
      std::mt19937_64 rng(seed + 500000);
      const std::size_t big = static_cast<std::size_t>(small_int(rng, 3, 5));
      const std::size_t target = static_cast<std::size_t>(small_int(rng, 2, static_cast<int>(big) - 1));
      const std::size_t k = target - 1;
      const Polynomial f = random_polynomial(rng, k, 3, 3);
      std::vector<Polynomial> forms;
      for (std::size_t i = 0; i < k; ++i) {
        Polynomial l = Polynomial::variable(big, i);
        for (std::size_t j = k; j < big; ++j) l += Rational(small_int(rng, -3, 3)) * Polynomial::variable(big, j);
        forms.push_back(l);
      }
      const Polynomial h = compose(f, forms);
      const DbReduction red = db_reduce(h, target, seed);
      g_resamples += red.tries - red.rounds;
      t.check(numeric_rank(hessian(red.h, target), seed) == numeric_rank(hessian(h, big), seed),
              tag + ": rank changed");
      std::vector<Polynomial> assignment;
      for (std::size_t i = 0; i < big; ++i) {
        Polynomial xi(target);
        for (std::size_t j = 0; j < target; ++j) xi += red.C(i, j) * Polynomial::variable(target, j);
        assignment.push_back(xi);
      }
      t.check(compose(h, assignment) == red.h, tag + ": h(Cx) differs");
    });
  }
  t.check(static_cast<double>(g_resamples) / static_cast<double>(instances) <= 3.0, "too many resamples");
}

void criterion_trdeg(Tally& t) {
  for (std::size_t seed = 0; seed < 50; ++seed) {
    const std::string tag = "seed " + std::to_string(seed);
    t.guard(tag, [&] {
      std::mt19937_64 rng(seed + 600000);
      const std::size_t n = 1 + rng() % 3, comps = 1 + rng() % 3;
      std::vector<Polynomial> h;
      for (std::size_t i = 0; i < comps; ++i) h.push_back(random_polynomial(rng, n, 2, 2, 3));
      if (comps >= 2 && rng() % 2 == 0) h.back() = h[0] * h[0] - h[comps - 2];
      t.check(trdeg(PolyMap(h, n, n), Base::K) == oracle_trdeg(h), tag + ": trdeg disagrees");
    });
  }
}

void criterion_degree_bounds(Tally& t) {
  // Extra decompositions over polynomial coefficient rings.
  for (int seed = 0; seed < 30; ++seed) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed) + 700000);
    const std::size_t n = static_cast<std::size_t>(small_int(rng, 2, 4));
    const Polynomial h = random_polynomial(rng, n, 3, static_cast<std::size_t>(small_int(rng, 1, 4)));
    try {
      const HessianClassification c = classify_hessian(h);
      if (c.decomposition) record(*c.decomposition);
    } catch (const std::exception& e) {
      t.check(false, "seed " + std::to_string(seed) + ": " + e.what());
    }
  }
  std::size_t considered = 0;
  for (const auto& d : g_decompositions) {
    if (d.coefficient_ring.empty() || d.over_L_fallback) continue;
    ++considered;
    t.check(degree_bounds_hold(d), std::string("form ") + form_name(d.form) + ": degree bound violated");
  }
  t.check(considered > 0, "no decomposition over a polynomial ring");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double budget;
    void (*run)(Tally&);
  };
  const Criterion criteria[] = {
      {1, "apex calculus laws", 60, criterion_apex_laws},
      {2, "dual-route agreement", 0, criterion_dual_route},
      {3, "unit-vector criterion and split identity", 0, criterion_unit_vector_and_split},
      {4, "weak Smith suite", 120, criterion_weak_smith},
      {5, "classification fixtures", 0, criterion_fixtures},
      {6, "rank and apex consistency", 0, criterion_rank_apex_consistency},
      {7, "db_reduce rank preservation", 0, criterion_db_reduce},
      {8, "trdeg against relation search", 0, criterion_trdeg},
      {9, "degree bounds", 0, criterion_degree_bounds},
  };
  bool all = true;
  for (const auto& c : criteria) {
    Tally t;
    const auto start = Clock::now();
    c.run(t);
    const double elapsed = seconds_since(start);
    const bool in_time = c.budget == 0 || elapsed <= c.budget;
    const bool ok = t.failures == 0 && in_time;
    all = all && ok;
    std::ostringstream line;
    line << "criterion " << c.id << " " << (ok ? "PASS" : "FAIL") << ": " << c.title << " (" << t.checks
         << " checks, " << t.failures << " failures, ";
    line.precision(2);
    line << std::fixed << elapsed << " s";
    if (c.id == 7) line << ", " << static_cast<double>(g_resamples) / 50.0 << " resamples per instance";
    if (!in_time) line << ", over the " << c.budget << " s budget";
    if (t.failures > 0) line << "; first: " << t.first;
    line << ")";
    std::cout << line.str() << std::endl;
  }
  return all ? 0 : 1;
}
