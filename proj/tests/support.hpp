#pragma once

// Test-side helpers: random generators and oracles that do not reuse the
// library's elimination code.

#include <algorithm>
#include <ostream>
#include <random>
#include <vector>

#include "hessrank/diffcalc.hpp"
#include "hessrank/expression.hpp"
#include "hessrank/linalg.hpp"
#include "hessrank/matrix.hpp"
#include "hessrank/polynomial.hpp"

namespace hessrank {

// Readable gtest failure output.
inline void PrintTo(const Polynomial& p, std::ostream* os) { *os << to_string(p); }
inline void PrintTo(const RationalFunction& f, std::ostream* os) { *os << to_string(f); }

}  // namespace hessrank

namespace hessrank::testing {

inline Polynomial P(const char* text, std::size_t arity) {
  ParseOptions opt;
  opt.x_count = arity;
  return parse_polynomial(text, opt);
}

inline Polynomial P(const char* text) { return parse_polynomial(text); }

inline int small_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Nonzero random polynomial with up to `terms` terms of total degree <= degree.
inline Polynomial random_polynomial(std::mt19937_64& rng, std::size_t arity, unsigned degree,
                                    std::size_t terms, int coeff = 5) {
  Polynomial p(arity);
  while (p.is_zero()) {
    for (std::size_t k = 0; k < terms; ++k) {
      Monomial m;
      const unsigned d = static_cast<unsigned>(small_int(rng, 0, static_cast<int>(degree)));
      for (unsigned e = 0; e < d && arity > 0; ++e) {
        const auto v = static_cast<std::size_t>(small_int(rng, 0, static_cast<int>(arity) - 1));
        m.set(v, m[v] + 1);
      }
      int c = 0;
      while (c == 0) c = small_int(rng, -coeff, coeff);
      p.add_term(m, c);
    }
  }
  return p;
}

/// Rank of a rational matrix by plain Gaussian elimination.
inline std::size_t oracle_rank(std::vector<std::vector<Rational>> a) {
  std::size_t r = 0;
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

/// Maximum numeric rank of a polynomial matrix over random integer points.
inline std::size_t numeric_rank(const SymMatrix& m, std::uint64_t seed, int samples = 20) {
  std::mt19937_64 rng(seed);
  std::size_t best = 0;
  for (int s = 0; s < samples; ++s) {
    std::vector<Rational> point;
    for (std::size_t v = 0; v < m.arity(); ++v) point.emplace_back(small_int(rng, -97, 97));
    std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j).evaluate(point);
    }
    best = std::max(best, oracle_rank(std::move(a)));
  }
  return best;
}

/// True when some nonzero f with deg f <= degree satisfies f(H) = 0, found by
/// solving for the coefficients of f.
inline bool has_relation(const std::vector<Polynomial>& h, unsigned degree) {
  if (h.empty()) return false;
  const std::size_t arity = h.front().arity();
  const auto alphas = monomials_up_to(h.size(), degree);
  std::vector<Polynomial> images;
  for (const auto& alpha : alphas) {
    Polynomial v = Polynomial::constant(arity, 1);
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (alpha[i] > 0) v *= h[i].pow(alpha[i]);
    }
    images.push_back(std::move(v));
  }
  std::vector<Monomial> rows;
  for (const auto& img : images) {
    for (const auto& [m, c] : img.terms()) {
      if (std::find(rows.begin(), rows.end(), m) == rows.end()) rows.push_back(m);
    }
  }
  std::vector<std::vector<Rational>> a(rows.size(), std::vector<Rational>(images.size()));
  for (std::size_t j = 0; j < images.size(); ++j) {
    for (std::size_t i = 0; i < rows.size(); ++i) a[i][j] = images[j].coefficient(rows[i]);
  }
  return oracle_rank(std::move(a)) < images.size();
}

/// Transcendence degree by greedy relation search, with the Perron-type
/// degree bound prod(max(deg, 1)) on each candidate set, optionally capped.
inline std::size_t oracle_trdeg(const std::vector<Polynomial>& h, unsigned cap = ~0u) {
  std::vector<Polynomial> independent;
  for (const auto& f : h) {
    std::vector<Polynomial> trial = independent;
    trial.push_back(f);
    unsigned bound = 1;
    for (const auto& g : trial) bound *= static_cast<unsigned>(std::max(g.degree(), 1));
    if (!has_relation(trial, std::min(bound, cap))) independent = std::move(trial);
  }
  return independent.size();
}

// Generic maps mixed with maps that factor through one or two inner
// polynomials, so that apices actually occur.
inline PolyMap random_map(std::mt19937_64& rng) {
  const std::size_t n = 1 + rng() % 4;
  const std::size_t m = 1 + rng() % 4;
  const int style = static_cast<int>(rng() % 3);
  std::vector<Polynomial> inner;
  const std::size_t k = 1 + rng() % 2;
  for (std::size_t i = 0; i < k; ++i) inner.push_back(random_polynomial(rng, n, 2, 2, 3));
  std::vector<Polynomial> comps;
  for (std::size_t i = 0; i < m; ++i) {
    if (style == 0) {
      comps.push_back(random_polynomial(rng, n, 3, 3, 3));
      continue;
    }
    Polynomial c = Polynomial::constant(n, small_int(rng, -2, 2));
    for (const auto& f : inner) c += Polynomial::constant(n, small_int(rng, -2, 2)) * f;
    if (style == 2) c += Polynomial::constant(n, small_int(rng, -1, 1)) * inner[0] * inner[0];
    comps.push_back(c);
  }
  return PolyMap(comps, n, n);
}

inline RationalMatrix random_invertible(std::mt19937_64& rng, std::size_t m) {
  RationalMatrix b(m, m);
  do {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) b(i, j) = small_int(rng, -2, 2);
  } while (rank(b) < m);
  return b;
}

inline PolyMap transform(const PolyMap& h, const RationalMatrix& b, const RationalVector& c) {
  std::vector<Polynomial> comps;
  for (std::size_t i = 0; i < h.size(); ++i) {
    Polynomial v = Polynomial::constant(h.arity(), c[i]);
    for (std::size_t j = 0; j < h.size(); ++j) v += Polynomial::constant(h.arity(), b(i, j)) * h[j];
    comps.push_back(v);
  }
  return PolyMap(comps, h.arity(), h.main_vars());
}

}  // namespace hessrank::testing
