#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hessrank/apex.hpp"
#include "hessrank/diffcalc.hpp"
#include "hessrank/normform.hpp"

namespace hessrank {

/// Shape of h in the classification of gradient maps:
///   GradConstant       h = g + a^T x,               a rational
///   GradAffine         h = g + b^T x,               b over R, not rational
///   SingleForm         h = g(p^T x) + a^T x,        a rational
///   SingleFormShifted  h = g(p^T x) + b^T x,        b over R (p may be absent)
///   DoubleForm         h = g(p^T x, q^T x) + a^T x, a rational
///   Plane              h = g(p^T x[, q^T x]) + b^T x for Hessian rank <= 2
enum class Form { GradConstant, GradAffine, SingleForm, SingleFormShifted, DoubleForm, Plane };

const char* form_name(Form f);

/// g is a rational function in the arguments t, u at indices arity and
/// arity + 1; it is a polynomial unless over_L_fallback is set.
struct Decomposition {
  Form form = Form::GradConstant;
  std::size_t arity = 0;
  std::size_t main_count = 0;
  RationalFunction g;
  std::optional<PolyVector> p;
  std::optional<PolyVector> q;
  PolyVector a_or_b;
  std::optional<RationalFunction> lambda;
  std::optional<RationalFunction> gamma;
  std::vector<std::size_t> coefficient_ring;
  bool over_L_fallback = false;
  bool verified = false;
};

/// g(p^T x, q^T x) + a^T x in the arity of the decomposed polynomial.
RationalFunction expand(const Decomposition& d);

/// deg b >= 2 for GradAffine and for SingleFormShifted without p; deg p >= 2
/// for SingleForm. Vacuous over a field of constants.
bool degree_bounds_hold(const Decomposition& d);

/// Whether the gradient of h and t p (+ u q) + a satisfy the same relations
/// with rational coefficients up to the given degree (forms with p only).
bool same_image_relations(const Decomposition& d, const Polynomial& h, unsigned degree);

struct DbReduction {
  Polynomial h;
  RationalMatrix C;
  std::size_t tries = 0;
  std::size_t rounds = 0;
};

/// h(Cx) in n_target variables with C of the shape
///   [ I 0 ]
///   [ 0 c ]
/// where c has nonzero rational entries. One variable is removed per round by
/// x_{N-1} <- x_{N-1}, x_N <- c x_{N-1}; a round is accepted only when the
/// Hessian rank is unchanged and is resampled otherwise.
DbReduction db_reduce(const Polynomial& h, std::size_t n_target, std::uint64_t seed);

/// P' = Q A, a = b' - P' lambda, Q has an identity leading block and the first
/// r entries of a vanish. P' and b' are P and b with rows and columns permuted
/// by row_order and col_order so that the leading r x r minor is invertible.
struct PencilNormalization {
  RfMatrix Q;
  RfMatrix A;
  RfVector lambda;
  RfVector a;
  std::vector<std::size_t> row_order;
  std::vector<std::size_t> col_order;
  std::size_t r = 0;
};

PencilNormalization pencil_normalize(const RfMatrix& P, const RfVector& b);

/// Hessian rank <= 2 over R = Q or Q[one parameter]: h = g(p^T x[, q^T x]) + b^T x
/// with b the gradient at the origin of the main variables.
Decomposition classify_small_rank(const Polynomial& h, std::size_t main_count,
                                  unsigned relation_degree = 3);

/// Five-case classification for gradients without rational projective image
/// apices and transcendence degree at most 3.
Decomposition classify_gradrel(const Polynomial& h, std::size_t main_count);

struct HessianClassification {
  RankProfile profile;
  ApexReport apex;
  bool has_image_apex = false;
  /// h(T x) has the projective image apices e_{m+1}, ..., e_n.
  RationalMatrix transform;
  Polynomial transformed;
  std::size_t main_count = 0;
  std::optional<Decomposition> decomposition;
  /// Set when (r, s) lies outside the reach of the classification.
  std::string out_of_reach;
};

HessianClassification classify_hessian(const Polynomial& h);

}  // namespace hessrank
