#include <gtest/gtest.h>

#include <random>

#include "hessrank/classify.hpp"
#include "hessrank/linalg.hpp"
#include "hessrank/relations.hpp"
#include "support.hpp"

using namespace hessrank;
using hessrank::testing::numeric_rank;
using hessrank::testing::P;
using hessrank::testing::random_polynomial;
using hessrank::testing::small_int;

namespace {

RationalFunction F(const char* text, std::size_t arity) {
  ParseOptions opt;
  opt.x_count = arity;
  return parse_rational_function(text, opt);
}

// g in the arguments t, u of a decomposition of an arity-n polynomial.
RationalFunction G(const char* text, std::size_t n) {
  ParseOptions opt;
  opt.x_count = n;
  opt.arity = n + 2;
  return parse_rational_function(text, opt);
}

PolyVector V(std::initializer_list<const char*> entries, std::size_t arity) {
  PolyVector out;
  for (const char* e : entries) out.push_back(P(e, arity));
  return out;
}

PolyVector negate(PolyVector v) {
  for (auto& e : v) e = -e;
  return v;
}

// h(C y) evaluated pointwise, without the library's composition.
Rational eval_composed(const Polynomial& h, const RationalMatrix& c, const RationalVector& y) {
  RationalVector x(c.rows(), Rational(0));
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) x[i] += c(i, j) * y[j];
  return h.evaluate(x);
}

void expect_reduction(const Polynomial& h, const DbReduction& red, std::size_t n_target,
                      std::uint64_t seed) {
  ASSERT_EQ(red.h.arity(), n_target);
  ASSERT_EQ(red.C.rows(), h.arity());
  ASSERT_EQ(red.C.cols(), n_target);
  for (std::size_t i = 0; i < h.arity(); ++i) {
    for (std::size_t j = 0; j < n_target; ++j) {
      if (i + 1 < n_target || j + 1 < n_target) {
        EXPECT_EQ(red.C(i, j), Rational(i == j ? 1 : 0)) << i << "," << j;
      } else {
        EXPECT_NE(red.C(i, j), 0) << i;
      }
    }
  }
  std::mt19937_64 rng(seed);
  for (int k = 0; k < 5; ++k) {
    RationalVector y;
    for (std::size_t j = 0; j < n_target; ++j) y.emplace_back(small_int(rng, -20, 20));
    EXPECT_EQ(red.h.evaluate(y), eval_composed(h, red.C, y));
  }
  EXPECT_EQ(numeric_rank(hessian(red.h, n_target), seed),
            numeric_rank(hessian(h, h.arity()), seed));
}

RfMatrix rf_rows(std::initializer_list<std::initializer_list<const char*>> rows, std::size_t arity) {
  const std::size_t cols = rows.begin()->size();
  RfMatrix out(rows.size(), cols, arity);
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (const char* e : r) out(i, j++) = F(e, arity);
    ++i;
  }
  return out;
}

RfVector rf_vec(std::initializer_list<const char*> entries, std::size_t arity) {
  RfVector out;
  for (const char* e : entries) out.push_back(F(e, arity));
  return out;
}

void expect_pencil(const RfMatrix& p, const RfVector& b, const PencilNormalization& pn) {
  const std::size_t m = p.rows();
  const std::size_t n = p.cols();
  const std::size_t arity = p.arity();
  RfMatrix pp(m, n, arity);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) pp(i, j) = p(pn.row_order[i], pn.col_order[j]);
  EXPECT_EQ(pn.Q * pn.A, pp);
  for (std::size_t i = 0; i < m; ++i) {
    RationalFunction shifted = b[pn.row_order[i]];
    for (std::size_t j = 0; j < n; ++j) shifted -= pp(i, j) * pn.lambda[j];
    EXPECT_EQ(pn.a[i], shifted) << i;
  }
  for (std::size_t i = 0; i < pn.r; ++i) {
    EXPECT_TRUE(pn.a[i].is_zero());
    for (std::size_t j = 0; j < pn.r; ++j) {
      EXPECT_EQ(pn.Q(i, j), RationalFunction::constant(arity, i == j ? 1 : 0));
    }
  }
}

// Worked example of the shifted single-form case.
const char* kShiftedP[] = {"-x5^3", "(x4*x5+1)^3", "(x4*x5+1)^2*x5"};
const char* kShiftedB[] = {"(-x4*x5+1)*x5", "x4^2*(x4*x5+1)^2", "x4^2*(x4*x5+1)*x5"};

Polynomial shifted_example() {
  Polynomial form(5), lin(5);
  for (std::size_t k = 0; k < 3; ++k) {
    form += P(kShiftedP[k], 5) * Polynomial::variable(5, k);
    lin += P(kShiftedB[k], 5) * Polynomial::variable(5, k);
  }
  return form * form + lin;
}

}  // namespace

TEST(DbReduce, Examples) {
  const Polynomial h = P("(x1+x2)^2 + (x3+x4)^2", 4);
  const DbReduction red = db_reduce(h, 3, 0);
  expect_reduction(h, red, 3, 1);
  const Rational c = red.C(3, 2);
  EXPECT_NE(c, -1);
  EXPECT_EQ(red.h, P("(x1+x2)^2", 3) + (1 + c) * (1 + c) * P("x3^2", 3));

  const Polynomial same = P("x1^2 + x2*x3", 3);
  const DbReduction id = db_reduce(same, 3, 5);
  EXPECT_EQ(id.h, same);
  EXPECT_EQ(id.C, RationalMatrix::identity(3));
  EXPECT_EQ(id.tries, 0u);

  const Polynomial cube = P("(x1+x2+x3)^2", 3);
  const DbReduction two = db_reduce(cube, 2, 7);
  expect_reduction(cube, two, 2, 2);
  const Rational d = two.C(2, 1);
  EXPECT_EQ(two.h, (P("x1", 2) + (1 + d) * P("x2", 2)).pow(2));
}

TEST(DbReduce, Errors) {
  EXPECT_THROW(db_reduce(P("x1*x2", 2), 1, 0), std::invalid_argument);
  EXPECT_THROW(db_reduce(P("x1^2", 2), 3, 0), std::invalid_argument);
  EXPECT_THROW(db_reduce(P("x1^2", 2), 0, 0), std::invalid_argument);
}

TEST(PencilNormalize, Examples) {
  const RfMatrix p1 = rf_rows({{"1"}, {"x4"}}, 4);
  const RfVector b1 = rf_vec({"0", "1"}, 4);
  const PencilNormalization n1 = pencil_normalize(p1, b1);
  expect_pencil(p1, b1, n1);
  EXPECT_EQ(n1.r, 1u);
  EXPECT_EQ(n1.Q, rf_rows({{"1"}, {"x4"}}, 4));
  EXPECT_EQ(n1.A, rf_rows({{"1"}}, 4));
  EXPECT_EQ(n1.lambda, rf_vec({"0"}, 4));
  EXPECT_EQ(n1.a, rf_vec({"0", "1"}, 4));

  const RfMatrix p2 = rf_rows({{"2", "4"}, {"6", "8"}}, 1);
  const RfVector b2 = rf_vec({"1", "1"}, 1);
  const PencilNormalization n2 = pencil_normalize(p2, b2);
  expect_pencil(p2, b2, n2);
  EXPECT_EQ(n2.a, rf_vec({"0", "0"}, 1));
  EXPECT_EQ(n2.lambda, rf_vec({"-1/2", "1/2"}, 1));

  EXPECT_THROW(pencil_normalize(rf_rows({{"0", "0"}}, 1), rf_vec({"1"}, 1)), std::invalid_argument);
}

TEST(PencilNormalize, PermutesToAnInvertibleMinor) {
  const RfMatrix p = rf_rows({{"0", "0"}, {"0", "x1"}, {"0", "x1^2"}}, 1);
  const RfVector b = rf_vec({"1", "x1", "2"}, 1);
  const PencilNormalization n = pencil_normalize(p, b);
  expect_pencil(p, b, n);
  EXPECT_EQ(n.r, 1u);
  EXPECT_EQ(n.row_order[0], 1u);
  EXPECT_EQ(n.col_order[0], 1u);
}

TEST(SmallRank, Examples) {
  const Decomposition d0 = classify_small_rank(P("7 + 2*x1 - 3*x2", 2), 2);
  EXPECT_EQ(d0.form, Form::Plane);
  EXPECT_TRUE(d0.verified);
  EXPECT_EQ(d0.g, G("7", 2));
  EXPECT_EQ(d0.a_or_b, V({"2", "-3"}, 2));
  EXPECT_FALSE(d0.p.has_value());

  const Polynomial h1 = P("(x1+x2)^2 + x1", 2);
  const Decomposition d1 = classify_small_rank(h1, 2);
  EXPECT_TRUE(d1.verified);
  EXPECT_EQ(d1.g, G("t^2", 2));
  EXPECT_EQ(*d1.p, V({"1", "1"}, 2));
  EXPECT_EQ(d1.a_or_b, V({"1", "0"}, 2));
  EXPECT_FALSE(d1.q.has_value());
  // y1 - y2 - 1 vanishes on the gradient and on the line t p + b.
  const PolyMap g1 = gradient(h1, 2);
  EXPECT_TRUE((g1[0] - g1[1] - Polynomial::constant(2, 1)).is_zero());
  const auto rel = relations_over_K(g1.components(), 2);
  EXPECT_EQ(rel.size(), 3u);

  const Polynomial h2 = P("x1^2 + x2^2", 2);
  const Decomposition d2 = classify_small_rank(h2, 2);
  EXPECT_TRUE(d2.verified);
  ASSERT_TRUE(d2.q.has_value());
  EXPECT_EQ(expand(d2), RationalFunction(h2));
  EXPECT_TRUE(relations_over_K(gradient(h2, 2).components(), 3).empty());
}

TEST(SmallRank, OneParameter) {
  const Polynomial h = P("(x3*x1 + x3^2*x2)^2 + x3*x1", 3);
  const Decomposition d = classify_small_rank(h, 2);
  EXPECT_TRUE(d.verified);
  EXPECT_FALSE(d.over_L_fallback);
  EXPECT_EQ(d.coefficient_ring, std::vector<std::size_t>{2});
  EXPECT_EQ(expand(d), RationalFunction(h));
}

TEST(SmallRank, Errors) {
  EXPECT_THROW(classify_small_rank(P("x1*x2*x3", 3), 3), std::invalid_argument);
  EXPECT_THROW(classify_small_rank(P("x1^2*x2*x3", 3), 1), std::invalid_argument);
}

TEST(Gradrel, ConstantGradient) {
  const Decomposition d = classify_gradrel(P("3*x1 - x2 + x3^2", 3), 2);
  EXPECT_EQ(d.form, Form::GradConstant);
  EXPECT_TRUE(d.verified);
  EXPECT_EQ(d.a_or_b, V({"3", "-1"}, 3));
  EXPECT_EQ(d.g, G("x3^2", 3));
  EXPECT_TRUE(degree_bounds_hold(d));
}

TEST(Gradrel, AffineGradient) {
  const Polynomial h = P("x4^2*x1 + x4^3*x2", 4);
  const PolyMap grad = gradient(h, 2);
  EXPECT_TRUE(projective_apex_space(grad).empty());
  for (std::size_t i = 0; i < 2; ++i) {
    RationalVector e(2, Rational(0));
    e[i] = 1;
    EXPECT_FALSE(is_projective_image_apex(grad, e, Base::K));
    EXPECT_FALSE(in_jacobian_column_space(grad, to_rf_vector(e, 4), Base::K));
  }
  const Decomposition d = classify_gradrel(h, 2);
  EXPECT_EQ(d.form, Form::GradAffine);
  EXPECT_TRUE(d.verified);
  EXPECT_EQ(d.a_or_b, V({"x4^2", "x4^3"}, 4));
  EXPECT_TRUE(degree_bounds_hold(d));
}

TEST(Gradrel, ShiftedSingleFormExample) {
  const Polynomial h = shifted_example();
  const Decomposition d = classify_gradrel(h, 3);
  EXPECT_EQ(d.form, Form::SingleFormShifted);
  EXPECT_TRUE(d.verified);
  EXPECT_FALSE(d.over_L_fallback);
  EXPECT_EQ(d.g, G("t^2", 5));
  const PolyVector expected_p = V({kShiftedP[0], kShiftedP[1], kShiftedP[2]}, 5);
  const PolyVector expected_b = V({kShiftedB[0], kShiftedB[1], kShiftedB[2]}, 5);
  ASSERT_TRUE(d.p.has_value());
  const bool flipped = *d.p == negate(expected_p);
  EXPECT_TRUE(*d.p == expected_p || flipped);
  EXPECT_EQ(d.a_or_b, expected_b);
  ASSERT_TRUE(d.gamma.has_value());
  ASSERT_TRUE(d.lambda.has_value());
  const RationalFunction gamma = F("(x4*x5+1)/x5", 5);
  EXPECT_TRUE(*d.gamma == gamma || *d.gamma == gamma.inverse());
  const RationalFunction lambda = F("x4^2/(x4*x5+1)", 5);
  EXPECT_EQ(*d.lambda, flipped ? -lambda : lambda);
  // b - lambda p = (gamma^{-1}, 0, 0)
  RfVector shifted;
  for (std::size_t k = 0; k < 3; ++k) shifted.push_back(RationalFunction(d.a_or_b[k]) - *d.lambda * (*d.p)[k]);
  EXPECT_EQ(shifted, (RfVector{gamma.inverse(), RationalFunction(5), RationalFunction(5)}));
  EXPECT_TRUE(degree_bounds_hold(d));
}

TEST(Gradrel, SingleFormOverPolynomialRing) {
  const Polynomial h = P("(x4^2*x1 + x4*x5*x2 + x5^2*x3)^2", 5);
  const Decomposition d = classify_gradrel(h, 3);
  EXPECT_EQ(d.form, Form::SingleForm);
  EXPECT_TRUE(d.verified);
  EXPECT_EQ(d.g, G("t^2", 5));
  EXPECT_EQ(*d.p, V({"x4^2", "x4*x5", "x5^2"}, 5));
  EXPECT_EQ(d.a_or_b, V({"0", "0", "0"}, 5));
  EXPECT_EQ(d.gamma, F("x4/x5", 5));
  EXPECT_TRUE(degree_bounds_hold(d));
  EXPECT_TRUE(same_image_relations(d, h, 3));
}

TEST(Gradrel, DoubleForm) {
  const Polynomial h = P("(x1 + x5*x2 + x5^2*x3 + x5^3*x4)^3 + (x5^3*x1 + x5*x2 + x4)^3", 5);
  const Decomposition d = classify_gradrel(h, 4);
  EXPECT_EQ(d.form, Form::DoubleForm);
  EXPECT_TRUE(d.verified);
  ASSERT_TRUE(d.q.has_value());
  EXPECT_EQ(d.a_or_b, V({"0", "0", "0", "0"}, 5));
  EXPECT_EQ(d.gamma, F("x5", 5));
  EXPECT_TRUE(same_image_relations(d, h, 2));
}

TEST(Gradrel, RejectsRationalProjectiveApex) {
  EXPECT_THROW(classify_gradrel(P("(x4*x1 + x4^2*x2)^2", 4), 2), std::invalid_argument);
  EXPECT_THROW(classify_gradrel(P("x1^2", 1), 1), std::invalid_argument);
}

TEST(ClassifyHessian, NondegenerateQuadratic) {
  const HessianClassification c = classify_hessian(P("x1^2 + 5*x2^2", 2));
  EXPECT_EQ(c.profile.r_hessian, 2u);
  EXPECT_EQ(c.apex.s(), 2u);
  ASSERT_TRUE(c.decomposition.has_value());
  EXPECT_EQ(c.decomposition->form, Form::GradConstant);
  EXPECT_TRUE(c.decomposition->verified);
  for (const auto& a : c.decomposition->a_or_b) EXPECT_TRUE(a.is_zero());
}

TEST(ClassifyHessian, GordanNoether) {
  const Polynomial h = P("x1^2*x3 + x1*x2*x4 + x2^2*x5", 5);
  const HessianClassification c = classify_hessian(h);
  EXPECT_EQ(c.profile.r_hessian, 4u);
  EXPECT_EQ(numeric_rank(hessian(h, 5), 3), 4u);
  EXPECT_EQ(c.apex.s(), 2u);
  EXPECT_EQ(c.main_count, 3u);
  ASSERT_TRUE(c.decomposition.has_value());
  const Decomposition& d = *c.decomposition;
  EXPECT_EQ(d.form, Form::SingleForm);
  EXPECT_TRUE(d.verified);
  EXPECT_EQ(d.a_or_b, V({"0", "0", "0"}, 5));
  ASSERT_TRUE(d.p.has_value());
  // Up to the coordinate change, p spans the quadrics in the two parameters.
  for (const auto& e : *d.p) {
    EXPECT_EQ(e.degree(), 2);
    EXPECT_TRUE(e.is_homogeneous());
    EXPECT_FALSE(e.uses(0) || e.uses(1) || e.uses(2));
  }
  EXPECT_EQ(rank(SymMatrix::from_rows({*d.p}, 5)), 1u);
  EXPECT_TRUE(degree_bounds_hold(d));
  EXPECT_TRUE(same_image_relations(d, c.transformed, 2));
  // The original h is h~(T^{-1} x).
  const RationalMatrix tinv = inverse(c.transform);
  std::mt19937_64 rng(4);
  for (int k = 0; k < 5; ++k) {
    RationalVector x;
    for (int j = 0; j < 5; ++j) x.emplace_back(small_int(rng, -9, 9));
    EXPECT_EQ(eval_composed(c.transformed, tinv, x), h.evaluate(x));
  }
}

TEST(ClassifyHessian, CubeOfLinearForm) {
  const HessianClassification c = classify_hessian(P("(x1+2*x2)^3", 2));
  EXPECT_EQ(c.profile.r_hessian, 1u);
  EXPECT_EQ(c.apex.s(), 1u);
  ASSERT_TRUE(c.decomposition.has_value());
  EXPECT_EQ(c.decomposition->form, Form::GradConstant);
  EXPECT_TRUE(c.decomposition->verified);
}

TEST(ClassifyHessian, NoImageApex) {
  // Cylinder over a cuspidal cubic: r = 2, s = 1.
  const HessianClassification c = classify_hessian(P("x3^2*x1 + x3^3*x2", 3));
  EXPECT_FALSE(c.has_image_apex);
  EXPECT_EQ(c.profile.r_hessian, 2u);
  EXPECT_EQ(c.apex.s(), 1u);
  ASSERT_TRUE(c.decomposition.has_value());
  EXPECT_EQ(c.decomposition->form, Form::GradAffine);
  EXPECT_TRUE(degree_bounds_hold(*c.decomposition));
}

TEST(ClassifyHessian, OutOfReach) {
  const HessianClassification c = classify_hessian(P("x1*x2*x3 + x4*x5^2 + x1^3", 5));
  EXPECT_FALSE(c.decomposition.has_value());
  EXPECT_FALSE(c.out_of_reach.empty());
}

class ClassifyLaws : public ::testing::TestWithParam<int> {};

TEST_P(ClassifyLaws, HessianPipeline) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()));
  const std::size_t n = static_cast<std::size_t>(small_int(rng, 1, 3));
  Polynomial h = random_polynomial(rng, n, 3, static_cast<std::size_t>(small_int(rng, 1, 4)));
  const HessianClassification c = classify_hessian(h);
  EXPECT_EQ(c.profile.r_hessian, numeric_rank(hessian(h, n), 11));
  if (c.decomposition) {
    EXPECT_TRUE(c.decomposition->verified);
    EXPECT_EQ(expand(*c.decomposition), RationalFunction(c.transformed));
    EXPECT_TRUE(degree_bounds_hold(*c.decomposition));
    EXPECT_EQ(c.main_count + c.apex.s(), n);
  } else {
    EXPECT_FALSE(c.out_of_reach.empty());
  }
}

TEST_P(ClassifyLaws, DbReducePreservesRank) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()) + 1000);
  const std::size_t big = static_cast<std::size_t>(small_int(rng, 3, 4));
  const std::size_t target = static_cast<std::size_t>(small_int(rng, 2, static_cast<int>(big) - 1));
  // h = f(M x) with the first target-1 columns of M invertible.
  const std::size_t k = target - 1;
  Polynomial f = random_polynomial(rng, k, 3, 3);
  std::vector<Polynomial> forms;
  for (std::size_t i = 0; i < k; ++i) {
    Polynomial l = Polynomial::variable(big, i);
    for (std::size_t j = k; j < big; ++j) l += Rational(small_int(rng, -3, 3)) * Polynomial::variable(big, j);
    forms.push_back(l);
  }
  const Polynomial h = compose(f, forms);
  const DbReduction red = db_reduce(h, target, static_cast<std::uint64_t>(GetParam()));
  expect_reduction(h, red, target, static_cast<std::uint64_t>(GetParam()));
  EXPECT_EQ(red.rounds, big - target);
}

TEST_P(ClassifyLaws, PencilIdentities) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()) + 2000);
  const std::size_t rows = 3, cols = 2;
  // Entries in Q(x3).
  const std::vector<Polynomial> to_x3{Polynomial::variable(3, 2)};
  auto param = [&] { return compose(random_polynomial(rng, 1, 2, 2), to_x3); };
  RfMatrix p(rows, cols, 3);
  RfVector b;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      p(i, j) = small_int(rng, 0, 2) == 0 ? RationalFunction(3) : RationalFunction(param(), param());
    }
    b.emplace_back(param());
  }
  p(0, 0) = RationalFunction(param());
  const PencilNormalization pn = pencil_normalize(p, b);
  expect_pencil(p, b, pn);
  // trdeg(Q z + a) = trdeg(P y + b), with y and z at indices 0 and 1.
  RfVector py, qz;
  for (std::size_t i = 0; i < rows; ++i) {
    RationalFunction e = b[i];
    for (std::size_t j = 0; j < cols; ++j) e += p(i, j) * RationalFunction(Polynomial::variable(3, j));
    py.push_back(e);
    RationalFunction f = pn.a[i];
    for (std::size_t j = 0; j < pn.r; ++j) f += pn.Q(i, j) * RationalFunction(Polynomial::variable(3, j));
    qz.push_back(f);
  }
  const std::vector<std::size_t> all{0, 1, 2};
  RfVector qz_orig(rows, RationalFunction(3));
  for (std::size_t i = 0; i < rows; ++i) qz_orig[pn.row_order[i]] = qz[i];
  EXPECT_EQ(trdeg(qz_orig, all), trdeg(py, all));
}

INSTANTIATE_TEST_SUITE_P(Seeds, ClassifyLaws, ::testing::Range(0, 50));
