#include <gtest/gtest.h>

#include "support.hpp"

using namespace invherm;

TEST(Algebra, AntisymmetryIsStructural) {
  LieAlgebra g(3);
  g.set(0, 2, 1, 2.0);
  EXPECT_EQ(g.c(0, 1, 2), cplx(-2.0));
  EXPECT_EQ(g.c(0, 2, 1), cplx(2.0));
  EXPECT_EQ(g.c(0, 1, 1), cplx(0.0));
  EXPECT_THROW(g.set(0, 1, 1, 1.0), InputShapeError);
  EXPECT_THROW(g.set(3, 0, 1, 1.0), InputShapeError);
}

TEST(Algebra, AdMatrixConvention) {
  const LieAlgebra h = catalog::heisenberg();
  const Mat ad2 = h.ad(1);
  EXPECT_EQ(ad2(0, 2), cplx(1.0));
  EXPECT_EQ(h.ad(2)(0, 1), cplx(-1.0));
  EXPECT_DOUBLE_EQ(max_abs(h.ad(0)), 0.0);
}

TEST(Algebra, CatalogPassesJacobi) {
  for (const auto& [name, alg] : fixture::catalog_sweep()) {
    SCOPED_TRACE(name);
    EXPECT_LT(validate(alg).jacobi_residual, 1e-12);
  }
  EXPECT_TRUE(validate(catalog::affine2()).pass);
}

TEST(Algebra, CorruptedSl2FailsJacobi) {
  LieAlgebra g = catalog::sl2();
  g.set(0, 0, 1, g.c(0, 0, 1) + 1.0);
  const auto rep = validate(g);
  EXPECT_FALSE(rep.pass);
  EXPECT_NEAR(rep.jacobi_residual, 1.414213562373095, 1e-12);
}

TEST(Algebra, HeisenbergWithExtraTripleIsStillLie) {
  LieAlgebra g = catalog::heisenberg();
  g.set(1, 0, 2, 1.0);  // [e1, e3] = e2
  EXPECT_TRUE(validate(g).pass);
  EXPECT_LT(validate(g).jacobi_residual, 1e-15);
}

TEST(Algebra, DenseInputChecksAntisymmetry) {
  DenseStructure s{2, std::vector<cplx>(8, 0.0)};
  s.data[(1 * 2 + 0) * 2 + 1] = 1.0;  // c^2_{12} = 1 without c^2_{21} = -1
  const auto rep = validate(s);
  EXPECT_FALSE(rep.antisymmetric);
  EXPECT_NEAR(rep.antisymmetry_residual, 1.0, 1e-15);
  EXPECT_THROW(from_dense(s), InputShapeError);
  s.data[(1 * 2 + 1) * 2 + 0] = -1.0;
  EXPECT_EQ(from_dense(s), catalog::affine2());
  EXPECT_THROW(validate(DenseStructure{2, std::vector<cplx>(5)}), InputShapeError);
}

TEST(Algebra, Sl2FromHilbertSchmidtBasis) {
  const LieAlgebra g = catalog::sl2();
  EXPECT_NEAR(std::abs(g.c(0, 0, 2) + kSqrt2), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g.c(1, 1, 2) - kSqrt2), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g.c(2, 0, 1) - kSqrt2), 0.0, 1e-15);
  Mat kill(3, 3);
  kill << 0, 4, 0, 4, 0, 0, 0, 0, 4;
  EXPECT_LT(max_abs(killing_form(g) - kill), 1e-12);
}

TEST(Algebra, Unimodularity) {
  EXPECT_TRUE(is_unimodular(catalog::abelian(3)));
  EXPECT_TRUE(is_unimodular(catalog::heisenberg()));
  EXPECT_TRUE(is_unimodular(catalog::solvable_c(1.0, 2.0, 0.0)));
  EXPECT_TRUE(is_unimodular(catalog::sl2_sum_sl2()));
  EXPECT_FALSE(is_unimodular(catalog::affine2()));
}

TEST(Algebra, Classification) {
  EXPECT_EQ(classify3d(catalog::abelian(3)), Class3::Abelian);
  EXPECT_EQ(classify3d(catalog::heisenberg()), Class3::Heisenberg);
  EXPECT_EQ(classify3d(catalog::solvable_c(0.0, 1.0, 1.0)), Class3::SolvableC);
  EXPECT_EQ(classify3d(catalog::sl2()), Class3::Sl2);
  EXPECT_EQ(classify3d(catalog::sl2_sum_sl2()), Class3::NotDim3);
  EXPECT_EQ(classify3d(catalog::affine2()), Class3::NotDim3);
  LieAlgebra r3(3);  // [e1,e3] = e1, [e2,e3] = e2: non-unimodular
  r3.set(0, 0, 2, 1.0);
  r3.set(1, 1, 2, 1.0);
  EXPECT_EQ(classify3d(r3), Class3::NotUnimodular);
}

TEST(Algebra, ClassificationSurvivesBasisChange) {
  fixture::Gen gen(11);
  for (const auto& [name, alg] : fixture::catalog_sweep()) {
    if (alg.dim() != 3) continue;
    SCOPED_TRACE(name);
    EXPECT_EQ(classify3d(alg.rebased(gen.invertible(3))), classify3d(alg));
  }
}

TEST(Algebra, SolvableCParameterGuard) {
  EXPECT_THROW(catalog::solvable_c(0.0, 0.0, 0.0), ParameterError);
  EXPECT_THROW(catalog::solvable_c(1.0, 1.0, -1.0), ParameterError);
  EXPECT_NO_THROW(catalog::solvable_c(0.0, 1.0, 1.0));
}

TEST(Algebra, OrthonormalizeIdentityIsNoOp) {
  const LieAlgebra g = catalog::sl2();
  const InvariantFrame fr = orthonormalize(g);
  EXPECT_LT(max_abs(fr.P - Mat::Identity(3, 3)), 1e-15);
  EXPECT_LT((fr.on.max_abs() - g.max_abs()), 1e-15);
}

TEST(Algebra, OrthonormalizeProducesUnitGram) {
  fixture::Gen gen(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Mat h = gen.positive(3);
    const InvariantFrame fr = orthonormalize(catalog::heisenberg(), {h});
    EXPECT_LT(max_abs(fr.P.adjoint() * h * fr.P - Mat::Identity(3, 3)), 1e-12);
    EXPECT_LT(validate(fr.on).jacobi_residual, 1e-12);
  }
}

TEST(Algebra, MetricErrors) {
  const LieAlgebra g = catalog::heisenberg();
  Mat h = Mat::Identity(3, 3);
  h(0, 1) = 1.0;
  EXPECT_THROW(orthonormalize(g, {h}), MetricError);
  EXPECT_THROW(orthonormalize(g, {-Mat::Identity(3, 3)}), MetricError);
  EXPECT_THROW(orthonormalize(g, {Mat::Identity(2, 2)}), InputShapeError);
}

TEST(Algebra, RebaseRoundTrip) {
  fixture::Gen gen(5);
  const LieAlgebra g = catalog::sl2();
  const Mat q = gen.invertible(3);
  const LieAlgebra back = g.rebased(q).rebased(q.inverse());
  double diff = 0.0;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) diff = std::max(diff, std::abs(back.c(k, i, j) - g.c(k, i, j)));
  EXPECT_LT(diff, 1e-12);
}

TEST(Algebra, DirectSumBlocks) {
  const LieAlgebra g = catalog::sl2_sum_sl2();
  EXPECT_EQ(g.dim(), 6);
  for (int i = 0; i < 3; ++i)
    for (int j = 3; j < 6; ++j)
      for (int k = 0; k < 6; ++k) EXPECT_EQ(g.c(k, i, j), cplx(0.0));
  EXPECT_EQ(numeric_rank(killing_form(g), 1e-9), 6);
}
