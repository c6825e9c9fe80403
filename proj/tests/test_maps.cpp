#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "witnesskit/maps.hpp"
#include "witnesskit/verify.hpp"

using namespace witnesskit;

namespace {

CMatrix diag3(double a, double b, double c) { return CMatrix::diagonal(std::vector<double>{a, b, c}); }

/// Choi's map written out entrywise, independently of the library definition.
CMatrix m1_by_hand(const CMatrix& a) {
  return {{a(0, 0) + a(2, 2), -a(0, 1), -a(0, 2)},
          {-a(1, 0), a(1, 1) + a(0, 0), -a(1, 2)},
          {-a(2, 0), -a(2, 1), a(2, 2) + a(1, 1)}};
}

}  // namespace

TEST(ApplyMap, ChoiMapExamples) {
  const LinearMap m1 = choi_m1();
  EXPECT_LE(max_abs_diff(apply_map(m1, CMatrix::identity(3)), CMatrix::identity(3) * 2.0), 0.0);
  EXPECT_LE(max_abs_diff(apply_map(m1, CMatrix::unit(3, 0, 0)), diag3(1, 1, 0)), 0.0);
  EXPECT_LE(max_abs_diff(apply_map(m1, CMatrix::unit(3, 0, 1)), CMatrix::unit(3, 0, 1) * -1.0), 0.0);
  EXPECT_LE(max_abs_diff(apply_map(m1, CMatrix::unit(3, 2, 2)), diag3(1, 0, 1)), 0.0);
}

TEST(ApplyMap, ChoiMapMatchesEntrywiseFormulaOnAllUnits) {
  const LinearMap m1 = choi_m1();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const CMatrix e = CMatrix::unit(3, i, j);
      const CMatrix out = apply_map(m1, e);
      EXPECT_LE(max_abs_diff(out, m1_by_hand(e)), 0.0);
      EXPECT_EQ(out.trace(), 2.0 * e.trace());
    }
}

TEST(ApplyMap, IdentityAndDimensionCheck) {
  Rng rng(1);
  const CMatrix rho = random_density(3, rng).matrix();
  EXPECT_LE(max_abs_diff(apply_map(identity_map(3), rho), rho), 1e-16);
  EXPECT_THROW(apply_map(identity_map(2), rho), DimensionMismatch);
}

TEST(LinearMap, ChoiFaithfulness) {
  // Rebuilding from the action on matrix units reproduces the Choi matrix.
  for (const LinearMap& m : {choi_m1(), transpose_map(3), identity_map(2)}) {
    const LinearMap rebuilt =
        LinearMap::from_action(m.dim_in(), m.dim_out(), [&](const CMatrix& x) { return apply_map(m, x); });
    EXPECT_LE(max_abs_diff(rebuilt.choi(), m.choi()), 1e-12);
  }
}

TEST(ExtendApply, DetectionWindow) {
  EXPECT_LT(min_eigenvalue(extend_apply(choi_m1(), bound_entangled_b(4.0))), -1e-6);
  EXPECT_GE(min_eigenvalue(extend_apply(choi_m1(), bound_entangled_b(2.0))), -1e-10);
  EXPECT_THROW(extend_apply(choi_m1(), werner(0.5)), DimensionMismatch);
}

TEST(ExtendApply, ProductStates) {
  Rng rng(17);
  for (int i = 0; i < 50; ++i) {
    const CMatrix a = random_density(3, rng).matrix(), b = random_density(3, rng).matrix();
    const CMatrix img = extend_apply(choi_m1(), kron(a, b), {3, 3});
    EXPECT_LE(max_abs_diff(img, kron(a, m1_by_hand(b))), 1e-15);
    EXPECT_GE(oracle::min_eig(img), -1e-12);
  }
}

TEST(ExtendApply, PositiveOnRandomSeparableStates) {
  Rng rng(23);
  for (int i = 0; i < 1000; ++i) {
    const auto s = random_separable({3, 3}, 18, rng);
    const CMatrix img = extend_apply(choi_m1(), s.state);
    ASSERT_LE(hermiticity_defect(img), 1e-12);
    ASSERT_GE(min_eigenvalue(img), -1e-10) << "trial " << i;
  }
}

TEST(AdjointMap, Examples) {
  EXPECT_LE(max_abs_diff(apply_map(adjoint_map(choi_m1()), CMatrix::identity(3)), CMatrix::identity(3) * 2.0),
            1e-15);
  EXPECT_LE(max_abs_diff(adjoint_map(identity_map(3)).choi(), identity_map(3).choi()), 0.0);
  for (const LinearMap& m : {choi_m1(), transpose_map(2)})
    EXPECT_LE(max_abs_diff(adjoint_map(adjoint_map(m)).choi(), m.choi()), 1e-12);
}

TEST(AdjointMap, DualityOnRandomHermitianPairs) {
  std::mt19937_64 rng(31);
  const LinearMap m1 = choi_m1();
  const LinearMap adj = adjoint_map(m1);
  for (int i = 0; i < 1000; ++i) {
    const CMatrix p = oracle::random_hermitian(3, rng), q = oracle::random_hermitian(3, rng);
    ASSERT_LE(std::abs(hs_inner(apply_map(m1, p), q) - hs_inner(p, apply_map(adj, q))), 1e-10);
  }
  // also on non-Hermitian arguments
  for (int i = 0; i < 100; ++i) {
    const CMatrix p = oracle::random_complex(3, rng), q = oracle::random_complex(3, rng);
    ASSERT_LE(std::abs(hs_inner(apply_map(m1, p), q) - hs_inner(p, apply_map(adj, q))), 1e-10);
  }
}

TEST(MapNormG, KnownValues) {
  EXPECT_NEAR(map_norm_g(choi_m1()), 2.0, 1e-12);
  for (std::size_t d : {2u, 3u, 4u}) {
    EXPECT_NEAR(map_norm_g(identity_map(d)), 1.0, 1e-12);
    EXPECT_NEAR(map_norm_g(transpose_map(d)), 1.0, 1e-12);
  }
}

TEST(MapNormG, BoundsTraceOfImageOnRandomStates) {
  Rng rng(5);
  const double g = map_norm_g(choi_m1());
  for (int i = 0; i < 200; ++i)
    EXPECT_LE(apply_map(choi_m1(), random_density(3, rng).matrix()).trace().real(), g + 1e-12);
}

TEST(LinearMap, RejectsNonHermitianChoi) {
  CMatrix c = CMatrix::identity(4);
  c(0, 1) = 1.0;
  EXPECT_THROW(LinearMap(2, 2, c), NotHermitian);
  EXPECT_THROW(LinearMap(2, 3, CMatrix::identity(4)), DimensionMismatch);
}
