#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "witnesskit/mdi.hpp"
#include "witnesskit/verify.hpp"

using namespace witnesskit;

TEST(MesEffect, ProjectorProperties) {
  for (std::size_t d : {2u, 3u}) {
    const PovmEffect e = mes_effect(d);
    EXPECT_EQ(e.matrix().dim(), d * d);
    EXPECT_NEAR(e.matrix().trace().real(), 1.0, 1e-15);
    EXPECT_LE(max_abs_diff(e.matrix() * e.matrix(), e.matrix()), 1e-12);
    const auto vals = oracle::eigenvalues(e.matrix());
    for (std::size_t k = 0; k + 1 < vals.size(); ++k) EXPECT_NEAR(vals[k], 0.0, 1e-12);
    EXPECT_NEAR(vals.back(), 1.0, 1e-12);
  }
}

TEST(PovmEffect, Validation) {
  EXPECT_THROW(PovmEffect(CMatrix::identity(4) * 1.5, 2), EffectViolation);
  EXPECT_THROW(PovmEffect(CMatrix::identity(4) * -0.1, 2), EffectViolation);
  EXPECT_THROW(PovmEffect(CMatrix::identity(5), 2), DimensionMismatch);
  EXPECT_NO_THROW(PovmEffect(CMatrix(4), 2));
  EXPECT_LE(max_abs_diff(mes_effect(2).complement().matrix() + mes_effect(2).matrix(), CMatrix::identity(4)), 0.0);
}

TEST(ProbTable, MesEffectsMatchClosedForm) {
  const CaseSetup cs = make_case(WitnessCase::werner);
  Rng rng(4);
  const DensityMatrix rho = random_density(4, rng).with_dims({2, 2});
  const ProbTable p = prob_table(rho, cs.w, mes_effect(2), mes_effect(2));
  EXPECT_NEAR(p.pmm, 1.0 / 16.0, 1e-15);
  for (std::size_t s = 0; s < 4; ++s)
    for (std::size_t t = 0; t < 4; ++t) {
      const CMatrix op = kron(cs.w.basis_a[s].matrix().transpose(), cs.w.basis_b[t].matrix().transpose());
      EXPECT_NEAR(p.p(s, t), expectation(op, rho.matrix()) / 4.0, 1e-15);
    }
  const ProbTable q = prob_table(bound_entangled_b(2.0), make_case(WitnessCase::bound).w, mes_effect(3), mes_effect(3));
  EXPECT_NEAR(q.pmm, 1.0 / 81.0, 1e-15);
}

TEST(ProbTable, ContractedAgreesWithDenseKronecker) {
  Rng rng(9);
  for (WitnessCase c : {WitnessCase::werner, WitnessCase::bound}) {
    const CaseSetup cs = make_case(c);
    for (int i = 0; i < (c == WitnessCase::werner ? 50 : 5); ++i) {
      const DensityMatrix rho = random_density(cs.w.dims.total(), rng).with_dims(cs.w.dims);
      const PovmEffect a1 = random_effect(cs.w.dims.dA, rng), b1 = random_effect(cs.w.dims.dB, rng);
      const ProbTable fast = prob_table(rho, cs.w, a1, b1), slow = prob_table_dense(rho, cs.w, a1, b1);
      EXPECT_NEAR(fast.pmm, slow.pmm, 1e-14);
      for (std::size_t k = 0; k < fast.p.data().size(); ++k) ASSERT_NEAR(fast.p.data()[k], slow.p.data()[k], 1e-14);
    }
  }
}

TEST(ProbTable, ZeroEffectGivesZeroTableAndDegenerateN) {
  const CaseSetup cs = make_case(WitnessCase::werner);
  const PovmEffect zero(CMatrix(4), 2);
  const ProbTable p = prob_table(werner(0.5), cs.w, zero, mes_effect(2));
  EXPECT_EQ(p.pmm, 0.0);
  for (double v : p.p.data()) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(eval_mdi_linear(cs.w, p), 0.0);
  EXPECT_THROW(eval_mdi_new(cs.w, p), DegenerateDenominator);
}

TEST(ProbTable, ComplementSumsToSingleSidedProbability) {
  Rng rng(21);
  const CaseSetup cs = make_case(WitnessCase::werner);
  for (int i = 0; i < 100; ++i) {
    const DensityMatrix rho = random_density(4, rng).with_dims({2, 2});
    const PovmEffect a1 = random_effect(2, rng), b1 = random_effect(2, rng);
    const ProbTable p = prob_table(rho, cs.w, a1, b1), q = prob_table(rho, cs.w, a1.complement(), b1);
    const ProbTable r = prob_table(rho, cs.w, PovmEffect(CMatrix::identity(4), 2), b1);
    for (std::size_t k = 0; k < p.p.data().size(); ++k) {
      ASSERT_GE(p.p.data()[k], -1e-12);
      ASSERT_LE(p.p.data()[k] + q.p.data()[k], 1.0 + 1e-10);
      ASSERT_NEAR(p.p.data()[k] + q.p.data()[k], r.p.data()[k], 1e-12);
    }
  }
}

TEST(ProbTable, DimensionChecks) {
  const CaseSetup cs = make_case(WitnessCase::werner);
  EXPECT_THROW(prob_table(bound_entangled_b(1.0), cs.w, mes_effect(2), mes_effect(2)), DimensionMismatch);
  EXPECT_THROW(prob_table(werner(0.2), cs.w, mes_effect(3), mes_effect(2)), DimensionMismatch);
}

TEST(EvalMdi, WernerClosedForms) {
  const CaseSetup cs = make_case(WitnessCase::werner);
  for (int i = 0; i <= 20; ++i) {
    const double nu = i / 20.0;
    const ProbTable p = prob_table(werner(nu), cs.w, mes_effect(2), mes_effect(2));
    EXPECT_NEAR(eval_mdi_linear(cs.w, p), (1.0 - 3.0 * nu) / 16.0, 1e-14);
    EXPECT_NEAR(eval_mdi_new(cs.w, p), (1.0 - 3.0 * nu) / 16.0, 1e-14);
  }
  const ProbTable p1 = prob_table(werner(1.0), cs.w, mes_effect(2), mes_effect(2));
  EXPECT_NEAR(eval_mdi_new(cs.w, p1), -0.125, 1e-14);
  ProbTable zero = p1;
  for (double& v : zero.p.data()) v = 0.0;
  EXPECT_EQ(eval_mdi_linear(cs.w, zero), 0.0);
}

TEST(EvalMdi, BoundStateAtFourIsNinthOfNonlinearWitness) {
  const CaseSetup cs = make_case(WitnessCase::bound);
  const DensityMatrix rho = bound_entangled_b(4.0);
  const double n = eval_mdi_new(cs.w, prob_table(rho, cs.w, mes_effect(3), mes_effect(3)));
  EXPECT_LT(n, 0.0);
  EXPECT_NEAR(n, eval_nonlinear(cs.f, rho) / 9.0, 1e-10);
}

TEST(EvalMdi, MesReductionOnRandomStates) {
  Rng rng(500);
  for (WitnessCase c : {WitnessCase::werner, WitnessCase::bound}) {
    const CaseSetup cs = make_case(c);
    const std::size_t da = cs.w.dims.dA, db = cs.w.dims.dB;
    for (int i = 0; i < 100; ++i) {
      const DensityMatrix rho = random_density(cs.w.dims.total(), rng).with_dims(cs.w.dims);
      const ProbTable p = prob_table(rho, cs.w, mes_effect(da), mes_effect(db));
      ASSERT_NEAR(eval_mdi_new(cs.w, p), eval_nonlinear(cs.f, rho) / static_cast<double>(da * db), 1e-10);
      ASSERT_NEAR(eval_mdi_linear(cs.w, p), eval_linear(cs.f.linear(), rho) / static_cast<double>(da * db), 1e-10);
    }
  }
}

TEST(EvalMdi, NonlinearNeverAboveLinear) {
  Rng rng(13);
  for (WitnessCase c : {WitnessCase::werner, WitnessCase::bound}) {
    const CaseSetup cs = make_case(c);
    for (int i = 0; i < 300; ++i) {
      const DensityMatrix rho = random_density(cs.w.dims.total(), rng).with_dims(cs.w.dims);
      const ProbTable p = prob_table(rho, cs.w, random_effect(cs.w.dims.dA, rng), random_effect(cs.w.dims.dB, rng));
      if (p.pmm <= tolerances().pmm_cutoff) continue;
      ASSERT_LE(eval_mdi_new(cs.w, p), eval_mdi_linear(cs.w, p) + 1e-12);
    }
  }
}

TEST(BuildMdiWitness, CarriesDenominatorAndShapes) {
  const CaseSetup b = make_case(WitnessCase::bound);
  EXPECT_NEAR(b.w.denom, 1.0, 1e-12);
  EXPECT_EQ(b.w.alpha.rows(), 9u);
  EXPECT_EQ(b.w.gamma.cols(), 9u);
  const CaseSetup w = make_case(WitnessCase::werner);
  EXPECT_NEAR(w.w.denom, 0.5, 1e-14);
}
