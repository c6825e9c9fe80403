#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "witnesskit/verify.hpp"

using namespace witnesskit;

TEST(RandomDensity, OneDimensional) {
  const DensityMatrix r = random_density(1, std::uint64_t{5});
  EXPECT_EQ(r.matrix(), CMatrix{{1.0}});
}

TEST(RandomDensity, ValidForManySeeds) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed)
    for (std::size_t d : {2u, 3u, 4u}) {
      const DensityMatrix r = random_density(d, seed);
      ASSERT_NEAR(r.matrix().trace().real(), 1.0, 1e-12);
      ASSERT_GE(oracle::min_eig(r.matrix()), -1e-12);
    }
}

TEST(RandomDensity, DeterministicPerSeed) {
  EXPECT_EQ(random_density(3, std::uint64_t{77}).matrix(), random_density(3, std::uint64_t{77}).matrix());
  EXPECT_FALSE(random_density(3, std::uint64_t{77}).matrix() == random_density(3, std::uint64_t{78}).matrix());
}

TEST(RandomUnitary, IsUnitary) {
  Rng rng(6);
  for (std::size_t d : {1u, 2u, 3u, 5u}) {
    const CMatrix u = random_unitary(d, rng);
    EXPECT_LE(max_abs_diff(u.adjoint() * u, CMatrix::identity(d)), 1e-13);
  }
}

TEST(RandomSeparable, SingleTermIsProduct) {
  const auto s = random_separable({2, 3}, 1, std::uint64_t{3});
  ASSERT_EQ(s.decomposition.weights.size(), 1u);
  EXPECT_DOUBLE_EQ(s.decomposition.weights[0], 1.0);
  EXPECT_LE(max_abs_diff(s.state.matrix(),
                         kron(s.decomposition.parts_a[0].matrix(), s.decomposition.parts_b[0].matrix())),
            1e-15);
}

TEST(RandomSeparable, AlwaysPptAndConsistent) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const BipartiteDims dims = seed % 2 ? BipartiteDims{2, 2} : BipartiteDims{3, 3};
    const auto s = random_separable(dims, default_mixture_terms(dims), seed);
    double total = 0.0;
    for (double w : s.decomposition.weights) {
      ASSERT_GE(w, 0.0);
      total += w;
    }
    ASSERT_NEAR(total, 1.0, 1e-12);
    ASSERT_LE(max_abs_diff(s.decomposition.assemble(dims).matrix(), s.state.matrix()), 1e-15);
    ASSERT_GE(min_eigenvalue(partial_transpose(s.state.matrix(), dims, Subsystem::B)), -1e-10) << seed;
  }
}

TEST(RandomEffect, EigenvaluesInUnitInterval) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const std::size_t d = 2 + seed % 2;
    const PovmEffect e = random_effect(d, seed);
    const auto vals = oracle::eigenvalues(e.matrix());
    ASSERT_GE(vals.front(), -1e-12);
    ASSERT_LE(vals.back(), 1.0 + 1e-12);
    ASSERT_NO_THROW(e.complement());
  }
  Rng rng(1);
  const CMatrix scalar = random_effect_matrix(1, rng);
  EXPECT_GE(scalar(0, 0).real(), 0.5 - 1e-15);
  EXPECT_LE(scalar(0, 0).real(), 1.0);
}

TEST(EffectivePovms, MesGivesScaledTranspose) {
  const auto s = random_separable({3, 2}, 4, std::uint64_t{11});
  const auto effs = effective_povms(mes_effect(3), mes_effect(2), s.decomposition);
  ASSERT_EQ(effs.size(), 4u);
  for (std::size_t i = 0; i < effs.size(); ++i) {
    EXPECT_LE(max_abs_diff(effs[i].a, s.decomposition.parts_a[i].matrix() * (1.0 / 3.0)), 1e-15);
    EXPECT_LE(max_abs_diff(effs[i].b, s.decomposition.parts_b[i].matrix() * 0.5), 1e-15);
  }
}

TEST(EffectivePovms, IdentityEffectsGiveIdentity) {
  const auto s = random_separable({2, 3}, 3, std::uint64_t{12});
  const auto effs = effective_povms(PovmEffect(CMatrix::identity(4), 2), PovmEffect(CMatrix::identity(9), 3),
                                    s.decomposition);
  for (const auto& e : effs) {
    EXPECT_LE(max_abs_diff(e.a, CMatrix::identity(2)), 1e-15);
    EXPECT_LE(max_abs_diff(e.b, CMatrix::identity(3)), 1e-15);
  }
}

TEST(EffectivePovms, PositiveOnRandomTriples) {
  Rng rng(41);
  for (int i = 0; i < 1000; ++i) {
    const BipartiteDims dims = i % 2 ? BipartiteDims{2, 2} : BipartiteDims{3, 3};
    const auto s = random_separable(dims, 3, rng);
    const auto effs = effective_povms(random_effect(dims.dA, rng), random_effect(dims.dB, rng), s.decomposition);
    for (const auto& e : effs) {
      ASSERT_GE(min_eigenvalue(e.a), -1e-12);
      ASSERT_GE(min_eigenvalue(e.b), -1e-12);
    }
  }
}

TEST(FilterState, IdentityEffects) {
  const auto s = random_separable({2, 3}, 5, std::uint64_t{13});
  const auto effs = effective_povms(PovmEffect(CMatrix::identity(4), 2), PovmEffect(CMatrix::identity(9), 3),
                                    s.decomposition);
  const FilterResult r = filter_state(effs, s.decomposition.weights);
  ASSERT_TRUE(r.q.has_value());
  EXPECT_NEAR(r.k, 6.0, 1e-12);
  EXPECT_LE(max_abs_diff(r.q->matrix(), CMatrix::identity(6) * (1.0 / 6.0)), 1e-15);
}

TEST(FilterState, MesSingleProductTerm) {
  const auto s = random_separable({2, 2}, 1, std::uint64_t{14});
  const FilterResult r = filter_state(effective_povms(mes_effect(2), mes_effect(2), s.decomposition), {1.0});
  ASSERT_TRUE(r.q.has_value());
  EXPECT_NEAR(r.k, 0.25, 1e-15);
  EXPECT_LE(max_abs_diff(r.q->matrix(), s.state.matrix()), 1e-14);
}

TEST(FilterState, ZeroEffectRaises) {
  const CaseSetup cs = make_case(WitnessCase::werner);
  const auto s = random_separable({2, 2}, 4, std::uint64_t{15});
  const PovmEffect zero(CMatrix(4), 2);
  const FilterResult r = filter_state(effective_povms(zero, mes_effect(2), s.decomposition), s.decomposition.weights);
  EXPECT_FALSE(r.q.has_value());
  EXPECT_EQ(r.k, 0.0);
  EXPECT_THROW(check_filtering_identity(cs.f, cs.w, s.decomposition, zero, mes_effect(2)), ZeroFilter);
}

TEST(FilteringIdentity, MesEffectsReduceToNonlinearOverDims) {
  for (WitnessCase c : {WitnessCase::werner, WitnessCase::bound}) {
    const CaseSetup cs = make_case(c);
    const auto s = random_separable(cs.w.dims, 6, std::uint64_t{16});
    const auto chk =
        check_filtering_identity(cs.f, cs.w, s.decomposition, mes_effect(cs.w.dims.dA), mes_effect(cs.w.dims.dB));
    const double expected = eval_nonlinear(cs.f, s.state) / static_cast<double>(cs.w.dims.total());
    EXPECT_NEAR(chk.rhs, expected, 1e-12);
    EXPECT_NEAR(chk.lhs, expected, 1e-12);
  }
}

TEST(FilteringIdentity, HoldsOnRandomInstances) {
  for (WitnessCase c : {WitnessCase::werner, WitnessCase::bound}) {
    const SuiteReport r = filtering_identity_suite(make_case(c), 1000, 2718);
    EXPECT_EQ(r.failures, 0u) << case_name(c);
    EXPECT_GE(r.worst_value, -1e-9);
  }
}

TEST(Suites, SeparableStatesNeverFlagged) {
  for (WitnessCase c : {WitnessCase::werner, WitnessCase::bound}) {
    const CaseSetup cs = make_case(c);
    const SuiteReport pos = separable_positivity_suite(cs, 2000, 31415);
    EXPECT_EQ(pos.failures, 0u);
    EXPECT_GE(pos.worst_value, -1e-9);
    EXPECT_EQ(separable_witness_suite(cs, 500, 1).failures, 0u);
  }
}

TEST(Suites, SeededRunsAreReproducible) {
  const CaseSetup cs = make_case(WitnessCase::werner);
  const SuiteReport a = separable_positivity_suite(cs, 50, 9), b = separable_positivity_suite(cs, 50, 9);
  EXPECT_EQ(a.worst_value, b.worst_value);
  EXPECT_EQ(a.skipped, b.skipped);
  EXPECT_NE(a.worst_value, separable_positivity_suite(cs, 50, 10).worst_value);
}

TEST(Werner, EntangledSideIsNppt) {
  for (int i = 1; i <= 50; ++i) {
    const double nu = 1.0 / 3.0 + 1e-6 + (2.0 / 3.0 - 1e-6) * i / 50.0;
    ASSERT_LT(min_eigenvalue(partial_transpose(werner(std::min(nu, 1.0)).matrix(), {2, 2}, Subsystem::B)), 0.0);
  }
}
