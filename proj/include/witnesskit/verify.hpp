#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "witnesskit/basis.hpp"
#include "witnesskit/linalg.hpp"
#include "witnesskit/maps.hpp"
#include "witnesskit/mdi.hpp"
#include "witnesskit/states.hpp"
#include "witnesskit/witness.hpp"

namespace witnesskit {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; derives independent per-trial seeds.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline CMatrix ginibre(std::size_t d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = cplx(re, im);
    }
  return g;
}

/// G G^dagger / Tr[G G^dagger]
inline DensityMatrix random_density(std::size_t d, Rng& rng) {
  const CMatrix g = ginibre(d, rng);
  CMatrix p = g * g.adjoint();
  const double tr = p.trace().real();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) p(i, j) /= tr;
  // clean the rounding-level anti-Hermitian part left by the product
  p = (p + p.adjoint()) * 0.5;
  return DensityMatrix(std::move(p));
}

inline DensityMatrix random_density(std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(d, rng);
}

/// Normalized complex Gaussian vector (Haar-distributed pure state).
inline PureState random_pure(std::size_t d, Rng& rng, std::optional<BipartiteDims> dims = std::nullopt) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(d);
  for (auto& z : v) {
    const double re = normal(rng);
    const double im = normal(rng);
    z = cplx(re, im);
  }
  return PureState::normalized(std::move(v), dims);
}

/// Haar unitary from Gram-Schmidt on the columns of a Ginibre matrix.
inline CMatrix random_unitary(std::size_t d, Rng& rng) {
  CMatrix u = ginibre(d, rng);
  for (std::size_t c = 0; c < d; ++c) {
    for (std::size_t k = 0; k < c; ++k) {
      cplx dot = 0.0;
      for (std::size_t r = 0; r < d; ++r) dot += std::conj(u(r, k)) * u(r, c);
      for (std::size_t r = 0; r < d; ++r) u(r, c) -= dot * u(r, k);
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < d; ++r) norm += std::norm(u(r, c));
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < d; ++r) u(r, c) /= norm;
  }
  return u;
}

struct SeparableDecomposition {
  std::vector<double> weights;
  std::vector<DensityMatrix> parts_a;
  std::vector<DensityMatrix> parts_b;

  DensityMatrix assemble(BipartiteDims dims) const {
    CMatrix m(dims.total());
    for (std::size_t i = 0; i < weights.size(); ++i)
      m += kron(parts_a[i].matrix(), parts_b[i].matrix()) * weights[i];
    return DensityMatrix((m + m.adjoint()) * 0.5, dims);
  }
};

struct SeparableSample {
  DensityMatrix state;
  SeparableDecomposition decomposition;
};

/// Mixture of k product states with flat-Dirichlet weights. Each local factor
/// is a Haar pure state or a Ginibre mixed state with equal probability, so
/// samples reach the extreme points of the separable set.
inline SeparableSample random_separable(BipartiteDims dims, std::size_t k, Rng& rng) {
  if (k == 0) throw OutOfFamily("random_separable needs k >= 1");
  std::exponential_distribution<double> expo(1.0);
  std::bernoulli_distribution coin(0.5);
  auto local = [&](std::size_t d) {
    return coin(rng) ? random_pure(d, rng).density() : random_density(d, rng);
  };
  SeparableDecomposition dec;
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    dec.weights.push_back(expo(rng));
    total += dec.weights.back();
    dec.parts_a.push_back(local(dims.dA));
    dec.parts_b.push_back(local(dims.dB));
  }
  for (auto& w : dec.weights) w /= total;
  DensityMatrix state = dec.assemble(dims);
  return {std::move(state), std::move(dec)};
}

inline SeparableSample random_separable(BipartiteDims dims, std::size_t k, std::uint64_t seed) {
  Rng rng(seed);
  return random_separable(dims, k, rng);
}

/// G G^dagger / (lambda_max u), u ~ U[1, 2]; an effect on a d-dimensional space.
inline CMatrix random_effect_matrix(std::size_t d, Rng& rng) {
  const CMatrix g = ginibre(d, rng);
  CMatrix p = g * g.adjoint();
  p = (p + p.adjoint()) * 0.5;
  std::uniform_real_distribution<double> uniform(1.0, 2.0);
  const double u = uniform(rng);
  p *= cplx(1.0 / (max_eigenvalue(p) * u));
  return p;
}

/// Random effect on (input, share) for a party of local dimension d.
inline PovmEffect random_effect(std::size_t local_dim, Rng& rng) {
  return PovmEffect(random_effect_matrix(local_dim * local_dim, rng), local_dim);
}

inline PovmEffect random_effect(std::size_t local_dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_effect(local_dim, rng);
}

// ---------------------------------------------------------------------------
// Filtering argument for separable shared states

struct EffectivePair {
  CMatrix a;  // acts on A_in
  CMatrix b;  // acts on B_in
};

/// A1^i = (Tr_share[A1 (I (x) sigma_i^A)])^T and
/// B1^i = (Tr_share[B1 (sigma_i^B (x) I)])^T.
inline std::vector<EffectivePair> effective_povms(const PovmEffect& a1, const PovmEffect& b1,
                                                  const SeparableDecomposition& dec) {
  const std::size_t dA = a1.local_dim(), dB = b1.local_dim();
  const BipartiteDims alice{dA, dA}, bob{dB, dB};
  std::vector<EffectivePair> out;
  out.reserve(dec.weights.size());
  for (std::size_t i = 0; i < dec.weights.size(); ++i) {
    if (dec.parts_a[i].dim() != dA || dec.parts_b[i].dim() != dB)
      throw DimensionMismatch("effective_povms: decomposition parts do not match the effects");
    const CMatrix ai = partial_trace(a1.matrix() * kron(CMatrix::identity(dA), dec.parts_a[i].matrix()),
                                     alice, Subsystem::B);
    const CMatrix bi = partial_trace(b1.matrix() * kron(dec.parts_b[i].matrix(), CMatrix::identity(dB)),
                                     bob, Subsystem::A);
    out.push_back({ai.transpose(), bi.transpose()});
  }
  return out;
}

struct FilterResult {
  std::optional<DensityMatrix> q;  // empty when K is below the zero-filter cutoff
  double k = 0.0;
};

/// Q = (sum_i p_i A1^i (x) B1^i) / K with K the trace of the numerator.
inline FilterResult filter_state(const std::vector<EffectivePair>& effs, const std::vector<double>& weights) {
  if (effs.size() != weights.size() || effs.empty())
    throw DimensionMismatch("filter_state: weights and effective POVMs differ in length");
  const BipartiteDims dims{effs.front().a.dim(), effs.front().b.dim()};
  CMatrix sum(dims.total());
  for (std::size_t i = 0; i < effs.size(); ++i) sum += kron(effs[i].a, effs[i].b) * weights[i];
  FilterResult out;
  out.k = sum.trace().real();
  if (!(out.k > tolerances().zero_filter)) return out;
  sum *= cplx(1.0 / out.k);
  out.q.emplace((sum + sum.adjoint()) * 0.5, dims);
  return out;
}

struct FilteringCheck {
  double lhs = 0.0;  // N on the true probability table
  double rhs = 0.0;  // K F(Q)
};

/// Evaluates both sides of N(P_sigma) = K F(Q).
inline FilteringCheck check_filtering_identity(const NonlinearWitness& f, const MdiWitness& w,
                                               const SeparableDecomposition& dec, const PovmEffect& a1,
                                               const PovmEffect& b1) {
  const FilterResult filt = filter_state(effective_povms(a1, b1, dec), dec.weights);
  if (!filt.q) throw ZeroFilter("K = " + std::to_string(filt.k));
  const DensityMatrix sigma = dec.assemble(w.dims);
  const double lhs = eval_mdi_new(w, prob_table(sigma, w, a1, b1));
  return {lhs, filt.k * eval_nonlinear(f, *filt.q)};
}

// ---------------------------------------------------------------------------
// Bulk property drivers

enum class WitnessCase { werner, bound };

inline const char* case_name(WitnessCase c) { return c == WitnessCase::werner ? "werner" : "bound"; }

/// A nonlinear witness together with its probability-level counterpart.
struct CaseSetup {
  NonlinearWitness f;
  MdiWitness w;
};

inline CaseSetup make_case(WitnessCase c) {
  NonlinearWitness f = c == WitnessCase::werner ? werner_witness() : bound_witness();
  MdiWitness w = build_mdi_witness(f, default_basis(f.dims.dA), default_basis(f.dims.dB));
  return {std::move(f), std::move(w)};
}

struct SuiteReport {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::size_t skipped = 0;  // pmm at or below the cutoff
  double worst_value = std::numeric_limits<double>::infinity();
  double runtime_ms = 0.0;
};

struct TrialOutcome {
  bool skipped = false;
  bool failed = false;
  double value = std::numeric_limits<double>::infinity();
};

/// Runs `trial(rng)` for every trial index on its own seed-derived generator,
/// spread across hardware threads, and reduces in trial order.
template <class Trial>
SuiteReport run_trials(std::string name, std::size_t trials, std::uint64_t seed, Trial trial) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<TrialOutcome> outcomes(trials);
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), trials));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < trials; i += workers) {
          Rng rng(mix_seed(seed, i));
          outcomes[i] = trial(rng);
        }
      });
  }
  SuiteReport rep;
  rep.name = std::move(name);
  rep.trials = trials;
  for (const auto& o : outcomes) {
    if (o.skipped) {
      ++rep.skipped;
      continue;
    }
    if (o.failed) ++rep.failures;
    rep.worst_value = std::min(rep.worst_value, o.value);
  }
  rep.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

inline std::size_t default_mixture_terms(BipartiteDims dims) { return 2 * dims.total(); }

/// Separable state, arbitrary effects: N >= -slack whenever pmm > cutoff.
/// Also enforces I >= -slack and N <= I. worst_value is the smallest N seen.
inline SuiteReport separable_positivity_suite(const CaseSetup& cs, std::size_t trials, std::uint64_t seed) {
  const Tolerances& tol = tolerances();
  const BipartiteDims dims = cs.w.dims;
  return run_trials("separable_positivity", trials, seed, [&](Rng& rng) {
    const auto sample = random_separable(dims, default_mixture_terms(dims), rng);
    const PovmEffect a1 = random_effect(dims.dA, rng);
    const PovmEffect b1 = random_effect(dims.dB, rng);
    const ProbTable p = prob_table(sample.state, cs.w, a1, b1);
    TrialOutcome out;
    if (!(p.pmm > tol.pmm_cutoff)) {
      out.skipped = true;
      return out;
    }
    const double lin = eval_mdi_linear(cs.w, p);
    out.value = eval_mdi_new(cs.w, p);
    out.failed = out.value < -tol.separable_slack || lin < -tol.separable_slack || out.value > lin + 1e-12;
    return out;
  });
}

/// |N(P_sigma) - K F(Q)| <= slack. worst_value is the largest discrepancy, negated.
inline SuiteReport filtering_identity_suite(const CaseSetup& cs, std::size_t trials, std::uint64_t seed) {
  const Tolerances& tol = tolerances();
  const BipartiteDims dims = cs.w.dims;
  return run_trials("filtering_identity", trials, seed, [&](Rng& rng) {
    const auto sample = random_separable(dims, default_mixture_terms(dims), rng);
    const PovmEffect a1 = random_effect(dims.dA, rng);
    const PovmEffect b1 = random_effect(dims.dB, rng);
    TrialOutcome out;
    try {
      const FilteringCheck chk = check_filtering_identity(cs.f, cs.w, sample.decomposition, a1, b1);
      const double gap = std::abs(chk.lhs - chk.rhs);
      out.value = -gap;
      out.failed = !(gap <= tol.separable_slack);
    } catch (const DegenerateDenominator&) {
      out.skipped = true;
    } catch (const ZeroFilter&) {
      out.skipped = true;
    }
    return out;
  });
}

/// Device-dependent witnesses on separable states: <W> >= -slack and F >= -slack.
inline SuiteReport separable_witness_suite(const CaseSetup& cs, std::size_t trials, std::uint64_t seed) {
  const Tolerances& tol = tolerances();
  const BipartiteDims dims = cs.f.dims;
  return run_trials("separable_witness", trials, seed, [&](Rng& rng) {
    const auto sample = random_separable(dims, default_mixture_terms(dims), rng);
    TrialOutcome out;
    const double lin = eval_linear(cs.f.linear(), sample.state);
    out.value = eval_nonlinear(cs.f, sample.state);
    out.failed = out.value < -tol.separable_slack || lin < -tol.separable_slack || out.value > lin + 1e-12;
    return out;
  });
}

}  // namespace witnesskit
