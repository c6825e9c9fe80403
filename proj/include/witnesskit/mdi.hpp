#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "witnesskit/basis.hpp"
#include "witnesskit/linalg.hpp"
#include "witnesskit/states.hpp"
#include "witnesskit/witness.hpp"

// Semi-quantum game. The four subsystems are ordered
//   (A_in, A_share, B_share, B_in)
// so Alice's effect acts on the first pair and Bob's on the last pair, and
// tau_s (x) rho_AB (x) omega_t is an ordinary Kronecker product.

namespace witnesskit {

/// Outcome-1 effect of a dichotomic POVM on (input, share), both of local
/// dimension `local_dim`. Requires 0 <= E <= I.
class PovmEffect {
 public:
  PovmEffect(CMatrix e, std::size_t local_dim) : e_(std::move(e)), local_dim_(local_dim) {
    if (local_dim_ == 0 || e_.dim() != local_dim_ * local_dim_)
      throw DimensionMismatch("effect of dim " + std::to_string(e_.dim()) + " for local dim " +
                              std::to_string(local_dim_));
    const Tolerances& tol = tolerances();
    const double defect = hermiticity_defect(e_);
    if (defect > tol.hermitian)
      throw EffectViolation("effect is not Hermitian (defect " + std::to_string(defect) + ")");
    const auto eig = hermitian_eig(e_);
    if (eig.values.front() < -tol.effect || eig.values.back() > 1.0 + tol.effect)
      throw EffectViolation("effect eigenvalues span [" + std::to_string(eig.values.front()) + ", " +
                            std::to_string(eig.values.back()) + "], outside [0, 1]");
  }

  const CMatrix& matrix() const noexcept { return e_; }
  std::size_t local_dim() const noexcept { return local_dim_; }

  PovmEffect complement() const { return PovmEffect(CMatrix::identity(e_.dim()) - e_, local_dim_); }

 private:
  CMatrix e_;
  std::size_t local_dim_;
};

/// Projector onto the maximally entangled state of two d-level systems.
inline PovmEffect mes_effect(std::size_t d) { return PovmEffect(max_entangled(d).projector(), d); }

/// P(1,1|tau_s, omega_t) for every basis pair, plus P(1,1|m_A, m_B).
struct ProbTable {
  RealMatrix p;
  double pmm = 0.0;
  BipartiteDims dims;
};

/// Coefficient tables of W, H, A over the local state bases.
struct MdiWitness {
  CoeffMatrix alpha;
  CoeffMatrix beta;
  CoeffMatrix gamma;
  StateBasis basis_a;
  StateBasis basis_b;
  double denom = 1.0;
  BipartiteDims dims;
};

inline MdiWitness build_mdi_witness(const NonlinearWitness& f, const StateBasis& ba, const StateBasis& bb) {
  if (ba.dim() != f.dims.dA || bb.dim() != f.dims.dB)
    throw DimensionMismatch("build_mdi_witness: basis dimensions do not match the witness");
  return {decompose(f.W, ba, bb), decompose(f.H, ba, bb), decompose(f.A, ba, bb), ba, bb, f.denom, f.dims};
}

namespace detail {

inline double real_probability(cplx v) {
  if (std::abs(v.imag()) > tolerances().imag_residue)
    throw NumericalResidue("probability has imaginary part " + std::to_string(v.imag()));
  return v.real();
}

/// Alice's effect contracted with her input: Tr_in[A1 (tau (x) I)], an
/// operator on A_share.
inline CMatrix contract_alice(const PovmEffect& a1, const CMatrix& tau) {
  const std::size_t d = a1.local_dim();
  const CMatrix& e = a1.matrix();
  CMatrix out(d);
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y) {
      cplx s = 0.0;
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) s += e(a * d + x, b * d + y) * tau(b, a);
      out(x, y) = s;
    }
  return out;
}

/// Bob's effect contracted with his input: Tr_in[B1 (I (x) omega)], an
/// operator on B_share.
inline CMatrix contract_bob(const PovmEffect& b1, const CMatrix& omega) {
  const std::size_t d = b1.local_dim();
  const CMatrix& e = b1.matrix();
  CMatrix out(d);
  for (std::size_t u = 0; u < d; ++u)
    for (std::size_t v = 0; v < d; ++v) {
      cplx s = 0.0;
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t f = 0; f < d; ++f) s += e(u * d + c, v * d + f) * omega(f, c);
      out(u, v) = s;
    }
  return out;
}

/// C[v,u] = sum_{x,y} a[x,y] rho[(y,v),(x,u)], so that
/// Tr[(a (x) b) rho] = Tr[b C].
inline CMatrix contract_state(const CMatrix& a, const CMatrix& rho, BipartiteDims dims) {
  const std::size_t dA = dims.dA, dB = dims.dB;
  CMatrix out(dB);
  for (std::size_t x = 0; x < dA; ++x)
    for (std::size_t y = 0; y < dA; ++y) {
      const cplx axy = a(x, y);
      if (axy == cplx{}) continue;
      for (std::size_t v = 0; v < dB; ++v)
        for (std::size_t u = 0; u < dB; ++u) out(v, u) += axy * rho(y * dB + v, x * dB + u);
    }
  return out;
}

inline void check_game_dims(const DensityMatrix& rho, const MdiWitness& w, const PovmEffect& a1,
                            const PovmEffect& b1) {
  if (rho.dim() != w.dims.total() || (rho.dims() && *rho.dims() != w.dims))
    throw DimensionMismatch("prob_table: state does not match witness dimensions");
  if (a1.local_dim() != w.dims.dA || b1.local_dim() != w.dims.dB)
    throw DimensionMismatch("prob_table: effect dimensions do not match the parties");
}

}  // namespace detail

/// p(s,t) = Tr[(A1 (x) B1)(tau_s (x) rho (x) omega_t)], evaluated by
/// contracting each effect with its input first.
inline ProbTable prob_table(const DensityMatrix& rho, const MdiWitness& w, const PovmEffect& a1,
                            const PovmEffect& b1) {
  detail::check_game_dims(rho, w, a1, b1);
  const BipartiteDims dims = w.dims;
  std::vector<CMatrix> bob;
  bob.reserve(w.basis_b.size());
  for (const auto& omega : w.basis_b.elements()) bob.push_back(detail::contract_bob(b1, omega.matrix()));

  ProbTable out{RealMatrix(w.basis_a.size(), w.basis_b.size()), 0.0, dims};
  for (std::size_t s = 0; s < w.basis_a.size(); ++s) {
    const CMatrix c = detail::contract_state(detail::contract_alice(a1, w.basis_a[s].matrix()), rho.matrix(), dims);
    for (std::size_t t = 0; t < bob.size(); ++t) out.p(s, t) = detail::real_probability(trace_product(bob[t], c));
  }
  const CMatrix c = detail::contract_state(
      detail::contract_alice(a1, maximally_mixed(dims.dA).matrix()), rho.matrix(), dims);
  out.pmm = detail::real_probability(
      trace_product(detail::contract_bob(b1, maximally_mixed(dims.dB).matrix()), c));
  return out;
}

/// Same table from the explicit four-subsystem operator. Quadratic in the
/// full dimension; kept as a reference path.
inline ProbTable prob_table_dense(const DensityMatrix& rho, const MdiWitness& w, const PovmEffect& a1,
                                  const PovmEffect& b1) {
  detail::check_game_dims(rho, w, a1, b1);
  const CMatrix effect = kron(a1.matrix(), b1.matrix());
  auto prob = [&](const CMatrix& tau, const CMatrix& omega) {
    return detail::real_probability(trace_product(effect, kron(kron(tau, rho.matrix()), omega)));
  };
  ProbTable out{RealMatrix(w.basis_a.size(), w.basis_b.size()), 0.0, w.dims};
  for (std::size_t s = 0; s < w.basis_a.size(); ++s)
    for (std::size_t t = 0; t < w.basis_b.size(); ++t)
      out.p(s, t) = prob(w.basis_a[s].matrix(), w.basis_b[t].matrix());
  out.pmm = prob(maximally_mixed(w.dims.dA).matrix(), maximally_mixed(w.dims.dB).matrix());
  return out;
}

namespace detail {

inline double contract(const CoeffMatrix& c, const ProbTable& p) {
  if (c.rows() != p.p.rows() || c.cols() != p.p.cols())
    throw DimensionMismatch("coefficient table and probability table shapes differ");
  double s = 0.0;
  const auto cd = c.data(), pd = p.p.data();
  for (std::size_t k = 0; k < cd.size(); ++k) s += cd[k] * pd[k];
  return s;
}

}  // namespace detail

/// I(P) = sum_st alpha_st p(s,t)
inline double eval_mdi_linear(const MdiWitness& w, const ProbTable& p) { return detail::contract(w.alpha, p); }

/// N(P) = I(P) - [(sum beta p)^2 + (sum gamma p)^2] / (denom dA dB pmm)
inline double eval_mdi_new(const MdiWitness& w, const ProbTable& p) {
  if (!(p.pmm > tolerances().pmm_cutoff))
    throw DegenerateDenominator("P(1,1|m_A,m_B) = " + std::to_string(p.pmm) +
                                " leaves the nonlinear correction undefined");
  const double b = detail::contract(w.beta, p);
  const double g = detail::contract(w.gamma, p);
  const double scale = w.denom * static_cast<double>(w.dims.dA * w.dims.dB) * p.pmm;
  return eval_mdi_linear(w, p) - (b * b + g * g) / scale;
}

}  // namespace witnesskit
