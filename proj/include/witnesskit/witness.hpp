#pragma once

#include <cmath>
#include <string>

#include "witnesskit/linalg.hpp"
#include "witnesskit/maps.hpp"
#include "witnesskit/states.hpp"

namespace witnesskit {

struct LinearWitness {
  CMatrix W;
  BipartiteDims dims;
};

/// F(rho) = <W> - (<H>^2 + <A>^2) / denom.
struct NonlinearWitness {
  CMatrix W;
  CMatrix H;
  CMatrix A;
  double denom = 1.0;
  BipartiteDims dims;

  LinearWitness linear() const { return {W, dims}; }
};

struct HermSplit {
  CMatrix H;
  CMatrix A;
};

/// Tr[O rho] for Hermitian O. The imaginary residue is checked, then dropped.
inline double expectation(const CMatrix& op, const CMatrix& rho) {
  const cplx v = trace_product(op, rho);
  if (std::abs(v.imag()) > tolerances().imag_residue)
    throw NumericalResidue("expectation value has imaginary part " + std::to_string(v.imag()));
  return v.real();
}

/// X = H + iA with H = (X + X^dagger)/2, A = (X - X^dagger)/(2i).
inline HermSplit split_herm(const CMatrix& x) {
  const CMatrix xd = x.adjoint();
  return {(x + xd) * 0.5, (x - xd) * cplx(0.0, -0.5)};
}

namespace detail {

inline void require_bipartite(const PureState& s, BipartiteDims dims, const char* who) {
  if (s.dim() != dims.total())
    throw DimensionMismatch(std::string(who) + ": state length " + std::to_string(s.dim()) +
                            " vs " + std::to_string(dims.dA) + "x" + std::to_string(dims.dB));
}

inline void require_denominator(double denom) {
  if (!(denom >= tolerances().schmidt_floor))
    throw DegenerateDenominator("witness denominator " + std::to_string(denom));
}

}  // namespace detail

/// W = (|phi><phi|)^{T_B}
inline LinearWitness witness_from_eigvec(const PureState& phi, BipartiteDims dims) {
  detail::require_bipartite(phi, dims, "witness_from_eigvec");
  return {partial_transpose(phi.projector(), dims, Subsystem::B), dims};
}

/// W = (I (x) M)^+ |xi><xi|
inline LinearWitness map_witness(const LinearMap& m, const PureState& xi, BipartiteDims dims) {
  detail::require_bipartite(xi, dims, "map_witness");
  return {extend_apply(adjoint_map(m), xi.projector(), dims), dims};
}

/// Nonlinear witness built on W_phi with X = |phi><psi|; denominator s(psi).
inline NonlinearWitness build_new(const PureState& phi, const PureState& psi, BipartiteDims dims) {
  detail::require_bipartite(phi, dims, "build_new");
  detail::require_bipartite(psi, dims, "build_new");
  const double denom = schmidt_weight(psi, dims);
  detail::require_denominator(denom);
  auto [h, a] = split_herm(partial_transpose(CMatrix::outer(phi.vec(), psi.vec()), dims, Subsystem::B));
  return {witness_from_eigvec(phi, dims).W, std::move(h), std::move(a), denom, dims};
}

/// Map-based nonlinear witness with Y = |xi><zeta|; denominator s(zeta) g(M).
inline NonlinearWitness build_map_new(const LinearMap& m, const PureState& xi, const PureState& zeta,
                                      BipartiteDims dims) {
  detail::require_bipartite(xi, dims, "build_map_new");
  detail::require_bipartite(zeta, dims, "build_map_new");
  const double denom = schmidt_weight(zeta, dims) * map_norm_g(m);
  detail::require_denominator(denom);
  const LinearMap adj = adjoint_map(m);
  auto [h, a] = split_herm(extend_apply(adj, CMatrix::outer(xi.vec(), zeta.vec()), dims));
  return {extend_apply(adj, xi.projector(), dims), std::move(h), std::move(a), denom, dims};
}

inline void require_matching(const DensityMatrix& rho, BipartiteDims dims, const char* who) {
  if (rho.dim() != dims.total() || (rho.dims() && *rho.dims() != dims))
    throw DimensionMismatch(std::string(who) + ": state does not match witness dimensions");
}

inline double eval_linear(const LinearWitness& w, const DensityMatrix& rho) {
  require_matching(rho, w.dims, "eval_linear");
  return expectation(w.W, rho.matrix());
}

/// Subtracted term (<H>^2 + <A>^2)/denom, separately so callers can inspect it.
inline double nonlinear_correction(const NonlinearWitness& f, const CMatrix& rho) {
  const double h = expectation(f.H, rho);
  const double a = expectation(f.A, rho);
  return (h * h + a * a) / f.denom;
}

inline double eval_nonlinear(const NonlinearWitness& f, const DensityMatrix& rho) {
  require_matching(rho, f.dims, "eval_nonlinear");
  return expectation(f.W, rho.matrix()) - nonlinear_correction(f, rho.matrix());
}

/// The two worked witnesses: F_{phi+} with psi = |phi->, and the Choi-map
/// witness on |psi~> with zeta = (|01>+|10>+|12>+|21>)/2.
inline NonlinearWitness werner_witness() {
  return build_new(kets::phi_plus(), kets::phi_minus(), BipartiteDims{2, 2});
}

inline NonlinearWitness bound_witness() {
  return build_map_new(choi_m1(), kets::psi_tilde(), kets::zeta_default(), BipartiteDims{3, 3});
}

}  // namespace witnesskit
