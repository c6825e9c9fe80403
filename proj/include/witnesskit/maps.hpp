#pragma once

#include <functional>
#include <string>
#include <utility>

#include "witnesskit/linalg.hpp"
#include "witnesskit/states.hpp"

namespace witnesskit {

/// Linear map on operators stored by its Choi matrix
///   C = sum_ij |i><j| (x) M(|i><j|)      (input slow, output fast).
/// Only Hermiticity-preserving maps are representable.
class LinearMap {
 public:
  LinearMap(std::size_t dim_in, std::size_t dim_out, CMatrix choi)
      : dim_in_(dim_in), dim_out_(dim_out), choi_(std::move(choi)) {
    if (dim_in_ == 0 || dim_out_ == 0 || choi_.dim() != dim_in_ * dim_out_)
      throw DimensionMismatch("Choi matrix of dim " + std::to_string(choi_.dim()) + " for map " +
                              std::to_string(dim_in_) + " -> " + std::to_string(dim_out_));
    const double defect = hermiticity_defect(choi_);
    if (defect > tolerances().hermitian)
      throw NotHermitian("Choi matrix (map does not preserve Hermiticity), defect " +
                         std::to_string(defect));
  }

  /// Builds the Choi matrix from the map's action on matrix units.
  static LinearMap from_action(std::size_t dim_in, std::size_t dim_out,
                               const std::function<CMatrix(const CMatrix&)>& action) {
    CMatrix choi(dim_in * dim_out);
    for (std::size_t i = 0; i < dim_in; ++i)
      for (std::size_t j = 0; j < dim_in; ++j) {
        const CMatrix img = action(CMatrix::unit(dim_in, i, j));
        if (img.dim() != dim_out) throw DimensionMismatch("map action output dimension");
        for (std::size_t k = 0; k < dim_out; ++k)
          for (std::size_t l = 0; l < dim_out; ++l) choi(i * dim_out + k, j * dim_out + l) = img(k, l);
      }
    return LinearMap(dim_in, dim_out, std::move(choi));
  }

  std::size_t dim_in() const noexcept { return dim_in_; }
  std::size_t dim_out() const noexcept { return dim_out_; }
  const CMatrix& choi() const noexcept { return choi_; }

 private:
  std::size_t dim_in_;
  std::size_t dim_out_;
  CMatrix choi_;
};

/// M(rho) = Tr_in[(rho^T (x) I) C]
inline CMatrix apply_map(const LinearMap& m, const CMatrix& rho) {
  if (rho.dim() != m.dim_in())
    throw DimensionMismatch("apply_map: input dim " + std::to_string(rho.dim()) + ", map expects " +
                            std::to_string(m.dim_in()));
  const std::size_t din = m.dim_in(), dout = m.dim_out();
  const CMatrix& c = m.choi();
  CMatrix out(dout);
  for (std::size_t i = 0; i < din; ++i)
    for (std::size_t j = 0; j < din; ++j) {
      const cplx w = rho(i, j);
      if (w == cplx{}) continue;
      for (std::size_t k = 0; k < dout; ++k)
        for (std::size_t l = 0; l < dout; ++l) out(k, l) += w * c(i * dout + k, j * dout + l);
    }
  return out;
}

/// (I_A (x) M) applied to an operator on A (x) B; M acts on the B factor.
inline CMatrix extend_apply(const LinearMap& m, const CMatrix& op, BipartiteDims dims) {
  require_composite(op, dims, "extend_apply");
  if (dims.dB != m.dim_in())
    throw DimensionMismatch("extend_apply: dB = " + std::to_string(dims.dB) + ", map input " +
                            std::to_string(m.dim_in()));
  const std::size_t dA = dims.dA, dB = dims.dB, dout = m.dim_out();
  CMatrix out(dA * dout);
  CMatrix block(dB);
  for (std::size_t i = 0; i < dA; ++i)
    for (std::size_t j = 0; j < dA; ++j) {
      for (std::size_t k = 0; k < dB; ++k)
        for (std::size_t l = 0; l < dB; ++l) block(k, l) = op(i * dB + k, j * dB + l);
      const CMatrix img = apply_map(m, block);
      for (std::size_t k = 0; k < dout; ++k)
        for (std::size_t l = 0; l < dout; ++l) out(i * dout + k, j * dout + l) = img(k, l);
    }
  return out;
}

inline CMatrix extend_apply(const LinearMap& m, const DensityMatrix& rho) {
  return extend_apply(m, rho.matrix(), rho.bipartite_dims());
}

/// Hilbert-Schmidt adjoint: <M(P), Q> = <P, M+(Q)>. Sampled on matrix units:
/// M+(|k><l|)_ij = conj(M(|i><j|)_kl).
inline LinearMap adjoint_map(const LinearMap& m) {
  const std::size_t din = m.dim_in(), dout = m.dim_out();
  std::vector<CMatrix> images;
  images.reserve(din * din);
  for (std::size_t i = 0; i < din; ++i)
    for (std::size_t j = 0; j < din; ++j) images.push_back(apply_map(m, CMatrix::unit(din, i, j)));

  CMatrix choi(dout * din);
  for (std::size_t k = 0; k < dout; ++k)
    for (std::size_t l = 0; l < dout; ++l)
      for (std::size_t i = 0; i < din; ++i)
        for (std::size_t j = 0; j < din; ++j)
          choi(k * din + i, l * din + j) = std::conj(images[i * din + j](k, l));
  return LinearMap(dout, din, std::move(choi));
}

/// g = max over states of Tr[M(sigma)] = lambda_max(M+(I)).
inline double map_norm_g(const LinearMap& m) {
  return max_eigenvalue(apply_map(adjoint_map(m), CMatrix::identity(m.dim_out())));
}

inline LinearMap identity_map(std::size_t d) {
  return LinearMap::from_action(d, d, [](const CMatrix& x) { return x; });
}

inline LinearMap transpose_map(std::size_t d) {
  return LinearMap::from_action(d, d, [](const CMatrix& x) { return x.transpose(); });
}

/// Choi's positive, non-completely-positive qutrit map:
///   diagonal   a00 + a22, a11 + a00, a22 + a11
///   off-diagonal entries negated.
inline LinearMap choi_m1() {
  return LinearMap::from_action(3, 3, [](const CMatrix& a) {
    CMatrix out = a * -1.0;
    out(0, 0) = a(0, 0) + a(2, 2);
    out(1, 1) = a(1, 1) + a(0, 0);
    out(2, 2) = a(2, 2) + a(1, 1);
    return out;
  });
}

}  // namespace witnesskit
