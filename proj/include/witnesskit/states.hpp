#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "witnesskit/linalg.hpp"

namespace witnesskit {

/// Hermitian, positive semidefinite, unit-trace matrix. Validated on
/// construction; optionally carries bipartite dimensions.
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix mat, std::optional<BipartiteDims> dims = std::nullopt)
      : mat_(std::move(mat)), dims_(dims) {
    validate();
  }

  const CMatrix& matrix() const noexcept { return mat_; }
  std::size_t dim() const noexcept { return mat_.dim(); }
  const std::optional<BipartiteDims>& dims() const noexcept { return dims_; }

  BipartiteDims bipartite_dims() const {
    if (!dims_) throw DimensionMismatch("density matrix carries no bipartite dimensions");
    return *dims_;
  }

  DensityMatrix with_dims(BipartiteDims dims) const { return DensityMatrix(mat_, dims); }

 private:
  void validate() const {
    const Tolerances& tol = tolerances();
    if (mat_.dim() == 0) throw InvalidState("empty matrix");
    if (!mat_.all_finite()) throw InvalidState("non-finite entries");
    if (dims_) require_composite(mat_, *dims_, "DensityMatrix");
    const double herm = hermiticity_defect(mat_);
    if (herm > tol.hermitian) throw InvalidState("Hermiticity defect " + std::to_string(herm));
    const cplx tr = mat_.trace();
    if (std::abs(tr - 1.0) > tol.trace)
      throw InvalidState("trace " + std::to_string(tr.real()) + " differs from 1");
    const double lo = min_eigenvalue(mat_);
    if (lo < -tol.psd) throw InvalidState("negative eigenvalue " + std::to_string(lo));
  }

  CMatrix mat_;
  std::optional<BipartiteDims> dims_;
};

/// Unit vector, optionally bipartite.
class PureState {
 public:
  explicit PureState(CVector vec, std::optional<BipartiteDims> dims = std::nullopt)
      : vec_(std::move(vec)), dims_(dims) {
    if (vec_.empty()) throw InvalidState("empty state vector");
    if (dims_ && dims_->total() != vec_.size())
      throw DimensionMismatch("pure state of length " + std::to_string(vec_.size()));
    const double norm = std::sqrt(squared_norm(vec_));
    if (std::abs(norm - 1.0) > tolerances().unit_norm)
      throw InvalidState("state vector norm " + std::to_string(norm));
  }

  /// Rescales an arbitrary nonzero vector to unit norm.
  static PureState normalized(CVector vec, std::optional<BipartiteDims> dims = std::nullopt) {
    const double norm = std::sqrt(squared_norm(vec));
    if (!(norm > 0.0)) throw InvalidState("cannot normalize the zero vector");
    for (auto& z : vec) z /= norm;
    return PureState(std::move(vec), dims);
  }

  const CVector& vec() const noexcept { return vec_; }
  std::size_t dim() const noexcept { return vec_.size(); }
  const std::optional<BipartiteDims>& dims() const noexcept { return dims_; }

  CMatrix projector() const { return CMatrix::outer(vec_, vec_); }
  DensityMatrix density() const { return DensityMatrix(projector(), dims_); }

 private:
  static double squared_norm(const CVector& v) {
    double s = 0.0;
    for (cplx z : v) s += std::norm(z);
    return s;
  }

  CVector vec_;
  std::optional<BipartiteDims> dims_;
};

/// (1/sqrt d) sum_i |ii>
inline PureState max_entangled(std::size_t d) {
  if (d < 2) throw OutOfFamily("max_entangled needs d >= 2");
  CVector v(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t i = 0; i < d; ++i) v[i * d + i] = amp;
  return PureState(std::move(v), BipartiteDims{d, d});
}

inline DensityMatrix maximally_mixed(std::size_t d) {
  if (d < 1) throw OutOfFamily("maximally_mixed needs d >= 1");
  return DensityMatrix(CMatrix::identity(d) * (1.0 / static_cast<double>(d)));
}

/// |ij> in a dA x dB system.
inline PureState product_ket(BipartiteDims dims, std::size_t i, std::size_t j) {
  CVector v(dims.total());
  v.at(i * dims.dB + j) = 1.0;
  return PureState(std::move(v), dims);
}

namespace kets {

inline PureState phi_plus() { return PureState::normalized({1, 0, 0, 1}, BipartiteDims{2, 2}); }
inline PureState phi_minus() { return PureState::normalized({1, 0, 0, -1}, BipartiteDims{2, 2}); }
inline PureState psi_plus() { return PureState::normalized({0, 1, 1, 0}, BipartiteDims{2, 2}); }
inline PureState psi_minus() { return PureState::normalized({0, 1, -1, 0}, BipartiteDims{2, 2}); }

/// (|00> + |11> + |22>)/sqrt 3
inline PureState psi_tilde() { return max_entangled(3); }

/// (|01> + |10> + |12> + |21>)/2, the default second vector of the qutrit witness.
inline PureState zeta_default() {
  CVector v(9);
  v[0 * 3 + 1] = v[1 * 3 + 0] = v[1 * 3 + 2] = v[2 * 3 + 1] = 0.5;
  return PureState(std::move(v), BipartiteDims{3, 3});
}

}  // namespace kets

/// rho_nu = nu |psi-><psi-| + (1 - nu) I/4, valid for -1/3 <= nu <= 1.
inline DensityMatrix werner(double nu) {
  if (!(nu >= -1.0 / 3.0 - 1e-15 && nu <= 1.0 + 1e-15))
    throw OutOfFamily("Werner parameter " + std::to_string(nu) + " outside [-1/3, 1]");
  CMatrix m = kets::psi_minus().projector() * nu + CMatrix::identity(4) * ((1.0 - nu) / 4.0);
  return DensityMatrix(std::move(m), BipartiteDims{2, 2});
}

/// Two-qutrit family (2/7)|psi~><psi~| + (a/7) sigma_+ + ((5-a)/7) sigma_-, 0 <= a <= 5.
inline DensityMatrix bound_entangled_b(double a) {
  if (!(a >= 0.0 && a <= 5.0))
    throw OutOfFamily("bound-entangled parameter " + std::to_string(a) + " outside [0, 5]");
  const BipartiteDims dims{3, 3};
  CMatrix m = kets::psi_tilde().projector() * (2.0 / 7.0);
  // sigma_+ on |01>,|12>,|20>; sigma_- on |10>,|21>,|02>
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t plus = i * 3 + (i + 1) % 3;
    const std::size_t minus = ((i + 1) % 3) * 3 + i;
    m(plus, plus) += a / 21.0;
    m(minus, minus) += (5.0 - a) / 21.0;
  }
  return DensityMatrix(std::move(m), dims);
}

/// Square of the largest Schmidt coefficient: lambda_max of Tr_B |psi><psi|.
inline double schmidt_weight(const PureState& psi, BipartiteDims dims) {
  if (psi.dim() != dims.total())
    throw DimensionMismatch("schmidt_weight: state length " + std::to_string(psi.dim()));
  return max_eigenvalue(partial_trace(psi.projector(), dims, Subsystem::B));
}

}  // namespace witnesskit
