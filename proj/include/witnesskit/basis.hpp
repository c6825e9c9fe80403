#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "witnesskit/linalg.hpp"
#include "witnesskit/states.hpp"

namespace witnesskit {

/// d^2 local density matrices whose transposes span the Hermitian operators.
class StateBasis {
 public:
  explicit StateBasis(std::vector<DensityMatrix> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw InvalidState("empty basis");
    dim_ = elements_.front().dim();
    if (elements_.size() != dim_ * dim_)
      throw InvalidState("basis of dim " + std::to_string(dim_) + " needs " +
                         std::to_string(dim_ * dim_) + " elements, got " +
                         std::to_string(elements_.size()));
    for (const auto& e : elements_)
      if (e.dim() != dim_) throw DimensionMismatch("basis elements of unequal dimension");
    // Linear independence: the Gram system must be solvable (throws Singular).
    RealMatrix gram(elements_.size(), elements_.size());
    for (std::size_t s = 0; s < elements_.size(); ++s)
      for (std::size_t t = 0; t < elements_.size(); ++t)
        gram(s, t) = hs_inner(elements_[s].matrix(), elements_[t].matrix()).real();
    std::vector<double> probe(elements_.size(), 1.0);
    (void)solve_hermitian_system(gram, probe);
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<DensityMatrix>& elements() const noexcept { return elements_; }
  const DensityMatrix& operator[](std::size_t s) const { return elements_.at(s); }

 private:
  std::size_t dim_ = 0;
  std::vector<DensityMatrix> elements_;
};

namespace pauli {
inline CMatrix x() { return {{0, 1}, {1, 0}}; }
inline CMatrix y() { return {{0, -kI}, {kI, 0}}; }
inline CMatrix z() { return {{1, 0}, {0, -1}}; }
}  // namespace pauli

/// tau_0 = (I+X)/2, tau_1 = (I+Y)/2, tau_2 = (I+Z)/2, tau_3 = I/2.
inline StateBasis pauli_basis() {
  const CMatrix id = CMatrix::identity(2);
  std::vector<DensityMatrix> el;
  el.emplace_back((id + pauli::x()) * 0.5);
  el.emplace_back((id + pauli::y()) * 0.5);
  el.emplace_back((id + pauli::z()) * 0.5);
  el.emplace_back(id * 0.5);
  return StateBasis(std::move(el));
}

/// Standard Gell-Mann matrices Lambda_1..Lambda_8 (index 0 is Lambda_1).
inline std::vector<CMatrix> gellmann_matrices() {
  const double r3 = std::sqrt(3.0);
  return {
      {{0, 1, 0}, {1, 0, 0}, {0, 0, 0}},
      {{0, -kI, 0}, {kI, 0, 0}, {0, 0, 0}},
      {{1, 0, 0}, {0, -1, 0}, {0, 0, 0}},
      {{0, 0, 1}, {0, 0, 0}, {1, 0, 0}},
      {{0, 0, -kI}, {0, 0, 0}, {kI, 0, 0}},
      {{0, 0, 0}, {0, 0, 1}, {0, 1, 0}},
      {{0, 0, 0}, {0, 0, -kI}, {0, kI, 0}},
      {{1 / r3, 0, 0}, {0, 1 / r3, 0}, {0, 0, -2 / r3}},
  };
}

/// pi_0 = I/3, pi_s = (I + Lambda_s)/3 for s = 1..7, pi_8 = (I + (sqrt3/2) Lambda_8)/3.
inline StateBasis gellmann_basis() {
  const CMatrix id = CMatrix::identity(3);
  const auto lam = gellmann_matrices();
  std::vector<DensityMatrix> el;
  el.emplace_back(id * (1.0 / 3.0));
  for (std::size_t s = 0; s < 7; ++s) el.emplace_back((id + lam[s]) * (1.0 / 3.0));
  el.emplace_back((id + lam[7] * (std::sqrt(3.0) / 2.0)) * (1.0 / 3.0));
  return StateBasis(std::move(el));
}

/// Pure-state basis for any d: |i><i|, then (|i>+|j>)/sqrt2 and
/// (|i>+i|j>)/sqrt2 for i < j.
inline StateBasis generic_basis(std::size_t d) {
  std::vector<DensityMatrix> el;
  for (std::size_t i = 0; i < d; ++i) el.emplace_back(CMatrix::unit(d, i, i));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (cplx phase : {cplx(1.0), kI}) {
        CVector v(d);
        v[i] = 1.0;
        v[j] = phase;
        el.push_back(PureState::normalized(std::move(v)).density());
      }
  return StateBasis(std::move(el));
}

/// Pauli basis for qubits, Gell-Mann for qutrits, generic otherwise.
inline StateBasis default_basis(std::size_t d) {
  if (d == 2) return pauli_basis();
  if (d == 3) return gellmann_basis();
  return generic_basis(d);
}

/// tau_s^T (x) omega_t^T, in row-major (s, t) order.
inline std::vector<CMatrix> product_elements(const StateBasis& ba, const StateBasis& bb) {
  std::vector<CMatrix> out;
  out.reserve(ba.size() * bb.size());
  for (const auto& tau : ba.elements())
    for (const auto& omega : bb.elements())
      out.push_back(kron(tau.matrix().transpose(), omega.matrix().transpose()));
  return out;
}

/// Real coefficients c with O = sum_st c_st tau_s^T (x) omega_t^T, from the
/// Gram system of Hilbert-Schmidt inner products.
inline CoeffMatrix decompose(const CMatrix& op, const StateBasis& ba, const StateBasis& bb) {
  if (op.dim() != ba.dim() * bb.dim())
    throw DimensionMismatch("decompose: operator dim " + std::to_string(op.dim()));
  const Tolerances& tol = tolerances();
  const double defect = hermiticity_defect(op);
  if (defect > tol.hermitian) throw NotHermitian("decompose: defect " + std::to_string(defect));

  const auto elems = product_elements(ba, bb);
  const std::size_t n = elems.size();
  RealMatrix gram(n, n);
  std::vector<double> rhs(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = k; l < n; ++l) {
      const cplx g = hs_inner(elems[k], elems[l]);
      gram(k, l) = gram(l, k) = g.real();
    }
    const cplx b = hs_inner(elems[k], op);
    if (std::abs(b.imag()) > tol.imag_residue)
      throw NumericalResidue("decompose: inner product has imaginary part " + std::to_string(b.imag()));
    rhs[k] = b.real();
  }
  const auto x = solve_hermitian_system(gram, rhs);
  CoeffMatrix c(ba.size(), bb.size());
  std::copy(x.begin(), x.end(), c.data().begin());
  return c;
}

inline CMatrix reconstruct(const CoeffMatrix& c, const StateBasis& ba, const StateBasis& bb) {
  if (c.rows() != ba.size() || c.cols() != bb.size())
    throw DimensionMismatch("reconstruct: coefficient shape " + std::to_string(c.rows()) + "x" +
                            std::to_string(c.cols()));
  const auto elems = product_elements(ba, bb);
  CMatrix out(ba.dim() * bb.dim());
  for (std::size_t k = 0; k < elems.size(); ++k) {
    const double w = c.data()[k];
    if (w != 0.0) out += elems[k] * w;
  }
  return out;
}

}  // namespace witnesskit
