#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "witnesskit/config.hpp"
#include "witnesskit/error.hpp"

namespace witnesskit {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

inline constexpr cplx kI{0.0, 1.0};

/// Dense complex square matrix, row-major.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}
  CMatrix(std::size_t dim, std::vector<cplx> entries) : dim_(dim), data_(std::move(entries)) {
    if (data_.size() != dim_ * dim_)
      throw DimensionMismatch("CMatrix of dim " + std::to_string(dim_) + " given " +
                              std::to_string(data_.size()) + " entries");
  }
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) : dim_(rows.size()) {
    data_.reserve(dim_ * dim_);
    for (const auto& row : rows) {
      if (row.size() != dim_) throw DimensionMismatch("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static CMatrix identity(std::size_t dim) {
    CMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static CMatrix diagonal(std::span<const double> diag) {
    CMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  /// |i><j| in dimension dim.
  static CMatrix unit(std::size_t dim, std::size_t i, std::size_t j) {
    CMatrix m(dim);
    m(i, j) = 1.0;
    return m;
  }

  /// |a><b|
  static CMatrix outer(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) throw DimensionMismatch("outer product of unequal vectors");
    CMatrix m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * std::conj(b[j]);
    return m;
  }

  std::size_t dim() const noexcept { return dim_; }
  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  std::span<const cplx> data() const noexcept { return data_; }

  CMatrix adjoint() const {
    CMatrix m(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  CMatrix transpose() const {
    CMatrix m(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  CMatrix conj() const {
    CMatrix m(dim_);
    std::transform(data_.begin(), data_.end(), m.data_.begin(), [](cplx z) { return std::conj(z); });
    return m;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  bool all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
  }

  CMatrix& operator+=(const CMatrix& o) {
    require_same(o, "+");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  CMatrix& operator-=(const CMatrix& o) {
    require_same(o, "-");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  CMatrix& operator*=(cplx s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(CMatrix a, double s) { return a *= cplx(s); }
  friend CMatrix operator*(double s, CMatrix a) { return a *= cplx(s); }

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    a.require_same(b, "*");
    const std::size_t n = a.dim_;
    CMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx{}) continue;
        for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend CVector operator*(const CMatrix& a, std::span<const cplx> v) {
    if (v.size() != a.dim_) throw DimensionMismatch("matrix-vector product");
    CVector out(a.dim_);
    for (std::size_t i = 0; i < a.dim_; ++i)
      for (std::size_t j = 0; j < a.dim_; ++j) out[i] += a(i, j) * v[j];
    return out;
  }

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  void require_same(const CMatrix& o, const char* op) const {
    if (o.dim_ != dim_)
      throw DimensionMismatch(std::string("operator") + op + " on dims " + std::to_string(dim_) +
                              " and " + std::to_string(o.dim_));
  }

  std::size_t dim_ = 0;
  std::vector<cplx> data_;
};

/// Dense real matrix (rows x cols), row-major. Used for Gram systems and
/// coefficient tables.
class RealMatrix {
 public:
  RealMatrix() = default;
  RealMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  RealMatrix(std::initializer_list<std::initializer_list<double>> rows)
      : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw DimensionMismatch("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static RealMatrix identity(std::size_t n) {
    RealMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  friend bool operator==(const RealMatrix&, const RealMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Coefficients c_st of an operator over a product of local state bases.
using CoeffMatrix = RealMatrix;

/// Local dimensions of a bipartite system. Composite index is i*dB + k.
struct BipartiteDims {
  std::size_t dA = 0;
  std::size_t dB = 0;

  std::size_t total() const noexcept { return dA * dB; }
  friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;
};

enum class Subsystem { A, B };

inline void require_composite(const CMatrix& m, BipartiteDims dims, const char* who) {
  if (dims.dA == 0 || dims.dB == 0 || m.dim() != dims.total())
    throw DimensionMismatch(std::string(who) + ": matrix dim " + std::to_string(m.dim()) +
                            " vs " + std::to_string(dims.dA) + "x" + std::to_string(dims.dB));
}

// ---------------------------------------------------------------------------
// Elementwise helpers

inline double max_abs(const CMatrix& m) {
  double best = 0.0;
  for (cplx z : m.data()) best = std::max(best, std::abs(z));
  return best;
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) { return max_abs(a - b); }

inline double frobenius_norm(const CMatrix& m) {
  double s = 0.0;
  for (cplx z : m.data()) s += std::norm(z);
  return std::sqrt(s);
}

/// max-norm of M - M^dagger.
inline double hermiticity_defect(const CMatrix& m) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i; j < m.dim(); ++j)
      best = std::max(best, std::abs(m(i, j) - std::conj(m(j, i))));
  return best;
}

inline bool is_hermitian(const CMatrix& m, double tol = tolerances().hermitian) {
  return hermiticity_defect(m) <= tol;
}

// ---------------------------------------------------------------------------
// Tensor operations

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  CMatrix out(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx{}) continue;
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = aij * b(k, l);
    }
  return out;
}

inline CVector kron(std::span<const cplx> a, std::span<const cplx> b) {
  CVector out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) out[i * b.size() + k] = a[i] * b[k];
  return out;
}

/// Transposes the chosen tensor factor: (i k | j l) -> (i l | j k) for B,
/// (j k | i l) for A.
inline CMatrix partial_transpose(const CMatrix& m, BipartiteDims dims, Subsystem sub) {
  require_composite(m, dims, "partial_transpose");
  const std::size_t dA = dims.dA, dB = dims.dB;
  CMatrix out(m.dim());
  for (std::size_t i = 0; i < dA; ++i)
    for (std::size_t k = 0; k < dB; ++k)
      for (std::size_t j = 0; j < dA; ++j)
        for (std::size_t l = 0; l < dB; ++l) {
          const cplx v = m(i * dB + k, j * dB + l);
          if (sub == Subsystem::B)
            out(i * dB + l, j * dB + k) = v;
          else
            out(j * dB + k, i * dB + l) = v;
        }
  return out;
}

/// Traces out the named factor and returns the reduced operator on the other.
inline CMatrix partial_trace(const CMatrix& m, BipartiteDims dims, Subsystem traced) {
  require_composite(m, dims, "partial_trace");
  const std::size_t dA = dims.dA, dB = dims.dB;
  if (traced == Subsystem::B) {
    CMatrix out(dA);
    for (std::size_t i = 0; i < dA; ++i)
      for (std::size_t j = 0; j < dA; ++j)
        for (std::size_t k = 0; k < dB; ++k) out(i, j) += m(i * dB + k, j * dB + k);
    return out;
  }
  CMatrix out(dB);
  for (std::size_t k = 0; k < dB; ++k)
    for (std::size_t l = 0; l < dB; ++l)
      for (std::size_t i = 0; i < dA; ++i) out(k, l) += m(i * dB + k, i * dB + l);
  return out;
}

/// Tr[A^dagger B]
inline cplx hs_inner(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("hs_inner on dims " + std::to_string(a.dim()) + " and " +
                            std::to_string(b.dim()));
  cplx s = 0.0;
  const auto da = a.data(), db = b.data();
  for (std::size_t k = 0; k < da.size(); ++k) s += std::conj(da[k]) * db[k];
  return s;
}

/// Tr[A B] without conjugation.
inline cplx trace_product(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("trace_product");
  cplx s = 0.0;
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) s += a(i, k) * b(k, i);
  return s;
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // column i pairs with values[i]

  CVector column(std::size_t i) const {
    CVector v(vectors.dim());
    for (std::size_t r = 0; r < v.size(); ++r) v[r] = vectors(r, i);
    return v;
  }

  CMatrix reconstruct() const {
    const std::size_t n = vectors.dim();
    CMatrix out(n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) {
        const cplx vik = vectors(i, k) * values[k];
        for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(vectors(j, k));
      }
    return out;
  }
};

/// Cyclic complex Jacobi. Each rotation first removes the phase of the pivot
/// and then applies a real Givens rotation, so the update J = diag-phase * R
/// is unitary and zeroes M(p,q) exactly.
inline EigenDecomposition hermitian_eig(const CMatrix& m, const Tolerances& tol = tolerances()) {
  const double defect = hermiticity_defect(m);
  if (!(defect <= tol.hermitian))
    throw NotHermitian("hermitian_eig: ||M - M^dagger||_max = " + std::to_string(defect));

  const std::size_t n = m.dim();
  CMatrix a = m;
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  CMatrix v = CMatrix::identity(n);

  const double scale = std::max(frobenius_norm(a), 1e-300);
  auto off_mass = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * std::norm(a(i, j));
    return std::sqrt(s);
  };

  bool converged = n <= 1 || off_mass() < tol.eig_offdiag * scale;
  for (int sweep = 0; !converged && sweep < tol.eig_max_sweeps; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        const cplx phase = a(p, q) / mag;  // e^{i phi}
        const double app = a(p, p).real(), aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // J restricted to (p,q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
        const cplx jpp = c, jpq = s, jqp = -s * std::conj(phase), jqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {  // a <- a J
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // a <- J^dagger a
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {  // v <- v J
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;
      }
    converged = off_mass() < tol.eig_offdiag * scale;
  }
  if (!converged)
    throw NoConvergence("hermitian_eig: off-diagonal mass " + std::to_string(off_mass()) +
                        " after " + std::to_string(tol.eig_max_sweeps) + " sweeps");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  EigenDecomposition out{std::vector<double>(n), CMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

inline double min_eigenvalue(const CMatrix& m) { return hermitian_eig(m).values.front(); }
inline double max_eigenvalue(const CMatrix& m) { return hermitian_eig(m).values.back(); }

// ---------------------------------------------------------------------------
// Real linear solve

/// Solves G x = b by LU with partial pivoting. The 1-norm condition number is
/// estimated from the explicit inverse; systems here are at most 81x81.
inline std::vector<double> solve_hermitian_system(const RealMatrix& g, std::span<const double> b) {
  const std::size_t n = g.rows();
  if (g.cols() != n) throw DimensionMismatch("solve: matrix is not square");
  if (b.size() != n) throw DimensionMismatch("solve: right-hand side length");
  if (n == 0) return {};

  RealMatrix lu = g;
  std::vector<std::size_t> piv(n);
  std::iota(piv.begin(), piv.end(), std::size_t{0});
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(lu(r, col)) > std::abs(lu(best, col))) best = r;
    if (lu(best, col) == 0.0) throw Singular("zero pivot in column " + std::to_string(col));
    if (best != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(lu(best, c), lu(col, c));
      std::swap(piv[best], piv[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = lu(r, col) / lu(col, col);
      lu(r, col) = f;
      for (std::size_t c = col + 1; c < n; ++c) lu(r, c) -= f * lu(col, c);
    }
  }

  auto lu_solve = [&](std::span<const double> rhs) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = rhs[piv[i]];
      for (std::size_t k = 0; k < i; ++k) s -= lu(i, k) * x[k];
      x[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
      double s = x[i];
      for (std::size_t k = i + 1; k < n; ++k) s -= lu(i, k) * x[k];
      x[i] = s / lu(i, i);
    }
    return x;
  };

  double norm_g = 0.0, norm_inv = 0.0;
  std::vector<double> e(n);
  for (std::size_t c = 0; c < n; ++c) {
    double col_sum = 0.0;
    for (std::size_t r = 0; r < n; ++r) col_sum += std::abs(g(r, c));
    norm_g = std::max(norm_g, col_sum);
    std::fill(e.begin(), e.end(), 0.0);
    e[c] = 1.0;
    const auto inv_col = lu_solve(e);
    double inv_sum = 0.0;
    for (double v : inv_col) inv_sum += std::abs(v);
    norm_inv = std::max(norm_inv, inv_sum);
  }
  const double cond = norm_g * norm_inv;
  if (!(cond <= tolerances().condition))
    throw Singular("condition estimate " + std::to_string(cond));

  return lu_solve(b);
}

}  // namespace witnesskit
