#pragma once

#include <cmath>

#include "witnesskit/linalg.hpp"

// Reference coefficient tables for the two worked witnesses. Rows index
// Alice's basis element, columns Bob's.
//
// gamma and nu are stored with the opposite overall sign from what
// A = (X - X^dagger)/(2i) over the transposed bases gives; compare through
// kAntihermitianSign.

namespace witnesskit::reference {

inline constexpr double kAntihermitianSign = -1.0;

// Qubit witness over (I+X)/2, (I+Y)/2, (I+Z)/2, I/2.

inline CoeffMatrix alpha() {
  return {{1, 0, 0, -1}, {0, 1, 0, -1}, {0, 0, 1, -1}, {-1, -1, -1, 4}};
}

inline CoeffMatrix beta() {
  return {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, -2}};
}

inline CoeffMatrix gamma() {
  return {{0, 1, 0, -1}, {-1, 0, 0, 1}, {0, 0, 0, 0}, {1, -1, 0, 0}};
}

// Qutrit witness over the Gell-Mann state basis.

inline CoeffMatrix lambda() {
  return {
      {15.0 / 4, 1.5, -1.5, -9.0 / 4, 1.5, -1.5, 1.5, -1.5, 0.5},
      {1.5, -1.5, 0, 0, 0, 0, 0, 0, 0},
      {-1.5, 0, 1.5, 0, 0, 0, 0, 0, 0},
      {0.75, 0, 0, 0.75, 0, 0, 0, 0, -1.5},
      {1.5, 0, 0, 0, -1.5, 0, 0, 0, 0},
      {-1.5, 0, 0, 0, 0, 1.5, 0, 0, 0},
      {1.5, 0, 0, 0, 0, 0, -1.5, 0, 0},
      {-1.5, 0, 0, 0, 0, 0, 0, 1.5, 0},
      {-2.5, 0, 0, 1.5, 0, 0, 0, 0, 1},
  };
}

namespace detail {

/// Table given in units of sqrt(3)/8.
inline CoeffMatrix scaled(CoeffMatrix m) {
  const double unit = std::sqrt(3.0) / 8.0;
  for (double& v : m.data()) v *= unit;
  return m;
}

}  // namespace detail

inline CoeffMatrix mu() {
  return detail::scaled({
      {-3, 3, -3, 0, 6, -6, -6, -3, -4},
      {6, 0, 0, 3, -3, 0, 0, 0, 2},
      {-3, 0, 0, 0, 0, 3, 0, 0, 0},
      {-3, 0, 0, 0, 0, 0, 3, 0, 0},
      {6, -3, 0, 0, 0, 0, -3, 0, 0},
      {-6, 0, 3, 0, 0, 0, 0, 3, 0},
      {12, 0, 0, -3, -3, 0, 0, 0, 2},
      {-3, 0, 0, 0, 0, 3, 0, 0, 0},
      {2, -4, 0, 0, 0, 0, 2, 0, 0},
  });
}

inline CoeffMatrix nu() {
  return detail::scaled({
      {-3, 3, 9, -6, 0, 0, -3, 0, 0},
      {3, 0, 0, 0, 0, -3, 0, 0, 0},
      {6, 0, 0, 3, -3, 0, 0, 0, -6},
      {3, 0, -6, 0, 0, 0, 0, 3, 0},
      {0, 0, -3, 0, 0, 0, 0, 3, 0},
      {0, -3, 0, 0, 0, 0, 3, 0, 0},
      {-3, 0, 0, 0, 0, 3, 0, 0, 0},
      {-12, 0, 0, 3, 3, 0, 0, 0, 6},
      {6, 0, 0, 0, 0, 0, 0, -6, 0},
  });
}

/// Largest entrywise |sign * expected - actual|.
inline double max_deviation(const CoeffMatrix& actual, const CoeffMatrix& expected, double sign = 1.0) {
  if (actual.rows() != expected.rows() || actual.cols() != expected.cols())
    throw DimensionMismatch("coefficient tables differ in shape");
  double worst = 0.0;
  for (std::size_t k = 0; k < actual.data().size(); ++k)
    worst = std::max(worst, std::abs(sign * expected.data()[k] - actual.data()[k]));
  return worst;
}

}  // namespace witnesskit::reference
