#pragma once

// Test-only reference computations. Kept deliberately naive and independent of
// the library code paths they check.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "mcsense/types.hpp"

namespace oracle {

using mcsense::Complex;
using mcsense::ComplexVector;

// O(n^2) DFT, X[q] = sum_n x[n] exp(-j 2 pi q n / len).
inline ComplexVector naive_dft(const ComplexVector& x) {
  const std::size_t n = x.size();
  ComplexVector out(n);
  for (std::size_t q = 0; q < n; ++q) {
    Complex acc{};
    for (std::size_t t = 0; t < n; ++t) {
      const double turns = static_cast<double>((q * t) % n) / static_cast<double>(n);
      acc += x[t] * std::polar(1.0, -2.0 * std::numbers::pi * turns);
    }
    out[q] = acc;
  }
  return out;
}

// Direct evaluation of the MDL criterion in long double with products for the
// geometric mean. Returns the argmin over r = 0..max_order, first minimum wins.
inline int brute_force_mdl(const std::vector<double>& eig, long M, int max_order) {
  const int p = static_cast<int>(eig.size());
  int best = -1;
  long double best_val = 0;
  for (int r = 0; r <= max_order; ++r) {
    const int n = p - r;
    long double prod = 1.0L, sum = 0.0L;
    for (int i = r; i < p; ++i) {
      prod *= static_cast<long double>(eig[i]);
      sum += eig[i];
    }
    const long double g = std::pow(prod, 1.0L / n);
    const long double a = sum / n;
    const long double v = -static_cast<long double>(M) * n * std::log(g / a) +
                          0.5L * r * (2.0L * p - r) * std::log(static_cast<long double>(M));
    if (best < 0 || v < best_val) {
      best = r;
      best_val = v;
    }
  }
  return best;
}

// Relative Frobenius error after the least-squares optimal real positive scale.
inline double scaled_relative_error(const mcsense::CMatrix& est, const mcsense::CMatrix& ref) {
  const double scale = (ref.adjoint() * est).trace().real() / ref.squaredNorm();
  return (est - scale * ref).norm() / (scale * ref).norm();
}

}  // namespace oracle
