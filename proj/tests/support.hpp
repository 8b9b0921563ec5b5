#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "secrecy/matrix.hpp"
#include "secrecy/wiretap.hpp"

namespace testing {

using secrecy::Complex;
using secrecy::ComplexMatrix;
using secrecy::HermitianMatrix;
using secrecy::NormalizedCovariance;
using secrecy::WiretapChannel;

/// Three-antenna example channel with distinct top eigenvalue of Phi.
inline WiretapChannel golden_channel() {
  auto hm = ComplexMatrix::from_rows({{1.0, 0.8, 0.5}, {0.3, 1.0, 0.1}, {0.1, 0.2, 0.1}});
  auto he = ComplexMatrix::from_rows({{0.5, 0.4, 1.0}, {0.7, 0.1, 0.5}, {0.3, 0.5, 0.1}});
  return WiretapChannel(hm, he, 1.0, 1.0);
}

/// Parallel channels with Gram matrices diag(5, 4, 2) and diag(2, 1, 1):
/// top eigenvalue 3 of multiplicity 2.
inline WiretapChannel degenerate_channel() {
  const std::vector<double> m{std::sqrt(5.0), 2.0, std::sqrt(2.0)};
  const std::vector<double> e{std::sqrt(2.0), 1.0, 1.0};
  return WiretapChannel(ComplexMatrix::diagonal(m), ComplexMatrix::diagonal(e), 1.0, 1.0);
}

inline ComplexMatrix random_matrix(std::mt19937_64& gen, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = {n(gen), n(gen)};
  return m;
}

inline HermitianMatrix random_hermitian(std::mt19937_64& gen, std::size_t n) {
  return HermitianMatrix::symmetrized(random_matrix(gen, n, n));
}

inline HermitianMatrix random_psd(std::mt19937_64& gen, std::size_t n) {
  return HermitianMatrix::gram(random_matrix(gen, n + 1, n));
}

/// Random channel with dimensions in [1, 4] and random noise variances. Both
/// gain matrices share one scale so that ||H_m||_F² + ||H_e||_F² = 1, which
/// keeps the low-SNR expansion valid well beyond the finite-difference steps.
inline WiretapChannel random_channel(std::mt19937_64& gen) {
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  std::uniform_real_distribution<double> noise(0.5, 2.0);
  const std::size_t nt = dim(gen), nr = dim(gen), ne = dim(gen);
  auto hm = random_matrix(gen, nr, nt);
  auto he = random_matrix(gen, ne, nt);
  const double fm = secrecy::frobenius_norm(hm);
  const double fe = secrecy::frobenius_norm(he);
  const double scale = 1.0 / std::sqrt(fm * fm + fe * fe);
  hm *= scale;
  he *= scale;
  return WiretapChannel(hm, he, noise(gen), noise(gen));
}

inline NormalizedCovariance random_covariance(std::mt19937_64& gen, std::size_t n) {
  std::uniform_int_distribution<std::size_t> rank(1, n);
  const std::size_t r = rank(gen);
  return NormalizedCovariance::from_unnormalized(HermitianMatrix::gram(random_matrix(gen, r, n)));
}

/// Slope at zero of f with f(0) = 0 from the one-sided second-order stencil
/// (4 f(h) - f(2h)) / (2h) at h = 1e-2 and 1e-3, Richardson-extrapolated to
/// cancel the h² error term.
template <class F>
double richardson_slope(F&& f) {
  auto d1 = [&](double h) { return (4.0 * f(h) - f(2.0 * h)) / (2.0 * h); };
  return (100.0 * d1(1e-3) - d1(1e-2)) / 99.0;
}

/// Second derivative at zero of f with f(0) = 0 from the one-sided stencil
/// (-5 f(h) + 4 f(2h) - f(3h)) / h², Richardson-extrapolated over h = 1e-2
/// and 1e-3.
template <class F>
double richardson_curvature(F&& f) {
  auto d2 = [&](double h) { return (-5.0 * f(h) + 4.0 * f(2.0 * h) - f(3.0 * h)) / (h * h); };
  return (100.0 * d2(1e-3) - d2(1e-2)) / 99.0;
}

/// Determinant by Gaussian elimination with partial pivoting.
inline Complex determinant(ComplexMatrix a) {
  const std::size_t n = a.rows();
  Complex det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(p, c))) p = r;
    if (a(p, c) == Complex{}) return 0.0;
    if (p != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a(c, k), a(p, k));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      const Complex f = a(r, c) / a(c, c);
      for (std::size_t k = c; k < n; ++k) a(r, k) -= f * a(c, k);
    }
  }
  return det;
}

}  // namespace testing
