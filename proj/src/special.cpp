#include "secrecy/special.hpp"

#include <cmath>
#include <numbers>

namespace secrecy {

namespace {

constexpr double kSeriesLimit = 30.0;

// sum_k (x²/4)^k / (k!)²; all terms positive, so no cancellation.
double series_i0(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

// sqrt(2 pi x) e^{-x} I0(x) ~ sum_k ((2k-1)!!)² / (k! (8x)^k)
double asymptotic_scaled_i0(double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * odd * odd / (8.0 * k * x);
    if (std::abs(next) > std::abs(term)) break;  // divergent tail
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * sum) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

}  // namespace

double bessel_i0_scaled(double x) {
  x = std::abs(x);
  if (x < kSeriesLimit) return std::exp(-x) * series_i0(x);
  return asymptotic_scaled_i0(x);
}

double bessel_i0(double x) {
  x = std::abs(x);
  if (x < kSeriesLimit) return series_i0(x);
  return std::exp(x) * asymptotic_scaled_i0(x);
}

}  // namespace secrecy
