#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace secrecy {

/// Pairwise (tree) summation. The association order depends only on the
/// length of the input, so results are reproducible bit for bit.
inline double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kLeaf = 16;
  if (values.size() <= kLeaf) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

/// Sample mean with its standard error.
struct Estimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

/// `scratch` must be the same length as `values`; it receives squared deviations.
inline Estimate estimate_mean(std::span<const double> values, std::span<double> scratch) {
  const auto n = static_cast<double>(values.size());
  if (values.empty()) return {};
  const double mean = pairwise_sum(values) / n;
  if (values.size() == 1) return {mean, 0.0};
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - mean;
    scratch[i] = d * d;
  }
  const double variance = pairwise_sum(scratch) / (n - 1.0);
  return {mean, std::sqrt(variance / n)};
}

}  // namespace secrecy
