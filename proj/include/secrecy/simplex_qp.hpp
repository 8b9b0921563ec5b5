#pragma once

#include <cstddef>
#include <vector>

namespace secrecy {

/// Real symmetric l x l matrix M defining the objective alpha^T M alpha over
/// the probability simplex.
class SimplexQP {
 public:
  /// Row-major entries; the stored matrix is (M + M^T)/2.
  SimplexQP(std::size_t l, std::vector<double> entries);

  std::size_t size() const noexcept { return l_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return m_[i * l_ + j]; }

  double objective(const std::vector<double>& alpha) const;

 private:
  std::size_t l_;
  std::vector<double> m_;
};

struct SimplexSolution {
  std::vector<double> alpha;
  double value = 0.0;
  /// False when the projected-gradient fallback was used (l > kMaxExactSize).
  bool exact = true;
};

/// Largest l solved by exhaustive active-set enumeration (2^l - 1 faces).
inline constexpr std::size_t kMaxExactSimplexSize = 12;

/// Global minimum of alpha^T M alpha over {alpha >= 0, sum alpha = 1}.
///
/// For l <= 12 every face is visited: on support S the KKT system
/// M_S alpha_S = mu 1, 1^T alpha_S = 1 is solved and nonnegative solutions are
/// kept. Singular faces are skipped; their minimum is attained on a sub-face.
/// Ties in value go to the lexicographically smallest alpha.
///
/// For larger l, projected gradient descent from 32 deterministic starts with
/// step 1/(2 ||M||_2) and 10^4 iterations; the result is a local minimum.
SimplexSolution minimize_simplex_quadratic(const SimplexQP& qp);

/// Euclidean projection onto the probability simplex.
std::vector<double> project_to_simplex(std::vector<double> v);

}  // namespace secrecy
