#include "secrecy/simplex_qp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <string>

#include "secrecy/errors.hpp"
#include "secrecy/matrix.hpp"

namespace secrecy {

SimplexQP::SimplexQP(std::size_t l, std::vector<double> entries) : l_(l), m_(std::move(entries)) {
  if (l_ == 0) throw DomainError("SimplexQP: empty problem");
  if (m_.size() != l_ * l_) throw ShapeError("SimplexQP: expected l*l entries");
  for (double e : m_)
    if (!std::isfinite(e)) throw InvariantError("SimplexQP: non-finite entry");
  for (std::size_t i = 0; i < l_; ++i)
    for (std::size_t j = i + 1; j < l_; ++j) {
      const double avg = 0.5 * (m_[i * l_ + j] + m_[j * l_ + i]);
      m_[i * l_ + j] = avg;
      m_[j * l_ + i] = avg;
    }
}

double SimplexQP::objective(const std::vector<double>& alpha) const {
  double v = 0.0;
  for (std::size_t i = 0; i < l_; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < l_; ++j) row += m_[i * l_ + j] * alpha[j];
    v += alpha[i] * row;
  }
  return v;
}

std::vector<double> project_to_simplex(std::vector<double> v) {
  std::vector<double> sorted = v;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double shift = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    cumulative += sorted[k];
    const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.0) shift = candidate;
  }
  for (auto& e : v) e = std::max(e - shift, 0.0);
  return v;
}

namespace {

/// Solves the bordered KKT system on a face. Returns nullopt when singular.
std::optional<std::vector<double>> solve_face(const SimplexQP& qp,
                                              const std::vector<std::size_t>& support) {
  const std::size_t s = support.size();
  const std::size_t n = s + 1;
  std::vector<double> a(n * (n + 1), 0.0);  // augmented [A | b]
  auto at = [&](std::size_t r, std::size_t c) -> double& { return a[r * (n + 1) + c]; };
  double scale = 1.0;
  for (std::size_t r = 0; r < s; ++r) {
    for (std::size_t c = 0; c < s; ++c) {
      at(r, c) = qp(support[r], support[c]);
      scale = std::max(scale, std::abs(at(r, c)));
    }
    at(r, s) = -1.0;
    at(s, r) = 1.0;
  }
  at(s, n) = 1.0;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(at(r, col)) > std::abs(at(pivot, col))) pivot = r;
    if (std::abs(at(pivot, col)) < 1e-13 * scale) return std::nullopt;
    if (pivot != col)
      for (std::size_t c = 0; c <= n; ++c) std::swap(at(col, c), at(pivot, c));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = at(r, col) / at(col, col);
      for (std::size_t c = col; c <= n; ++c) at(r, c) -= f * at(col, c);
    }
  }
  std::vector<double> x(n);
  for (std::size_t r = n; r-- > 0;) {
    double acc = at(r, n);
    for (std::size_t c = r + 1; c < n; ++c) acc -= at(r, c) * x[c];
    x[r] = acc / at(r, r);
  }
  x.pop_back();  // drop mu
  return x;
}

struct Incumbent {
  std::vector<double> alpha;
  double value = std::numeric_limits<double>::infinity();

  void offer(std::vector<double> candidate, double candidate_value) {
    if (alpha.empty()) {
      alpha = std::move(candidate);
      value = candidate_value;
      return;
    }
    const double tol = 1e-12 * (1.0 + std::abs(value));
    const bool better = candidate_value < value - tol;
    const bool tie = std::abs(candidate_value - value) <= tol;
    if (better || (tie && candidate < alpha)) {
      alpha = std::move(candidate);
      value = candidate_value;
    }
  }
};

SimplexSolution enumerate_faces(const SimplexQP& qp) {
  const std::size_t l = qp.size();
  Incumbent best;
  std::vector<std::size_t> support;
  for (std::uint32_t mask = 1; mask < (1u << l); ++mask) {
    support.clear();
    for (std::size_t i = 0; i < l; ++i)
      if (mask & (1u << i)) support.push_back(i);
    const auto face = solve_face(qp, support);
    if (!face) continue;
    if (std::any_of(face->begin(), face->end(), [](double x) { return x < -1e-12; })) continue;

    std::vector<double> alpha(l, 0.0);
    double total = 0.0;
    for (std::size_t k = 0; k < support.size(); ++k) {
      alpha[support[k]] = std::max((*face)[k], 0.0);
      total += alpha[support[k]];
    }
    for (auto& x : alpha) x /= total;
    const double value = qp.objective(alpha);
    best.offer(std::move(alpha), value);
  }
  return {std::move(best.alpha), best.value, true};
}

double spectral_norm(const SimplexQP& qp) {
  const std::size_t l = qp.size();
  ComplexMatrix m(l, l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) m(i, j) = qp(i, j);
  const auto eig = hermitian_eig(HermitianMatrix(m));
  return std::max(std::abs(eig.max_value()), std::abs(eig.min_value()));
}

SimplexSolution projected_gradient(const SimplexQP& qp) {
  constexpr int kStarts = 32;
  constexpr int kIterations = 10000;
  const std::size_t l = qp.size();
  const double norm2 = spectral_norm(qp);
  const double step = norm2 > 0.0 ? 1.0 / (2.0 * norm2) : 1.0;

  std::vector<std::vector<double>> starts;
  starts.emplace_back(l, 1.0 / static_cast<double>(l));
  for (std::size_t i = 0; i < l && starts.size() < kStarts / 2; ++i) {
    std::vector<double> vertex(l, 0.0);
    vertex[i] = 1.0;
    starts.push_back(std::move(vertex));
  }
  std::mt19937_64 gen(0x5eed);
  std::exponential_distribution<double> expo(1.0);
  while (starts.size() < kStarts) {
    std::vector<double> p(l);
    for (auto& x : p) x = expo(gen);
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    for (auto& x : p) x /= total;
    starts.push_back(std::move(p));
  }

  Incumbent best;
  std::vector<double> grad(l);
  for (auto alpha : starts) {
    for (int it = 0; it < kIterations; ++it) {
      for (std::size_t i = 0; i < l; ++i) {
        double g = 0.0;
        for (std::size_t j = 0; j < l; ++j) g += qp(i, j) * alpha[j];
        grad[i] = 2.0 * g;
      }
      for (std::size_t i = 0; i < l; ++i) alpha[i] -= step * grad[i];
      alpha = project_to_simplex(std::move(alpha));
    }
    const double value = qp.objective(alpha);
    best.offer(std::move(alpha), value);
  }
  return {std::move(best.alpha), best.value, false};
}

}  // namespace

SimplexSolution minimize_simplex_quadratic(const SimplexQP& qp) {
  return qp.size() <= kMaxExactSimplexSize ? enumerate_faces(qp) : projected_gradient(qp);
}

}  // namespace secrecy
