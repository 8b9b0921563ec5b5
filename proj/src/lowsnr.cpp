#include "secrecy/lowsnr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "secrecy/errors.hpp"

namespace secrecy {

std::vector<ComplexVector> maximal_eigenspace(const EigenDecomposition& eig, double rel_tol) {
  if (!(rel_tol > 0.0)) throw DomainError("maximal_eigenspace: rel_tol must be positive");
  std::vector<ComplexVector> basis;
  const double top = eig.max_value();
  if (!(top > 0.0)) return basis;
  const double band = rel_tol * (1.0 + std::abs(top));
  for (std::size_t i = 0; i < eig.size(); ++i)
    if (top - eig.values[i] <= band) basis.push_back(eig.vectors[i]);
  return basis;
}

SimplexQP quadratic_form_matrix(const WiretapChannel& ch,
                                std::span<const ComplexVector> eigenspace) {
  if (eigenspace.empty()) throw DomainError("quadratic_form_matrix: empty eigenspace");
  const std::size_t l = eigenspace.size();
  const auto gm = HermitianMatrix::gram(ch.hm());
  const auto ge = HermitianMatrix::gram(ch.he());
  const double ratio2 = ch.noise_ratio() * ch.noise_ratio();

  std::vector<ComplexVector> gm_u;
  std::vector<ComplexVector> ge_u;
  for (const auto& u : eigenspace) {
    gm_u.push_back(gm.matrix() * u);
    ge_u.push_back(ge.matrix() * u);
  }
  std::vector<double> m(l * l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j)
      m[i * l + j] = std::norm(inner(eigenspace[j], gm_u[i])) -
                     ratio2 * std::norm(inner(eigenspace[j], ge_u[i]));
  return SimplexQP(l, std::move(m));
}

double min_energy_per_secret_bit(double c1) {
  if (!(c1 >= 0.0)) throw DomainError("min_energy_per_secret_bit: c1 must be nonnegative");
  if (c1 == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(std::numbers::ln2 / c1);
}

double wideband_slope(double c1, double c2) {
  if (!(c1 >= 0.0)) throw DomainError("wideband_slope: c1 must be nonnegative");
  if (c1 == 0.0) return 0.0;
  if (c2 >= 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 * c1 * c1 / (-c2);
}

double capacity_second_order_approx(const LowSnrProfile& profile, double snr) {
  if (!(snr >= 0.0)) throw DomainError("capacity_second_order_approx: snr must be nonnegative");
  return profile.c1 * snr + 0.5 * profile.c2 * snr * snr;
}

double energy_per_bit_db(double snr, double rate_nats) {
  if (!(rate_nats > 0.0)) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(snr * std::numbers::ln2 / rate_nats);
}

LowSnrProfile secrecy_derivatives(const WiretapChannel& ch, const AnalysisOptions& options) {
  const auto eig = hermitian_eig(phi_matrix(ch));

  LowSnrProfile p;
  p.lambda_max = eig.max_value();
  p.c1 = std::max(p.lambda_max, 0.0);
  p.eigenspace = maximal_eigenspace(eig, options.multiplicity_tol);
  p.secrecy_possible = !p.eigenspace.empty();

  if (!p.secrecy_possible) {
    p.c1 = 0.0;
    p.c2 = 0.0;
    p.optimal_cov = NormalizedCovariance::beamforming(eig.vectors.front());
  } else {
    const auto solution = minimize_simplex_quadratic(quadratic_form_matrix(ch, p.eigenspace));
    p.alpha = solution.alpha;
    p.exact_simplex = solution.exact;
    p.c2 = -static_cast<double>(ch.n_r()) * solution.value;

    HermitianMatrix k(ComplexMatrix(ch.n_t(), ch.n_t()));
    for (std::size_t i = 0; i < p.eigenspace.size(); ++i)
      k += p.alpha[i] * HermitianMatrix::outer(p.eigenspace[i]);
    p.optimal_cov = NormalizedCovariance::from_unnormalized(k);
  }
  p.eb_n0_min_db = min_energy_per_secret_bit(p.c1);
  p.wideband_slope = wideband_slope(p.c1, p.c2);
  return p;
}

SweepTable energy_rate_curve(const WiretapChannel& ch, const NormalizedCovariance& cov,
                             const std::vector<double>& snr_grid) {
  require_positive_increasing(snr_grid, "energy_rate_curve");
  SweepTable table{{"eb_n0_db", "rate_bits_per_dim"}, {}, 0};
  for (double snr : snr_grid) {
    const auto rate = secrecy_rate(ch, cov, snr);
    if (!(rate.nats > 0.0)) {
      ++table.omitted;
      continue;
    }
    table.rows.push_back({energy_per_bit_db(snr, rate.nats), rate.bits()});
  }
  return table;
}

NormalizedCovariance main_beamforming_covariance(const WiretapChannel& ch) {
  const auto eig = hermitian_eig(HermitianMatrix::gram(ch.hm()));
  return NormalizedCovariance::beamforming(eig.vectors.front());
}

namespace {

/// Projects a Hermitian matrix onto {W >= 0, tr W = 1}.
HermitianMatrix project_to_spectraplex(const HermitianMatrix& w) {
  const auto eig = hermitian_eig(w);
  const auto weights = project_to_simplex(eig.values);
  HermitianMatrix out(ComplexMatrix(w.dim(), w.dim()));
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (weights[i] > 0.0) out += weights[i] * HermitianMatrix::outer(eig.vectors[i]);
  return out;
}

}  // namespace

RelaxedCurvature minimize_psd_weight_relaxation(const WiretapChannel& ch,
                                                std::span<const ComplexVector> eigenspace,
                                                std::span<const double> diagonal_start) {
  if (eigenspace.empty()) throw DomainError("minimize_psd_weight_relaxation: empty eigenspace");
  const std::size_t l = eigenspace.size();
  if (diagonal_start.size() != l) throw ShapeError("minimize_psd_weight_relaxation: start size");

  ComplexMatrix basis(ch.n_t(), l);
  for (std::size_t j = 0; j < l; ++j)
    for (std::size_t i = 0; i < ch.n_t(); ++i) basis(i, j) = eigenspace[j][i];
  const ComplexMatrix hm_u = ch.hm() * basis;
  const ComplexMatrix he_u = ch.he() * basis;
  const double ratio2 = ch.noise_ratio() * ch.noise_ratio();

  auto objective = [&](const HermitianMatrix& w, HermitianMatrix* grad) {
    const auto a = HermitianMatrix::symmetrized(hm_u * w.matrix() * hm_u.adjoint());
    const auto b = HermitianMatrix::symmetrized(he_u * w.matrix() * he_u.adjoint());
    const double fa = frobenius_norm(a.matrix());
    const double fb = frobenius_norm(b.matrix());
    if (grad) {
      *grad = 2.0 * HermitianMatrix::symmetrized(hm_u.adjoint() * a.matrix() * hm_u) -
              (2.0 * ratio2) * HermitianMatrix::symmetrized(he_u.adjoint() * b.matrix() * he_u);
    }
    return fa * fa - ratio2 * fb * fb;
  };

  const double nm = frobenius_norm(hm_u);
  const double ne = frobenius_norm(he_u);
  const double lipschitz = 2.0 * (std::pow(nm, 4) + ratio2 * std::pow(ne, 4));
  const double step = lipschitz > 0.0 ? 1.0 / lipschitz : 1.0;

  HermitianMatrix w(ComplexMatrix::diagonal(diagonal_start));
  RelaxedCurvature best{w, objective(w, nullptr)};
  HermitianMatrix grad;
  for (int it = 0; it < 5000; ++it) {
    objective(w, &grad);
    w = project_to_spectraplex(w - step * grad);
    const double value = objective(w, nullptr);
    if (value < best.value) best = {w, value};
  }
  return best;
}

}  // namespace secrecy
