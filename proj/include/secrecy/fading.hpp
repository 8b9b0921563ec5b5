#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "secrecy/matrix.hpp"
#include "secrecy/numeric.hpp"
#include "secrecy/sweep.hpp"
#include "secrecy/wiretap.hpp"

namespace secrecy {

enum class FadingKind { iid_rayleigh, correlated_scalar_pair, fixed };

/// Statistical description of the random pair (H_m, H_e).
///
/// iid_rayleigh: every entry CN(0, variance) independently.
/// correlated_scalar_pair: n_T = n_R = n_E = 1, h_e = sqrt(rho) h_m + sqrt(1 - rho) w
///   (before variance scaling), so |E{h_m h_e*}|² / (E|h_m|² E|h_e|²) = rho.
/// fixed: zero spread; the given matrices, or all-ones coefficients when absent.
struct FadingModel {
  FadingKind kind = FadingKind::iid_rayleigh;
  std::size_t n_t = 1;
  std::size_t n_r = 1;
  std::size_t n_e = 1;
  double variance_m = 1.0;
  double variance_e = 1.0;
  double rho = 0.0;
  double noise_m = 1.0;
  double noise_e = 1.0;
  std::optional<ComplexMatrix> fixed_hm;
  std::optional<ComplexMatrix> fixed_he;

  static FadingModel iid_rayleigh(std::size_t n_t, std::size_t n_r, std::size_t n_e,
                                  double noise_m = 1.0, double noise_e = 1.0);
  static FadingModel correlated_pair(double rho, double noise_m = 1.0, double noise_e = 1.0);
  static FadingModel fixed(const WiretapChannel& ch);
  /// Zero-spread model with every channel coefficient equal to 1.
  static FadingModel all_ones(std::size_t n_t, std::size_t n_r, std::size_t n_e,
                              double noise_m = 1.0, double noise_e = 1.0);

  /// Throws DomainError / ShapeError when the invariants fail.
  void validate() const;
};

struct MonteCarloConfig {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  /// 0 selects std::thread::hardware_concurrency().
  unsigned workers = 0;
};

/// Ergodic low-SNR quantities in nats per dimension.
struct FadingProfile {
  double c1_avg = 0.0;
  double c2_avg = 0.0;
  double eb_n0_min_db = 0.0;
  double standard_error_c1 = 0.0;
  double standard_error_c2 = 0.0;
  std::uint64_t samples = 0;
};

/// Realization `sample_index` of the model. Depends only on (model, seed,
/// sample_index).
WiretapChannel draw_channel(const FadingModel& model, std::uint64_t seed,
                            std::uint64_t sample_index);

/// Joint density of (|h_m|², |h_e|²) for unit-power Rayleigh gains with power
/// correlation rho in [0, 1). Throws DomainError otherwise or for negative arguments.
double bivariate_exponential_pdf(double z_m, double z_e, double rho);

/// Sample means of the per-realization slope [lambda_max(Phi)]^+ and curvature
/// (simplex minimization inside the expectation). Fixed models are evaluated
/// once and reported with zero standard error.
FadingProfile average_derivatives(const FadingModel& model, const MonteCarloConfig& mc);

/// 10 log10(log 2 / c1_avg), +inf when c1_avg = 0.
double fading_min_energy(const FadingModel& model, const MonteCarloConfig& mc);

/// Truncation edge for the bivariate-exponential quadrature (tail mass < 1e-16).
inline constexpr double kQuadratureEdge = 40.0;

/// E[(z_m - (N_m/N_e) z_e)^+] under the bivariate exponential density, by
/// nested adaptive Gauss-Kronrod quadrature over [0, 40]². Throws DomainError
/// unless 0 <= rho < 1.
double correlated_pair_c1(double rho, double noise_m, double noise_e);

/// Pre-drawn realizations of a single-transmit-antenna model, reused across
/// SNR values (common random numbers).
class SingleTxEnsemble {
 public:
  /// Throws UnsupportedError when model.n_t != 1.
  SingleTxEnsemble(const FadingModel& model, const MonteCarloConfig& mc);

  /// Mean secrecy rate in nats/dimension at the given SNR.
  Estimate average_rate(double snr) const;
  /// Largest achievable average rate as snr -> infinity.
  double rate_ceiling() const;
  /// SNR at which the average rate equals target_nats (bisection). Throws
  /// DomainError when the target is not below rate_ceiling().
  double snr_for_rate(double target_nats) const;

  std::size_t size() const noexcept { return gain_m_.size(); }

 private:
  std::vector<double> gain_m_;  // ||h_m||²
  std::vector<double> gain_e_;  // (N_m/N_e) ||h_e||²
  double n_r_;
  unsigned workers_;
};

/// Average secrecy capacity of an n_T = 1 model along snr_grid. Columns:
/// snr, rate_nats_per_dim, standard_error_nats, eb_n0_db, rate_bits_per_dim.
SweepTable avg_secrecy_capacity_single_tx(const FadingModel& model,
                                          const std::vector<double>& snr_grid,
                                          const MonteCarloConfig& mc);

}  // namespace secrecy
