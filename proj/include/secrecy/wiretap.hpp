#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>

#include "secrecy/matrix.hpp"

namespace secrecy {

/// Gaussian MIMO wiretap channel: y_m = H_m x + n_m, y_e = H_e x + n_e with
/// white noise of variance N_m and N_e per receive dimension.
class WiretapChannel {
 public:
  /// Throws ShapeError when H_m and H_e disagree on n_T (or a dimension is
  /// zero) and DomainError for non-positive noise variances.
  WiretapChannel(ComplexMatrix hm, ComplexMatrix he, double nm, double ne);

  const ComplexMatrix& hm() const noexcept { return hm_; }
  const ComplexMatrix& he() const noexcept { return he_; }
  double nm() const noexcept { return nm_; }
  double ne() const noexcept { return ne_; }

  std::size_t n_t() const noexcept { return hm_.cols(); }
  std::size_t n_r() const noexcept { return hm_.rows(); }
  std::size_t n_e() const noexcept { return he_.rows(); }

  /// N_m / N_e
  double noise_ratio() const noexcept { return nm_ / ne_; }

 private:
  ComplexMatrix hm_;
  ComplexMatrix he_;
  double nm_;
  double ne_;
};

/// Transmit covariance divided by the power budget: PSD with unit trace.
class NormalizedCovariance {
 public:
  static constexpr double kTraceTolerance = 1e-10;

  /// Throws NotPsdError or DomainError (trace != 1) on invalid input.
  explicit NormalizedCovariance(HermitianMatrix k);

  /// Divides a PSD matrix with positive trace by its trace.
  static NormalizedCovariance from_unnormalized(const HermitianMatrix& k);
  /// u u† / ||u||^2
  static NormalizedCovariance beamforming(std::span<const Complex> u);
  /// I / n
  static NormalizedCovariance uniform(std::size_t n);

  std::size_t dim() const noexcept { return k_.dim(); }
  const HermitianMatrix& matrix() const noexcept { return k_; }

 private:
  struct Unchecked {};
  NormalizedCovariance(HermitianMatrix k, Unchecked) : k_(std::move(k)) {}

  HermitianMatrix k_;
};

/// Secrecy rate in nats/s/Hz per receive dimension. Never negative.
struct RateValue {
  double nats = 0.0;
  double bits() const noexcept { return nats / std::numbers::ln2; }
};

/// Phi = H_m† H_m - (N_m/N_e) H_e† H_e.
HermitianMatrix phi_matrix(const WiretapChannel& ch);

/// P = snr * n_R * N_m, the power implied by the per-dimension SNR.
double transmit_power(const WiretapChannel& ch, double snr);

/// (1/n_R) [logdet(I + n_R snr H_m K H_m†) - logdet(I + n_R (N_m/N_e) snr H_e K H_e†)]^+
RateValue secrecy_rate(const WiretapChannel& ch, const NormalizedCovariance& cov, double snr);

/// Rate to the legitimate receiver with no eavesdropper term:
/// (1/n_R) logdet(I + n_R snr H_m K H_m†).
RateValue main_link_rate(const WiretapChannel& ch, const NormalizedCovariance& cov, double snr);

/// tr(Phi K), unclipped.
double phi_trace(const WiretapChannel& ch, const NormalizedCovariance& cov);

/// d/dsnr of secrecy_rate at snr = 0: [tr(Phi K)]^+.
double rate_first_derivative(const WiretapChannel& ch, const NormalizedCovariance& cov);

/// Threshold above which tr(Phi K) counts as positive for the second-derivative indicator.
inline constexpr double kPositiveSlopeThreshold = 1e-12;

/// d²/dsnr² of secrecy_rate at snr = 0:
/// -n_R tr((H_m K H_m†)² - (N_m/N_e)² (H_e K H_e†)²) when tr(Phi K) > 0, else 0.
double rate_second_derivative(const WiretapChannel& ch, const NormalizedCovariance& cov);

}  // namespace secrecy
