#include "secrecy/wiretap.hpp"

#include <algorithm>
#include <string>

#include "secrecy/errors.hpp"

namespace secrecy {

WiretapChannel::WiretapChannel(ComplexMatrix hm, ComplexMatrix he, double nm, double ne)
    : hm_(std::move(hm)), he_(std::move(he)), nm_(nm), ne_(ne) {
  if (hm_.rows() == 0 || he_.rows() == 0 || hm_.cols() == 0) {
    throw ShapeError("WiretapChannel: channel matrices must be non-empty");
  }
  if (hm_.cols() != he_.cols()) {
    throw ShapeError("WiretapChannel: H_m has " + std::to_string(hm_.cols()) +
                     " transmit columns but H_e has " + std::to_string(he_.cols()));
  }
  if (!(nm_ > 0.0) || !(ne_ > 0.0) || !std::isfinite(nm_) || !std::isfinite(ne_)) {
    throw DomainError("WiretapChannel: noise variances must be positive and finite");
  }
}

NormalizedCovariance::NormalizedCovariance(HermitianMatrix k) : k_(std::move(k)) {
  if (k_.dim() == 0) throw ShapeError("NormalizedCovariance: empty matrix");
  if (std::abs(k_.trace() - 1.0) > kTraceTolerance) {
    throw DomainError("NormalizedCovariance: trace is " + std::to_string(k_.trace()) +
                      ", expected 1");
  }
  if (!is_psd(k_)) throw NotPsdError("NormalizedCovariance: matrix is not PSD");
}

NormalizedCovariance NormalizedCovariance::from_unnormalized(const HermitianMatrix& k) {
  const double tr = k.trace();
  if (!(tr > 0.0)) throw DomainError("NormalizedCovariance: trace must be positive");
  return NormalizedCovariance((1.0 / tr) * k);
}

NormalizedCovariance NormalizedCovariance::beamforming(std::span<const Complex> u) {
  const double len = norm(u);
  if (!(len > 0.0)) throw DomainError("NormalizedCovariance: zero beamforming vector");
  return NormalizedCovariance((1.0 / (len * len)) * HermitianMatrix::outer(u), Unchecked{});
}

NormalizedCovariance NormalizedCovariance::uniform(std::size_t n) {
  if (n == 0) throw ShapeError("NormalizedCovariance: empty matrix");
  return NormalizedCovariance((1.0 / static_cast<double>(n)) * HermitianMatrix::identity(n),
                              Unchecked{});
}

namespace {

void require_matching(const WiretapChannel& ch, const NormalizedCovariance& cov) {
  if (cov.dim() != ch.n_t()) {
    throw ShapeError("covariance is " + std::to_string(cov.dim()) + "x" +
                     std::to_string(cov.dim()) + " but the channel has n_T = " +
                     std::to_string(ch.n_t()));
  }
}

void require_snr(double snr) {
  if (!(snr >= 0.0) || !std::isfinite(snr)) {
    throw DomainError("snr must be a nonnegative finite number");
  }
}

/// H K H†
HermitianMatrix received_covariance(const ComplexMatrix& h, const NormalizedCovariance& cov) {
  return HermitianMatrix::symmetrized(h * cov.matrix().matrix() * h.adjoint());
}

// tr(A²) = ||A||_F² for Hermitian A.
double trace_of_square(const HermitianMatrix& a) {
  const double f = frobenius_norm(a.matrix());
  return f * f;
}

}  // namespace

HermitianMatrix phi_matrix(const WiretapChannel& ch) {
  return HermitianMatrix::gram(ch.hm()) - ch.noise_ratio() * HermitianMatrix::gram(ch.he());
}

double transmit_power(const WiretapChannel& ch, double snr) {
  return snr * static_cast<double>(ch.n_r()) * ch.nm();
}

RateValue secrecy_rate(const WiretapChannel& ch, const NormalizedCovariance& cov, double snr) {
  require_matching(ch, cov);
  require_snr(snr);
  if (snr == 0.0) return {};
  const double nr = static_cast<double>(ch.n_r());
  const double main = log_det_I_plus(received_covariance(ch.hm(), cov), nr * snr);
  const double eve =
      log_det_I_plus(received_covariance(ch.he(), cov), nr * ch.noise_ratio() * snr);
  return {std::max(main - eve, 0.0) / nr};
}

RateValue main_link_rate(const WiretapChannel& ch, const NormalizedCovariance& cov, double snr) {
  require_matching(ch, cov);
  require_snr(snr);
  const double nr = static_cast<double>(ch.n_r());
  return {log_det_I_plus(received_covariance(ch.hm(), cov), nr * snr) / nr};
}

double phi_trace(const WiretapChannel& ch, const NormalizedCovariance& cov) {
  require_matching(ch, cov);
  return trace(phi_matrix(ch).matrix() * cov.matrix().matrix()).real();
}

double rate_first_derivative(const WiretapChannel& ch, const NormalizedCovariance& cov) {
  return std::max(phi_trace(ch, cov), 0.0);
}

double rate_second_derivative(const WiretapChannel& ch, const NormalizedCovariance& cov) {
  if (!(phi_trace(ch, cov) > kPositiveSlopeThreshold)) return 0.0;
  const double ratio = ch.noise_ratio();
  const double main = trace_of_square(received_covariance(ch.hm(), cov));
  const double eve = trace_of_square(received_covariance(ch.he(), cov));
  return -static_cast<double>(ch.n_r()) * (main - ratio * ratio * eve);
}

}  // namespace secrecy
