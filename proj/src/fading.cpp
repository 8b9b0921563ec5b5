#include "secrecy/fading.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

#include "secrecy/errors.hpp"
#include "secrecy/lowsnr.hpp"
#include "secrecy/philox.hpp"
#include "secrecy/special.hpp"

namespace secrecy {

namespace {

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls fn(i) for i in [0, n) over contiguous chunks. The first exception
/// thrown by any worker is rethrown on the caller's thread.
template <class Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
  workers = static_cast<unsigned>(std::min<std::size_t>(resolve_workers(workers), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

ComplexMatrix ones(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols, std::vector<Complex>(rows * cols, Complex{1.0, 0.0}));
}

}  // namespace

FadingModel FadingModel::iid_rayleigh(std::size_t n_t, std::size_t n_r, std::size_t n_e,
                                      double noise_m, double noise_e) {
  FadingModel m;
  m.kind = FadingKind::iid_rayleigh;
  m.n_t = n_t;
  m.n_r = n_r;
  m.n_e = n_e;
  m.noise_m = noise_m;
  m.noise_e = noise_e;
  m.validate();
  return m;
}

FadingModel FadingModel::correlated_pair(double rho, double noise_m, double noise_e) {
  FadingModel m;
  m.kind = FadingKind::correlated_scalar_pair;
  m.rho = rho;
  m.noise_m = noise_m;
  m.noise_e = noise_e;
  m.validate();
  return m;
}

FadingModel FadingModel::fixed(const WiretapChannel& ch) {
  FadingModel m;
  m.kind = FadingKind::fixed;
  m.n_t = ch.n_t();
  m.n_r = ch.n_r();
  m.n_e = ch.n_e();
  m.noise_m = ch.nm();
  m.noise_e = ch.ne();
  m.fixed_hm = ch.hm();
  m.fixed_he = ch.he();
  return m;
}

FadingModel FadingModel::all_ones(std::size_t n_t, std::size_t n_r, std::size_t n_e,
                                  double noise_m, double noise_e) {
  FadingModel m;
  m.kind = FadingKind::fixed;
  m.n_t = n_t;
  m.n_r = n_r;
  m.n_e = n_e;
  m.noise_m = noise_m;
  m.noise_e = noise_e;
  m.validate();
  return m;
}

void FadingModel::validate() const {
  if (n_t == 0 || n_r == 0 || n_e == 0) throw ShapeError("FadingModel: antenna counts must be >= 1");
  if (!(noise_m > 0.0) || !(noise_e > 0.0)) {
    throw DomainError("FadingModel: noise variances must be positive");
  }
  if (!(variance_m > 0.0) || !(variance_e > 0.0)) {
    throw DomainError("FadingModel: fading variances must be positive");
  }
  if (!(rho >= 0.0 && rho <= 1.0)) throw DomainError("FadingModel: rho must lie in [0, 1]");
  if (kind == FadingKind::correlated_scalar_pair && (n_t != 1 || n_r != 1 || n_e != 1)) {
    throw ShapeError("FadingModel: correlated_scalar_pair requires n_T = n_R = n_E = 1");
  }
  if (kind == FadingKind::fixed) {
    if (fixed_hm.has_value() != fixed_he.has_value()) {
      throw DomainError("FadingModel: fixed model needs both Hm and He or neither");
    }
    if (fixed_hm && (fixed_hm->rows() != n_r || fixed_hm->cols() != n_t ||
                     fixed_he->rows() != n_e || fixed_he->cols() != n_t)) {
      throw ShapeError("FadingModel: fixed matrices disagree with (nT, nR, nE)");
    }
  }
}

WiretapChannel draw_channel(const FadingModel& model, std::uint64_t seed,
                            std::uint64_t sample_index) {
  const CounterRng rng(seed);
  switch (model.kind) {
    case FadingKind::fixed:
      if (model.fixed_hm) {
        return WiretapChannel(*model.fixed_hm, *model.fixed_he, model.noise_m, model.noise_e);
      }
      return WiretapChannel(ones(model.n_r, model.n_t), ones(model.n_e, model.n_t),
                            model.noise_m, model.noise_e);

    case FadingKind::correlated_scalar_pair: {
      const Complex hm = rng.complex_normal(sample_index, 0);
      const Complex w = rng.complex_normal(sample_index, 1);
      const Complex he = std::sqrt(model.rho) * hm + std::sqrt(1.0 - model.rho) * w;
      return WiretapChannel(ComplexMatrix(1, 1, {std::sqrt(model.variance_m) * hm}),
                            ComplexMatrix(1, 1, {std::sqrt(model.variance_e) * he}),
                            model.noise_m, model.noise_e);
    }

    case FadingKind::iid_rayleigh: {
      const std::size_t nm = model.n_r * model.n_t;
      const std::size_t ne = model.n_e * model.n_t;
      const double sm = std::sqrt(model.variance_m);
      const double se = std::sqrt(model.variance_e);
      std::vector<Complex> hm(nm);
      std::vector<Complex> he(ne);
      for (std::size_t k = 0; k < nm; ++k)
        hm[k] = sm * rng.complex_normal(sample_index, static_cast<std::uint32_t>(k));
      for (std::size_t k = 0; k < ne; ++k)
        he[k] = se * rng.complex_normal(sample_index, static_cast<std::uint32_t>(nm + k));
      return WiretapChannel(ComplexMatrix(model.n_r, model.n_t, std::move(hm)),
                            ComplexMatrix(model.n_e, model.n_t, std::move(he)), model.noise_m,
                            model.noise_e);
    }
  }
  throw DomainError("draw_channel: unknown fading kind");
}

double bivariate_exponential_pdf(double z_m, double z_e, double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw DomainError("bivariate_exponential_pdf: rho must lie in [0, 1)");
  }
  if (!(z_m >= 0.0) || !(z_e >= 0.0)) {
    throw DomainError("bivariate_exponential_pdf: arguments must be nonnegative");
  }
  const double scale = 1.0 - rho;
  const double x = 2.0 * std::sqrt(rho * z_m * z_e) / scale;
  // I0 is carried in scaled form so the exponent stays bounded for rho near 1.
  return std::exp(x - (z_m + z_e) / scale) * bessel_i0_scaled(x) / scale;
}

FadingProfile average_derivatives(const FadingModel& model, const MonteCarloConfig& mc) {
  model.validate();
  if (mc.samples == 0) throw DomainError("average_derivatives: samples must be >= 1");

  FadingProfile profile;
  if (model.kind == FadingKind::fixed) {
    const auto p = secrecy_derivatives(draw_channel(model, mc.seed, 0));
    profile.c1_avg = p.c1;
    profile.c2_avg = p.c2;
    profile.samples = mc.samples;
    profile.eb_n0_min_db = min_energy_per_secret_bit(p.c1);
    return profile;
  }

  const std::size_t n = mc.samples;
  std::vector<double> c1(n);
  std::vector<double> c2(n);
  parallel_for(n, mc.workers, [&](std::size_t i) {
    const auto p = secrecy_derivatives(draw_channel(model, mc.seed, i));
    c1[i] = p.c1;
    c2[i] = p.c2;
  });

  std::vector<double> scratch(n);
  const auto e1 = estimate_mean(c1, scratch);
  const auto e2 = estimate_mean(c2, scratch);
  profile.c1_avg = e1.mean;
  profile.standard_error_c1 = e1.standard_error;
  profile.c2_avg = e2.mean;
  profile.standard_error_c2 = e2.standard_error;
  profile.samples = mc.samples;
  profile.eb_n0_min_db = min_energy_per_secret_bit(profile.c1_avg);
  return profile;
}

double fading_min_energy(const FadingModel& model, const MonteCarloConfig& mc) {
  return average_derivatives(model, mc).eb_n0_min_db;
}

double correlated_pair_c1(double rho, double noise_m, double noise_e) {
  if (!(rho >= 0.0 && rho < 1.0)) throw DomainError("correlated_pair_c1: rho must lie in [0, 1)");
  if (!(noise_m > 0.0) || !(noise_e > 0.0)) {
    throw DomainError("correlated_pair_c1: noise variances must be positive");
  }
  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;
  // The inner rule is held tighter than the outer one so its rounding noise
  // does not stall the outer refinement.
  constexpr unsigned kMaxDepth = 15;
  constexpr double kInnerTolerance = 1e-12;
  constexpr double kOuterTolerance = 1e-10;
  const double ratio = noise_m / noise_e;
  const double z = kQuadratureEdge;

  // Integrate z_m over [ratio z_e, Z] where the integrand is smooth, then z_e.
  auto inner = [&](double z_e) {
    const double lower = ratio * z_e;
    if (lower >= z) return 0.0;
    auto integrand = [&](double z_m) {
      return (z_m - lower) * bivariate_exponential_pdf(z_m, z_e, rho);
    };
    return Quadrature::integrate(integrand, lower, z, kMaxDepth, kInnerTolerance);
  };
  return Quadrature::integrate(inner, 0.0, std::min(z, z / ratio), kMaxDepth, kOuterTolerance);
}

// ---------------------------------------------------------------------------

SingleTxEnsemble::SingleTxEnsemble(const FadingModel& model, const MonteCarloConfig& mc)
    : n_r_(static_cast<double>(model.n_r)), workers_(mc.workers) {
  model.validate();
  if (model.n_t != 1) {
    throw UnsupportedError("finite-SNR average secrecy capacity needs n_T = 1 (model has n_T = " +
                           std::to_string(model.n_t) + ")");
  }
  if (mc.samples == 0) throw DomainError("SingleTxEnsemble: samples must be >= 1");
  const std::size_t n = model.kind == FadingKind::fixed ? 1 : mc.samples;
  gain_m_.resize(n);
  gain_e_.resize(n);
  const double ratio = model.noise_m / model.noise_e;
  parallel_for(n, workers_, [&](std::size_t i) {
    const auto ch = draw_channel(model, mc.seed, i);
    const double hm = norm(ch.hm().column(0));
    const double he = norm(ch.he().column(0));
    gain_m_[i] = hm * hm;
    gain_e_[i] = ratio * he * he;
  });
}

Estimate SingleTxEnsemble::average_rate(double snr) const {
  if (!(snr >= 0.0)) throw DomainError("average_rate: snr must be nonnegative");
  const std::size_t n = gain_m_.size();
  std::vector<double> rate(n);
  const double g = n_r_ * snr;
  parallel_for(n, workers_, [&](std::size_t i) {
    rate[i] = std::max(std::log1p(g * gain_m_[i]) - std::log1p(g * gain_e_[i]), 0.0) / n_r_;
  });
  std::vector<double> scratch(n);
  return estimate_mean(rate, scratch);
}

double SingleTxEnsemble::rate_ceiling() const {
  std::vector<double> limit(gain_m_.size());
  for (std::size_t i = 0; i < limit.size(); ++i) {
    if (gain_m_[i] <= gain_e_[i]) {
      limit[i] = 0.0;
    } else if (gain_e_[i] == 0.0) {
      return std::numeric_limits<double>::infinity();
    } else {
      limit[i] = std::log(gain_m_[i] / gain_e_[i]) / n_r_;
    }
  }
  return pairwise_sum(limit) / static_cast<double>(limit.size());
}

double SingleTxEnsemble::snr_for_rate(double target_nats) const {
  if (!(target_nats > 0.0)) throw DomainError("snr_for_rate: target must be positive");
  if (!(target_nats < rate_ceiling())) {
    throw DomainError("snr_for_rate: target rate is not achievable at any SNR");
  }
  double lo = 0.0;
  double hi = 1.0;
  while (average_rate(hi).mean < target_nats) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e15) throw DomainError("snr_for_rate: target rate out of numerical reach");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (average_rate(mid).mean < target_nats ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

SweepTable avg_secrecy_capacity_single_tx(const FadingModel& model,
                                          const std::vector<double>& snr_grid,
                                          const MonteCarloConfig& mc) {
  require_positive_increasing(snr_grid, "avg_secrecy_capacity_single_tx");
  const SingleTxEnsemble ensemble(model, mc);
  SweepTable table{
      {"snr", "rate_nats_per_dim", "standard_error_nats", "eb_n0_db", "rate_bits_per_dim"}, {}, 0};
  for (double snr : snr_grid) {
    const auto rate = ensemble.average_rate(snr);
    table.rows.push_back({snr, rate.mean, rate.standard_error, energy_per_bit_db(snr, rate.mean),
                          rate.mean / std::numbers::ln2});
  }
  return table;
}

}  // namespace secrecy
