#include "secrecy/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "secrecy/errors.hpp"
#include "secrecy/fading.hpp"
#include "secrecy/lowsnr.hpp"
#include "secrecy/serialization.hpp"
#include "secrecy/sweep.hpp"
#include "secrecy/wiretap.hpp"

namespace secrecy::cli {

namespace {

constexpr const char* kFooter = R"(CSV outputs (header row, then one line per grid point):
  sweep-rate         snr,rate_nats_per_dim
  sweep-energy       eb_n0_db,rate_bits_per_dim        (zero-rate points omitted)
  fading --sweep-output
                     snr,rate_nats_per_dim,standard_error_nats,eb_n0_db,rate_bits_per_dim
  correlation-sweep  rho,c1_quadrature,eb_n0_min_db
                     plus c1_monte_carlo,standard_error_c1 when --samples > 0
Rates are per receive dimension; "inf" marks an infinite energy per bit.
Exit codes: 0 success, 2 input error, 3 numerical non-convergence.
Environment: SECRECY_ANALYZER_THREADS caps the Monte Carlo worker count.)";

struct GridOptions {
  double start = 0.01;
  double stop = 2.0;
  std::size_t points = 200;
  std::string scale = "linear";

  std::vector<double> build() const {
    return make_grid(start, stop, points, scale == "log" ? GridScale::log : GridScale::linear);
  }
};

struct Config {
  std::string input;
  std::string output;
  std::string strategy = "optimal";
  std::string covariance;
  GridOptions grid;
  std::uint64_t seed = 1;
  std::uint64_t samples = 100000;
  std::uint64_t rho_samples = 0;
  std::string rho_list = "0,0.2,0.4,0.6,0.8,0.95";
  double multiplicity_tol = 1e-8;
  double snr = 1.0;
  double nm = 1.0;
  double ne = 1.0;
  bool compare_relaxation = false;
  std::string sweep_output;
};

std::string read_file(const std::string& path) {
  if (path.empty()) throw FormatError("--input is required");
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Writes through `fn` to `path`, or to `out` when the path is empty.
template <class Fn>
void emit(const std::string& path, std::ostream& out, Fn&& fn) {
  if (path.empty()) {
    fn(out);
    return;
  }
  std::ofstream file(path);
  if (!file) throw FormatError("cannot write '" + path + "'");
  fn(file);
  if (!file) throw FormatError("write to '" + path + "' failed");
}

unsigned worker_cap() {
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SECRECY_ANALYZER_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || cap < 1) {
      throw FormatError("SECRECY_ANALYZER_THREADS must be a positive integer");
    }
    workers = std::min(workers, static_cast<unsigned>(cap));
  }
  return workers;
}

std::string number(double x, int decimals) {
  return std::isfinite(x) ? fmt::format("{:.{}f}", x, decimals) : fmt::format("{}", x);
}

WiretapChannel load_channel(const Config& c) { return channel_from_json(parse_json(read_file(c.input))); }

/// Covariance for the requested strategy. "no-secrecy" beamforms on the main
/// link and is evaluated without the eavesdropper term.
NormalizedCovariance strategy_covariance(const Config& c, const WiretapChannel& ch) {
  if (c.strategy == "optimal") {
    return secrecy_derivatives(ch, {c.multiplicity_tol}).optimal_cov;
  }
  if (c.strategy == "main-beamforming" || c.strategy == "no-secrecy") {
    return main_beamforming_covariance(ch);
  }
  if (c.strategy == "uniform") return NormalizedCovariance::uniform(ch.n_t());
  if (c.covariance.empty()) throw FormatError("strategy 'file' requires --covariance");
  auto cov = covariance_from_json(parse_json(read_file(c.covariance)));
  if (cov.dim() != ch.n_t()) throw ShapeError("covariance dimension does not match n_T");
  return cov;
}

RateValue strategy_rate(const Config& c, const WiretapChannel& ch,
                        const NormalizedCovariance& cov, double snr) {
  return c.strategy == "no-secrecy" ? main_link_rate(ch, cov, snr) : secrecy_rate(ch, cov, snr);
}

int cmd_analyze(const Config& c, std::ostream& out) {
  const auto ch = load_channel(c);
  const auto p = secrecy_derivatives(ch, {c.multiplicity_tol});
  Json j = profile_to_json(p);

  out << "c1 = " << number(p.c1, 5) << '\n'
      << "c2 = " << number(p.c2, 5) << '\n'
      << "lambda_max = " << number(p.lambda_max, 5) << '\n'
      << "multiplicity = " << p.multiplicity() << '\n'
      << "alpha = [" << fmt::format("{:.5f}", fmt::join(p.alpha, ", ")) << "]\n"
      << "eb_n0_min_db = " << number(p.eb_n0_min_db, 2) << '\n'
      << "wideband_slope = " << number(p.wideband_slope, 5) << '\n'
      << "secrecy_possible = " << (p.secrecy_possible ? "true" : "false") << '\n'
      << "transmit_power = " << number(transmit_power(ch, c.snr), 5) << " (snr = " << c.snr
      << ")\n";
  if (!p.exact_simplex) out << "note: simplex problem solved by projected gradient\n";

  if (c.compare_relaxation && p.secrecy_possible) {
    const auto relaxed = minimize_psd_weight_relaxation(ch, p.eigenspace, p.alpha);
    const double c2_relaxed = -static_cast<double>(ch.n_r()) * relaxed.value;
    out << "c2_relaxed = " << number(c2_relaxed, 5) << '\n';
    j["c2_relaxed"] = c2_relaxed;
  }
  if (!c.output.empty()) emit(c.output, out, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
  return kExitOk;
}

int cmd_sweep_rate(const Config& c, std::ostream& out) {
  const auto ch = load_channel(c);
  const auto cov = strategy_covariance(c, ch);
  SweepTable table{{"snr", "rate_nats_per_dim"}, {}, 0};
  for (double snr : c.grid.build()) table.rows.push_back({snr, strategy_rate(c, ch, cov, snr).nats});
  emit(c.output, out, [&](std::ostream& o) { table.write_csv(o); });
  return kExitOk;
}

int cmd_sweep_energy(const Config& c, std::ostream& out, std::ostream& err) {
  const auto ch = load_channel(c);
  const auto cov = strategy_covariance(c, ch);
  const auto grid = c.grid.build();
  require_positive_increasing(grid, "SNR grid");
  SweepTable table{{"eb_n0_db", "rate_bits_per_dim"}, {}, 0};
  for (double snr : grid) {
    const auto rate = strategy_rate(c, ch, cov, snr);
    if (!(rate.nats > 0.0)) {
      ++table.omitted;
      continue;
    }
    table.rows.push_back({energy_per_bit_db(snr, rate.nats), rate.bits()});
  }
  if (table.omitted > 0) err << table.omitted << " zero-rate grid points omitted\n";
  emit(c.output, out, [&](std::ostream& o) { table.write_csv(o); });
  return kExitOk;
}

int cmd_fading(const Config& c, std::ostream& out) {
  const auto model = fading_model_from_json(parse_json(read_file(c.input)));
  const MonteCarloConfig mc{c.samples, c.seed, worker_cap()};
  if (!c.sweep_output.empty() && model.n_t != 1) {
    throw UnsupportedError("finite-SNR fading sweeps require nT = 1");
  }
  const auto profile = average_derivatives(model, mc);
  Json j = fading_profile_to_json(profile);
  j["seed"] = c.seed;
  j["model"] = fading_model_to_json(model);
  emit(c.output, out, [&](std::ostream& o) { o << j.dump(2) << '\n'; });

  if (!c.sweep_output.empty()) {
    const auto table = avg_secrecy_capacity_single_tx(model, c.grid.build(), mc);
    emit(c.sweep_output, out, [&](std::ostream& o) { table.write_csv(o); });
  }
  return kExitOk;
}

std::vector<double> parse_rho_list(const std::string& text) {
  std::vector<double> rhos;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw FormatError("--rho-list: '" + item + "' is not a number");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) {
      throw FormatError("--rho-list: '" + item + "' is not a number");
    }
    rhos.push_back(v);
  }
  if (rhos.empty()) throw DomainError("--rho-list is empty");
  for (std::size_t i = 1; i < rhos.size(); ++i)
    if (!(rhos[i] > rhos[i - 1])) throw DomainError("--rho-list must be strictly increasing");
  return rhos;
}

int cmd_correlation_sweep(const Config& c, std::ostream& out) {
  const auto rhos = parse_rho_list(c.rho_list);
  SweepTable table{{"rho", "c1_quadrature", "eb_n0_min_db"}, {}, 0};
  if (c.rho_samples > 0) {
    table.columns.push_back("c1_monte_carlo");
    table.columns.push_back("standard_error_c1");
  }
  const MonteCarloConfig mc{c.rho_samples, c.seed, worker_cap()};
  for (double rho : rhos) {
    const double c1 = correlated_pair_c1(rho, c.nm, c.ne);
    std::vector<double> row{rho, c1, min_energy_per_secret_bit(c1)};
    if (c.rho_samples > 0) {
      const auto p = average_derivatives(FadingModel::correlated_pair(rho, c.nm, c.ne), mc);
      row.push_back(p.c1_avg);
      row.push_back(p.standard_error_c1);
    }
    table.rows.push_back(std::move(row));
  }
  emit(c.output, out, [&](std::ostream& o) { table.write_csv(o); });
  return kExitOk;
}

void add_grid(CLI::App* app, GridOptions& g) {
  app->add_option("--snr-start", g.start, "First SNR (per receive dimension)")->capture_default_str();
  app->add_option("--snr-stop", g.stop, "Last SNR")->capture_default_str();
  app->add_option("--snr-points", g.points, "Number of grid points")->capture_default_str();
  app->add_option("--snr-scale", g.scale, "Grid spacing")
      ->check(CLI::IsMember({"linear", "log"}))
      ->capture_default_str();
}

void add_strategy(CLI::App* app, Config& c) {
  app->add_option("--strategy", c.strategy,
                  "Transmit covariance: optimal (low-SNR optimum), main-beamforming, uniform, "
                  "no-secrecy (main link alone, beamforming), file")
      ->check(CLI::IsMember({"optimal", "main-beamforming", "uniform", "no-secrecy", "file"}))
      ->capture_default_str();
  app->add_option("--covariance", c.covariance, "Covariance JSON {\"K\": ...} for strategy 'file'");
  app->add_option("--multiplicity-tol", c.multiplicity_tol,
                  "Relative tolerance for clustering the top eigenvalue of Phi")
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Low-SNR secrecy capacity analysis of Gaussian MIMO wiretap channels",
               "secrecy_analyzer"};
  app.footer(kFooter);
  app.require_subcommand(1);

  auto* analyze = app.add_subcommand("analyze", "First/second derivatives at SNR = 0 and optimal signaling");
  analyze->add_option("--input", c.input, "Channel JSON")->required();
  analyze->add_option("--output", c.output, "Write the profile JSON here");
  analyze->add_option("--multiplicity-tol", c.multiplicity_tol,
                      "Relative tolerance for clustering the top eigenvalue of Phi")
      ->capture_default_str();
  analyze->add_option("--snr", c.snr, "SNR at which to report the implied transmit power")
      ->capture_default_str();
  analyze->add_flag("--compare-relaxation", c.compare_relaxation,
                    "Also report the curvature over non-diagonal eigenspace weights");

  auto* sweep_rate = app.add_subcommand("sweep-rate", "Secrecy rate (nats) versus SNR");
  sweep_rate->add_option("--input", c.input, "Channel JSON")->required();
  sweep_rate->add_option("--output", c.output, "CSV path (stdout when absent)");
  add_strategy(sweep_rate, c);
  add_grid(sweep_rate, c.grid);

  auto* sweep_energy = app.add_subcommand("sweep-energy", "Secrecy rate (bits) versus energy per secret bit");
  sweep_energy->add_option("--input", c.input, "Channel JSON")->required();
  sweep_energy->add_option("--output", c.output, "CSV path (stdout when absent)");
  add_strategy(sweep_energy, c);
  add_grid(sweep_energy, c.grid);

  auto* fading = app.add_subcommand("fading", "Monte Carlo averages over a fading model");
  fading->add_option("--input", c.input, "Fading model JSON")->required();
  fading->add_option("--output", c.output, "Profile JSON path (stdout when absent)");
  fading->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  fading->add_option("--samples", c.samples, "Channel realizations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  fading->add_option("--sweep-output", c.sweep_output,
                     "Also write the average-rate CSV here (nT = 1 models only)");
  add_grid(fading, c.grid);

  auto* correlation = app.add_subcommand(
      "correlation-sweep", "Minimum energy per secret bit of a correlated scalar Rayleigh pair");
  correlation->add_option("--rho-list", c.rho_list, "Comma-separated, increasing, each in [0, 1)")
      ->capture_default_str();
  correlation->add_option("--output", c.output, "CSV path (stdout when absent)");
  correlation->add_option("--nm", c.nm, "Main receiver noise variance")->capture_default_str();
  correlation->add_option("--ne", c.ne, "Eavesdropper noise variance")->capture_default_str();
  correlation->add_option("--samples", c.rho_samples, "Monte Carlo cross-check samples (0: none)")
      ->capture_default_str();
  correlation->add_option("--seed", c.seed, "Random seed")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (*analyze) return cmd_analyze(c, out);
    if (*sweep_rate) return cmd_sweep_rate(c, out);
    if (*sweep_energy) return cmd_sweep_energy(c, out, err);
    if (*fading) return cmd_fading(c, out);
    return cmd_correlation_sweep(c, out);
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNoConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace secrecy::cli
