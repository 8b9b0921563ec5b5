#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "secrecy/matrix.hpp"
#include "secrecy/simplex_qp.hpp"
#include "secrecy/sweep.hpp"
#include "secrecy/wiretap.hpp"

namespace secrecy {

/// First/second SNR-derivatives of the secrecy capacity at SNR = 0 together
/// with the signaling that attains them.
struct LowSnrProfile {
  /// Capacity slope at zero, [lambda_max(Phi)]^+.
  double c1 = 0.0;
  /// Capacity curvature at zero, -n_R min alpha^T M alpha (0 when c1 = 0).
  double c2 = 0.0;
  /// Largest eigenvalue of Phi, possibly negative.
  double lambda_max = 0.0;
  /// Orthonormal basis of the maximal-eigenvalue eigenspace; empty when lambda_max <= 0.
  std::vector<ComplexVector> eigenspace;
  /// Power split over `eigenspace`, on the simplex.
  std::vector<double> alpha;
  /// sum_i alpha_i u_i u_i†. Beamforming on the top eigenvector of Phi when
  /// secrecy is impossible (every covariance then yields zero rate).
  NormalizedCovariance optimal_cov = NormalizedCovariance::uniform(1);
  /// log 2 / c1 in dB, +inf when c1 = 0.
  double eb_n0_min_db = 0.0;
  double wideband_slope = 0.0;
  bool secrecy_possible = false;
  /// False when the simplex problem was too large for exhaustive enumeration.
  bool exact_simplex = true;

  std::size_t multiplicity() const noexcept { return eigenspace.size(); }
};

struct AnalysisOptions {
  /// Eigenvalues within multiplicity_tol * (1 + |lambda_max|) of the top one
  /// belong to the maximal eigenspace.
  double multiplicity_tol = 1e-8;
};

/// Eigenvectors with lambda_max - lambda_i <= rel_tol (1 + |lambda_max|), in
/// eigen-decomposition order. Empty when lambda_max <= 0.
std::vector<ComplexVector> maximal_eigenspace(const EigenDecomposition& eig,
                                              double rel_tol = 1e-8);

/// M_ij = |u_j† H_m†H_m u_i|² - (N_m/N_e)² |u_j† H_e†H_e u_i|².
/// Throws DomainError on an empty eigenspace.
SimplexQP quadratic_form_matrix(const WiretapChannel& ch,
                                std::span<const ComplexVector> eigenspace);

LowSnrProfile secrecy_derivatives(const WiretapChannel& ch, const AnalysisOptions& options = {});

/// 10 log10(log 2 / c1), +inf for c1 = 0.
double min_energy_per_secret_bit(double c1);

/// 2 c1² / (-c2); 0 when c1 = 0; +inf when c1 > 0 and c2 >= 0.
double wideband_slope(double c1, double c2);

/// c1 snr + c2 snr² / 2 in nats per dimension.
double capacity_second_order_approx(const LowSnrProfile& profile, double snr);

/// Energy per secret bit in dB for a rate in nats at the given SNR:
/// 10 log10(snr log 2 / rate).
double energy_per_bit_db(double snr, double rate_nats);

/// Rows (eb_n0_db, rate_bits_per_dim) along snr_grid; zero-rate points are
/// omitted and counted in SweepTable::omitted.
SweepTable energy_rate_curve(const WiretapChannel& ch, const NormalizedCovariance& cov,
                             const std::vector<double>& snr_grid);

/// v v† for the top eigenvector v of H_m† H_m (best without an eavesdropper).
NormalizedCovariance main_beamforming_covariance(const WiretapChannel& ch);

/// Comparison-only relaxation of the curvature problem: minimum of
/// tr((H_m K H_m†)²) - (N_m/N_e)² tr((H_e K H_e†)²) over K = U W U† with W any
/// PSD unit-trace matrix on the eigenspace basis U (not only diagonal W).
/// Solved by projected gradient from the diagonal optimum and is therefore
/// never worse than it; not guaranteed global.
struct RelaxedCurvature {
  HermitianMatrix weights;
  double value = 0.0;
};
RelaxedCurvature minimize_psd_weight_relaxation(const WiretapChannel& ch,
                                                std::span<const ComplexVector> eigenspace,
                                                std::span<const double> diagonal_start);

}  // namespace secrecy
