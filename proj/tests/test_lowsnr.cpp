#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "secrecy/errors.hpp"
#include "secrecy/lowsnr.hpp"
#include "secrecy/simplex_qp.hpp"
#include "support.hpp"

using namespace secrecy;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double grid_search_minimum(const SimplexQP& qp) {
  // Exhaustive scan of the 2-simplex at step 1e-3.
  double best = kInf;
  constexpr int kSteps = 1000;
  for (int i = 0; i <= kSteps; ++i)
    for (int j = 0; i + j <= kSteps; ++j) {
      const std::vector<double> a{i / double(kSteps), j / double(kSteps),
                                  (kSteps - i - j) / double(kSteps)};
      best = std::min(best, qp.objective(a));
    }
  return best;
}

double fourth_power_norm(const ComplexMatrix& h, const ComplexVector& u) {
  const double n = norm(h * u);
  return n * n * n * n;
}

WiretapChannel rotate_inputs(const WiretapChannel& ch, const ComplexMatrix& v) {
  return WiretapChannel(ch.hm() * v, ch.he() * v, ch.nm(), ch.ne());
}

/// Unitary from the eigenvectors of a random Hermitian matrix.
ComplexMatrix random_unitary(std::mt19937_64& gen, std::size_t n) {
  const auto eig = hermitian_eig(testing::random_hermitian(gen, n));
  ComplexMatrix q(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) q(i, j) = eig.vectors[j][i];
  return q;
}

}  // namespace

TEST_CASE("maximal eigenspace") {
  const auto golden = secrecy_derivatives(testing::golden_channel());
  CHECK(golden.multiplicity() == 1);

  const auto eig = hermitian_eig(phi_matrix(testing::degenerate_channel()));
  const auto basis = maximal_eigenspace(eig);
  REQUIRE(basis.size() == 2);
  for (const auto& u : basis) CHECK(std::abs(u[2]) < 1e-14);

  const WiretapChannel same(ComplexMatrix::from_rows({{1.0}}), ComplexMatrix::from_rows({{1.0}}),
                            1.0, 1.0);
  CHECK(maximal_eigenspace(hermitian_eig(phi_matrix(same))).empty());

  SUBCASE("tolerance widens the cluster") {
    const std::vector<double> d{2.0, 2.0 - 1e-6, 1.0};
    const auto e = hermitian_eig(HermitianMatrix(ComplexMatrix::diagonal(d)));
    CHECK(maximal_eigenspace(e, 1e-8).size() == 1);
    CHECK(maximal_eigenspace(e, 1e-6).size() == 2);
    CHECK_THROWS_AS(maximal_eigenspace(e, 0.0), DomainError);
  }
}

TEST_CASE("quadratic form matrix") {
  SUBCASE("parallel channels") {
    const auto ch = testing::degenerate_channel();
    const auto basis = maximal_eigenspace(hermitian_eig(phi_matrix(ch)));
    const auto qp = quadratic_form_matrix(ch, basis);
    REQUIRE(qp.size() == 2);
    CHECK(qp(0, 0) == doctest::Approx(21.0).epsilon(1e-13));
    CHECK(qp(1, 1) == doctest::Approx(15.0).epsilon(1e-13));
    CHECK(std::abs(qp(0, 1)) < 1e-13);
  }
  SUBCASE("single vector") {
    const auto ch = testing::golden_channel();
    const auto u = hermitian_eig(phi_matrix(ch)).vectors[0];
    const auto qp = quadratic_form_matrix(ch, std::vector<ComplexVector>{u});
    CHECK(qp(0, 0) == doctest::Approx(fourth_power_norm(ch.hm(), u) - fourth_power_norm(ch.he(), u))
                          .epsilon(1e-12));
  }
  SUBCASE("no eavesdropper, shared eigenvalue") {
    const std::vector<double> d{2.0, 2.0, 1.0};
    const WiretapChannel ch(ComplexMatrix::diagonal(d), ComplexMatrix(1, 3), 1.0, 1.0);
    const auto basis = maximal_eigenspace(hermitian_eig(phi_matrix(ch)));
    const auto qp = quadratic_form_matrix(ch, basis);
    REQUIRE(qp.size() == 2);
    CHECK(qp(0, 0) == doctest::Approx(16.0));
    CHECK(qp(1, 1) == doctest::Approx(16.0));
    CHECK(std::abs(qp(0, 1)) < 1e-13);
  }
  CHECK_THROWS_AS(quadratic_form_matrix(testing::golden_channel(), {}), DomainError);
}

TEST_CASE("simplex minimization") {
  SUBCASE("diagonal 21, 15") {
    const auto sol = minimize_simplex_quadratic(SimplexQP(2, {21.0, 0.0, 0.0, 15.0}));
    CHECK(sol.exact);
    CHECK(std::abs(sol.alpha[0] - 5.0 / 12.0) < 1e-9);
    CHECK(std::abs(sol.alpha[1] - 7.0 / 12.0) < 1e-9);
    CHECK(sol.value == doctest::Approx(8.75).epsilon(1e-14));
  }
  SUBCASE("single entry") {
    const auto sol = minimize_simplex_quadratic(SimplexQP(1, {4.5}));
    CHECK(sol.alpha == std::vector<double>{1.0});
    CHECK(sol.value == 4.5);
  }
  SUBCASE("random 3x3 against a grid search") {
    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> diag(0.5, 5.0);
    std::uniform_real_distribution<double> off(-3.0, 3.0);
    for (int rep = 0; rep < 30; ++rep) {
      std::vector<double> m(9);
      for (int i = 0; i < 3; ++i) {
        m[i * 3 + i] = diag(gen);
        for (int j = i + 1; j < 3; ++j) m[i * 3 + j] = m[j * 3 + i] = off(gen);
      }
      const SimplexQP qp(3, m);
      const auto sol = minimize_simplex_quadratic(qp);
      CHECK(sol.value <= grid_search_minimum(qp) + 1e-12);
      CHECK(std::abs(sol.value - grid_search_minimum(qp)) < 1e-5);
      CHECK(std::abs(qp.objective(sol.alpha) - sol.value) < 1e-14);
    }
  }
  SUBCASE("ties go to the lexicographically smallest point") {
    const auto sol = minimize_simplex_quadratic(SimplexQP(2, {1.0, 1.0, 1.0, 1.0}));
    CHECK(sol.alpha == std::vector<double>{0.0, 1.0});
  }
  SUBCASE("projected gradient beyond the enumeration bound") {
    // Positive diagonal M: minimizer alpha_i proportional to 1/M_ii.
    const std::size_t l = kMaxExactSimplexSize + 2;
    std::vector<double> m(l * l, 0.0);
    double harmonic = 0.0;
    for (std::size_t i = 0; i < l; ++i) {
      m[i * l + i] = 1.0 + static_cast<double>(i);
      harmonic += 1.0 / m[i * l + i];
    }
    const auto sol = minimize_simplex_quadratic(SimplexQP(l, m));
    CHECK_FALSE(sol.exact);
    CHECK(sol.value == doctest::Approx(1.0 / harmonic).epsilon(1e-9));
  }
  SUBCASE("projection onto the simplex") {
    const auto p = project_to_simplex({0.5, 0.5, 0.5});
    for (double x : p) CHECK(x == doctest::Approx(1.0 / 3.0));
    CHECK(project_to_simplex({2.0, 0.0}) == std::vector<double>{1.0, 0.0});
    const auto q = project_to_simplex({0.3, -1.0, 0.9});
    CHECK(q[1] == 0.0);
    CHECK(q[0] + q[2] == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(SimplexQP(0, {}), DomainError);
  CHECK_THROWS_AS(SimplexQP(2, {1.0}), ShapeError);
}

TEST_CASE("secrecy derivatives on known channels") {
  SUBCASE("golden channel") {
    const auto ch = testing::golden_channel();
    const auto p = secrecy_derivatives(ch);
    CHECK(std::abs(p.c1 - 1.6298) < 1e-3);
    CHECK(p.secrecy_possible);
    REQUIRE(p.alpha.size() == 1);
    const auto& u = p.eigenspace[0];
    CHECK(p.c2 == doctest::Approx(-3.0 * (fourth_power_norm(ch.hm(), u) -
                                          fourth_power_norm(ch.he(), u)))
                      .epsilon(1e-12));
    // The rounded printed eigenvector reproduces the curvature to its precision.
    ComplexVector printed{-0.4677, -0.8823, 0.054};
    const double n = norm(printed);
    for (auto& e : printed) e /= n;
    const double c2_printed = -3.0 * (fourth_power_norm(ch.hm(), printed) -
                                      fourth_power_norm(ch.he(), printed));
    CHECK(std::abs(p.c2 - c2_printed) < 1e-2 * std::abs(p.c2));
    CHECK(p.wideband_slope == doctest::Approx(2.0 * p.c1 * p.c1 / -p.c2).epsilon(1e-14));
    CHECK(std::abs(p.eb_n0_min_db - -3.71) < 0.01);
  }
  SUBCASE("identical scalar links") {
    const WiretapChannel ch(ComplexMatrix::from_rows({{1.0}}), ComplexMatrix::from_rows({{1.0}}),
                            1.0, 1.0);
    const auto p = secrecy_derivatives(ch);
    CHECK(p.c1 == 0.0);
    CHECK(p.c2 == 0.0);
    CHECK_FALSE(p.secrecy_possible);
    CHECK(p.eb_n0_min_db == kInf);
    CHECK(p.multiplicity() == 0);
    CHECK(p.wideband_slope == 0.0);
  }
  SUBCASE("parallel channels with a double top eigenvalue") {
    const auto p = secrecy_derivatives(testing::degenerate_channel());
    CHECK(p.c1 == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(p.multiplicity() == 2);
    // The basis vectors are the first two axes; alpha follows them.
    const double w0 = std::norm(p.eigenspace[0][0]);
    const double a5 = w0 > 0.5 ? p.alpha[0] : p.alpha[1];
    CHECK(std::abs(a5 - 5.0 / 12.0) < 1e-9);
    CHECK(p.c2 == doctest::Approx(-26.25).epsilon(1e-12));
    const auto& k = p.optimal_cov.matrix();
    CHECK(std::abs(k(0, 0).real() - 5.0 / 12.0) < 1e-9);
    CHECK(std::abs(k(1, 1).real() - 7.0 / 12.0) < 1e-9);
    CHECK(std::abs(k(2, 2)) < 1e-14);
  }
}

TEST_CASE("energy and slope conversions") {
  CHECK(std::abs(min_energy_per_secret_bit(1.6298) - -3.71) < 0.01);
  CHECK(std::abs(min_energy_per_secret_bit(2.7676) - -6.01) < 0.01);
  CHECK(min_energy_per_secret_bit(0.0) == kInf);
  CHECK_THROWS_AS(min_energy_per_secret_bit(-1.0), DomainError);

  // Single eigenvalue without secrecy: c1 = lambda, c2 = -n_R lambda².
  CHECK(wideband_slope(2.0, -3.0 * 4.0) == doctest::Approx(2.0 / 3.0));
  // Scalar channel a = 2, b = 1, n_R = 1.
  CHECK(wideband_slope(1.0, -3.0) == doctest::Approx(2.0 / 3.0));
  CHECK(wideband_slope(0.0, 0.0) == 0.0);
  CHECK(wideband_slope(1.0, 0.0) == kInf);

  CHECK(energy_per_bit_db(1.0, std::log(2.0)) == doctest::Approx(0.0));
  CHECK(energy_per_bit_db(1.0, 0.0) == kInf);
}

TEST_CASE("second-order approximation") {
  const auto ch = testing::golden_channel();
  const auto p = secrecy_derivatives(ch);
  CHECK(capacity_second_order_approx(p, 0.0) == 0.0);
  CHECK(std::abs(capacity_second_order_approx(p, 1e-3) - secrecy_rate(ch, p.optimal_cov, 1e-3).nats) <
        1e-7);
  LowSnrProfile linear;
  linear.c1 = 2.0;
  CHECK(capacity_second_order_approx(linear, 0.25) == 0.5);
}

TEST_CASE("energy-rate curves approach the minimum bit energy") {
  const auto ch = testing::golden_channel();
  const auto p = secrecy_derivatives(ch);
  const std::vector<double> grid{1e-7, 1e-6};
  auto limit = [&](const NormalizedCovariance& cov) {
    const auto t = energy_rate_curve(ch, cov, grid);
    REQUIRE(t.rows.size() == 2);
    return t.rows.front()[0];
  };
  CHECK(std::abs(limit(p.optimal_cov) - -3.71) < 0.02);
  CHECK(std::abs(limit(NormalizedCovariance::uniform(3)) - 5.85) < 0.02);
  CHECK(std::abs(limit(main_beamforming_covariance(ch)) - -2.54) < 0.02);

  const WiretapChannel same(ComplexMatrix::from_rows({{1.0}}), ComplexMatrix::from_rows({{1.0}}),
                            1.0, 1.0);
  const auto t = energy_rate_curve(same, NormalizedCovariance::uniform(1), grid);
  CHECK(t.rows.empty());
  CHECK(t.omitted == 2);
  CHECK_THROWS_AS(energy_rate_curve(ch, p.optimal_cov, {1e-3, 1e-4}), DomainError);

  std::ostringstream csv;
  energy_rate_curve(ch, p.optimal_cov, grid).write_csv(csv);
  CHECK(csv.str().rfind("eb_n0_db,rate_bits_per_dim\n", 0) == 0);
}

TEST_CASE("properties on random channels") {
  std::mt19937_64 gen(32);
  for (int rep = 0; rep < 200; ++rep) {
    const auto ch = testing::random_channel(gen);
    const auto p = secrecy_derivatives(ch);
    CAPTURE(rep);

    // Profile invariants.
    CHECK((p.c1 == 0.0) == !p.secrecy_possible);
    CHECK((p.eb_n0_min_db == kInf) == !p.secrecy_possible);
    CHECK(p.optimal_cov.matrix().trace() == doctest::Approx(1.0).epsilon(1e-10));
    if (p.secrecy_possible) {
      double sum = 0.0;
      for (double a : p.alpha) {
        CHECK(a >= 0.0);
        CHECK(a <= 1.0);
        sum += a;
      }
      CHECK(std::abs(sum - 1.0) < 1e-10);
      // Minimum of the simplex problem is nonnegative: the curvature is never positive.
      CHECK(p.c2 <= 1e-9);
    }

    // Dominance of the top eigenvalue over every covariance.
    for (int k = 0; k < 100; ++k)
      CHECK(rate_first_derivative(ch, testing::random_covariance(gen, ch.n_t())) <= p.c1 + 1e-9);

    // Weyl gap, stated for the unclipped top eigenvalue.
    const double lm = hermitian_eig(HermitianMatrix::gram(ch.hm())).max_value();
    const double le = hermitian_eig(ch.noise_ratio() * HermitianMatrix::gram(ch.he())).min_value();
    CHECK(p.lambda_max <= lm - le + 1e-9);

    // Input rotations leave the slope unchanged.
    const auto rotated = secrecy_derivatives(rotate_inputs(ch, random_unitary(gen, ch.n_t())));
    CHECK(std::abs(rotated.c1 - p.c1) < 1e-10);

    // Finite differences of the rate along the optimal covariance.
    if (p.secrecy_possible) {
      auto f = [&](double h) { return secrecy_rate(ch, p.optimal_cov, h).nats; };
      CHECK(std::abs(testing::richardson_slope(f) - p.c1) <= 1e-3 * p.c1);
      CHECK(std::abs(testing::richardson_curvature(f) - p.c2) <= 1e-3 * std::abs(p.c2));
    }
  }
}

TEST_CASE("single transmit antenna closed forms") {
  std::mt19937_64 gen(33);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t nr = 1 + rep % 4, ne = 1 + (rep / 4) % 4;
    const auto hm = testing::random_matrix(gen, nr, 1);
    const auto he = testing::random_matrix(gen, ne, 1);
    const WiretapChannel ch(hm, he, 1.0, 0.5 + 0.01 * rep);
    const double a = std::pow(norm(hm.column(0)), 2);
    const double b = ch.noise_ratio() * std::pow(norm(he.column(0)), 2);
    const auto p = secrecy_derivatives(ch);
    CHECK(std::abs(p.c1 - std::max(a - b, 0.0)) < 1e-10);
    const double c2 = a > b ? -static_cast<double>(nr) * (a * a - b * b) : 0.0;
    CHECK(std::abs(p.c2 - c2) < 1e-10 * (1.0 + std::abs(c2)));
  }
}

TEST_CASE("rotations inside a degenerate eigenspace keep the slope") {
  std::mt19937_64 gen(34);
  const auto ch = testing::degenerate_channel();
  const auto p = secrecy_derivatives(ch);
  const auto phi = phi_matrix(ch);
  for (int rep = 0; rep < 20; ++rep) {
    const auto q = random_unitary(gen, 2);
    std::vector<ComplexVector> rotated(2, ComplexVector(3));
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t k = 0; k < 3; ++k) rotated[j][k] += q(i, j) * p.eigenspace[i][k];
    const auto sol = minimize_simplex_quadratic(quadratic_form_matrix(ch, rotated));
    HermitianMatrix k(ComplexMatrix(3, 3));
    for (std::size_t i = 0; i < 2; ++i) k += sol.alpha[i] * HermitianMatrix::outer(rotated[i]);
    const auto cov = NormalizedCovariance::from_unnormalized(k);
    CHECK(std::abs(rate_first_derivative(ch, cov) - p.c1) < 1e-10);
  }
}

TEST_CASE("PSD weight relaxation is never worse than the diagonal optimum") {
  std::mt19937_64 gen(35);
  const auto ch = testing::degenerate_channel();
  const auto p = secrecy_derivatives(ch);
  const auto relaxed = minimize_psd_weight_relaxation(ch, p.eigenspace, p.alpha);
  const double diagonal = -p.c2 / 3.0;
  CHECK(relaxed.value <= diagonal + 1e-12);
  CHECK(relaxed.weights.trace() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(is_psd(relaxed.weights));
  for (int rep = 0; rep < 20; ++rep) {
    const auto c = testing::random_channel(gen);
    const auto q = secrecy_derivatives(c);
    if (!q.secrecy_possible) continue;
    const auto r = minimize_psd_weight_relaxation(c, q.eigenspace, q.alpha);
    CHECK(r.value <= -q.c2 / static_cast<double>(c.n_r()) + 1e-12);
  }
}

TEST_CASE("main-link beamformer") {
  const auto ch = testing::golden_channel();
  const auto cov = main_beamforming_covariance(ch);
  const double lmax = hermitian_eig(HermitianMatrix::gram(ch.hm())).max_value();
  CHECK(std::abs(lmax - 2.7676) < 1e-3);
  auto f = [&](double h) { return main_link_rate(ch, cov, h).nats; };
  CHECK(std::abs(testing::richardson_slope(f) - lmax) < 1e-3 * lmax);
}
