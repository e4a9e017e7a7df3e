#include <cmath>

#include <boost/math/special_functions/zeta.hpp>

#include "doctest.h"
#include "torsionlab/spectral.hpp"

using namespace torsionlab;

namespace {

const double kPi = std::acos(-1.0);

// Brute-force first sign change of f on a uniform grid, then plain bisection.
double first_zero_by_grid(CrossProductKind kind, double l1, double l2, double step) {
  double a = step;
  double fa = cross_product(kind, 0.0, l1, l2, a);
  for (;;) {
    const double b = a + step;
    const double fb = cross_product(kind, 0.0, l1, l2, b);
    if ((fa < 0.0) != (fb < 0.0)) {
      double lo = a, hi = b;
      for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = cross_product(kind, 0.0, l1, l2, mid);
        if ((fm < 0.0) == (fa < 0.0)) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    }
    a = b;
    fa = fb;
  }
}

// Power series for J_v (sign = -1) or I_v (sign = +1), valid for any real order v.
double bessel_series(double v, double x, double sign) {
  double sum = 0.0;
  for (int k = 0; k < 60; ++k) {
    const double g = std::tgamma(k + v + 1.0);
    sum += std::pow(sign, k) * std::pow(0.5 * x, 2 * k + v) / (std::tgamma(k + 1.0) * g);
  }
  return sum;
}

}  // namespace

TEST_CASE("cross products: parsing, antisymmetry and small-z limits") {
  CHECK(parse_cross_product_kind("F") == CrossProductKind::F);
  CHECK(parse_cross_product_kind("Ftilde") == CrossProductKind::Ftilde);
  CHECK_THROWS_AS(parse_cross_product_kind("G"), std::invalid_argument);

  for (double mu : {0.0, 0.5, 2.0, 3.7}) {
    for (double z : {0.4, 1.3, 5.0}) {
      // Swapping the radii directly in the defining expression flips the sign.
      const double a = 1.0, b = 2.0;
      const double f = cross_product(CrossProductKind::F, mu, a, b, z);
      double swapped;
      if (mu == std::floor(mu)) {
        swapped = std::cyl_bessel_j(mu, a * z) * std::cyl_neumann(mu, b * z) -
                  std::cyl_bessel_j(mu, b * z) * std::cyl_neumann(mu, a * z);
      } else {
        swapped = bessel_series(mu, a * z, -1) * bessel_series(-mu, b * z, -1) -
                  bessel_series(mu, b * z, -1) * bessel_series(-mu, a * z, -1);
      }
      CHECK(f == doctest::Approx(-swapped).epsilon(1e-12));
    }
  }

  const double l1 = 1.0, l2 = 2.0;
  const double z = 1e-7;
  CHECK(std::fabs(cross_product(CrossProductKind::F, 0.0, l1, l2, z)) ==
        doctest::Approx(2.0 / kPi * std::log(l2 / l1)).epsilon(1e-10));
  CHECK(cross_product(CrossProductKind::Ftilde, 0.0, l1, l2, z) ==
        doctest::Approx((l2 * l2 - l1 * l1) / (kPi * l1 * l2)).epsilon(1e-10));
  CHECK(gee(CrossProductKind::F, 0.0, l1, l2, 1e-9) == doctest::Approx(2.0 / kPi * std::log(2.0)).epsilon(1e-9));
  CHECK(log_normalized_product(CrossProductKind::F, 0.0, l1, l2, 0.0) == 0.0);
  CHECK(std::fabs(log_normalized_product(CrossProductKind::F, 3.0, l1, l2, 1e-6)) < 1e-10);
  CHECK(std::fabs(log_normalized_product(CrossProductKind::Ftilde, 0.0, l1, l2, 1e-6)) < 1e-10);
  CHECK(std::fabs(log_normalized_product(CrossProductKind::Ftilde, 3.0, l1, l2, 1e-5)) < 1e-8);
  CHECK_THROWS_AS(cross_product(CrossProductKind::F, 0.0, 2.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("gee matches the non-integer order sine normalization") {
  // For non-integer mu, F_mu(iy) = I_mu(l2 y) I_{-mu}(l1 y) - I_mu(l1 y) I_{-mu}(l2 y).
  const double mu = 0.3, l1 = 1.0, l2 = 2.0, y = 0.7;
  const auto Ip = [](double v, double x) { return bessel_series(v, x, 1); };
  const double direct = Ip(mu, l2 * y) * Ip(-mu, l1 * y) - Ip(mu, l1 * y) * Ip(-mu, l2 * y);
  CHECK(gee(CrossProductKind::F, mu, l1, l2, y) == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("zero tables") {
  const auto table = find_zeros(CrossProductKind::F, 0.0, 1.0, 2.0, 200, 1e-13);
  REQUIRE(table.zeros.size() == 200);
  const auto cert = certify(table);
  CHECK(cert.ok);
  CHECK(cert.strictly_increasing);
  CHECK(cert.max_late_gap_deviation < 1e-3);
  CHECK(table.zeros.back() / (200 * kPi) == doctest::Approx(1.0).epsilon(1e-5));

  const double oracle = first_zero_by_grid(CrossProductKind::F, 1.0, 2.0, 1e-4);
  CHECK(std::fabs(table.zeros.front() - oracle) <= 1e-12);
  const double oracle_t = first_zero_by_grid(CrossProductKind::Ftilde, 1.0, 2.0, 1e-4);
  const auto tilde = find_zeros(CrossProductKind::Ftilde, 0.0, 1.0, 2.0, 200, 1e-13);
  CHECK(std::fabs(tilde.zeros.front() - oracle_t) <= 1e-12);

  // a_k < a~_k < a_{k+1} over the whole table.
  for (std::size_t k = 0; k < 200; ++k) {
    CHECK(table.zeros[k] < tilde.zeros[k]);
    if (k + 1 < 200) CHECK(tilde.zeros[k] < table.zeros[k + 1]);
  }
  for (double z : table.zeros) CHECK(std::fabs(cross_product(CrossProductKind::F, 0.0, 1.0, 2.0, z)) < 1e-12);

  const auto high = find_zeros(CrossProductKind::F, 6.0, 0.5, 3.0, 50, 1e-12);
  CHECK(certify(high).ok);
  CHECK(high.zeros.front() > 6.0 / 3.0);

  // Deterministic regardless of how the scan is chunked.
  const auto again = find_zeros(CrossProductKind::F, 0.0, 1.0, 2.0, 200, 1e-13);
  CHECK(again.zeros == table.zeros);
  CHECK_THROWS_AS(find_zeros(CrossProductKind::F, 0.0, 1.0, 2.0, 0, 1e-12), std::invalid_argument);
}

TEST_CASE("product representation with the sinh tail") {
  const int K = 1000;
  const double l1 = 1.0, l2 = 2.0, L = l2 - l1;
  const auto table = find_zeros(CrossProductKind::F, 0.0, l1, l2, K, 1e-13);
  for (double y = 0.1; y <= 2.0 + 1e-12; y += 0.1) {
    double log_prod = 0.0, log_asym = 0.0;
    const double x = y * L / kPi;
    for (int k = 1; k <= K; ++k) {
      log_prod += std::log1p(y * y / (table.zeros[k - 1] * table.zeros[k - 1]));
      log_asym += std::log1p(x * x / (static_cast<double>(k) * k));
    }
    const double tail = std::log(std::sinh(kPi * x) / (kPi * x)) - log_asym;
    const double g = gee(CrossProductKind::F, 0.0, l1, l2, y);
    const double product = 2.0 / kPi * std::log(l2 / l1) * std::exp(log_prod + tail);
    CHECK(std::fabs(product / g - 1.0) <= 1e-6);
  }
}

TEST_CASE("axial zeta derivatives") {
  const auto f = zprime0_axial(CrossProductKind::F, 1.0, 2.0);
  CHECK(f.method == ZetaMethod::closed_form);
  CHECK(f.value_at_0_derivative ==
        doctest::Approx(-0.5 * std::log(2.0) - std::log(std::log(2.0)) - std::log(2.0)).epsilon(1e-15));
  const auto ft = zprime0_axial(CrossProductKind::Ftilde, 1.0, 2.0);
  CHECK(ft.value_at_0_derivative == doctest::Approx(0.5 * std::log(2.0) - std::log(3.0)).epsilon(1e-15));

  const auto oracle = zprime0_axial_oracle(CrossProductKind::F, 1.0, 2.0, 2000);
  CHECK(oracle.method == ZetaMethod::continuation_oracle);
  CHECK(oracle.zeros_used == 2000);
  CHECK(std::fabs(oracle.value_at_0_derivative - f.value_at_0_derivative) < 1e-5);
  CHECK(std::fabs(oracle.richardson - f.value_at_0_derivative) < 1e-4);
  const auto oracle_t = zprime0_axial_oracle(CrossProductKind::Ftilde, 1.0, 2.0, 2000);
  CHECK(std::fabs(oracle_t.value_at_0_derivative - ft.value_at_0_derivative) < 1e-5);

  // Scaling the radii by c scales zeros by 1/c and shifts Z'(0) by -log c.
  const double c = 2.0;
  const auto scaled = zprime0_axial_oracle(CrossProductKind::F, c, 2 * c, 2000);
  CHECK(scaled.value_at_0_derivative - oracle.value_at_0_derivative == doctest::Approx(-std::log(c)).epsilon(1e-8));
  const auto scaled_t = zprime0_axial_oracle(CrossProductKind::Ftilde, c, 2 * c, 2000);
  CHECK(scaled_t.value_at_0_derivative - oracle_t.value_at_0_derivative ==
        doctest::Approx(-std::log(c)).epsilon(1e-8));

  CHECK_THROWS_AS(zprime0_axial_oracle(CrossProductKind::F, 1.0, 2.0, 60, 1e-14), std::runtime_error);
}

TEST_CASE("phi_1 and Phi_1") {
  const double l1 = 1.0, l2 = 2.0;
  CHECK(std::fabs(phi1(l1, l2, -1e18)) < 1e-9);
  CHECK(std::fabs(phi1(l1, l2, -1e18)) < std::fabs(phi1(l1, l2, -1e6)));
  CHECK_THROWS_AS(phi1(l1, l2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(phi1(l1, l2, 0.5), std::invalid_argument);

  for (double s : {0.25, 0.6, 1.3}) {
    const double closed = Phi1(l1, l2, s);
    const double quad = Phi1_quadrature(l1, l2, s);
    CHECK(std::fabs(quad / closed - 1.0) <= 1e-6);
  }
  CHECK(Phi1_quadrature(0.5, 3.0, 0.25) == doctest::Approx(Phi1(0.5, 3.0, 0.25)).epsilon(1e-6));

  const auto t = phi_terms(l1, l2, -1.0, 0.25);
  CHECK(t.residue_at_0 == 0.0);
  CHECK(t.finite_part_at_0 == 0.0);
  CHECK(t.slope_at_0 == doctest::Approx(-2.0 * std::log(2.0)).epsilon(1e-15));
  CHECK(t.measured_plus == doctest::Approx(t.slope_at_0).epsilon(1e-2));
  CHECK(t.measured_minus == doctest::Approx(t.slope_at_0).epsilon(1e-2));
  CHECK(std::fabs(Phi1(l1, l2, 1e-8)) < 1e-7);
}

TEST_CASE("zeta constants and double series") {
  CHECK(zeta_constants::zeta_at_0() == doctest::Approx(-0.5).epsilon(1e-15));
  const double h = 1e-5;
  const double fd = (boost::math::zeta(h) - boost::math::zeta(-h)) / (2 * h);
  CHECK(zeta_constants::zeta_prime_at_0() == doctest::Approx(fd).epsilon(1e-8));

  const auto d = double_series_terms(2.0, 1.0, 2.0);
  CHECK(d.A01_prime_0 == doctest::Approx(std::log(kPi)).epsilon(1e-15));
  CHECK(d.A00_0 == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-15));
  CHECK(d.difference == doctest::Approx(-0.5 * std::log(2.0) + std::log(2.0) - std::log(2 * kPi)).epsilon(1e-15));
  for (double nu : {1.0, 1.5, 7.0}) CHECK(double_series_terms(nu, 0.5, 3.0).A01_0 == 0.5);
  CHECK_THROWS_AS(double_series_terms(0.5, 1.0, 2.0), std::invalid_argument);
}

TEST_CASE("spectrum descriptor and torsion zeta assembly") {
  const auto abs = torsion_zeta_coefficients(SpectralBC::absolute);
  CHECK(abs.a_nu == 1.0);
  CHECK(abs.atilde_nu == -1.0);
  CHECK(abs.a_0 == 0.5);
  CHECK(abs.atilde_0 == -0.5);
  const auto rel = torsion_zeta_coefficients(SpectralBC::relative);
  CHECK(rel.a_nu == -abs.a_nu);
  CHECK(rel.a_0 == -abs.a_0);
  CHECK(spectrum_descriptor(1, SpectralBC::absolute).size() == 4);
  CHECK_THROWS_AS(spectrum_descriptor(3, SpectralBC::absolute), std::invalid_argument);

  for (double nu : {1.0, 2.0, std::sqrt(2.0), 10.0}) {
    for (double l1 : {0.1, 0.5, 1.0}) {
      for (double l2 : {1.5, 2.0, 3.0}) {
        const double t = torsion_zeta_log(nu, l1, l2);
        CHECK(std::fabs(t - torsion_zeta_display(nu, l1, l2)) <= 1e-14 * std::max(1.0, std::fabs(t)));
        CHECK(torsion_zeta_log(nu, l1, l2, SpectralBC::relative) == -t);
      }
    }
  }

  const auto semi = torsion_zeta_semi_numeric(2.0, 1.0, 2.0, 2000);
  CHECK(std::fabs(semi.value - torsion_zeta_display(2.0, 1.0, 2.0)) < 1e-4);
  CHECK(semi.error_estimate < 1e-4);
}

TEST_CASE("uniform expansion residuals") {
  double previous = 0.0, previous_lead = 0.0, previous_ratio = 1.0;
  for (int n : {10, 20, 40}) {
    const auto r = uniform_expansion_residual(n, 2.0, 1.0, 2.0, -1.0);
    const double scaled = r.residual * (2.0 * n) * (2.0 * n);
    const double lead_only = r.lhs - r.leading;
    if (previous != 0.0) {
      CHECK(scaled / previous > 1.0 / 1.5);
      CHECK(scaled / previous < 1.5);
      // Without the phi_1 term the decay is 1/n, approached at rate 1/n.
      const double ratio = lead_only / previous_lead;
      CHECK(ratio > 0.5);
      CHECK(ratio - 0.5 < 0.6 * (previous_ratio - 0.5));
      previous_ratio = ratio;
    }
    previous = scaled;
    previous_lead = lead_only;
  }
  const auto near_zero = uniform_expansion_residual(10, 2.0, 1.0, 2.0, -1e-8);
  CHECK(std::isfinite(near_zero.residual));
  CHECK(std::fabs(near_zero.lhs) < 1e-3);
  CHECK_THROWS_AS(uniform_expansion_residual(10, 2.0, 1.0, 2.0, 1.0), std::invalid_argument);
}
