#include <cmath>

#include "doctest.h"
#include "torsionlab/circle.hpp"
#include "torsionlab/spectral.hpp"

using namespace torsionlab;

namespace {

const double kPi = std::acos(-1.0);

}  // namespace

TEST_CASE("circle complexes") {
  const auto trivial = build_complex(CirclePreset::product_cw, Representation::trivial);
  CHECK(validate_complex(trivial).ok);
  CHECK(betti_ranks(trivial) == std::vector<std::size_t>{1, 1, 0});
  const auto sign = build_complex(CirclePreset::product_cw, Representation::sign);
  CHECK(validate_complex(sign).ok);
  CHECK(betti_ranks(sign) == std::vector<std::size_t>{0, 0, 0});
  CHECK_FALSE(validate_complex(build_complex(CirclePreset::paper_figure_1, Representation::trivial)).ok);
  CHECK_FALSE(validate_complex(build_complex(CirclePreset::paper_figure_1, Representation::sign)).ok);

  // Image of the top cell is spanned by c10 - c12 under the trivial representation.
  CHECK(trivial.boundaries[1] == RationalMatrix::from_rows({{1}, {0}, {-1}}));
  const double sign_torsion = rtorsion_circle_sign().value();
  CHECK(sign_torsion == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(rtorsion_circle_sign().magnitude.is_exact());
}

TEST_CASE("circle harmonic data") {
  const CircleFrustum f{1.0, 2.0, kPi / 6};
  const auto h = harmonic_data(f);
  CHECK(h.norm_one == doctest::Approx(std::sqrt(3 * kPi / 2)).epsilon(1e-15));
  CHECK(h.kappa == doctest::Approx(std::sqrt(std::log(2.0) / kPi)).epsilon(1e-15));
  CHECK(validate_homology(build_complex(CirclePreset::product_cw, Representation::trivial), h.homology).ok);
  for (double l1 : {0.2, 1.0}) {
    for (double alpha : {0.1, 0.7, 1.5}) {
      const CircleFrustum g{l1, 2.5, alpha};
      const auto d = harmonic_data(g);
      CHECK(d.norm_dtheta * d.norm_dtheta * std::sin(alpha) / (2 * kPi) ==
            doctest::Approx(std::log(2.5 / l1)).epsilon(1e-14));
      CHECK(d.norm_one * d.norm_one == doctest::Approx(g.volume()).epsilon(1e-14));
    }
  }
  CHECK(CircleFrustum::from_nu(1.0, 2.0, 2.0).alpha == doctest::Approx(kPi / 6).epsilon(1e-15));
  CHECK_THROWS_AS(CircleFrustum({2.0, 1.0, 0.5}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(CircleFrustum({1.0, 2.0, 2.0}).validate(), std::invalid_argument);
}

TEST_CASE("circle R torsion") {
  const CircleFrustum f{1.0, 2.0, kPi / 6};
  const double expected = std::log(kPi * 0.5 * std::sqrt(6.0) / std::sqrt(std::log(2.0)));
  CHECK(rtorsion_circle(f, CircleVariant::abs).value() == doctest::Approx(expected).epsilon(1e-14));
  CHECK(rtorsion_circle_closed_form(f, CircleVariant::abs) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(rtorsion_circle(f, CircleVariant::pair_W2).value() == 0.0);
  CHECK(rtorsion_circle(f, CircleVariant::pair_W2).magnitude.is_exact());

  for (double l1 : {0.3, 1.0, 1.7}) {
    for (double l2 : {2.0, 3.5, 10.0}) {
      for (double alpha : {0.2, kPi / 4, 1.3}) {
        const CircleFrustum g{l1, l2, alpha};
        const double a = rtorsion_circle(g, CircleVariant::abs).value();
        const double r = rtorsion_circle(g, CircleVariant::rel).value();
        CHECK(std::fabs(a - rtorsion_circle_closed_form(g, CircleVariant::abs)) < 1e-12);
        CHECK(std::fabs(r - rtorsion_circle_closed_form(g, CircleVariant::rel)) < 1e-12);
        CHECK(std::fabs(a + r) < 1e-12);
        CHECK(std::fabs(torsion_zeta_log(g.nu(), l1, l2) - a) < 1e-10);
      }
    }
  }
}

TEST_CASE("circle pair sequence") {
  for (double alpha : {0.3, 1.0}) {
    const CircleFrustum f{0.5, 3.0, alpha};
    const auto p = circle_pair_W2(f);
    CHECK(validate_sequence(p.sequence).ok);
    CHECK(validate_homology(p.sequence.sub, p.h_sub).ok);
    const auto d = milnor_decomposition(p.sequence, p.h_sub, p.h_total, p.h_quot);
    CHECK(std::fabs(static_cast<double>(d.defect.value())) < 1e-12);
    CHECK(static_cast<double>(d.compatibility.value()) == 0.0);
    CHECK(static_cast<double>(d.quotient.value()) == 0.0);
    CHECK(static_cast<double>(d.sequence.value()) == doctest::Approx(tau_T_log_derived(f.params())).epsilon(1e-13));
    CHECK(static_cast<double>(d.sub.value()) == doctest::Approx(std::log(2 * kPi * 3.0 * std::sin(alpha))).epsilon(1e-14));
  }
}

TEST_CASE("circle anomaly terms") {
  const CircleFrustum f{1.0, 2.0, kPi / 6};
  CHECK(anomaly_circle(f, 1, BoundaryCondition::absolute, 1) == doctest::Approx(-0.25));
  CHECK(anomaly_circle(f, 2, BoundaryCondition::relative, 1) == doctest::Approx(-0.25));
  CHECK(anomaly_circle_total(f, BoundaryCondition::absolute, 3) == 0.0);
  CHECK(anomaly_circle_total(f, BoundaryCondition::relative, 3) == 0.0);
  CHECK(anomaly_circle_total(f, BoundaryCondition::mixed, 2) == doctest::Approx(-2 * 0.5));
  CHECK_THROWS_AS(anomaly_circle(f, 3, BoundaryCondition::absolute, 1), std::invalid_argument);
}

TEST_CASE("cone and cylinder limits") {
  const CircleFrustum f{1.0, 2.0, kPi / 6};
  const auto cone = cone_sweep(f);
  CHECK(cone.increments_decreasing);
  CHECK(cone.rate_exponent >= 1.5);
  CHECK(cone.rate_exponent == doctest::Approx(2.0).epsilon(0.01));
  CHECK(std::fabs(cone.fitted_limit - cone.printed_limit) < 1e-9);
  CHECK(std::fabs(cone.printed_limit - cone.derived_limit) < 1e-14);
  // The two candidate constants coincide at l2 = 2 only.
  CHECK(std::fabs(cone.discrepancy_limit - cone.printed_limit) < 1e-15);
  const auto wide = cone_sweep({1.0, 3.0, kPi / 6});
  CHECK(std::fabs(wide.fitted_limit - wide.printed_limit) < 1e-9);
  CHECK(std::fabs(wide.discrepancy_limit - wide.printed_limit) > 0.1);

  const auto cyl = cylinder_sweep(1.0, 1.0);
  CHECK(cyl.alphas.size() == 5);
  CHECK(cyl.errors_decreasing);
  CHECK(std::fabs(cyl.torsion.back() - 2 * kPi) < 1e-4);
  const auto c = CircleFrustum::from_cylinder(1.0, 1.0, 1e-3);
  CHECK(c.l1 * std::sin(c.alpha) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK((c.l2 - c.l1) * std::cos(c.alpha) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("verification suite") {
  for (double l1 : {0.5, 1.0}) {
    for (double l2 : {2.0, 3.0}) {
      for (double alpha : {kPi / 6, kPi / 4}) {
        const auto report = verify_suite({l1, l2, alpha});
        for (const auto& e : report.entries) {
          INFO(e.check << " lhs=" << e.lhs << " rhs=" << e.rhs << " " << e.notes);
          CHECK(e.pass);
        }
        CHECK(report.all_pass());
      }
    }
  }
}
