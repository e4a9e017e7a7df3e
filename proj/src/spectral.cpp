#include "torsionlab/spectral.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <boost/math/tools/roots.hpp>

#include "torsionlab/bessel.hpp"
#include "torsionlab/parallel.hpp"

namespace torsionlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_lengths(double l1, double l2) {
  if (!(l1 > 0.0) || !(l2 > l1) || !std::isfinite(l2)) throw std::invalid_argument("need 0 < l1 < l2");
}

void require_order(double mu) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw std::invalid_argument("order must be a finite non-negative real");
}

long double log_length_ratio(long double l1, long double l2) { return std::log1p((l2 - l1) / l1); }

// log((l2/l1)^mu - (l1/l2)^mu)
long double log_power_ratio(double mu, double l1, double l2) {
  const long double r = log_length_ratio(l1, l2);
  return mu * r + std::log(-std::expm1(-2.0L * mu * r));
}

// Cross product with Y_mu in place of J_{-mu} for every order; same zeros.
double cross_product_y(CrossProductKind kind, double mu, double l1, double l2, double z) {
  if (kind == CrossProductKind::F) {
    return bessel::j(mu, l2 * z) * bessel::y(mu, l1 * z) - bessel::j(mu, l1 * z) * bessel::y(mu, l2 * z);
  }
  return bessel::j_prime(mu, l1 * z) * bessel::y_prime(mu, l2 * z) -
         bessel::j_prime(mu, l2 * z) * bessel::y_prime(mu, l1 * z);
}

// log D(y) and log D~(y), D = I(l2 y) K(l1 y) - I(l1 y) K(l2 y),
// D~ = I'(l1 y) K'(l2 y) - I'(l2 y) K'(l1 y); both positive for y > 0.
long double log_d(CrossProductKind kind, double mu, double l1, double l2, double y) {
  if (kind == CrossProductKind::F) {
    const long double big = std::log(static_cast<long double>(bessel::i(mu, l2 * y))) +
                            std::log(static_cast<long double>(bessel::k(mu, l1 * y)));
    const long double small = std::log(static_cast<long double>(bessel::i(mu, l1 * y))) +
                              std::log(static_cast<long double>(bessel::k(mu, l2 * y)));
    return big + std::log(-std::expm1(small - big));
  }
  const long double big = std::log(static_cast<long double>(bessel::i_prime(mu, l2 * y))) +
                          std::log(static_cast<long double>(-bessel::k_prime(mu, l1 * y)));
  const long double small = std::log(static_cast<long double>(bessel::i_prime(mu, l1 * y))) +
                            std::log(static_cast<long double>(-bessel::k_prime(mu, l2 * y)));
  return big + std::log(-std::expm1(small - big));
}

}  // namespace

std::string to_string(CrossProductKind kind) { return kind == CrossProductKind::F ? "F" : "Ftilde"; }

CrossProductKind parse_cross_product_kind(const std::string& text) {
  if (text == "F") return CrossProductKind::F;
  if (text == "Ftilde" || text == "F~" || text == "Ft") return CrossProductKind::Ftilde;
  throw std::invalid_argument("unknown cross-product kind '" + text + "' (expected F or Ftilde)");
}

double cross_product(CrossProductKind kind, double mu, double l1, double l2, double z) {
  require_order(mu);
  require_lengths(l1, l2);
  if (!(z > 0.0)) throw std::invalid_argument("cross product needs z > 0");
  if (bessel::is_integer_order(mu)) return cross_product_y(kind, mu, l1, l2, z);
  if (kind == CrossProductKind::F) {
    return bessel::j(mu, l2 * z) * bessel::j(-mu, l1 * z) - bessel::j(mu, l1 * z) * bessel::j(-mu, l2 * z);
  }
  return bessel::j_prime(mu, l1 * z) * bessel::j_prime(-mu, l2 * z) -
         bessel::j_prime(mu, l2 * z) * bessel::j_prime(-mu, l1 * z);
}

double gee(CrossProductKind kind, double mu, double l1, double l2, double y) {
  require_order(mu);
  require_lengths(l1, l2);
  if (!(y > 0.0)) throw std::invalid_argument("gee needs y > 0");
  const double s = bessel::is_integer_order(mu) ? 1.0 : std::sin(mu * kPi);
  return static_cast<double>((2.0L / kPi) * s * std::exp(log_d(kind, mu, l1, l2, y)));
}

double log_normalized_product(CrossProductKind kind, double mu, double l1, double l2, double y) {
  require_order(mu);
  require_lengths(l1, l2);
  if (y < 0.0) throw std::invalid_argument("normalized product needs y >= 0");
  if (y == 0.0) return 0.0;
  const long double ld = log_d(kind, mu, l1, l2, y);
  const long double l1l = l1, l2l = l2;
  if (kind == CrossProductKind::F) {
    if (mu == 0.0) return static_cast<double>(ld - std::log(log_length_ratio(l1, l2)));
    return static_cast<double>(std::log(2.0L * mu) + ld - log_power_ratio(mu, l1, l2));
  }
  if (mu == 0.0) {
    return static_cast<double>(ld + std::log(2.0L * l1l * l2l) - std::log((l2l - l1l) * (l2l + l1l)));
  }
  return static_cast<double>(std::log(2.0L * l1l * l2l) + 2.0L * std::log(static_cast<long double>(y)) + ld -
                             std::log(static_cast<long double>(mu)) - log_power_ratio(mu, l1, l2));
}

ZeroTable find_zeros(CrossProductKind kind, double mu, double l1, double l2, int K, double tol) {
  require_order(mu);
  require_lengths(l1, l2);
  if (K < 1) throw std::invalid_argument("need K >= 1 zeros");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

  ZeroTable table{kind, mu, l1, l2, tol, {}};
  const double spacing = kPi / (l2 - l1);
  const double step = spacing / 8.0;
  // Every eigenvalue exceeds the minimum mu^2/l2^2 of the centrifugal term.
  const double start = mu > 0.0 ? mu / l2 : step / 64.0;
  const auto f = [&](double z) { return cross_product_y(kind, mu, l1, l2, z); };
  const auto done = [tol](double a, double b) {
    return b - a <= std::max(tol, 8.0 * DBL_EPSILON * std::fabs(b));
  };

  const double horizon = start + (4.0 * K + 64.0) * spacing;
  long long next_index = 0;
  while (static_cast<int>(table.zeros.size()) < K) {
    const auto remaining = static_cast<long long>(K - table.zeros.size());
    const long long points = 8 * (remaining + 8) + 64;
    const long long first = next_index;
    if (start + first * step > horizon) {
      throw std::runtime_error("bracketed only " + std::to_string(table.zeros.size()) + " of " + std::to_string(K) +
                               " zeros below z = " + std::to_string(horizon));
    }
    const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(4 * worker_count(), points / 64));
    std::vector<std::vector<double>> found(chunks);
    parallel_for_chunks(chunks, [&](std::size_t c) {
      const long long lo = first + static_cast<long long>(c) * points / static_cast<long long>(chunks);
      const long long hi = first + static_cast<long long>(c + 1) * points / static_cast<long long>(chunks);
      double za = start + lo * step;
      double fa = f(za);
      for (long long i = lo; i < hi; ++i) {
        const double zb = start + (i + 1) * step;
        const double fb = f(zb);
        if (fa == 0.0) {
          found[c].push_back(za);
        } else if ((fa < 0.0) != (fb < 0.0) && fb != 0.0) {
          std::uintmax_t iterations = 200;
          const auto r = boost::math::tools::toms748_solve(f, za, zb, fa, fb, done, iterations);
          found[c].push_back(0.5 * (r.first + r.second));
        }
        za = zb;
        fa = fb;
      }
    });
    for (const auto& chunk : found) {
      for (double z : chunk) {
        if (static_cast<int>(table.zeros.size()) < K) table.zeros.push_back(z);
      }
    }
    next_index = first + points;
  }
  return table;
}

ZeroCertificate certify(const ZeroTable& table) {
  ZeroCertificate c;
  const double spacing = kPi / (table.l2 - table.l1);
  for (std::size_t k = 1; k < table.zeros.size(); ++k) {
    const double gap = table.zeros[k] - table.zeros[k - 1];
    if (!(gap > 0.0)) c.strictly_increasing = false;
    if (k + 1 > 20) c.max_late_gap_deviation = std::max(c.max_late_gap_deviation, std::fabs(gap - spacing) / spacing);
  }
  c.ok = c.strictly_increasing && c.max_late_gap_deviation < 0.25;
  return c;
}

std::string to_string(ZetaMethod method) {
  return method == ZetaMethod::closed_form ? "closed_form" : "continuation_oracle";
}

ZetaEvaluation zprime0_axial(CrossProductKind kind, double l1, double l2) {
  require_lengths(l1, l2);
  const long double a = l1, b = l2;
  ZetaEvaluation e;
  e.method = ZetaMethod::closed_form;
  if (kind == CrossProductKind::F) {
    e.value_at_0_derivative =
        static_cast<double>(-0.5L * std::log(a * b) - std::log(log_length_ratio(a, b)) - std::log(2.0L));
  } else {
    e.value_at_0_derivative = static_cast<double>(0.5L * std::log(a * b) - std::log((b - a) * (b + a)));
  }
  e.error_estimate = 4.0 * DBL_EPSILON * std::max(1.0, std::fabs(e.value_at_0_derivative));
  return e;
}

ZetaEvaluation zprime0_axial_oracle(const ZeroTable& table, double max_error) {
  if (table.order != 0.0) throw std::invalid_argument("axial oracle needs an order-0 zero table");
  const int K = static_cast<int>(table.zeros.size());
  if (K < 40) throw std::invalid_argument("axial oracle needs at least 40 zeros");
  const long double L = static_cast<long double>(table.l2) - table.l1;
  const long double rho = static_cast<long double>(kPi) / L;

  std::vector<long double> eps(K + 1, 0.0L);
  for (int k = 1; k <= K; ++k) {
    const long double r = rho * k;
    eps[k] = std::log1p((table.zeros[k - 1] - r) / r);
  }
  // Partial sum to n, plus tail c/(n + 1/2) with c fitted to eps_k ~ c/k^2 on (n/10, n].
  const auto corrected = [&](int n, long double& raw, long double& tail) {
    CompensatedSum s;
    for (int k = 1; k <= n; ++k) s.add(eps[k]);
    long double num = 0.0L, den = 0.0L;
    for (int k = std::max(1, n / 10); k <= n; ++k) {
      const long double w = 1.0L / (static_cast<long double>(k) * k);
      num += eps[k] * w;
      den += w * w;
    }
    raw = s.value();
    tail = (num / den) / (n + 0.5L);
    return raw + tail;
  };
  long double raw_full, tail_full, raw_half, tail_half;
  const long double full = corrected(K, raw_full, tail_full);
  const long double half = corrected(K / 2, raw_half, tail_half);

  ZetaEvaluation e;
  e.method = ZetaMethod::continuation_oracle;
  e.zeros_used = K;
  e.tail_correction = static_cast<double>(-2.0L * tail_full);
  const long double base = -std::log(2.0L * L);
  e.value_at_0_derivative = static_cast<double>(base - 2.0L * full);
  e.richardson = static_cast<double>(base - 2.0L * (2.0L * raw_full - raw_half));
  e.error_estimate = static_cast<double>(2.0L * std::fabs(full - half)) + K * 1e-16;
  if (e.error_estimate > max_error) {
    throw std::runtime_error("axial oracle did not converge: error estimate " + std::to_string(e.error_estimate) +
                             " exceeds " + std::to_string(max_error));
  }
  return e;
}

ZetaEvaluation zprime0_axial_oracle(CrossProductKind kind, double l1, double l2, int K, double max_error, double tol) {
  return zprime0_axial_oracle(find_zeros(kind, 0.0, l1, l2, K, tol), max_error);
}

double phi1(double l1, double l2, double lambda) {
  require_lengths(l1, l2);
  if (!(lambda < 0.0)) throw std::invalid_argument("phi_1 needs lambda < 0 on the real axis");
  const long double u2 = 1.0L - static_cast<long double>(l2) * l2 * lambda;
  const long double u1 = 1.0L - static_cast<long double>(l1) * l1 * lambda;
  const long double half = 1.0L / std::sqrt(u2) - 1.0L / std::sqrt(u1);
  const long double three_halves = 1.0L / (u2 * std::sqrt(u2)) - 1.0L / (u1 * std::sqrt(u1));
  return static_cast<double>(0.5L * half - 0.5L * three_halves);
}

double Phi1(double l1, double l2, double s) {
  require_lengths(l1, l2);
  if (!(s > -0.5)) throw std::invalid_argument("Phi_1 closed form evaluated for s > -1/2");
  if (s == 0.0) return 0.0;
  const long double sl = s;
  const long double prefactor =
      std::pow(static_cast<long double>(l1), 2.0L * sl) * std::expm1(2.0L * sl * log_length_ratio(l1, l2));
  const long double g_half = std::expm1(std::lgamma(sl + 0.5L) - std::lgamma(0.5L));
  const long double g_three = std::expm1(std::lgamma(sl + 1.5L) - std::lgamma(1.5L));
  return static_cast<double>(prefactor * 0.5L * (g_half - g_three) / sl);
}

double Phi1_quadrature(double l1, double l2, double s) {
  require_lengths(l1, l2);
  if (!(s > 0.0)) throw std::invalid_argument("Phi_1 quadrature needs s > 0");
  boost::math::quadrature::exp_sinh<double> integrator;
  const double i1 = integrator.integrate([s](double w) { return std::pow(1.0 + w * w, -s - 1.0); });
  const double i2 = integrator.integrate([s](double w) { return std::pow(1.0 + w * w, -s - 2.0); });
  const double j_half = 2.0 * i1;                  // finite integral over the cut
  const double j_three = -2.0 * (s + 1.0) * 2.0 * i2;  // Hadamard finite part
  const double g = std::tgamma(s) / kPi;
  const double l2s = std::pow(l2, 2 * s) - std::pow(l1, 2 * s);
  const double phi_half = g * 1.0 * j_half * l2s;
  const double phi_three = g * -1.0 * j_three * l2s;
  return 0.5 * phi_half - 0.5 * phi_three;
}

PhiTerms phi_terms(double l1, double l2, double lambda, double s) {
  PhiTerms t;
  t.phi1 = phi1(l1, l2, lambda);
  t.Phi1 = Phi1(l1, l2, s);
  t.residue_at_0 = 0.0;
  t.finite_part_at_0 = Phi1(l1, l2, 0.0);
  t.slope_at_0 = static_cast<double>(-2.0L * log_length_ratio(l1, l2));
  t.measured_plus = Phi1(l1, l2, 1e-3) / 1e-3;
  t.measured_minus = Phi1(l1, l2, -1e-3) / -1e-3;
  return t;
}

DoubleSeriesTerms double_series_terms(double nu, double l1, double l2) {
  require_lengths(l1, l2);
  if (!(nu >= 1.0)) throw std::invalid_argument("nu = 1/sin(alpha) must be >= 1");
  const long double z0 = zeta_constants::zeta_at_0();
  const long double zp0 = zeta_constants::zeta_prime_at_0();
  const long double log_nu = std::log(static_cast<long double>(nu));
  // A00(s) = -log(l1 l2) nu^{-2s} zeta(2s), A01(s) = -nu^{-2s} zeta(2s)
  const long double a00 = -std::log(static_cast<long double>(l1) * l2) * z0;
  const long double a01 = -z0;
  const long double a01p = 2.0L * log_nu * z0 - 2.0L * zp0;
  DoubleSeriesTerms d;
  d.A00_0 = static_cast<double>(a00);
  d.A01_0 = static_cast<double>(a01);
  d.A01_prime_0 = static_cast<double>(a01p);
  d.difference = static_cast<double>(-a00 - a01p);
  return d;
}

std::string to_string(SpectrumFamily family) {
  switch (family) {
    case SpectrumFamily::a_nu: return "a_nu_n";
    case SpectrumFamily::atilde_nu: return "atilde_nu_n";
    case SpectrumFamily::a_0: return "a_0";
    case SpectrumFamily::atilde_0: return "atilde_0";
  }
  return "?";
}

std::vector<SpectrumComponent> spectrum_descriptor(int q, SpectralBC bc) {
  using F = SpectrumFamily;
  const bool abs = bc == SpectralBC::absolute;
  const F low_nu = abs ? F::atilde_nu : F::a_nu;
  const F low_0 = abs ? F::atilde_0 : F::a_0;
  const F high_nu = abs ? F::a_nu : F::atilde_nu;
  const F high_0 = abs ? F::a_0 : F::atilde_0;
  switch (q) {
    case 0: return {{2, low_nu}, {1, low_0}};
    case 1: return {{2, low_nu}, {2, high_nu}, {1, F::atilde_0}, {1, F::a_0}};
    case 2: return {{2, high_nu}, {1, high_0}};
    default: throw std::invalid_argument("the frustum surface has forms of degree 0..2 only");
  }
}

TorsionZetaCoefficients torsion_zeta_coefficients(SpectralBC bc) {
  TorsionZetaCoefficients c;
  for (int q = 0; q <= 2; ++q) {
    const double w = 0.5 * (q % 2 == 0 ? 1 : -1) * q;
    for (const auto& comp : spectrum_descriptor(q, bc)) {
      const double v = w * comp.multiplicity;
      switch (comp.family) {
        case SpectrumFamily::a_nu: c.a_nu += v; break;
        case SpectrumFamily::atilde_nu: c.atilde_nu += v; break;
        case SpectrumFamily::a_0: c.a_0 += v; break;
        case SpectrumFamily::atilde_0: c.atilde_0 += v; break;
      }
    }
  }
  return c;
}

double torsion_zeta_log(double nu, double l1, double l2, SpectralBC bc) {
  const auto c = torsion_zeta_coefficients(bc);
  if (c.a_nu != -c.atilde_nu) throw std::logic_error("double series enter t(s) only through their difference");
  const long double diff = double_series_terms(nu, l1, l2).difference;  // Z'(S~) - Z'(S)
  const long double z0 = zprime0_axial(CrossProductKind::F, l1, l2).value_at_0_derivative;
  const long double zt0 = zprime0_axial(CrossProductKind::Ftilde, l1, l2).value_at_0_derivative;
  return static_cast<double>(-c.a_nu * diff + c.a_0 * z0 + c.atilde_0 * zt0);
}

double torsion_zeta_display(double nu, double l1, double l2) {
  require_lengths(l1, l2);
  const long double a = l1, b = l2;
  return static_cast<double>(std::log(static_cast<long double>(kPi)) + 0.5L * std::log(2.0L * (b - a) * (b + a)) -
                             0.5L * std::log(log_length_ratio(a, b)) - std::log(static_cast<long double>(nu)));
}

SemiNumericTorsion torsion_zeta_semi_numeric(double nu, double l1, double l2, int K, double max_error, double tol) {
  const auto c = torsion_zeta_coefficients(SpectralBC::absolute);
  SemiNumericTorsion t;
  t.axial = zprime0_axial_oracle(CrossProductKind::F, l1, l2, K, max_error, tol);
  t.axial_tilde = zprime0_axial_oracle(CrossProductKind::Ftilde, l1, l2, K, max_error, tol);
  const double diff = double_series_terms(nu, l1, l2).difference;
  t.value = -c.a_nu * diff + c.a_0 * t.axial.value_at_0_derivative + c.atilde_0 * t.axial_tilde.value_at_0_derivative;
  t.error_estimate = std::fabs(c.a_0) * t.axial.error_estimate + std::fabs(c.atilde_0) * t.axial_tilde.error_estimate;
  return t;
}

UniformResidual uniform_expansion_residual(int n, double nu, double l1, double l2, double lambda) {
  require_lengths(l1, l2);
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (!(lambda < 0.0)) throw std::invalid_argument("lambda must be negative");
  const double mu = nu * n;
  const double y = mu * std::sqrt(-lambda);
  UniformResidual r;
  r.lhs = log_normalized_product(CrossProductKind::F, mu, l1, l2, y) -
          log_normalized_product(CrossProductKind::Ftilde, mu, l1, l2, y);
  r.leading = static_cast<double>(-0.5L * (std::log1p(-static_cast<long double>(lambda) * l1 * l1) +
                                           std::log1p(-static_cast<long double>(lambda) * l2 * l2)));
  r.phi_term = phi1(l1, l2, lambda) / mu;
  r.residual = r.lhs - r.leading - r.phi_term;
  return r;
}

namespace zeta_constants {
double zeta_at_0() { return boost::math::zeta(0.0); }
double zeta_prime_at_0() { return -0.5 * std::log(2.0 * kPi); }
}  // namespace zeta_constants

}  // namespace torsionlab
