#include "torsionlab/bessel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>

namespace torsionlab::bessel {

namespace {

template <class F>
double guarded(const char* name, double nu, double x, F&& f) {
  double v;
  try {
    v = f();
  } catch (const std::exception& e) {
    throw std::range_error(std::string(name) + "(" + std::to_string(nu) + ", " + std::to_string(x) + "): " + e.what());
  }
  if (!std::isfinite(v)) {
    throw std::range_error(std::string(name) + "(" + std::to_string(nu) + ", " + std::to_string(x) + ") is not finite");
  }
  return v;
}

}  // namespace

bool is_integer_order(double nu) { return nu == std::floor(nu); }

double j(double nu, double x) {
  return guarded("J", nu, x, [&] { return boost::math::cyl_bessel_j(nu, x); });
}

double y(double nu, double x) {
  return guarded("Y", nu, x, [&] { return boost::math::cyl_neumann(nu, x); });
}

double i(double nu, double x) {
  return guarded("I", nu, x, [&] { return boost::math::cyl_bessel_i(nu, x); });
}

double k(double nu, double x) {
  return guarded("K", nu, x, [&] { return boost::math::cyl_bessel_k(nu, x); });
}

double j_prime(double nu, double x) { return 0.5 * (j(nu - 1, x) - j(nu + 1, x)); }

double y_prime(double nu, double x) { return 0.5 * (y(nu - 1, x) - y(nu + 1, x)); }

double i_prime(double nu, double x) { return 0.5 * (i(nu - 1, x) + i(nu + 1, x)); }

double k_prime(double nu, double x) { return -0.5 * (k(nu - 1, x) + k(nu + 1, x)); }

}  // namespace torsionlab::bessel
