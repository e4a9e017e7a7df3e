#pragma once

namespace torsionlab::bessel {

// Thin wrappers over Boost.Math. Overflow or failed evaluation surfaces as
// std::range_error; derivatives use the order recurrences.

double j(double nu, double x);
double y(double nu, double x);
double i(double nu, double x);
double k(double nu, double x);

double j_prime(double nu, double x);
double y_prime(double nu, double x);
double i_prime(double nu, double x);
double k_prime(double nu, double x);

bool is_integer_order(double nu);

}  // namespace torsionlab::bessel
