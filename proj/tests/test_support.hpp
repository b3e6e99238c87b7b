#pragma once

// Shared fixtures: random U(2) samples, the standard families, and two
// independent numerical references (adaptive quadrature, central differences).

#include <cmath>
#include <functional>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ssusy/error.hpp"
#include "ssusy/matkit.hpp"
#include "ssusy/system.hpp"

namespace ssusy::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20260915);
  return gen;
}

inline double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng()); }

/// Haar-distributed SU(2) from a normalized Gaussian 4-vector, times a phase.
inline Mat2 random_unitary() {
  std::normal_distribution<double> n(0.0, 1.0);
  double q[4];
  double norm = 0.0;
  for (double& x : q) {
    x = n(rng());
    norm += x * x;
  }
  norm = std::sqrt(norm);
  const cplx a(q[0] / norm, q[1] / norm), b(q[2] / norm, q[3] / norm);
  const cplx ph = std::polar(1.0, uniform(0.0, kTwoPi));
  return ph * Mat2(a, b, -std::conj(b), std::conj(a));
}

inline Vec3 random_vec3(double scale = 1.0) {
  return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)};
}

inline Vec2c random_vec2c() { return {cplx(uniform(-1, 1), uniform(-1, 1)), cplx(uniform(-1, 1), uniform(-1, 1))}; }

// Families on [-l, l] with lambda = L0 = 1 unless given.
inline SystemSpec csone(double theta, double l = 1.0) {
  return SystemSpec::interval(l, wall_from_theta(theta), wall_from_theta(theta));
}

inline SystemSpec cstwo_theta(double theta, double l = 1.0) {
  return SystemSpec::interval(l, Mat2::diag(-1.0, std::polar(1.0, -theta)), wall_from_theta(theta));
}

inline SystemSpec cstwo(double L, double l = 1.0) { return cstwo_theta(theta_from_length(L, 1.0), l); }

inline SystemSpec csthree(double L, double l = 1.0) {
  const cplx e = std::polar(1.0, -theta_from_length(L, 1.0));
  return SystemSpec::interval(l, Mat2::diag(e, e), Mat2::diag(-1.0, -1.0));
}

inline SystemSpec simple_q(double mu, double l = 1.0) {
  return SystemSpec::interval(l, characteristic_from_angles(0.0, mu, 0.0), pauli::sigma3());
}

/// Adaptive Gauss-Kronrod on [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, tol);
}

template <class F>
ErrorCode code_of_throw(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

}  // namespace ssusy::testing
