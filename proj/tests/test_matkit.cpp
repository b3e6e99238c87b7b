#include <doctest.h>

#include <algorithm>

#include "ssusy/error.hpp"
#include "ssusy/matkit.hpp"
#include "test_support.hpp"

using namespace ssusy;
using namespace ssusy::testing;

namespace {

double dist(const Mat2& a, const Mat2& b) { return (a - b).frobenius(); }

// exp(i t P) by a plain Taylor series; independent of the closed forms.
Mat2 expm_series(const Mat2& p, double t) {
  Mat2 term = Mat2::identity();
  Mat2 sum = Mat2::identity();
  const Mat2 x = cplx(0.0, t) * p;
  for (int n = 1; n < 40; ++n) {
    term = (1.0 / n) * (term * x);
    sum = sum + term;
  }
  return sum;
}

std::array<double, 2> sorted_phases(const Mat2& m) {
  const cplx h = 0.5 * m.trace();
  const cplx d = std::sqrt(h * h - m.det());
  std::array<double, 2> p{phase_of(h + d), phase_of(h - d)};
  std::sort(p.begin(), p.end());
  return p;
}

}  // namespace

TEST_CASE("pauli_combination examples") {
  CHECK(dist(pauli_combination({1, 0, 0}), pauli::sigma1()) == 0.0);
  CHECK(dist(pauli_combination({0, 0, 0}), Mat2::zero()) == 0.0);
  const double a = kPi / 2;
  CHECK(dist(pauli_combination({std::cos(a), std::sin(a), 0}), pauli::sigma2()) < 1e-15);
}

TEST_CASE("pauli_combination is linear, hermitian and traceless") {
  for (int i = 0; i < 200; ++i) {
    const Vec3 u = random_vec3(), v = random_vec3();
    const double al = uniform(-2, 2), be = uniform(-2, 2);
    const Mat2 lhs = pauli_combination(al * u + be * v);
    const Mat2 rhs = cplx(al) * pauli_combination(u) + cplx(be) * pauli_combination(v);
    CHECK(dist(lhs, rhs) < 1e-14);
    CHECK(dist(lhs, lhs.adjoint()) == 0.0);
    CHECK(std::abs(lhs.trace()) == 0.0);
    const Vec3 back = pauli_vector(pauli_combination(u));
    CHECK((back - u).norm() < 1e-15);
  }
}

TEST_CASE("is_unitary examples") {
  CHECK(is_unitary(Mat2::identity(), 1e-12));
  for (double th : {0.0, 0.3, 2.0, 5.9}) CHECK(is_unitary(Mat2::diag(std::polar(1.0, th), -1.0), 1e-12));
  CHECK_FALSE(is_unitary(Mat2(1.0, 1.0, 0.0, 1.0), 1e-12));
}

TEST_CASE("diagonalize_u2 examples") {
  SUBCASE("sigma3 is already diagonal") {
    const auto d = diagonalize_u2(pauli::sigma3());
    CHECK(dist(d.V, Mat2::identity()) < 1e-15);
    CHECK(dist(d.D, Mat2::diag(1.0, -1.0)) < 1e-15);
  }
  SUBCASE("sigma1 rotates onto sigma3") {
    const auto d = diagonalize_u2(pauli::sigma1());
    CHECK(dist(d.D, Mat2::diag(1.0, -1.0)) < 1e-14);
    CHECK(dist(d.V.adjoint() * d.D * d.V, pauli::sigma1()) < 1e-14);
    CHECK(std::abs(d.V.det() - 1.0) < 1e-14);
  }
  SUBCASE("-1 moves to the lower-right slot") {
    const double th = 1.1;
    const Mat2 u = Mat2::diag(-1.0, std::polar(1.0, th));
    const auto d = diagonalize_u2(u);
    CHECK(dist(d.D, Mat2::diag(std::polar(1.0, th), -1.0)) < 1e-14);
    CHECK(dist(d.V.adjoint() * d.D * d.V, u) < 1e-14);
    // Same effect as the swap W = i sigma1.
    const Mat2 w = cplx(0.0, 1.0) * pauli::sigma1();
    CHECK(dist(conjugate(w, u), d.D) < 1e-14);
  }
  SUBCASE("degenerate U gives V = I") {
    const Mat2 u = std::polar(1.0, 0.7) * Mat2::identity();
    const auto d = diagonalize_u2(u);
    CHECK(dist(d.V, Mat2::identity()) == 0.0);
    CHECK(dist(d.D, u) < 1e-15);
  }
  SUBCASE("non-unitary input") {
    CHECK_THROWS_AS(diagonalize_u2(Mat2(1.0, 1.0, 0.0, 1.0)), Error);
  }
}

TEST_CASE("diagonalize_u2 reconstructs 1000 random U(2) samples") {
  for (int i = 0; i < 1000; ++i) {
    const Mat2 u = random_unitary();
    const auto d = diagonalize_u2(u);
    CHECK(dist(d.V.adjoint() * d.D * d.V, u) < 1e-10);
    CHECK(std::abs(d.V.det() - 1.0) < 1e-10);
    CHECK(d.D.is_diagonal(1e-12));
    CHECK(std::abs(std::abs(d.D(0, 0)) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(d.D(1, 1)) - 1.0) < 1e-12);
    CHECK(phase_of(d.D(0, 0)) <= phase_of(d.D(1, 1)) + 1e-12);
    // Eigenvector of the first eigenvalue: first nonzero component real-positive.
    const Vec2c f = d.V.adjoint().apply({1.0, 0.0});
    const cplx lead = std::abs(f[0]) > 1e-12 ? f[0] : f[1];
    CHECK(std::abs(lead.imag()) < 1e-12);
    CHECK(lead.real() > 0.0);
  }
}

TEST_CASE("su2_from_euler examples and properties") {
  CHECK(dist(su2_from_euler({0, 0}), Mat2::identity()) == 0.0);
  const Mat2 isigma2 = cplx(0.0, 1.0) * pauli::sigma2();
  CHECK(dist(su2_from_euler({kPi, 0}), isigma2) < 1e-15);
  CHECK(dist(su2_from_euler({kPi, 0}), expm_series(pauli::sigma2(), kPi / 2)) < 1e-13);
  const double nu = 1.3;
  CHECK(dist(su2_from_euler({0, nu}), Mat2::diag(std::polar(1.0, nu / 2), std::polar(1.0, -nu / 2))) < 1e-15);
  for (int i = 0; i < 500; ++i) {
    const EulerAngles a{uniform(0, kPi), uniform(0, kTwoPi)};
    const Mat2 v = su2_from_euler(a);
    CHECK(std::abs(v.det() - 1.0) < 1e-12);
    CHECK(is_unitary(v, 1e-12));
    const Mat2 series = expm_series(pauli::sigma2(), a.mu / 2) * expm_series(pauli::sigma3(), a.nu / 2);
    CHECK(dist(v, series) < 1e-12);
  }
}

TEST_CASE("euler_from_su2 splits off a sigma3 phase") {
  for (int i = 0; i < 500; ++i) {
    const Mat2 u = random_unitary();
    const Mat2 v = std::sqrt(1.0 / u.det()) * u;
    const auto split = euler_from_su2(v);
    CHECK(split.angles.mu >= 0.0);
    CHECK(split.angles.mu <= kPi);
    const Mat2 rho = Mat2::diag(std::polar(1.0, split.rho), std::polar(1.0, -split.rho));
    CHECK(dist(rho * su2_from_euler(split.angles), v) < 1e-12);
  }
}

TEST_CASE("conjugate examples") {
  const Mat2 m = random_unitary();
  CHECK(dist(conjugate(Mat2::identity(), m), m) < 1e-15);
  const cplx a(0.3, 0.1), b(-2.0, 0.5);
  CHECK(dist(conjugate(cplx(0.0, 1.0) * pauli::sigma1(), Mat2::diag(a, b)), Mat2::diag(b, a)) < 1e-15);
  for (int i = 0; i < 100; ++i) {
    const double mu = uniform(0, kPi), nu = uniform(0, kTwoPi);
    const Mat2 v = su2_from_euler({mu, nu});
    // V^{-1} s3 V = cos mu s3 + sin mu (cos nu s1 + sin nu s2).
    const Mat2 expected = pauli_combination({std::sin(mu) * std::cos(nu), std::sin(mu) * std::sin(nu), std::cos(mu)});
    CHECK(dist(conjugate(v.adjoint(), pauli::sigma3()), expected) < 1e-13);
  }
  CHECK_THROWS_AS(conjugate(Mat2(1.0, 1.0, 0.0, 1.0), m), Error);
}

TEST_CASE("conjugate preserves the eigenvalue multiset") {
  for (int i = 0; i < 500; ++i) {
    const Mat2 u = random_unitary();
    const Mat2 w = random_unitary();
    const auto p = sorted_phases(u);
    const auto q = sorted_phases(conjugate(w, u));
    for (int j = 0; j < 2; ++j) {
      const double d = std::min(std::abs(p[j] - q[j]), kTwoPi - std::abs(p[j] - q[j]));
      CHECK(d < 1e-10);
    }
  }
}

TEST_CASE("phase helpers") {
  CHECK(wrap_angle(-0.5) == doctest::Approx(kTwoPi - 0.5));
  CHECK(wrap_angle(kTwoPi) == 0.0);
  CHECK(phase_distance(std::polar(1.0, 0.1), std::polar(1.0, kTwoPi - 0.1)) == doctest::Approx(0.2));
}
