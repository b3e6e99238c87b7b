#include "ssusy/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace ssusy {

RobinEnd RobinEnd::from_length(double L) {
  if (std::isinf(L)) return neumann();
  return {1.0, L};
}

RobinEnd RobinEnd::from_phase(double theta, double L0) {
  return {std::sin(0.5 * theta), L0 * std::cos(0.5 * theta)};
}

namespace {

// u = c_a C - s_a S satisfies the left condition; F is the right condition.
double f_positive(const RobinEnd& a, const RobinEnd& b, double l, double k) {
  const double kl = k * l;
  return (b.s * a.c - b.c * a.s) * std::cos(kl) - a.s * b.s * std::sin(kl) / k -
         a.c * b.c * k * std::sin(kl);
}

// Divided by cosh(kappa l).
double f_negative(const RobinEnd& a, const RobinEnd& b, double l, double kappa) {
  const double t = std::tanh(kappa * l);
  return (b.s * a.c - b.c * a.s) - a.s * b.s * t / kappa + a.c * b.c * kappa * t;
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double flo) {
  for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> scan_roots(const std::function<double(double)>& f, double from, double step,
                               double to, std::size_t limit) {
  std::vector<double> roots;
  double x0 = from;
  double f0 = f(x0);
  while (x0 < to && roots.size() < limit) {
    const double x1 = x0 + step;
    const double f1 = f(x1);
    if (f1 == 0.0) {
      roots.push_back(x1);
      x0 = x1 + 1e-9 * step;
      f0 = f(x0);
      continue;
    }
    if ((f0 < 0.0) != (f1 < 0.0) && f0 != 0.0) roots.push_back(bisect(f, x0, x1, f0));
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

}  // namespace

OracleRoots oracle_decoupled_roots(const RobinEnd& left, const RobinEnd& right, double l, std::size_t n) {
  OracleRoots out;
  const double pi = std::numbers::pi;
  const double step = pi / (256.0 * l);
  const double k0 = 1e-9 / l;
  out.k = scan_roots([&](double k) { return f_positive(left, right, l, k); }, k0, step,
                     (static_cast<double>(n) + 2.0) * pi / l + 1.0, n);

  const double zero = right.s * (left.c - left.s * l) - right.c * left.s;
  const double ref = std::max({std::abs(right.s * left.c), std::abs(right.s * left.s * l),
                               std::abs(right.c * left.s), 1e-300});
  out.zero = std::abs(zero) < 1e-12 * ref;

  double inv = 1.0 / l;
  if (left.c != 0.0) inv = std::max(inv, std::abs(left.s / left.c));
  if (right.c != 0.0) inv = std::max(inv, std::abs(right.s / right.c));
  const double kmax = 20.0 * inv;
  out.kappa = scan_roots([&](double kap) { return f_negative(left, right, l, kap); }, k0,
                         kmax / 20000.0, kmax, 4);
  return out;
}

}  // namespace ssusy
