#include "ssusy/kernels.hpp"

#include <omp.h>

#include "ssusy/error.hpp"

namespace ssusy {

namespace {

// sin(kl)/k and tanh(kl)/k with their k -> 0 limit l.
double sin_over(double k, double l) { return k * l < 1e-8 ? l : std::sin(k * l) / k; }
double tanh_over(double k, double l) { return k * l < 1e-8 ? l : std::tanh(k * l) / k; }

// Values at x = 0 of the real solution u with u(l) = cb, u'(l) = -sb.
// Negative-energy values are divided by cosh(kappa l), which leaves the
// phase of u(0) + i L0 u'(0) unchanged.
void wall_solution_at_origin(double s, double l, double sb, double cb, double& u0, double& du0) {
  if (s > 0.0) {
    const double k = s;
    u0 = cb * std::cos(k * l) + sb * sin_over(k, l);
    du0 = cb * k * std::sin(k * l) - sb * std::cos(k * l);
  } else if (s < 0.0) {
    const double kappa = -s;
    const double th = std::tanh(kappa * l);
    u0 = cb + sb * tanh_over(kappa, l);
    du0 = -cb * kappa * th - sb;
  } else {
    u0 = cb + sb * l;
    du0 = -sb;
  }
}

// The discriminant is formed from the entry differences, not from
// tr^2/4 - det, so nearly degenerate eigenvalues keep full precision.
std::array<double, 2> unitary_eigenphases(const Mat2& t) {
  const cplx half_tr = 0.5 * t.trace();
  const cplx half_diff = 0.5 * (t(0, 0) - t(1, 1));
  const cplx disc = std::sqrt(half_diff * half_diff + t(0, 1) * t(1, 0));
  return {phase_of(half_tr + disc), phase_of(half_tr - disc)};
}

struct EndValues {
  double C, S, dC, dS;
};

// Conditioned basis: {cos kx, sin(kx)/k} for s >= 0 and the stored
// interval basis {e^{-kx}, e^{-kl} sinh(kx)/k} for s < 0. Both are bounded
// and meet at {1, x} when s -> 0.
EndValues conditioned_basis(const Geometry& g, double s, double x) {
  if (s < 0.0) {
    const BasisValues b = basis_values(g, Sector::Negative, -s, x);
    return {b.f1, b.f2, b.d1, b.d2};
  }
  if (x == 0.0) return {1.0, 0.0, 0.0, 1.0};
  if (s > 0.0) {
    const double k = s;
    return {std::cos(k * x), sin_over(k, x), -k * std::sin(k * x), std::cos(k * x)};
  }
  return {1.0, x, 0.0, 1.0};
}

Eigen::Matrix<cplx, 2, 4> condition_block(const Mat2& m, double L0, const EndValues& v) {
  Eigen::Matrix<cplx, 2, 4> phi = Eigen::Matrix<cplx, 2, 4>::Zero();
  Eigen::Matrix<cplx, 2, 4> dphi = Eigen::Matrix<cplx, 2, 4>::Zero();
  for (int c = 0; c < 2; ++c) {
    phi(c, 2 * c) = v.C;
    phi(c, 2 * c + 1) = v.S;
    dphi(c, 2 * c) = v.dC;
    dphi(c, 2 * c + 1) = v.dS;
  }
  Eigen::Matrix2cd mm;
  mm << m(0, 0), m(0, 1), m(1, 0), m(1, 1);
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  Eigen::Matrix<cplx, 2, 4> block = (mm - id) * phi + cplx(0.0, L0) * (mm + id) * dphi;
  const double n = block.norm();
  if (n > 0.0) block /= n;
  return block;
}

double sigma_ratio(const Eigen::Matrix4cd& m) {
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(m);
  const auto& sv = svd.singularValues();
  const double n = m.norm();
  return n > 0.0 ? sv(3) / n : 0.0;
}

}  // namespace

PhaseSample phase_sample(const SystemSpec& spec, double s) {
  PhaseSample out;
  if (spec.on_interval()) {
    const double l = spec.l();
    for (int j = 0; j < 2; ++j) {
      const double half = 0.5 * std::arg(spec.Dl(j, j));
      double u0 = 0.0, du0 = 0.0;
      wall_solution_at_origin(s, l, std::sin(half), spec.L0 * std::cos(half), u0, du0);
      out.phi[j] = std::atan2(spec.L0 * du0, u0);
    }
  } else {
    if (s > 0.0) throw Error(ErrorCode::InvalidArgument, "line phases exist only for E <= 0");
    const double phi = std::atan2(spec.L0 * s, 1.0);  // z = 1 - i L0 kappa
    out.phi = {phi, phi};
  }
  const Mat2 t = Mat2::diag(std::polar(1.0, 2.0 * out.phi[0]), std::polar(1.0, 2.0 * out.phi[1])) * spec.U;
  out.eig = unitary_eigenphases(t);
  return out;
}

std::vector<PhaseSample> phase_samples_serial(const SystemSpec& spec, std::span<const double> s) {
  std::vector<PhaseSample> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = phase_sample(spec, s[i]);
  return out;
}

std::vector<PhaseSample> phase_samples_parallel(const SystemSpec& spec, std::span<const double> s) {
  std::vector<PhaseSample> out(s.size());
  const auto n = static_cast<std::ptrdiff_t>(s.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = phase_sample(spec, s[i]);
  return out;
}

std::vector<PhaseSample> phase_samples(const SystemSpec& spec, std::span<const double> s,
                                       Execution exec) {
  return exec == Execution::Serial ? phase_samples_serial(spec, s) : phase_samples_parallel(spec, s);
}

Eigen::Matrix4cd conditioned_secular_matrix(const SystemSpec& spec, double s) {
  if (!spec.on_interval()) throw Error(ErrorCode::GeometryMismatch, "secular matrix on the line");
  Eigen::Matrix4cd m;
  m.topRows<2>() = condition_block(spec.U, spec.L0, conditioned_basis(spec.geometry, s, 0.0));
  m.bottomRows<2>() = condition_block(spec.Dl, spec.L0, conditioned_basis(spec.geometry, s, spec.l()));
  return m;
}

std::vector<double> sigma_min_profile_serial(const SystemSpec& spec, std::span<const double> s) {
  std::vector<double> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = sigma_ratio(conditioned_secular_matrix(spec, s[i]));
  return out;
}

std::vector<double> sigma_min_profile_parallel(const SystemSpec& spec, std::span<const double> s) {
  std::vector<double> out(s.size());
  const auto n = static_cast<std::ptrdiff_t>(s.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = sigma_ratio(conditioned_secular_matrix(spec, s[i]));
  return out;
}

std::vector<double> sigma_min_profile(const SystemSpec& spec, std::span<const double> s,
                                      Execution exec) {
  return exec == Execution::Serial ? sigma_min_profile_serial(spec, s)
                                   : sigma_min_profile_parallel(spec, s);
}

LevelCounter::LevelCounter(const SystemSpec& spec) : det_phase_(std::arg(spec.U.det())) {}

namespace {

long level_count(double det_phase, const std::array<double, 2>& phi, const std::array<double, 2>& eig) {
  const double total = det_phase + 2.0 * (phi[0] + phi[1]) - eig[0] - eig[1];
  return std::lround(total / kTwoPi);
}

}  // namespace

LevelCounter::State LevelCounter::start(const PhaseSample& sample) const {
  return {sample.phi, level_count(det_phase_, sample.phi, sample.eig)};
}

LevelCounter::State LevelCounter::advance(const State& prev, const PhaseSample& sample) const {
  State next;
  for (int j = 0; j < 2; ++j) {
    double d = std::remainder(sample.phi[j] - prev.phi[j], kTwoPi);
    // Phases only move forward. A small backward step is rounding noise,
    // which near a deep bound state reaches 1e-6 since z = u(0) + i L0 u'(0)
    // nearly vanishes there; a genuine step is at most pi plus the drift.
    if (d < -0.5 * kPi) d += kTwoPi;
    next.phi[j] = prev.phi[j] + d;
  }
  next.count = level_count(det_phase_, next.phi, sample.eig);
  return next;
}

}  // namespace ssusy
