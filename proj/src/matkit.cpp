#include "ssusy/matkit.hpp"

#include <algorithm>
#include <utility>

#include "ssusy/error.hpp"

namespace ssusy {

bool Mat2::is_finite() const {
  return std::all_of(m_.begin(), m_.end(), [](cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

Mat2 pauli_combination(const Vec3& v) {
  return {cplx(v.z, 0.0), cplx(v.x, -v.y), cplx(v.x, v.y), cplx(-v.z, 0.0)};
}

namespace {

cplx half_trace_sigma1(const Mat2& m) { return 0.5 * (m(1, 0) + m(0, 1)); }
cplx half_trace_sigma2(const Mat2& m) { return 0.5 * cplx(0.0, 1.0) * (m(0, 1) - m(1, 0)); }
cplx half_trace_sigma3(const Mat2& m) { return 0.5 * (m(0, 0) - m(1, 1)); }

}  // namespace

Vec3 pauli_vector(const Mat2& m) {
  return {half_trace_sigma1(m).real(), half_trace_sigma2(m).real(), half_trace_sigma3(m).real()};
}

Vec3 pauli_vector_imag(const Mat2& m) {
  return {half_trace_sigma1(m).imag(), half_trace_sigma2(m).imag(), half_trace_sigma3(m).imag()};
}

bool is_unitary(const Mat2& m, double tol) {
  if (!m.is_finite()) return false;
  return (m.adjoint() * m - Mat2::identity()).frobenius() < tol;
}

double wrap_angle(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double phase_of(cplx z) { return wrap_angle(std::arg(z)); }

double phase_distance(cplx a, cplx b) {
  // |arg(a conj(b))| is the shorter arc between the two phases.
  return std::abs(std::arg(a * std::conj(b)));
}

Mat2 su2_from_euler(const EulerAngles& angles) {
  const double c = std::cos(0.5 * angles.mu);
  const double s = std::sin(0.5 * angles.mu);
  const cplx e = std::polar(1.0, 0.5 * angles.nu);
  return {c * e, s * std::conj(e), -s * e, c * std::conj(e)};
}

EulerSplit euler_from_su2(const Mat2& v, double tol) {
  const cplx a = v(0, 0);
  const cplx b = v(0, 1);
  EulerSplit out;
  out.angles.mu = 2.0 * std::atan2(std::abs(b), std::abs(a));
  if (std::abs(b) < tol) {
    out.angles.mu = 0.0;
    out.angles.nu = 0.0;
    out.rho = std::arg(a);
  } else if (std::abs(a) < tol) {
    out.angles.mu = kPi;
    out.angles.nu = 0.0;
    out.rho = std::arg(b);
  } else {
    out.angles.nu = wrap_angle(std::arg(a) - std::arg(b));
    out.rho = std::arg(a) - 0.5 * out.angles.nu;
  }
  return out;
}

namespace {

// Eigenvector of a normal 2x2 matrix for eigenvalue ev, unit norm, first
// nonzero component real-positive.
Vec2c eigenvector(const Mat2& u, cplx ev) {
  Vec2c r0{u(0, 1), ev - u(0, 0)};
  Vec2c r1{ev - u(1, 1), u(1, 0)};
  Vec2c f = vec_norm(r0) >= vec_norm(r1) ? r0 : r1;
  const double n = vec_norm(f);
  f[0] /= n;
  f[1] /= n;
  const cplx lead = std::abs(f[0]) > 1e-14 ? f[0] : f[1];
  const cplx phase = std::conj(lead) / std::abs(lead);
  f[0] *= phase;
  f[1] *= phase;
  return f;
}

cplx unimodular(cplx z) { return z / std::abs(z); }

}  // namespace

U2Decomposition diagonalize_u2(const Mat2& u, double tol) {
  if (!is_unitary(u, tol)) throw Error(ErrorCode::NotUnitary, "diagonalize_u2 input");

  const cplx half_tr = 0.5 * u.trace();
  if ((u - half_tr * Mat2::identity()).frobenius() < 1e-12) {
    const cplx d = unimodular(half_tr);
    return {Mat2::identity(), Mat2::diag(d, d)};
  }

  const cplx disc = std::sqrt(half_tr * half_tr - u.det());
  cplx e1 = unimodular(half_tr + disc);
  cplx e2 = unimodular(half_tr - disc);

  constexpr double kMinusOneTol = 1e-9;
  const bool e1_minus = phase_distance(e1, -1.0) < kMinusOneTol;
  const bool e2_minus = phase_distance(e2, -1.0) < kMinusOneTol;
  if (e1_minus && !e2_minus) {
    std::swap(e1, e2);
  } else if (e1_minus == e2_minus && phase_of(e1) > phase_of(e2)) {
    std::swap(e1, e2);
  }

  const Vec2c f = eigenvector(u, e1);
  const Mat2 v{std::conj(f[0]), std::conj(f[1]), -f[1], f[0]};
  // Rayleigh quotients are more accurate than the quadratic-formula roots.
  const Mat2 vuv = v * u * v.adjoint();
  return {v, Mat2::diag(unimodular(vuv(0, 0)), unimodular(vuv(1, 1)))};
}

Mat2 conjugate(const Mat2& w, const Mat2& m) {
  if (!is_unitary(w, 1e-10)) throw Error(ErrorCode::NotUnitary, "conjugate: W");
  return w * m * w.adjoint();
}

Vec3 rotate_by(const Mat2& w, const Vec3& v) {
  return pauli_vector(conjugate(w, pauli_combination(v)));
}

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotDiagonal: return "NotDiagonal";
    case ErrorCode::GeometryMismatch: return "GeometryMismatch";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NotNormalizable: return "NotNormalizable";
    case ErrorCode::ThetaPi: return "ThetaPi";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ScanWindowTooSmall: return "ScanWindowTooSmall";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace ssusy
