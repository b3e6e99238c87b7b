#include "ssusy/system.hpp"

#include <algorithm>
#include <limits>

#include "ssusy/error.hpp"

namespace ssusy {

double half_length(const Geometry& g) {
  if (const auto* iv = std::get_if<Interval>(&g)) return iv->l;
  throw Error(ErrorCode::GeometryMismatch, "half length requested on the line");
}

namespace {

constexpr double kThetaPiTol = 1e-12;

bool is_theta_pi(double theta) { return phase_distance(std::polar(1.0, theta), -1.0) < kThetaPiTol; }

}  // namespace

LengthScale::LengthScale(double theta, double L0) : theta_(wrap_angle(theta)), L0_(L0) {
  if (is_theta_pi(theta)) throw Error(ErrorCode::ThetaPi, "L(theta) is undefined at theta = pi");
  inverse_ = std::tan(0.5 * theta_) / L0;
}

LengthScale LengthScale::from_length(double length, double L0) {
  return LengthScale(theta_from_length(length, L0), L0);
}

double LengthScale::value() const {
  if (infinite()) return std::numeric_limits<double>::infinity();
  return 1.0 / inverse_;
}

double theta_from_length(double length, double L0) {
  if (std::isinf(length)) return 0.0;
  if (length == 0.0) throw Error(ErrorCode::ThetaPi, "L(theta) = 0 corresponds to theta = pi");
  return wrap_angle(2.0 * std::atan(L0 / length));
}

Mat2 characteristic_from_angles(double theta, double mu, double nu) {
  if (is_theta_pi(theta)) throw Error(ErrorCode::ThetaPi, "characteristic matrix with theta = pi");
  const Mat2 v = su2_from_euler({mu, nu});
  return v.adjoint() * Mat2::diag(std::polar(1.0, theta), -1.0) * v;
}

Mat2 wall_from_theta(double theta_l) {
  if (is_theta_pi(theta_l)) throw Error(ErrorCode::ThetaPi, "wall matrix with theta_l = pi");
  return Mat2::diag(std::polar(1.0, theta_l), -1.0);
}

SystemSpec SystemSpec::line(const Mat2& u, double lambda, double L0) {
  SystemSpec s{Line{}, u, Mat2::identity(), lambda, L0};
  s.validate();
  return s;
}

SystemSpec SystemSpec::interval(double l, const Mat2& u, const Mat2& dl, double lambda, double L0) {
  SystemSpec s{Interval{l}, u, dl, lambda, L0};
  s.validate();
  return s;
}

void SystemSpec::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(lambda)) throw Error(ErrorCode::InvalidArgument, "lambda must be positive");
  if (!positive(L0)) throw Error(ErrorCode::InvalidArgument, "L0 must be positive");
  if (!is_unitary(U, 1e-10)) throw Error(ErrorCode::NotUnitary, "U");
  if (on_interval()) {
    if (!positive(l())) throw Error(ErrorCode::InvalidArgument, "interval half length l");
    if (!is_unitary(Dl, 1e-10)) throw Error(ErrorCode::NotUnitary, "Dl");
    if (!Dl.is_diagonal(1e-10)) throw Error(ErrorCode::NotDiagonal, "Dl");
  }
}

double SystemSpec::scale() const { return on_interval() ? l() : L0; }

double condition_residual(const Mat2& m, double L0, const BoundaryData& b) {
  const Mat2 id = Mat2::identity();
  const Vec2c lhs = (m - id).apply(b.psi);
  const Vec2c rhs = (m + id).apply(b.dpsi);
  const cplx iL0(0.0, L0);
  const Vec2c r{lhs[0] + iL0 * rhs[0], lhs[1] + iL0 * rhs[1]};
  const double denom =
      std::max({vec_norm(b.psi), L0 * vec_norm(b.dpsi), std::numeric_limits<double>::min()});
  return vec_norm(r) / denom;
}

double connection_residual(const SystemSpec& spec, const BoundaryData& b) {
  return condition_residual(spec.U, spec.L0, b);
}

double wall_residual(const SystemSpec& spec, const BoundaryData& b) {
  if (!spec.on_interval()) throw Error(ErrorCode::GeometryMismatch, "wall residual on the line");
  return condition_residual(spec.Dl, spec.L0, b);
}

const char* to_string(Sector s) noexcept {
  switch (s) {
    case Sector::Positive: return "pos";
    case Sector::Zero: return "zero";
    case Sector::Negative: return "neg";
  }
  return "?";
}

WaveFunction WaveFunction::make(const Geometry& geometry, Sector sector, double rate, double lambda,
                                const Coefficients& coeffs) {
  if (!is_interval(geometry) && sector != Sector::Negative) {
    throw Error(ErrorCode::NotNormalizable, "only decaying states are stored on the line");
  }
  if (sector != Sector::Zero && !(rate > 0.0 && std::isfinite(rate))) {
    throw Error(ErrorCode::InvalidArgument, "sector rate must be positive");
  }
  WaveFunction wf;
  wf.geometry_ = geometry;
  wf.sector_ = sector;
  wf.rate_ = sector == Sector::Zero ? 0.0 : rate;
  wf.lambda_ = lambda;
  wf.coeffs_ = coeffs;
  switch (sector) {
    case Sector::Positive: wf.energy_ = lambda * lambda * rate * rate; break;
    case Sector::Zero: wf.energy_ = 0.0; break;
    case Sector::Negative: wf.energy_ = -lambda * lambda * rate * rate; break;
  }
  return wf;
}

WaveFunction WaveFunction::with_coeffs(const Coefficients& coeffs) const {
  WaveFunction wf = *this;
  wf.coeffs_ = coeffs;
  return wf;
}

BasisDerivative basis_derivative(const Geometry& g, Sector s, double rate) {
  switch (s) {
    case Sector::Positive: return {{{0.0, rate}, {-rate, 0.0}}};
    case Sector::Zero: return {{{0.0, 1.0}, {0.0, 0.0}}};
    case Sector::Negative:
      if (is_interval(g)) return {{{-rate, std::exp(-rate * half_length(g))}, {0.0, rate}}};
      return {{{-rate, 1.0}, {0.0, -rate}}};
  }
  return {};
}

namespace {

// (1 - e^{-2kx}) / 2k with its k -> 0 limit x.
double shrink_over(double k, double x) { return k > 0.0 ? -std::expm1(-2.0 * k * x) / (2.0 * k) : x; }

}  // namespace

BasisValues basis_values(const Geometry& g, Sector s, double k, double x) {
  switch (s) {
    case Sector::Positive: {
      const double c = std::cos(k * x), sn = std::sin(k * x);
      return {c, sn, -k * sn, k * c};
    }
    case Sector::Zero: return {1.0, x, 0.0, 1.0};
    case Sector::Negative:
      if (is_interval(g)) {
        // e^{-kl} sinh(kx) / k = e^{-k(l-x)} (1 - e^{-2kx}) / 2k, and its
        // derivative e^{-kl} cosh kx.
        const double l = half_length(g);
        const double e = std::exp(-k * x), w = std::exp(-k * (l - x));
        return {e, w * shrink_over(k, x), -k * e, 0.5 * (w + std::exp(-k * (l + x)))};
      } else {
        const double e = std::exp(-k * x);
        return {e, x * e, -k * e, (1.0 - k * x) * e};
      }
  }
  return {};
}

namespace {

void check_domain(const Geometry& g, double x) {
  const bool ok = is_interval(g) ? (x > 0.0 && x <= half_length(g)) : (x > 0.0 && std::isfinite(x));
  if (!ok) throw Error(ErrorCode::OutOfDomain, "x = " + std::to_string(x));
}

Vec2c combine(const Coefficients& c, double f1, double f2) {
  return {c[0] * f1 + c[1] * f2, c[2] * f1 + c[3] * f2};
}

// t - sin t and sinh t - t without cancellation for small t.
double t_minus_sin(double t) {
  if (std::abs(t) < 1e-2) {
    const double t3 = t * t * t;
    return t3 / 6.0 - t3 * t * t / 120.0 + t3 * t3 * t / 5040.0;
  }
  return t - std::sin(t);
}
double sinh_minus_t(double t) {
  if (std::abs(t) < 1e-2) {
    const double t3 = t * t * t;
    return t3 / 6.0 + t3 * t * t / 120.0 + t3 * t3 * t / 5040.0;
  }
  return std::sinh(t) - t;
}

// t - (1 - e^{-t}).
double t_plus_expm1(double t) {
  if (std::abs(t) < 1e-3) {
    const double t2 = t * t;
    return t2 / 2.0 - t2 * t / 6.0 + t2 * t2 / 24.0 - t2 * t2 * t / 120.0 + t2 * t2 * t2 / 720.0;
  }
  return t + std::expm1(-t);
}

struct Gram {
  double g11, g12, g22;
};

// Integrals of products of the two real basis functions over the domain.
Gram basis_gram(const Geometry& g, Sector s, double k) {
  if (!is_interval(g)) {
    if (s != Sector::Negative) throw Error(ErrorCode::NotNormalizable, "non-decaying state on the line");
    return {1.0 / (2.0 * k), 1.0 / (4.0 * k * k), 1.0 / (4.0 * k * k * k)};
  }
  const double l = half_length(g);
  switch (s) {
    case Sector::Positive: {
      const double t = 2.0 * k * l;
      const double skl = std::sin(k * l);
      return {(t + std::sin(t)) / (4.0 * k), skl * skl / (2.0 * k), t_minus_sin(t) / (4.0 * k)};
    }
    case Sector::Zero: return {l, 0.5 * l * l, l * l * l / 3.0};
    case Sector::Negative: {
      if (k == 0.0) return {l, 0.5 * l * l, l * l * l / 3.0};
      const double t = 2.0 * k * l;
      const double e = std::exp(-k * l);
      const double g22 = t < 1.0 ? e * e * sinh_minus_t(t) : -0.5 * std::expm1(-2.0 * t) - t * e * e;
      return {shrink_over(k, l), e * t_plus_expm1(t) / (4.0 * k * k), g22 / (4.0 * k * k * k)};
    }
  }
  return {};
}

}  // namespace

Vec2c evaluate(const WaveFunction& wf, double x) {
  check_domain(wf.geometry(), x);
  const auto b = basis_values(wf.geometry(), wf.sector(), wf.rate(), x);
  return combine(wf.coeffs(), b.f1, b.f2);
}

Vec2c derivative(const WaveFunction& wf, double x) {
  check_domain(wf.geometry(), x);
  const auto b = basis_values(wf.geometry(), wf.sector(), wf.rate(), x);
  return combine(wf.coeffs(), b.d1, b.d2);
}

BoundaryData boundary_data(const WaveFunction& wf, Endpoint at) {
  double x = 0.0;
  if (at == Endpoint::Wall) {
    if (!is_interval(wf.geometry())) throw Error(ErrorCode::GeometryMismatch, "wall on the line");
    x = half_length(wf.geometry());
  }
  const auto b = basis_values(wf.geometry(), wf.sector(), wf.rate(), x);
  return {combine(wf.coeffs(), b.f1, b.f2), combine(wf.coeffs(), b.d1, b.d2)};
}

cplx inner_product(const WaveFunction& wf1, const WaveFunction& wf2) {
  const bool same_basis = wf1.geometry().index() == wf2.geometry().index() &&
                          wf1.sector() == wf2.sector() &&
                          std::abs(wf1.rate() - wf2.rate()) <= 1e-12 * std::max(1.0, wf1.rate());
  if (!same_basis) throw Error(ErrorCode::InvalidArgument, "inner product across different bases");
  const Gram g = basis_gram(wf1.geometry(), wf1.sector(), wf1.rate());
  const auto& a = wf1.coeffs();
  const auto& b = wf2.coeffs();
  cplx sum = 0.0;
  for (int comp = 0; comp < 2; ++comp) {
    const cplx a1 = std::conj(a[2 * comp]), a2 = std::conj(a[2 * comp + 1]);
    const cplx b1 = b[2 * comp], b2 = b[2 * comp + 1];
    sum += a1 * b1 * g.g11 + (a1 * b2 + a2 * b1) * g.g12 + a2 * b2 * g.g22;
  }
  return sum;
}

double l2_norm(const WaveFunction& wf) {
  return std::sqrt(std::max(0.0, inner_product(wf, wf).real()));
}

WaveFunction normalized(const WaveFunction& wf) {
  const double n = l2_norm(wf);
  if (!(n > 0.0)) throw Error(ErrorCode::InvalidArgument, "cannot normalize the zero state");
  Coefficients c = wf.coeffs();
  for (auto& v : c) v /= n;
  return wf.with_coeffs(c);
}

WaveFunction half_parity(const WaveFunction& wf) {
  if (!is_interval(wf.geometry())) throw Error(ErrorCode::GeometryMismatch, "half parity on the line");
  const double l = half_length(wf.geometry());
  const double k = wf.rate();
  Coefficients c = wf.coeffs();
  const cplx a = c[0], b = c[1];
  switch (wf.sector()) {
    case Sector::Positive: {
      const double ck = std::cos(k * l), sk = std::sin(k * l);
      c[0] = a * ck + b * sk;
      c[1] = a * sk - b * ck;
      break;
    }
    case Sector::Zero:
      c[0] = a + l * b;
      c[1] = -b;
      break;
    case Sector::Negative: {
      // e^{-k(l-x)} = e^{-kl} f1 + 2k f2 and f2(l - x) = s f1 - e^{-kl} f2.
      const double e = std::exp(-k * l), sl = shrink_over(k, l);
      c[0] = a * e + b * sl;
      c[1] = 2.0 * k * a - b * e;
      break;
    }
  }
  return wf.with_coeffs(c);
}

}  // namespace ssusy
