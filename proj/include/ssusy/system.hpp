#pragma once

// Domain model for a free particle on a line or on the interval [-l, l],
// folded onto the half line (0, inf) or the half interval (0, l] with a
// two-component wave function (psi_+, psi_-). The point singularity at x = 0
// is labeled by a U(2) matrix U, the walls x = +-l by a diagonal D_l.

#include <array>
#include <optional>
#include <variant>

#include "ssusy/matkit.hpp"

namespace ssusy {

struct Line {};
struct Interval {
  double l = 1.0;
};
using Geometry = std::variant<Line, Interval>;

inline bool is_interval(const Geometry& g) { return std::holds_alternative<Interval>(g); }
double half_length(const Geometry& g);  // throws GeometryMismatch on Line

/// L(theta) = L0 cot(theta/2). theta = 0 is the Neumann limit, L = inf.
class LengthScale {
 public:
  LengthScale(double theta, double L0);
  static LengthScale from_length(double length, double L0);

  double theta() const { return theta_; }
  bool infinite() const { return inverse_ == 0.0; }
  /// L(theta); +inf when theta == 0.
  double value() const;
  /// 1 / L(theta) = tan(theta/2) / L0, finite for every admissible theta.
  double inverse() const { return inverse_; }

 private:
  double theta_;
  double L0_;
  double inverse_;
};

/// V^{-1} diag(e^{i theta}, -1) V with V = su2_from_euler(mu, nu).
/// Throws ThetaPi when theta == pi (mod 2pi).
Mat2 characteristic_from_angles(double theta, double mu = 0.0, double nu = 0.0);
/// diag(e^{i theta_l}, -1); throws ThetaPi when theta_l == pi.
Mat2 wall_from_theta(double theta_l);
/// theta with L0 cot(theta/2) == length, in [0, 2pi).
double theta_from_length(double length, double L0);

struct SystemSpec {
  Geometry geometry = Line{};
  Mat2 U = Mat2::identity();
  Mat2 Dl = Mat2::identity();  // ignored on the line
  double lambda = 1.0;
  double L0 = 1.0;

  static SystemSpec line(const Mat2& u, double lambda = 1.0, double L0 = 1.0);
  static SystemSpec interval(double l, const Mat2& u, const Mat2& dl, double lambda = 1.0,
                             double L0 = 1.0);

  /// Throws NotUnitary, NotDiagonal or InvalidArgument.
  void validate() const;
  bool on_interval() const { return is_interval(geometry); }
  double l() const { return half_length(geometry); }
  /// Natural length used to make residuals scale-free: l or L0.
  double scale() const;
};

struct BoundaryData {
  Vec2c psi{};
  Vec2c dpsi{};
};

/// || (M - I) psi + i L0 (M + I) dpsi || / max(||psi||, L0 ||dpsi||, eps).
double condition_residual(const Mat2& m, double L0, const BoundaryData& b);
double connection_residual(const SystemSpec& spec, const BoundaryData& b);
/// Throws GeometryMismatch on the line.
double wall_residual(const SystemSpec& spec, const BoundaryData& b);

enum class Sector { Positive, Zero, Negative };
enum class Endpoint { Origin, Wall };

const char* to_string(Sector s) noexcept;

/// Coefficients ordered (A+, B+, A-, B-) over the two sector basis
/// functions of each component:
///   Positive: {cos kx, sin kx}
///   Zero:     {1, x}
///   Negative: {e^{-kx}, e^{-kl} sinh(kx) / k} on the interval,
///             {e^{-kx}, x e^{-kx}} on the line.
/// The interval pair spans {cosh kx, sinh kx} but stays bounded for any kl,
/// so states localized at either end keep full precision; it tends to
/// {1, x} as k -> 0.
/// On the line only the first function is an eigenfunction; the second is
/// kept so that non-eigen test states such as x e^{-x} stay representable
/// and closed under d/dx.
using Coefficients = std::array<cplx, 4>;

class WaveFunction {
 public:
  /// rate is k for Positive, kappa for Negative and ignored for Zero.
  /// Throws NotNormalizable for Positive/Zero sectors on the line.
  static WaveFunction make(const Geometry& geometry, Sector sector, double rate, double lambda,
                           const Coefficients& coeffs);

  const Geometry& geometry() const { return geometry_; }
  Sector sector() const { return sector_; }
  double rate() const { return rate_; }
  double energy() const { return energy_; }
  double lambda() const { return lambda_; }
  const Coefficients& coeffs() const { return coeffs_; }

  /// Same sector and geometry with new coefficients.
  WaveFunction with_coeffs(const Coefficients& coeffs) const;

 private:
  Geometry geometry_;
  Sector sector_ = Sector::Positive;
  double rate_ = 0.0;
  double energy_ = 0.0;
  double lambda_ = 1.0;
  Coefficients coeffs_{};
};

/// Matrix of d/dx on the two-function sector basis: (A, B) -> (A', B').
using BasisDerivative = std::array<std::array<double, 2>, 2>;
BasisDerivative basis_derivative(const Geometry& g, Sector s, double rate);

/// The two basis functions and their derivatives at x (no domain check).
struct BasisValues {
  double f1, f2, d1, d2;
};
BasisValues basis_values(const Geometry& g, Sector s, double rate, double x);

/// Throws OutOfDomain unless 0 < x <= l (interval) or x > 0 (line).
Vec2c evaluate(const WaveFunction& wf, double x);
Vec2c derivative(const WaveFunction& wf, double x);
/// One-sided limits at x -> +0 or x = l.
BoundaryData boundary_data(const WaveFunction& wf, Endpoint at);

/// <wf1, wf2> in L^2; both must share geometry, sector and rate.
cplx inner_product(const WaveFunction& wf1, const WaveFunction& wf2);
double l2_norm(const WaveFunction& wf);
WaveFunction normalized(const WaveFunction& wf);

/// (psi_+(x), psi_-(x)) -> (psi_+(l - x), psi_-(x)); an involution.
WaveFunction half_parity(const WaveFunction& wf);

}  // namespace ssusy
