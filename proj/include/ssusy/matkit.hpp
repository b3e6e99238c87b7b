#pragma once

// Small exact-as-possible 2x2 complex algebra: Pauli combinations, U(2)
// diagonalization, SU(2) Euler parametrization and conjugation.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace ssusy {

using cplx = std::complex<double>;
using Vec2c = std::array<cplx, 2>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }

  friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
};

class Mat2 {
 public:
  Mat2() = default;
  Mat2(cplx m00, cplx m01, cplx m10, cplx m11) : m_{m00, m01, m10, m11} {}

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 zero() { return {0.0, 0.0, 0.0, 0.0}; }
  static Mat2 diag(cplx a, cplx b) { return {a, 0.0, 0.0, b}; }

  cplx operator()(int r, int c) const { return m_[2 * r + c]; }
  cplx& operator()(int r, int c) { return m_[2 * r + c]; }

  Mat2 adjoint() const {
    return {std::conj(m_[0]), std::conj(m_[2]), std::conj(m_[1]), std::conj(m_[3])};
  }
  cplx det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }
  cplx trace() const { return m_[0] + m_[3]; }
  double frobenius() const {
    return std::sqrt(std::norm(m_[0]) + std::norm(m_[1]) + std::norm(m_[2]) + std::norm(m_[3]));
  }
  bool is_finite() const;
  bool is_diagonal(double tol) const { return std::abs(m_[1]) < tol && std::abs(m_[2]) < tol; }

  Vec2c apply(const Vec2c& v) const {
    return {m_[0] * v[0] + m_[1] * v[1], m_[2] * v[0] + m_[3] * v[1]};
  }

  friend Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {a.m_[0] + b.m_[0], a.m_[1] + b.m_[1], a.m_[2] + b.m_[2], a.m_[3] + b.m_[3]};
  }
  friend Mat2 operator-(const Mat2& a, const Mat2& b) {
    return {a.m_[0] - b.m_[0], a.m_[1] - b.m_[1], a.m_[2] - b.m_[2], a.m_[3] - b.m_[3]};
  }
  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.m_[0] * b.m_[0] + a.m_[1] * b.m_[2], a.m_[0] * b.m_[1] + a.m_[1] * b.m_[3],
            a.m_[2] * b.m_[0] + a.m_[3] * b.m_[2], a.m_[2] * b.m_[1] + a.m_[3] * b.m_[3]};
  }
  friend Mat2 operator*(cplx s, const Mat2& a) {
    return {s * a.m_[0], s * a.m_[1], s * a.m_[2], s * a.m_[3]};
  }

 private:
  std::array<cplx, 4> m_{};
};

inline double vec_norm(const Vec2c& v) { return std::sqrt(std::norm(v[0]) + std::norm(v[1])); }

namespace pauli {
inline Mat2 sigma1() { return {0.0, 1.0, 1.0, 0.0}; }
inline Mat2 sigma2() { return {0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0}; }
inline Mat2 sigma3() { return {1.0, 0.0, 0.0, -1.0}; }
}  // namespace pauli

/// v1 s1 + v2 s2 + v3 s3.
Mat2 pauli_combination(const Vec3& v);

/// Real Pauli coordinates of the traceless Hermitian part, Re tr(s_i M) / 2.
Vec3 pauli_vector(const Mat2& m);

/// Anti-Hermitian part in the same coordinates, Im tr(s_i M) / 2.
Vec3 pauli_vector_imag(const Mat2& m);

bool is_unitary(const Mat2& m, double tol = 1e-10);

/// V = exp(i mu/2 s2) exp(i nu/2 s3), mu in [0, pi], nu in [0, 2pi).
struct EulerAngles {
  double mu = 0.0;
  double nu = 0.0;
};

Mat2 su2_from_euler(const EulerAngles& angles);

/// Splits V in SU(2) as exp(i rho s3) * su2_from_euler(angles). rho is a
/// phase that commutes with any diagonal matrix, so conjugating a diagonal
/// D by V or by su2_from_euler(angles) gives the same result. When
/// sin(mu) == 0 the angle nu is pure gauge and is returned as 0.
struct EulerSplit {
  EulerAngles angles;
  double rho = 0.0;
};
EulerSplit euler_from_su2(const Mat2& v, double tol = 1e-12);

/// U = V^{-1} D V with V in SU(2) and D diagonal unimodular. If -1 is an
/// eigenvalue it sits in the lower-right slot; otherwise the eigenvalues
/// are sorted by ascending phase in [0, 2pi). Degenerate U gives V = I.
struct U2Decomposition {
  Mat2 V;
  Mat2 D;
};
U2Decomposition diagonalize_u2(const Mat2& u, double tol = 1e-10);

/// W M W^{-1}. Throws NotUnitary when W is not unitary.
Mat2 conjugate(const Mat2& w, const Mat2& m);

/// Pauli vector of W s_v W^{-1}; W must be unitary.
Vec3 rotate_by(const Mat2& w, const Vec3& v);

double wrap_angle(double angle);                 // into [0, 2pi)
double phase_distance(cplx a, cplx b);           // angle between a and b on the unit circle
double phase_of(cplx z);                         // arg z wrapped into [0, 2pi)

}  // namespace ssusy
