#pragma once

// Supercharges of the form Q = -i lambda d/dx (x) s_a + 1 (x) s_b, stored as
// q(alpha, c; theta) together with the conjugator V of the physical charge
// V^{-1} q V.

#include "ssusy/matkit.hpp"
#include "ssusy/system.hpp"

namespace ssusy {

struct SuperchargeSpec {
  Vec3 a;  // (cos alpha, sin alpha, 0)
  Vec3 b;  // (lambda / L(theta)) (sin alpha, -cos alpha, 0) + (0, 0, c)
  double alpha = 0.0;
  double c = 0.0;
  double theta = 0.0;
  double lambda = 1.0;
  double L0 = 1.0;
  Mat2 conjugator = Mat2::identity();
  /// Physical charge is X q X with the half parity X instead of V^{-1} q V.
  bool half_parity_dressed = false;

  /// Pauli vectors of the physical charge, V^{-1} s_a V and V^{-1} s_b V.
  Vec3 kinetic_vector() const;
  Vec3 shift_vector() const;
  Mat2 kinetic() const { return pauli_combination(kinetic_vector()); }
  Mat2 potential() const { return pauli_combination(shift_vector()); }
  /// |b|^2, the constant in Q^2 = H + |b|^2.
  double shift() const { return b.dot(b); }
};

/// q(alpha, c; theta) conjugated by V. Throws ThetaPi.
SuperchargeSpec build_supercharge(double alpha, double c, double theta, double lambda, double L0,
                                  const Mat2& V = Mat2::identity());

/// Q acting on the closed-form basis. The result shares sector, rate and
/// energy label with wf.
WaveFunction apply_supercharge(const SuperchargeSpec& q, const WaveFunction& wf);

}  // namespace ssusy
