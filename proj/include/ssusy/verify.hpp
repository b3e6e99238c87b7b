#pragma once

// Numerical checks of the supersymmetry and self-adjointness claims. Every
// check works on closed-form coefficients, never on sampled grids.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ssusy/classify.hpp"
#include "ssusy/spectra.hpp"
#include "ssusy/supercharge.hpp"

namespace ssusy {

struct Check {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string details;
};

struct VerificationReport {
  std::vector<Check> checks;

  bool passed() const;
  void add(Check c) { checks.push_back(std::move(c)); }
  void append(const VerificationReport& other);
};

inline constexpr double kDefaultResidualTol = 1e-8;

/// Connection (and wall) residual of Q psi.
VerificationReport check_domain_preservation(const SystemSpec& spec, const SuperchargeSpec& q,
                                             const WaveFunction& wf,
                                             double tol = kDefaultResidualTol);

/// Q_i Q_i psi = (E + |b_i|^2) psi for each charge and {Q_1, Q_2} psi = 0,
/// relative to (|E| + |b|^2 + lambda^2 / scale^2) ||psi||.
VerificationReport check_algebra(const SystemSpec& spec, const SuperchargeSpec& q1,
                                 const SuperchargeSpec& q2, const WaveFunction& wf,
                                 double tol = 1e-10);
VerificationReport check_algebra(const SystemSpec& spec, const SuperchargeSpec& q,
                                 const WaveFunction& wf, double tol = 1e-10);

/// Q maps each level into itself; a doublet is mixed unless annihilated.
VerificationReport check_degeneracy_pairing(const SystemSpec& spec,
                                            const SusyClassification& classification,
                                            const Spectrum& spectrum,
                                            double tol = kDefaultResidualTol);

/// psi1^dagger(x0) A psi2(x0).
cplx boundary_form(const WaveFunction& wf1, const WaveFunction& wf2, const Mat2& a_matrix,
                   Endpoint at);

struct DeficiencyIndices {
  int n_plus = 0;
  int n_minus = 0;
  friend bool operator==(const DeficiencyIndices&, const DeficiencyIndices&) = default;
};

/// Square-integrable solutions of Q psi = +-i g psi for the sigma_2 charge,
/// g = 1.
DeficiencyIndices deficiency_indices(const SystemSpec& spec);

/// Every level lies above -|b|^2 of the c = 0 pair. details is "attained"
/// or "strict".
VerificationReport check_lower_bound(const SystemSpec& spec, const SusyClassification& classification,
                                     const Spectrum& spectrum);

/// Hermitian involution W = s_n commuting with U and D_l and anticommuting
/// with every kinetic matrix.
std::optional<Mat2> witten_parity_search(const SystemSpec& spec,
                                         const SusyClassification& classification);

/// Runs every applicable check on the lowest n_levels levels.
VerificationReport verify_system(const SystemSpec& spec, std::size_t n_levels,
                                 double tol = kDefaultResidualTol);

}  // namespace ssusy
