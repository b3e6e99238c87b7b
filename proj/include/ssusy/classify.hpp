#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ssusy/spectra.hpp"
#include "ssusy/supercharge.hpp"
#include "ssusy/system.hpp"

namespace ssusy {

/// A point condition M admits a supercharge iff its eigenvalues are
/// {e^{i theta}, -1} with theta != pi; then M = V^{-1} diag(e^{i theta}, -1) V.
struct PointSusy {
  double theta = 0.0;
  Mat2 V;
};

inline constexpr double kPhaseTol = 1e-9;

/// Throws NotUnitary.
std::optional<PointSusy> admits_susy_at_point(const Mat2& m);

enum class SusyDegree { None, N1, N2 };
enum class Goodness { Good, Broken, NotApplicable };

const char* to_string(SusyDegree d) noexcept;
const char* to_string(Goodness g) noexcept;

struct SusyClassification {
  SusyDegree degree = SusyDegree::None;
  /// N2: the canonical pair alpha = 0, pi/2 with c = 0. N1: the single charge.
  std::vector<SuperchargeSpec> charges;
  double shift = 0.0;
  Goodness goodness = Goodness::NotApplicable;
  /// Branch data for the interval: Euler angles of the relative conjugator.
  double mu = 0.0;
  double nu = 0.0;
  std::vector<std::string> notes;
};

/// Degree and charges only; goodness stays NotApplicable.
SusyClassification classify_structure(const SystemSpec& spec);

/// Throws GeometryMismatch.
SusyClassification classify_line(const SystemSpec& spec);
SusyClassification classify_interval(const SystemSpec& spec);
SusyClassification classify(const SystemSpec& spec);

/// Good iff the lowest level is unique and annihilated by every charge.
Goodness goodness_of(const SystemSpec& spec, const std::vector<SuperchargeSpec>& charges,
                     const Spectrum& spectrum);

/// || Q psi || relative to sqrt(|E| + |b|^2 + lambda^2 / scale^2) ||psi||.
double annihilation_residual(const SystemSpec& spec, const SuperchargeSpec& q, const WaveFunction& wf);

/// Image of a pair with diagonal U under the half parity: the upper-left
/// entries of U and D_l trade places with theta -> -theta. Throws
/// GeometryMismatch on the line and NotDiagonal for non-diagonal U.
SystemSpec half_parity_system(const SystemSpec& spec);

}  // namespace ssusy
