#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ssusy/kernels.hpp"
#include "ssusy/system.hpp"

namespace ssusy {

struct Level {
  double energy = 0.0;
  int multiplicity = 1;
  Sector sector = Sector::Positive;
  double rate = 0.0;  // k, kappa, or 0
  std::vector<WaveFunction> states;  // normalized, L^2-orthonormal
};

struct SolverReport {
  std::size_t bracket_count = 0;       // grid cells that contained levels
  double refinement_tolerance = 0.0;   // final bracket width in s
  std::string nullity_method;
  std::size_t nullity_mismatches = 0;  // levels where the SVD count disagreed
  double worst_sigma_ratio = 0.0;      // max sigma_min / ||M|| over accepted levels
  bool truncated = false;              // fewer levels than requested inside the cap
};

struct Spectrum {
  std::vector<Level> levels;  // ascending energy
  double e_min = 0.0;
  double e_max = 0.0;
  SolverReport report;
};

struct SolverOptions {
  /// Positive-energy grid step in k; 0 means pi / (8 l).
  double k_step = 0.0;
  /// Hard cap on the scanned k, in units of pi / l.
  double k_cap_periods = 4096.0;
  /// Relative bracket width at which bisection stops.
  double bisection_rel_tol = 1e-14;
  Execution execution = Execution::Parallel;
};

/// Rows: (U - I) Psi(+0) + i L0 (U + I) Psi'(+0) and the same at x = l with
/// D_l; columns: (A+, B+, A-, B-) over the sector basis for this energy.
/// Throws GeometryMismatch on the line.
Eigen::Matrix4cd secular_matrix(const SystemSpec& spec, double energy);

Spectrum solve_interval_spectrum(const SystemSpec& spec, std::size_t n_levels,
                                 const SolverOptions& options = {});
Spectrum solve_line_bound_states(const SystemSpec& spec, const SolverOptions& options = {});

/// Dispatches on geometry; n_levels is ignored on the line.
Spectrum solve_spectrum(const SystemSpec& spec, std::size_t n_levels,
                        const SolverOptions& options = {});

}  // namespace ssusy
