#pragma once

// Grid kernels used by the spectral scan. Each kernel has a serial
// reference implementation and an OpenMP version; both must agree
// bit-for-bit since every grid point is computed independently.
//
// Energies are addressed by a signed momentum s: E = lambda^2 s |s|, so s > 0
// is k and s < 0 is -kappa.

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ssusy/system.hpp"

namespace ssusy {

enum class Execution { Serial, Parallel };

/// Raw phase data at one grid point. phi[j] is arg z_j, where
/// z_j = u_j(0) + i L0 u_j'(0) for the real solution u_j of component j that
/// satisfies the wall condition (interval) or decays (line). eig[] are the
/// eigenphases, in [0, 2pi), of T = diag(e^{2i phi_j}) U; the level
/// condition is that T has eigenvalue 1.
struct PhaseSample {
  std::array<double, 2> phi{};
  std::array<double, 2> eig{};
};

PhaseSample phase_sample(const SystemSpec& spec, double s);

std::vector<PhaseSample> phase_samples_serial(const SystemSpec& spec, std::span<const double> s);
std::vector<PhaseSample> phase_samples_parallel(const SystemSpec& spec, std::span<const double> s);
std::vector<PhaseSample> phase_samples(const SystemSpec& spec, std::span<const double> s,
                                       Execution exec);

/// Secular matrix with well-conditioned columns and rows, each row block
/// normalized to unit Frobenius norm. Columns: {cos kx, sin(kx)/k} for
/// s >= 0, the stored basis {e^{-kx}, e^{-kl} sinh(kx)/k} for s < 0; both
/// reduce to {1, x} at s = 0. Null vectors convert to stored coefficients
/// by B /= k for s > 0 and unchanged otherwise.
Eigen::Matrix4cd conditioned_secular_matrix(const SystemSpec& spec, double s);

/// sigma_min / ||M||_F of the conditioned secular matrix at each s.
std::vector<double> sigma_min_profile_serial(const SystemSpec& spec, std::span<const double> s);
std::vector<double> sigma_min_profile_parallel(const SystemSpec& spec, std::span<const double> s);
std::vector<double> sigma_min_profile(const SystemSpec& spec, std::span<const double> s,
                                      Execution exec);

/// Tracks phases through a grid and turns them into the integer level
/// count. phi_j increases strictly with E, which makes the unwrapping
/// unambiguous for steps that move each phase by less than 2 pi.
class LevelCounter {
 public:
  explicit LevelCounter(const SystemSpec& spec);

  struct State {
    std::array<double, 2> phi{};  // unwrapped
    long count = 0;
  };

  /// First point of a sweep: phases taken as-is.
  State start(const PhaseSample& sample) const;
  /// Point following prev (higher energy).
  State advance(const State& prev, const PhaseSample& sample) const;

 private:
  double det_phase_;
};

}  // namespace ssusy
