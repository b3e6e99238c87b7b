#include "ssusy/classify.hpp"

#include <cstdio>

#include "ssusy/error.hpp"

namespace ssusy {

namespace {

constexpr double kAnnihilationTol = 1e-10;
constexpr double kBranchResidualTol = 1e-9;
constexpr std::size_t kGoodnessLevels = 4;

std::string format_note(const char* fmt, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, fmt, a, b);
  return buf;
}

SusyClassification n2_pair(const SystemSpec& spec, const PointSusy& p) {
  SusyClassification out;
  out.degree = SusyDegree::N2;
  out.charges.push_back(build_supercharge(0.0, 0.0, p.theta, spec.lambda, spec.L0, p.V));
  out.charges.push_back(build_supercharge(kPi / 2.0, 0.0, p.theta, spec.lambda, spec.L0, p.V));
  out.shift = out.charges.front().shift();
  return out;
}

struct N1Candidate {
  double alpha = 0.0;
  double c = 0.0;
  double residual = 0.0;
};

// In the frame where D_l = diag(e^{i theta_l}, -1) the physical charge is
// R q R^{-1}; it must take the wall form q(alpha_l, c_l; theta_l).
N1Candidate n1_candidate(const SystemSpec& spec, const Mat2& v_rel, double theta, double theta_l,
                         double alpha) {
  const Mat2 w = v_rel.adjoint();
  const Vec3 a{std::cos(alpha), std::sin(alpha), 0.0};
  const Vec3 ra = rotate_by(w, a);
  const Vec3 rw = rotate_by(w, a.cross({0.0, 0.0, 1.0}));
  const Vec3 rz = rotate_by(w, {0.0, 0.0, 1.0});
  const double g = spec.lambda * LengthScale(theta, spec.L0).inverse();
  const double g_l = spec.lambda * LengthScale(theta_l, spec.L0).inverse();
  const double tx = g_l * ra.y, ty = -g_l * ra.x;
  const double ux = tx - g * rw.x, uy = ty - g * rw.y;
  const double rr = rz.x * rz.x + rz.y * rz.y;
  N1Candidate out;
  out.alpha = alpha;
  out.c = rr > 0.0 ? (rz.x * ux + rz.y * uy) / rr : 0.0;
  const double ex = g * rw.x + out.c * rz.x - tx;
  const double ey = g * rw.y + out.c * rz.y - ty;
  const double scale = std::abs(g) + std::abs(g_l) + spec.lambda / spec.scale();
  out.residual = (std::hypot(ex, ey) + std::abs(ra.z)) / scale;
  return out;
}

SusyClassification interval_core(const SystemSpec& spec, const PointSusy& pu, const PointSusy& pd) {
  const Mat2 v_rel = pu.V * pd.V.adjoint();
  const EulerSplit split = euler_from_su2(v_rel);
  const double mu = split.angles.mu;
  const double nu = split.angles.nu;
  const cplx e = std::polar(1.0, pu.theta);
  const bool same = phase_distance(e, std::polar(1.0, pd.theta)) < kPhaseTol;
  const bool opposite = phase_distance(e, std::polar(1.0, -pd.theta)) < kPhaseTol;
  const bool mu_zero = std::abs(std::sin(0.5 * mu)) < kPhaseTol;
  const bool mu_pi = std::abs(std::cos(0.5 * mu)) < kPhaseTol;

  SusyClassification out;
  if ((mu_zero && same) || (mu_pi && opposite)) {
    out = n2_pair(spec, pu);
  } else if (!mu_zero && !mu_pi) {
    // a must stay in the xy-plane after the relative rotation.
    const Vec3 rx = rotate_by(v_rel.adjoint(), {1.0, 0.0, 0.0});
    const Vec3 ry = rotate_by(v_rel.adjoint(), {0.0, 1.0, 0.0});
    const double alpha = wrap_angle(std::atan2(-rx.z, ry.z));
    const N1Candidate plus = n1_candidate(spec, v_rel, pu.theta, pd.theta, alpha);
    const N1Candidate minus = n1_candidate(spec, v_rel, pu.theta, pd.theta, wrap_angle(alpha + kPi));
    out.notes.push_back(format_note("n1 sign +: c = %.12g, residual %.3g", plus.c, plus.residual));
    out.notes.push_back(format_note("n1 sign -: c = %.12g, residual %.3g", minus.c, minus.residual));
    const N1Candidate* pick = plus.residual < kBranchResidualTol    ? &plus
                              : minus.residual < kBranchResidualTol ? &minus
                                                                    : nullptr;
    if (pick) {
      out.degree = SusyDegree::N1;
      out.charges.push_back(build_supercharge(pick->alpha, pick->c, pu.theta, spec.lambda, spec.L0, pu.V));
      out.shift = out.charges.front().shift();
    }
  }
  out.mu = mu;
  out.nu = mu_zero || mu_pi ? 0.0 : nu;
  return out;
}

SusyClassification line_structure(const SystemSpec& spec) {
  if (spec.on_interval()) throw Error(ErrorCode::GeometryMismatch, "classify_line on an interval");
  const auto p = admits_susy_at_point(spec.U);
  return p ? n2_pair(spec, *p) : SusyClassification{};
}

SusyClassification interval_structure(const SystemSpec& spec) {
  if (!spec.on_interval()) throw Error(ErrorCode::GeometryMismatch, "classify_interval on the line");
  const auto pu = admits_susy_at_point(spec.U);
  const auto pd = admits_susy_at_point(spec.Dl);
  if (pu && pd) return interval_core(spec, *pu, *pd);
  if (!spec.U.is_diagonal(1e-12)) return {};
  // U without a -1 eigenvalue can still be the half-parity image of an
  // admissible pair; its charges are X q X.
  const SystemSpec image = half_parity_system(spec);
  const auto iu = admits_susy_at_point(image.U);
  const auto id = admits_susy_at_point(image.Dl);
  if (!iu || !id) return {};
  SusyClassification out = interval_core(image, *iu, *id);
  if (out.degree == SusyDegree::None) return {};
  for (auto& q : out.charges) q.half_parity_dressed = true;
  out.notes.push_back("charges dressed by the half parity");
  return out;
}

}  // namespace

std::optional<PointSusy> admits_susy_at_point(const Mat2& m) {
  const auto dec = diagonalize_u2(m);
  const cplx e0 = dec.D(0, 0);
  const cplx e1 = dec.D(1, 1);
  if (phase_distance(e1, -1.0) >= kPhaseTol) return std::nullopt;
  if (phase_distance(e0, -1.0) < kPhaseTol) return std::nullopt;
  return PointSusy{phase_of(e0), dec.V};
}

const char* to_string(SusyDegree d) noexcept {
  switch (d) {
    case SusyDegree::None: return "None";
    case SusyDegree::N1: return "N1";
    case SusyDegree::N2: return "N2";
  }
  return "?";
}

const char* to_string(Goodness g) noexcept {
  switch (g) {
    case Goodness::Good: return "Good";
    case Goodness::Broken: return "Broken";
    case Goodness::NotApplicable: return "NotApplicable";
  }
  return "?";
}

SusyClassification classify_structure(const SystemSpec& spec) {
  spec.validate();
  return spec.on_interval() ? interval_structure(spec) : line_structure(spec);
}

double annihilation_residual(const SystemSpec& spec, const SuperchargeSpec& q, const WaveFunction& wf) {
  const double n = l2_norm(wf);
  if (!(n > 0.0)) return 0.0;
  const double lam = spec.lambda / spec.scale();
  const double scale = std::sqrt(std::abs(wf.energy()) + q.shift() + lam * lam);
  return l2_norm(apply_supercharge(q, wf)) / (scale * n);
}

Goodness goodness_of(const SystemSpec& spec, const std::vector<SuperchargeSpec>& charges,
                     const Spectrum& spectrum) {
  if (charges.empty() || spectrum.levels.empty()) return Goodness::NotApplicable;
  const Level& ground = spectrum.levels.front();
  if (ground.multiplicity != 1) return Goodness::Broken;
  for (const auto& q : charges)
    for (const auto& wf : ground.states)
      if (annihilation_residual(spec, q, wf) >= kAnnihilationTol) return Goodness::Broken;
  return Goodness::Good;
}

SusyClassification classify_line(const SystemSpec& spec) {
  spec.validate();
  SusyClassification out = line_structure(spec);
  if (out.degree != SusyDegree::None)
    out.goodness = goodness_of(spec, out.charges, solve_line_bound_states(spec));
  return out;
}

SusyClassification classify_interval(const SystemSpec& spec) {
  spec.validate();
  SusyClassification out = interval_structure(spec);
  if (out.degree != SusyDegree::None)
    out.goodness = goodness_of(spec, out.charges, solve_interval_spectrum(spec, kGoodnessLevels));
  return out;
}

SusyClassification classify(const SystemSpec& spec) {
  return spec.on_interval() ? classify_interval(spec) : classify_line(spec);
}

SystemSpec half_parity_system(const SystemSpec& spec) {
  if (!spec.on_interval()) throw Error(ErrorCode::GeometryMismatch, "half parity on the line");
  if (!spec.U.is_diagonal(1e-12))
    throw Error(ErrorCode::NotDiagonal, "half parity needs a diagonal U");
  const Mat2 u = Mat2::diag(std::conj(spec.Dl(0, 0)), spec.U(1, 1));
  const Mat2 dl = Mat2::diag(std::conj(spec.U(0, 0)), spec.Dl(1, 1));
  return SystemSpec::interval(spec.l(), u, dl, spec.lambda, spec.L0);
}

}  // namespace ssusy
