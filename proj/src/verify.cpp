#include "ssusy/verify.hpp"

#include <algorithm>
#include <cfloat>
#include <cstdio>

#include "ssusy/error.hpp"

namespace ssusy {

namespace {

constexpr double kAnnihilated = 1e-12;
constexpr double kBoundaryFormTol = 1e-10;
constexpr double kLowerBoundTol = 1e-9;
constexpr double kCommutatorTol = 1e-10;

Check make_check(std::string name, double residual, double tol, std::string details = {}) {
  return {std::move(name), residual < tol, residual, tol, std::move(details)};
}

std::string indexed(const char* base, std::size_t level, std::size_t charge) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s[level=%zu,charge=%zu]", base, level, charge);
  return buf;
}

std::string indexed(const char* base, std::size_t level) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s[level=%zu]", base, level);
  return buf;
}

double q_scale(const SystemSpec& spec, const WaveFunction& wf, double shift) {
  const double lam = spec.lambda / spec.scale();
  return std::abs(wf.energy()) + shift + lam * lam;
}

Coefficients axpy(const Coefficients& x, cplx a, const Coefficients& y) {
  Coefficients out{};
  for (int i = 0; i < 4; ++i) out[i] = x[i] + a * y[i];
  return out;
}

double relative_condition(const Mat2& m, double L0, const BoundaryData& b, double floor) {
  const double own = std::max({vec_norm(b.psi), L0 * vec_norm(b.dpsi), DBL_MIN});
  return condition_residual(m, L0, b) * own / std::max(own, floor);
}

}  // namespace

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

void VerificationReport::append(const VerificationReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

VerificationReport check_domain_preservation(const SystemSpec& spec, const SuperchargeSpec& q,
                                             const WaveFunction& wf, double tol) {
  VerificationReport report;
  if (annihilation_residual(spec, q, wf) < kAnnihilated) {
    report.add(make_check("domain.connection", 0.0, tol, "Q psi = 0"));
    if (spec.on_interval()) report.add(make_check("domain.wall", 0.0, tol, "Q psi = 0"));
    return report;
  }
  const WaveFunction img = apply_supercharge(q, wf);
  // Boundary values of an L2-normalized state are of order 1/sqrt(scale).
  const double floor = 1e-13 * l2_norm(img) / std::sqrt(spec.scale());
  report.add(make_check("domain.connection",
                        relative_condition(spec.U, spec.L0, boundary_data(img, Endpoint::Origin), floor),
                        tol));
  if (spec.on_interval())
    report.add(make_check("domain.wall",
                          relative_condition(spec.Dl, spec.L0, boundary_data(img, Endpoint::Wall), floor),
                          tol));
  return report;
}

VerificationReport check_algebra(const SystemSpec& spec, const SuperchargeSpec& q,
                                 const WaveFunction& wf, double tol) {
  VerificationReport report;
  const double n = l2_norm(wf);
  const WaveFunction qq = apply_supercharge(q, apply_supercharge(q, wf));
  const double target = wf.energy() + q.shift();
  const double r = l2_norm(qq.with_coeffs(axpy(qq.coeffs(), -target, wf.coeffs())));
  report.add(make_check("algebra.square", n > 0.0 ? r / (q_scale(spec, wf, q.shift()) * n) : 0.0, tol,
                        "Q^2 psi = (E + |b|^2) psi"));
  return report;
}

VerificationReport check_algebra(const SystemSpec& spec, const SuperchargeSpec& q1,
                                 const SuperchargeSpec& q2, const WaveFunction& wf, double tol) {
  VerificationReport report = check_algebra(spec, q1, wf, tol);
  report.append(check_algebra(spec, q2, wf, tol));
  const double n = l2_norm(wf);
  const WaveFunction a = apply_supercharge(q1, apply_supercharge(q2, wf));
  const WaveFunction b = apply_supercharge(q2, apply_supercharge(q1, wf));
  const double r = l2_norm(a.with_coeffs(axpy(a.coeffs(), 1.0, b.coeffs())));
  const double s = q_scale(spec, wf, std::max(q1.shift(), q2.shift()));
  report.add(make_check("algebra.anticommutator", n > 0.0 ? r / (s * n) : 0.0, tol,
                        "{Q1, Q2} psi = 0"));
  return report;
}

VerificationReport check_degeneracy_pairing(const SystemSpec& spec,
                                            const SusyClassification& classification,
                                            const Spectrum& spectrum, double tol) {
  VerificationReport report;
  if (classification.charges.empty()) {
    report.add(make_check("pairing", 0.0, tol, "no supercharge"));
    return report;
  }
  for (std::size_t li = 0; li < spectrum.levels.size(); ++li) {
    const Level& level = spectrum.levels[li];
    const std::size_t m = level.states.size();
    double worst = 0.0;
    bool trivial_doublet = false;
    std::string details = level.multiplicity == 2 ? "doublet" : "singlet";
    for (const auto& q : classification.charges) {
      const double scale = std::sqrt(q_scale(spec, level.states.front(), q.shift()));
      std::vector<std::vector<cplx>> block(m, std::vector<cplx>(m));
      bool annihilated = true;
      for (std::size_t i = 0; i < m; ++i) {
        const WaveFunction phi = apply_supercharge(q, level.states[i]);
        const double nphi = l2_norm(phi);
        if (nphi < 1e-10 * scale) continue;
        annihilated = false;
        Coefficients rest = phi.coeffs();
        for (std::size_t j = 0; j < m; ++j) {
          block[j][i] = inner_product(level.states[j], phi);
          rest = axpy(rest, -block[j][i], level.states[j].coeffs());
        }
        worst = std::max(worst, l2_norm(phi.with_coeffs(rest)) / nphi);
      }
      if (annihilated) {
        details += "; annihilated";
      } else if (m == 2) {
        const cplx half_tr = 0.5 * (block[0][0] + block[1][1]);
        const double traceless = std::sqrt(std::norm(block[0][0] - half_tr) + std::norm(block[1][1] - half_tr) +
                                           std::norm(block[0][1]) + std::norm(block[1][0]));
        if (traceless < tol * scale) trivial_doublet = true;
        details += "; mixed";
      } else {
        details += "; invariant";
      }
    }
    Check c = make_check(indexed("pairing", li), worst, tol, details);
    if (trivial_doublet) {
      c.passed = false;
      c.details += "; charge acts trivially on the doublet";
    }
    report.add(std::move(c));
  }
  return report;
}

cplx boundary_form(const WaveFunction& wf1, const WaveFunction& wf2, const Mat2& a_matrix, Endpoint at) {
  const Vec2c p1 = boundary_data(wf1, at).psi;
  const Vec2c p2 = a_matrix.apply(boundary_data(wf2, at).psi);
  return std::conj(p1[0]) * p2[0] + std::conj(p1[1]) * p2[1];
}

DeficiencyIndices deficiency_indices(const SystemSpec& spec) {
  spec.validate();
  // Q psi = +-i g psi with Q = -i lambda s_2 d/dx gives psi' = -+(g/lambda) s_2 psi,
  // solved by e^{-+(g/lambda) s x} v_s with s_2 v_s = s v_s.
  constexpr double g = 1.0;
  DeficiencyIndices out;
  for (int sign : {+1, -1}) {
    int count = 0;
    for (int s : {+1, -1}) {
      const double exponent = -sign * s * g / spec.lambda;
      double norm2 = 0.0;
      if (spec.on_interval()) {
        const double l = spec.l();
        norm2 = std::abs(exponent) < 1e-300 ? l : std::expm1(2.0 * exponent * l) / (2.0 * exponent);
      } else {
        norm2 = exponent < 0.0 ? -1.0 / (2.0 * exponent) : INFINITY;
      }
      if (std::isfinite(norm2) && norm2 > 0.0) ++count;
    }
    (sign > 0 ? out.n_plus : out.n_minus) = count;
  }
  return out;
}

VerificationReport check_lower_bound(const SystemSpec& spec, const SusyClassification& classification,
                                     const Spectrum& spectrum) {
  (void)spec;
  VerificationReport report;
  const SuperchargeSpec* pair = nullptr;
  if (classification.degree == SusyDegree::N2)
    for (const auto& q : classification.charges)
      if (q.c == 0.0) pair = &q;
  if (!pair || spectrum.levels.empty()) {
    report.add(make_check("lower_bound", 0.0, kLowerBoundTol, "not applicable"));
    return report;
  }
  const double bound = -pair->shift();
  const double e0 = spectrum.levels.front().energy;
  const double violation = std::max(0.0, bound - e0);
  const bool attained = std::abs(e0 - bound) < kLowerBoundTol * std::max(1.0, std::abs(bound));
  char buf[128];
  std::snprintf(buf, sizeof buf, "%s; bound %.12g, ground %.12g", attained ? "attained" : "strict", bound, e0);
  report.add(make_check("lower_bound", violation, kLowerBoundTol, buf));
  return report;
}

std::optional<Mat2> witten_parity_search(const SystemSpec& spec,
                                         const SusyClassification& classification) {
  if (classification.charges.empty()) return std::nullopt;
  std::vector<Vec3> candidates = {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
  std::vector<const Mat2*> mats = {&spec.U};
  if (spec.on_interval()) mats.push_back(&spec.Dl);
  for (const Mat2* m : mats) {
    candidates.push_back(pauli_vector(*m));
    candidates.push_back(pauli_vector_imag(*m));
  }
  if (classification.charges.size() >= 2)
    candidates.push_back(classification.charges[0].kinetic_vector().cross(classification.charges[1].kinetic_vector()));
  for (Vec3 n : candidates) {
    const double len = n.norm();
    if (len < 1e-8) continue;
    n = (1.0 / len) * n;
    // Fix the overall sign: the largest component is positive.
    int big = 0;
    for (int i = 1; i < 3; ++i)
      if (std::abs(n[i]) > std::abs(n[big]) + 1e-12) big = i;
    if (n[big] < 0.0) n = (-1.0) * n;
    const Mat2 w = pauli_combination(n);
    bool ok = true;
    for (const Mat2* m : mats) ok = ok && (w * *m - *m * w).frobenius() < kCommutatorTol;
    for (const auto& q : classification.charges) {
      const Mat2 k = q.kinetic();
      ok = ok && (w * k + k * w).frobenius() < kCommutatorTol;
    }
    if (ok) return w;
  }
  return std::nullopt;
}

VerificationReport verify_system(const SystemSpec& spec, std::size_t n_levels, double tol) {
  VerificationReport report;
  const SusyClassification cls = classify(spec);
  const Spectrum spectrum = solve_spectrum(spec, n_levels);
  {
    std::string d = std::string("degree ") + to_string(cls.degree) + ", goodness " + to_string(cls.goodness);
    report.add(make_check("classification", 0.0, tol, d));
  }
  for (std::size_t li = 0; li < spectrum.levels.size(); ++li) {
    double worst = 0.0;
    for (const auto& wf : spectrum.levels[li].states) {
      worst = std::max(worst, connection_residual(spec, boundary_data(wf, Endpoint::Origin)));
      if (spec.on_interval()) worst = std::max(worst, wall_residual(spec, boundary_data(wf, Endpoint::Wall)));
    }
    report.add(make_check(indexed("eigen_residual", li), worst, tol));
  }
  if (cls.degree != SusyDegree::None) {
    for (std::size_t li = 0; li < spectrum.levels.size(); ++li) {
      const Level& level = spectrum.levels[li];
      for (std::size_t qi = 0; qi < cls.charges.size(); ++qi) {
        double worst = 0.0;
        for (const auto& wf : level.states)
          for (const auto& c : check_domain_preservation(spec, cls.charges[qi], wf, tol).checks)
            worst = std::max(worst, c.residual);
        report.add(make_check(indexed("domain", li, qi), worst, tol));
      }
      double alg = 0.0;
      for (const auto& wf : level.states) {
        const auto r = cls.charges.size() >= 2 ? check_algebra(spec, cls.charges[0], cls.charges[1], wf)
                                               : check_algebra(spec, cls.charges[0], wf);
        for (const auto& c : r.checks) alg = std::max(alg, c.residual);
      }
      report.add(make_check(indexed("algebra", li), alg, 1e-10));
      double form = 0.0;
      bool any = false;
      for (const auto& q : cls.charges) {
        if (q.half_parity_dressed) continue;
        any = true;
        for (const auto& w1 : level.states)
          for (const auto& w2 : level.states)
            for (Endpoint at : {Endpoint::Origin, Endpoint::Wall}) {
              if (at == Endpoint::Wall && !spec.on_interval()) continue;
              const double n1 = vec_norm(boundary_data(w1, at).psi);
              const double n2 = vec_norm(boundary_data(w2, at).psi);
              // Cross terms scale with the larger value; a partner that vanishes
              // at x0 must not blow up the ratio.
              const double ref = std::max(n1, n2) * std::max(n1, n2);
              if (ref > 1e-14) form = std::max(form, std::abs(boundary_form(w1, w2, q.kinetic(), at)) / ref);
            }
      }
      report.add(make_check(indexed("boundary_form", li), form, kBoundaryFormTol,
                            any ? "" : "half-parity dressed charges only"));
    }
    report.append(check_degeneracy_pairing(spec, cls, spectrum, tol));
    report.append(check_lower_bound(spec, cls, spectrum));
    const auto w = witten_parity_search(spec, cls);
    std::string d = "none in the searched family";
    if (w) {
      const Vec3 n = pauli_vector(*w);
      char buf[96];
      std::snprintf(buf, sizeof buf, "W = n.sigma, n = (%.12g, %.12g, %.12g)", n.x, n.y, n.z);
      d = buf;
    }
    report.add(make_check("witten_parity", 0.0, tol, d));
  }
  const DeficiencyIndices di = deficiency_indices(spec);
  const DeficiencyIndices expected = spec.on_interval() ? DeficiencyIndices{2, 2} : DeficiencyIndices{1, 1};
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%d, %d)", di.n_plus, di.n_minus);
  report.add(make_check("deficiency_indices", di == expected ? 0.0 : 1.0, 0.5, buf));
  return report;
}

}  // namespace ssusy
