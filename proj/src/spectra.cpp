#include "ssusy/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ssusy/error.hpp"

namespace ssusy {

namespace {

constexpr double kNullityTol = 1e-8;
constexpr double kZeroSnap = 1e-6;
constexpr int kMaxWindowDoublings = 8;
constexpr std::size_t kChunk = 256;

struct Root {
  double s = 0.0;
  long multiplicity = 0;
};

using State = LevelCounter::State;

// Walks a grid with the level counter and isolates every jump of N by
// bisection. N is clamped to the bracket so rounding right at a root can
// neither invent nor lose a level.
class Isolator {
 public:
  Isolator(const SystemSpec& spec, double rel_tol, double scale)
      : spec_(spec), counter_(spec), rel_tol_(rel_tol), scale_(scale) {}

  State start(double s) const { return counter_.start(phase_sample(spec_, s)); }
  State advance(const State& from, const PhaseSample& sample) const {
    return counter_.advance(from, sample);
  }

  void isolate(double a, const State& sa, double b, const State& sb, std::vector<Root>& out) const {
    if (sb.count <= sa.count) return;
    const double width_tol = rel_tol_ * std::max({std::abs(a), std::abs(b), scale_});
    if (b - a <= width_tol) {
      out.push_back({0.5 * (a + b), sb.count - sa.count});
      return;
    }
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) {
      out.push_back({m, sb.count - sa.count});
      return;
    }
    State sm = counter_.advance(sa, phase_sample(spec_, m));
    sm.count = std::clamp(sm.count, sa.count, sb.count);
    isolate(a, sa, m, sm, out);
    isolate(m, sm, b, sb, out);
  }

  // Counts and isolates the levels on a uniform grid [s0, s1] with n cells.
  // Returns the state at s1.
  State sweep(double s0, double s1, std::size_t n, const State& first, Execution exec,
              std::vector<Root>& out, std::size_t* brackets) const {
    std::vector<double> grid(n);
    const double h = (s1 - s0) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) grid[i] = i + 1 == n ? s1 : s0 + h * static_cast<double>(i + 1);
    const auto samples = phase_samples(spec_, grid, exec);
    State prev = first;
    double a = s0;
    for (std::size_t i = 0; i < n; ++i) {
      State next = counter_.advance(prev, samples[i]);
      if (next.count > prev.count) {
        if (brackets) ++*brackets;
        isolate(a, prev, grid[i], next, out);
      }
      prev = next;
      a = grid[i];
    }
    return prev;
  }

 private:
  const SystemSpec& spec_;
  LevelCounter counter_;
  double rel_tol_;
  double scale_;
};

// Roots closer than the bisection can resolve are one level; so is
// everything inside the zero-energy snap window.
std::vector<Root> merge_roots(std::vector<Root> roots, double scale) {
  std::sort(roots.begin(), roots.end(), [](const Root& x, const Root& y) { return x.s < y.s; });
  std::vector<Root> merged;
  for (const auto& r : roots) {
    if (!merged.empty()) {
      Root& last = merged.back();
      const bool near_zero = std::abs(r.s) <= kZeroSnap * scale && std::abs(last.s) <= kZeroSnap * scale;
      if (near_zero || r.s - last.s <= 1e-11 * std::max({std::abs(r.s), std::abs(last.s), scale})) {
        const long m = last.multiplicity + r.multiplicity;
        last.s = (last.s * last.multiplicity + r.s * r.multiplicity) / static_cast<double>(m);
        last.multiplicity = m;
        continue;
      }
    }
    merged.push_back(r);
  }
  return merged;
}

// Largest tan(theta/2)/L0 over the non-Dirichlet eigenphases.
double max_inverse_length(const Mat2& m, double L0) {
  double best = 0.0;
  const auto dec = diagonalize_u2(m);
  for (int j = 0; j < 2; ++j) {
    const cplx e = dec.D(j, j);
    if (phase_distance(e, -1.0) < 1e-9) continue;
    best = std::max(best, std::abs(std::tan(0.5 * std::arg(e))) / L0);
  }
  return best;
}

Coefficients combine_coeffs(const std::vector<WaveFunction>& states, const Eigen::Vector2cd& w) {
  Coefficients c{};
  for (std::size_t i = 0; i < states.size(); ++i)
    for (int j = 0; j < 4; ++j) c[j] += w(static_cast<int>(i)) * states[i].coeffs()[j];
  return c;
}

WaveFunction phase_fixed(const WaveFunction& wf) {
  Coefficients c = wf.coeffs();
  int best = 0;
  for (int j = 1; j < 4; ++j)
    if (std::abs(c[j]) > std::abs(c[best]) * (1.0 + 1e-12)) best = j;
  const cplx ph = std::abs(c[best]) > 0.0 ? std::conj(c[best]) / std::abs(c[best]) : cplx(1.0);
  for (auto& v : c) v *= ph;
  return normalized(wf.with_coeffs(c));
}

// L2-orthonormal basis of a level; a doublet is rotated so the first state
// carries the most upper-component weight.
std::vector<WaveFunction> canonical_basis(std::vector<WaveFunction> states) {
  for (std::size_t i = 0; i < states.size(); ++i) {
    Coefficients c = states[i].coeffs();
    for (std::size_t j = 0; j < i; ++j) {
      const cplx p = inner_product(states[j], states[i]);
      for (int q = 0; q < 4; ++q) c[q] -= p * states[j].coeffs()[q];
    }
    states[i] = normalized(states[i].with_coeffs(c));
  }
  if (states.size() == 2) {
    Eigen::Matrix2cd p;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Coefficients cj = states[j].coeffs();
        cj[2] = cj[3] = 0.0;
        p(i, j) = inner_product(states[i], states[j].with_coeffs(cj));
      }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(p);
    std::vector<WaveFunction> rotated;
    for (int col = 1; col >= 0; --col)
      rotated.push_back(states[0].with_coeffs(combine_coeffs(states, es.eigenvectors().col(col))));
    states = rotated;
  }
  for (auto& s : states) s = phase_fixed(s);
  return states;
}

Sector sector_of(double s) { return s > 0.0 ? Sector::Positive : (s < 0.0 ? Sector::Negative : Sector::Zero); }

struct NullSpace {
  std::vector<Coefficients> vectors;  // conditioned coordinates
  int svd_nullity = 0;
  double sigma_ratio = 0.0;  // m-th smallest singular value / ||M||
};

NullSpace null_space(const Eigen::MatrixXcd& m, long multiplicity) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double norm = m.norm();
  const int n = static_cast<int>(sv.size());
  NullSpace out;
  for (int i = 0; i < n; ++i)
    if (sv(i) < kNullityTol * norm) ++out.svd_nullity;
  const int take = static_cast<int>(std::min<long>(multiplicity, n));
  out.sigma_ratio = norm > 0.0 ? sv(n - take) / norm : 0.0;
  for (int i = 0; i < take; ++i) {
    const auto v = svd.matrixV().col(n - 1 - i);
    Coefficients c{};
    for (int j = 0; j < v.size(); ++j) c[j] = v(j);
    out.vectors.push_back(c);
  }
  return out;
}

// SVD null vectors are accurate only relative to their norm, which loses a
// state's boundary data at an end where it is exponentially small. Each end
// involves mostly one coefficient pair (A at the origin, B at the wall), so
// re-solve that pair from its own rows along the well-conditioned directions.
void solve_block(const Eigen::Matrix4cd& m, int row, int own, Coefficients& c) {
  const int other = 1 - own;
  Eigen::Matrix2cd a;
  Eigen::Vector2cd rhs;
  for (int r = 0; r < 2; ++r) {
    rhs(r) = 0.0;
    for (int j = 0; j < 2; ++j) {
      a(r, j) = m(row + r, 2 * j + own);
      rhs(r) -= m(row + r, 2 * j + other) * c[2 * j + other];
    }
  }
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Eigen::Vector2cd x(c[own], c[2 + own]);
  Eigen::Vector2cd alpha = svd.matrixV().adjoint() * x;
  const Eigen::Vector2cd proj = svd.matrixU().adjoint() * rhs;
  for (int i = 0; i < 2; ++i)
    if (sv(i) > 1e-4) alpha(i) = proj(i) / sv(i);
  x = svd.matrixV() * alpha;
  c[own] = x(0);
  c[2 + own] = x(1);
}

void polish(const Eigen::Matrix4cd& m, Coefficients& c) {
  for (int pass = 0; pass < 2; ++pass) {
    solve_block(m, 0, 0, c);
    solve_block(m, 2, 1, c);
  }
}

Level make_interval_level(const SystemSpec& spec, const Root& root, SolverReport& report) {
  double s = root.s;
  NullSpace ns;
  if (std::abs(s) * spec.l() <= kZeroSnap) {
    NullSpace at_zero = null_space(conditioned_secular_matrix(spec, 0.0), root.multiplicity);
    if (at_zero.svd_nullity >= root.multiplicity) {
      s = 0.0;
      ns = std::move(at_zero);
    }
  }
  if (ns.vectors.empty()) ns = null_space(conditioned_secular_matrix(spec, s), root.multiplicity);
  if (ns.svd_nullity != root.multiplicity) ++report.nullity_mismatches;
  report.worst_sigma_ratio = std::max(report.worst_sigma_ratio, ns.sigma_ratio);

  Level level;
  level.sector = sector_of(s);
  level.rate = std::abs(s);
  level.energy = spec.lambda * spec.lambda * s * std::abs(s);
  level.multiplicity = static_cast<int>(root.multiplicity);
  const double unscale = level.sector == Sector::Positive ? level.rate : 1.0;
  std::vector<WaveFunction> states;
  const Eigen::Matrix4cd conditioned = conditioned_secular_matrix(spec, s);
  for (auto c : ns.vectors) {
    if (level.sector == Sector::Negative) polish(conditioned, c);
    c[1] /= unscale;
    c[3] /= unscale;
    states.push_back(WaveFunction::make(spec.geometry, level.sector, level.rate, spec.lambda, c));
  }
  level.states = canonical_basis(std::move(states));
  return level;
}

}  // namespace

Eigen::Matrix4cd secular_matrix(const SystemSpec& spec, double energy) {
  if (!spec.on_interval()) throw Error(ErrorCode::GeometryMismatch, "secular matrix on the line");
  const double rate = std::sqrt(std::abs(energy)) / spec.lambda;
  const Sector sector = sector_of(energy);
  const double l = spec.l();
  Eigen::Matrix4cd m;
  const Mat2* mats[2] = {&spec.U, &spec.Dl};
  const double xs[2] = {0.0, l};
  for (int end = 0; end < 2; ++end) {
    const BasisValues b = basis_values(spec.geometry, sector, rate, xs[end]);
    const double f1 = b.f1, f2 = b.f2, d1 = b.d1, d2 = b.d2;
    const Mat2& mm = *mats[end];
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        const cplx minus = mm(r, c) - (r == c ? 1.0 : 0.0);
        const cplx plus = cplx(0.0, spec.L0) * (mm(r, c) + (r == c ? 1.0 : 0.0));
        m(2 * end + r, 2 * c) = minus * f1 + plus * d1;
        m(2 * end + r, 2 * c + 1) = minus * f2 + plus * d2;
      }
  }
  return m;
}

Spectrum solve_interval_spectrum(const SystemSpec& spec, std::size_t n_levels,
                                 const SolverOptions& options) {
  spec.validate();
  if (!spec.on_interval()) throw Error(ErrorCode::GeometryMismatch, "interval solver on the line");
  if (n_levels == 0) throw Error(ErrorCode::InvalidArgument, "n_levels must be at least 1");
  const double l = spec.l();
  const double inv_scale = std::max({max_inverse_length(spec.U, spec.L0),
                                     max_inverse_length(spec.Dl, spec.L0), 1.0 / l});
  const Isolator iso(spec, options.bisection_rel_tol, 1.0 / l);
  Spectrum out;
  out.report.nullity_method = "eigenphase count + svd";

  // Negative window, doubled while levels hide beyond it.
  double kappa_max = 5.0 * inv_scale;
  for (int i = 0; i < kMaxWindowDoublings; ++i) {
    std::vector<Root> beyond;
    const State lo = iso.start(-2.0 * kappa_max);
    iso.sweep(-2.0 * kappa_max, -kappa_max, 64, lo, options.execution, beyond, nullptr);
    if (beyond.empty()) break;
    kappa_max *= 2.0;
  }

  std::vector<Root> roots;
  const double k_step = options.k_step > 0.0 ? options.k_step : kPi / (8.0 * l);
  const double neg_step = std::min(kappa_max / 64.0, k_step);
  const auto n_neg = static_cast<std::size_t>(std::ceil(kappa_max / neg_step));
  State state = iso.start(-kappa_max);
  state = iso.sweep(-kappa_max, 0.0, n_neg, state, options.execution, roots, &out.report.bracket_count);

  const double k_cap = options.k_cap_periods * kPi / l;
  double k = 0.0;
  std::vector<Root> merged = merge_roots(roots, 1.0 / l);
  while (merged.size() < n_levels + 1) {
    if (k >= k_cap) {
      out.report.truncated = true;
      break;
    }
    const double next = std::min(k + k_step * static_cast<double>(kChunk), k_cap);
    const auto cells = static_cast<std::size_t>(std::ceil((next - k) / k_step - 1e-9));
    state = iso.sweep(k, next, std::max<std::size_t>(cells, 1), state, options.execution, roots,
                      &out.report.bracket_count);
    k = next;
    merged = merge_roots(roots, 1.0 / l);
  }

  out.report.refinement_tolerance = options.bisection_rel_tol * std::max(k, 1.0 / l);
  out.e_min = -spec.lambda * spec.lambda * kappa_max * kappa_max;
  out.e_max = spec.lambda * spec.lambda * k * k;
  if (merged.size() > n_levels) merged.resize(n_levels);
  for (const auto& r : merged) out.levels.push_back(make_interval_level(spec, r, out.report));
  std::stable_sort(out.levels.begin(), out.levels.end(),
                   [](const Level& a, const Level& b) { return a.energy < b.energy; });
  return out;
}

Spectrum solve_line_bound_states(const SystemSpec& spec, const SolverOptions& options) {
  spec.validate();
  if (spec.on_interval()) throw Error(ErrorCode::GeometryMismatch, "line solver on an interval");
  const double L0 = spec.L0;
  const Isolator iso(spec, options.bisection_rel_tol, 1.0 / L0);
  Spectrum out;
  out.report.nullity_method = "eigenphase count + svd";

  double kappa_max = std::max(10.0 / L0, 2.0 * max_inverse_length(spec.U, L0));
  for (int i = 0; i < kMaxWindowDoublings; ++i) {
    std::vector<Root> beyond;
    iso.sweep(-2.0 * kappa_max, -kappa_max, 64, iso.start(-2.0 * kappa_max), options.execution,
              beyond, nullptr);
    if (beyond.empty()) break;
    kappa_max *= 2.0;
  }

  std::vector<Root> roots;
  iso.sweep(-kappa_max, 0.0, 512, iso.start(-kappa_max), options.execution, roots,
            &out.report.bracket_count);
  const auto merged = merge_roots(roots, 1.0 / L0);
  out.report.refinement_tolerance = options.bisection_rel_tol * kappa_max;
  out.e_min = -spec.lambda * spec.lambda * kappa_max * kappa_max;
  out.e_max = 0.0;

  const Mat2& u = spec.U;
  for (const auto& r : merged) {
    const double kappa = -r.s;
    if (!(kappa * L0 > 1e-12)) continue;  // E = 0 is not normalizable on the line
    Eigen::Matrix2cd m;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const double id = i == j ? 1.0 : 0.0;
        m(i, j) = (u(i, j) - id) - cplx(0.0, L0 * kappa) * (u(i, j) + id);
      }
    NullSpace ns = null_space(m, r.multiplicity);
    if (ns.svd_nullity != r.multiplicity) ++out.report.nullity_mismatches;
    out.report.worst_sigma_ratio = std::max(out.report.worst_sigma_ratio, ns.sigma_ratio);
    Level level;
    level.sector = Sector::Negative;
    level.rate = kappa;
    level.energy = -spec.lambda * spec.lambda * kappa * kappa;
    level.multiplicity = static_cast<int>(r.multiplicity);
    std::vector<WaveFunction> states;
    for (const auto& v : ns.vectors) {
      const Coefficients c{v[0], 0.0, v[1], 0.0};
      states.push_back(WaveFunction::make(spec.geometry, Sector::Negative, kappa, spec.lambda, c));
    }
    level.states = canonical_basis(std::move(states));
    out.levels.push_back(std::move(level));
  }
  return out;
}

Spectrum solve_spectrum(const SystemSpec& spec, std::size_t n_levels, const SolverOptions& options) {
  return spec.on_interval() ? solve_interval_spectrum(spec, n_levels, options)
                            : solve_line_bound_states(spec, options);
}

}  // namespace ssusy
