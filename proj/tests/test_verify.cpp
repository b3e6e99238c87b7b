#include <doctest.h>

#include "ssusy/verify.hpp"
#include "test_support.hpp"

using namespace ssusy;
using namespace ssusy::testing;

namespace {

std::string failures(const VerificationReport& r) {
  std::string out;
  for (const auto& c : r.checks)
    if (!c.passed) out += c.name + " (" + std::to_string(c.residual) + ") ";
  return out;
}

const Check* find(const VerificationReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("Q1 fails to preserve the domain of a non-eigen state") {
  const SystemSpec spec = SystemSpec::line(pauli::sigma3());
  const auto cls = classify_line(spec);
  REQUIRE(cls.degree == SusyDegree::N2);
  const auto& q1 = cls.charges[0];
  // (0, x e^{-x}) obeys psi_-(0) = 0 and psi_+'(0) = 0.
  const auto wf = WaveFunction::make(spec.geometry, Sector::Negative, 1.0, spec.lambda, {0, 0, 0, 1});
  CHECK(connection_residual(spec, boundary_data(wf, Endpoint::Origin)) < 1e-15);
  const auto img = apply_supercharge(q1, wf);
  for (double x : {0.3, 1.0, 2.5}) {
    const Vec2c v = evaluate(img, x);
    CHECK(std::abs(v[0] - cplx(0, spec.lambda * (x - 1) * std::exp(-x))) < 1e-14);
    CHECK(std::abs(v[1]) < 1e-15);
  }
  const auto r = check_domain_preservation(spec, q1, wf);
  CHECK_FALSE(r.passed());
}

TEST_CASE("supercharges preserve the domain of csone eigenstates") {
  for (double th : {kPi / 4, kPi / 2, 2.5}) {
    const SystemSpec spec = csone(th);
    const auto cls = classify_interval(spec);
    const auto sp = solve_interval_spectrum(spec, 8);
    for (const auto& level : sp.levels)
      for (const auto& wf : level.states)
        for (const auto& q : cls.charges) {
          const auto r = check_domain_preservation(spec, q, wf);
          CHECK_MESSAGE(r.passed(), failures(r));
        }
  }
}

TEST_CASE("algebra holds on eigenstates") {
  for (const SystemSpec& spec : {csone(0.8), cstwo(-0.5), csthree(-0.5), simple_q(0.0)}) {
    const auto cls = classify_interval(spec);
    REQUIRE(cls.charges.size() == 2);
    const auto sp = solve_interval_spectrum(spec, 8);
    for (const auto& level : sp.levels)
      for (const auto& wf : level.states) {
        const auto r = check_algebra(spec, cls.charges[0], cls.charges[1], wf);
        CHECK_MESSAGE(r.passed(), failures(r));
      }
  }
  const SystemSpec n1 = simple_q(kPi / 3);
  const auto cls = classify_interval(n1);
  for (const auto& level : solve_interval_spectrum(n1, 6).levels)
    for (const auto& wf : level.states) CHECK(check_algebra(n1, cls.charges[0], wf).passed());
}

TEST_CASE("degeneracy pairing") {
  SUBCASE("csone: singlet ground state annihilated, doublets above") {
    const SystemSpec spec = csone(kPi / 2);
    const auto cls = classify_interval(spec);
    const auto sp = solve_interval_spectrum(spec, 7);
    const auto r = check_degeneracy_pairing(spec, cls, sp);
    CHECK_MESSAGE(r.passed(), failures(r));
    CHECK(sp.levels[0].multiplicity == 1);
    REQUIRE_FALSE(r.checks.empty());
    CHECK(r.checks[0].details.find("annihilated") != std::string::npos);
    for (std::size_t i = 1; i < sp.levels.size(); ++i) CHECK(sp.levels[i].multiplicity == 2);
  }
  SUBCASE("cstwo: every level a doublet") {
    const SystemSpec spec = cstwo(-0.5);
    const auto sp = solve_interval_spectrum(spec, 6);
    const auto r = check_degeneracy_pairing(spec, classify_interval(spec), sp);
    CHECK_MESSAGE(r.passed(), failures(r));
    for (const auto& level : sp.levels) CHECK(level.multiplicity == 2);
  }
  SUBCASE("no supercharge") {
    const SystemSpec spec = SystemSpec::interval(1.0, Mat2::identity(), pauli::sigma3());
    const auto r = check_degeneracy_pairing(spec, classify_interval(spec), solve_interval_spectrum(spec, 3));
    REQUIRE(r.checks.size() == 1);
    CHECK(r.checks[0].details == "no supercharge");
  }
}

TEST_CASE("boundary_form examples") {
  const Geometry g = Interval{1.0};
  const auto up = WaveFunction::make(g, Sector::Zero, 0.0, 1.0, {1, 0, 0, 0});
  const auto down = WaveFunction::make(g, Sector::Zero, 0.0, 1.0, {0, 0, 1, 0});
  CHECK(std::abs(boundary_form(up, down, pauli::sigma2(), Endpoint::Origin) - cplx(0, -1)) < 1e-15);
  CHECK(std::abs(boundary_form(down, up, pauli::sigma2(), Endpoint::Origin) - cplx(0, 1)) < 1e-15);
  CHECK(std::abs(boundary_form(up, up, pauli::sigma3(), Endpoint::Wall) - 1.0) < 1e-15);
  // The boundary form of a charge vanishes between domain states.
  const SystemSpec spec = csone(1.1);
  const auto cls = classify_interval(spec);
  const auto sp = solve_interval_spectrum(spec, 5);
  for (const auto& q : cls.charges)
    for (const auto& l1 : sp.levels)
      for (const auto& l2 : sp.levels) {
        const auto& a = l1.states[0];
        const auto& b = l2.states.back();
        const cplx total =
            boundary_form(a, b, q.kinetic(), Endpoint::Wall) - boundary_form(a, b, q.kinetic(), Endpoint::Origin);
        CHECK(std::abs(total) < 1e-10);
      }
}

TEST_CASE("deficiency indices") {
  CHECK(deficiency_indices(csone(0.5)) == DeficiencyIndices{2, 2});
  CHECK(deficiency_indices(SystemSpec::interval(3.0, pauli::sigma3(), pauli::sigma3(), 0.5)) == DeficiencyIndices{2, 2});
  CHECK(deficiency_indices(SystemSpec::line(pauli::sigma3())) == DeficiencyIndices{1, 1});
  CHECK(deficiency_indices(SystemSpec::line(random_unitary(), 2.0)) == DeficiencyIndices{1, 1});
}

TEST_CASE("lower bound") {
  SUBCASE("attained by csone") {
    for (double th : {0.4, kPi / 2, 2.5}) {
      const SystemSpec spec = csone(th);
      const auto r = check_lower_bound(spec, classify_interval(spec), solve_interval_spectrum(spec, 4));
      REQUIRE(r.checks.size() == 1);
      CHECK(r.passed());
      CHECK(r.checks[0].details.rfind("attained", 0) == 0);
    }
  }
  SUBCASE("strict for cstwo") {
    const SystemSpec spec = cstwo(-0.5);
    const auto r = check_lower_bound(spec, classify_interval(spec), solve_interval_spectrum(spec, 4));
    CHECK(r.passed());
    CHECK(r.checks[0].details.rfind("strict", 0) == 0);
  }
  SUBCASE("theta = 0: bound zero, attained by the constant") {
    const SystemSpec spec = csone(0.0);
    const auto r = check_lower_bound(spec, classify_interval(spec), solve_interval_spectrum(spec, 3));
    CHECK(r.passed());
    CHECK(r.checks[0].details.rfind("attained", 0) == 0);
  }
  SUBCASE("line") {
    const SystemSpec spec = SystemSpec::line(wall_from_theta(kPi / 2));
    const auto r = check_lower_bound(spec, classify_line(spec), solve_line_bound_states(spec));
    CHECK(r.passed());
    CHECK(r.checks[0].details.rfind("attained", 0) == 0);
  }
}

TEST_CASE("Witten parity") {
  for (const SystemSpec& spec : {csone(0.7), cstwo(-0.5), SystemSpec::interval(1.0, pauli::sigma3(), pauli::sigma3())}) {
    const auto w = witten_parity_search(spec, classify_interval(spec));
    REQUIRE(w);
    CHECK((*w - pauli::sigma3()).frobenius() < 1e-12);
  }
  const SystemSpec n1 = simple_q(kPi / 3);
  CHECK_FALSE(witten_parity_search(n1, classify_interval(n1)));
  const SystemSpec none = SystemSpec::interval(1.0, Mat2::identity(), pauli::sigma3());
  CHECK_FALSE(witten_parity_search(none, classify_interval(none)));
}

TEST_CASE("verify_system passes on the standard families") {
  const std::vector<SystemSpec> systems{csone(kPi / 2), csone(2.5), cstwo(-0.5), csthree(-0.5), simple_q(0.0),
                                        simple_q(kPi / 3), SystemSpec::line(wall_from_theta(kPi / 2)),
                                        SystemSpec::interval(1.0, Mat2::identity(), pauli::sigma3())};
  for (const auto& spec : systems) {
    const auto r = verify_system(spec, 6);
    CHECK_MESSAGE(r.passed(), failures(r));
    CHECK(find(r, "classification") != nullptr);
    CHECK(find(r, "deficiency_indices") != nullptr);
  }
  const auto r = verify_system(csone(kPi / 2), 4);
  const Check* w = find(r, "witten_parity");
  REQUIRE(w);
  CHECK(w->details.find("none") == std::string::npos);
}
