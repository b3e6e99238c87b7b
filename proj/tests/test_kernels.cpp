#include <doctest.h>

#include <cstring>

#include "ssusy/error.hpp"
#include "ssusy/kernels.hpp"
#include "test_support.hpp"

using namespace ssusy;
using namespace ssusy::testing;

namespace {

std::vector<double> grid(double a, double b, int n) {
  std::vector<double> s(n);
  for (int i = 0; i < n; ++i) s[i] = a + (b - a) * i / (n - 1);
  return s;
}

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

SystemSpec random_interval() {
  return SystemSpec::interval(uniform(0.5, 2.0), random_unitary(),
                              Mat2::diag(std::polar(1.0, uniform(0, kTwoPi)), std::polar(1.0, uniform(0, kTwoPi))));
}

}  // namespace

TEST_CASE("serial and parallel phase samples agree bit for bit") {
  for (int t = 0; t < 10; ++t) {
    const SystemSpec spec = random_interval();
    const auto s = grid(-6.0, 40.0, 3001);
    const auto a = phase_samples(spec, s, Execution::Serial);
    const auto b = phase_samples(spec, s, Execution::Parallel);
    REQUIRE(a.size() == b.size());
    bool same = true;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (int j = 0; j < 2; ++j) same = same && bit_equal(a[i].phi[j], b[i].phi[j]) && bit_equal(a[i].eig[j], b[i].eig[j]);
    CHECK(same);
  }
}

TEST_CASE("serial and parallel sigma profiles agree bit for bit") {
  for (int t = 0; t < 5; ++t) {
    const SystemSpec spec = random_interval();
    const auto s = grid(-4.0, 30.0, 1001);
    const auto a = sigma_min_profile(spec, s, Execution::Serial);
    const auto b = sigma_min_profile(spec, s, Execution::Parallel);
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i) same = bit_equal(a[i], b[i]);
    CHECK(same);
  }
}

TEST_CASE("level count is monotone and steps at the Dirichlet roots") {
  // Dirichlet at both ends of each component: k_n = n pi / l, twice.
  const SystemSpec spec = SystemSpec::interval(1.0, Mat2::diag(-1.0, -1.0), Mat2::diag(-1.0, -1.0));
  const LevelCounter counter(spec);
  const auto s = grid(0.05, 10.0, 2000);
  const auto samples = phase_samples(spec, s, Execution::Serial);
  auto state = counter.start(samples[0]);
  long prev = state.count;
  bool monotone = true;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    state = counter.advance(state, samples[i]);
    monotone = monotone && state.count >= prev;
    prev = state.count;
  }
  CHECK(monotone);
  // Between pi and 2 pi, then past 3 pi: 2 and 6 levels below.
  const auto at = [&](double k) {
    const auto g = grid(0.05, k, 400);
    const auto sm = phase_samples(spec, g, Execution::Serial);
    auto st = counter.start(sm[0]);
    for (std::size_t i = 1; i < sm.size(); ++i) st = counter.advance(st, sm[i]);
    return st.count;
  };
  CHECK(at(4.5) - at(1.0) == 2);
  CHECK(at(9.9) - at(1.0) == 6);
}

TEST_CASE("level count is monotone for random systems") {
  for (int t = 0; t < 20; ++t) {
    const SystemSpec spec = random_interval();
    const LevelCounter counter(spec);
    const auto samples = phase_samples(spec, grid(-5.0, 25.0, 4000), Execution::Parallel);
    auto st = counter.start(samples[0]);
    bool monotone = true;
    for (std::size_t i = 1; i < samples.size(); ++i) {
      const auto next = counter.advance(st, samples[i]);
      monotone = monotone && next.count >= st.count;
      st = next;
    }
    CHECK(monotone);
  }
}

TEST_CASE("conditioned secular matrix is singular exactly at levels") {
  const SystemSpec spec = SystemSpec::interval(1.0, Mat2::diag(-1.0, -1.0), Mat2::diag(-1.0, -1.0));
  const std::vector<double> at{kPi, 2 * kPi};
  const auto on = sigma_min_profile(spec, at, Execution::Serial);
  for (double v : on) CHECK(v < 1e-14);
  const std::vector<double> off{kPi + 0.5};
  CHECK(sigma_min_profile(spec, off, Execution::Serial)[0] > 1e-2);
}

TEST_CASE("phase_sample on the line rejects positive energy") {
  const SystemSpec spec = SystemSpec::line(pauli::sigma3());
  CHECK_THROWS_AS(phase_sample(spec, 1.0), Error);
  CHECK_NOTHROW(phase_sample(spec, -1.0));
}
