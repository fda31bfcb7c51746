#include <algorithm>
#include <random>

#include "casimir/error.hpp"
#include "casimir/oscillator.hpp"
#include "support.hpp"

using namespace casimir;
using testing::rel_diff;

TEST_SUITE("oscillator") {

TEST_CASE("susceptibility") {
  const OscillatorConfig c{2.0, 0.3, 0.05};
  CHECK(susceptibility(c, 0.0) == cplx(0.25, 0.0));
  const OscillatorConfig free{2.0, 0.0, 0.05};
  CHECK(std::abs(susceptibility(free, cplx(1.0, 0.5)) - 1.0 / (4.0 - cplx(1.0, 0.5) * cplx(1.0, 0.5))) < 1e-15);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-5, 5), v(0.01, 5);
  for (int i = 0; i < 40; ++i) {
    const cplx z(u(rng), v(rng));
    CHECK(std::abs(susceptibility(c, z) - std::conj(susceptibility(c, -std::conj(z)))) < 1e-14);
  }
  const auto p = poles_and_zero(c);
  CHECK_THROWS_AS(susceptibility(c, p.omega_1), SingularFrequency);
}

TEST_CASE("poles") {
  const OscillatorConfig c0{1.0, 0.4, 0.0};
  const auto p0 = poles_and_zero(c0);
  CHECK(!p0.three_pole);
  CHECK(std::abs(p0.omega_1 - cplx(std::sqrt(1.0 - 0.04), -0.2)) < 1e-15);
  CHECK(p0.omega_m1 == -std::conj(p0.omega_1));

  for (double g : {0.01, 0.1, 0.5, 1.0})
    for (double tau : {1e-3, 1e-2, 0.1}) {
      const OscillatorConfig c{1.0, g, tau};
      const auto p = poles_and_zero(c);
      REQUIRE(p.three_pole);
      const cplx s = p.omega_1 + p.omega_m1 + p.omega_0;
      CHECK(std::abs(s - cplx(0.0, -1.0 / tau)) <= 1e-12 * (1.0 / tau));
      CHECK(p.omega_0.real() == 0.0);
      CHECK(p.omega_m1 == -std::conj(p.omega_1));
      for (const cplx& q : p.poles()) {
        CHECK(q.imag() < 0.0);
        const cplx cubic = (1.0 - q * q) * (1.0 - I * q * tau) - I * q * g;
        CHECK(std::abs(cubic) < 1e-12 * std::max({1.0, std::norm(q), std::norm(q) * std::abs(q) * tau}));
      }
      CHECK(p.zero == cplx(0.0, -1.0 / tau));
    }
  // weak coupling: Omega_1 -> omega_a, xi_0 -> 1/tau_c
  const auto w = poles_and_zero({1.0, 1e-7, 1e-2});
  CHECK(rel_diff(w.omega_1.real(), 1.0) < 1e-6);
  CHECK(rel_diff(-w.omega_0.imag(), 1e2) < 1e-6);
  CHECK_THROWS_AS(poles_and_zero({1.0, 3.0, 0.0}), RegimeViolation);
}

TEST_CASE("ground-state energy, two routes") {
  const double wa = 1.0;
  for (double g : {0.05, 0.1, 0.5})
    for (double wt : {1e-3, 1e-2, 1e-1}) {
      const OscillatorConfig c{wa, g * wa, wt / wa};
      const auto e = ground_energy(c);
      CHECK(std::abs(e.difference()) < 1e-6 * std::abs(e.closed));
      // exceeds the naive hbar Re Omega_1 / 2
      CHECK(e.closed > 0.5 * phys::hbar * poles_and_zero(c).omega_1.real());
    }
  // Gamma -> 0: hbar omega_a / 2 within O(Gamma)
  for (double g : {1e-3, 1e-4}) {
    const auto e = ground_energy({wa, g, 1e-3});
    CHECK(std::abs(e.closed / (0.5 * phys::hbar * wa) - 1.0) < 10.0 * g);
  }
}

TEST_CASE("energy grows with coupling") {
  double prev = 0.0;
  for (double g = 0.05; g < 1.5; g += 0.05) {
    const double e = ground_energy_closed({1.0, g, 1e-3});
    CHECK(e > prev);
    prev = e;
  }
}

TEST_CASE("closed form needs a memory time") {
  CHECK_THROWS_AS(ground_energy_closed({1.0, 0.1, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(OscillatorConfig({-1.0, 0.1, 0.1}).validate(), InvalidArgument);
}

}  // TEST_SUITE
