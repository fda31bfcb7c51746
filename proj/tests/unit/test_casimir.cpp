#include "casimir/dissipative.hpp"
#include "casimir/eddy.hpp"
#include "casimir/error.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/modes.hpp"
#include "casimir/quadrature.hpp"
#include "support.hpp"

using namespace casimir;
using testing::rel_diff;

namespace {

constexpr double wp = 1.37e16;

CavityConfig pair_of(const Plate& p, double L, double T = 0.0) {
  CavityConfig c;
  c.plate1 = p;
  c.plate2 = p;
  c.L = L;
  c.T = T;
  return c;
}

double lambda_p() { return 2.0 * pi * phys::c / wp; }

}  // namespace

TEST_SUITE("casimir") {

TEST_CASE("perfect conductors") {
  for (double L : {1e-7, 1e-6, 1e-5}) {
    const auto r = lifshitz_free_energy(pair_of(PerfectMirror{}, L));
    CHECK(rel_diff(r.value, perfect_conductor_energy(L)) < 1e-6);
    CHECK(r.te == doctest::Approx(r.tm).epsilon(1e-12));
  }
  const double L = 3e-7;
  CHECK(perfect_conductor_energy(2 * L) / perfect_conductor_energy(L) == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(perfect_conductor_force(L) * L / perfect_conductor_energy(L) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(rel_diff(lifshitz_force(pair_of(PerfectMirror{}, L)).value, perfect_conductor_force(L)) < 1e-6);
}

TEST_CASE("plasma plates approach the perfect conductor at large L") {
  const double L = 50.0 * lambda_p();
  const double ratio = lifshitz_free_energy(pair_of(PermittivityModel::plasma(wp), L)).value / perfect_conductor_energy(L);
  CHECK(ratio == doctest::Approx(1.0).epsilon(0.02));
  CHECK(ratio < 1.0);
}

TEST_CASE("attraction and monotonic free energy") {
  for (const Plate& p : {Plate(PermittivityModel::plasma(wp)), Plate(PermittivityModel::drude(wp, 5e13))})
    for (double T : {0.0, 300.0}) {
      double prev = -INFINITY;
      for (double L : {5e-8, 2e-7, 1e-6, 4e-6}) {
        const auto c = pair_of(p, L, T);
        CHECK(lifshitz_force(c).value < 0.0);
        const double F = lifshitz_free_energy(c).value;
        CHECK(F < 0.0);
        CHECK(F > prev);
        prev = F;
      }
    }
}

TEST_CASE("low temperature limit") {
  const auto c = pair_of(PermittivityModel::plasma(wp), 1e-6);
  const double e0 = lifshitz_free_energy(c).value;
  CHECK(rel_diff(lifshitz_free_energy(c.at_temperature(1.0)).value, e0) < 1e-6);
}

TEST_CASE("static TE term separates plasma and Drude") {
  const auto d = pair_of(PermittivityModel::drude(wp, 1e-3 * wp), 1e-6, 300.0);
  const auto p = pair_of(PermittivityModel::plasma(wp), 1e-6, 300.0);
  CHECK(matsubara_term(d, Polarization::TE, 0) == 0.0);
  CHECK(matsubara_term(p, Polarization::TE, 0) < 0.0);
  CHECK(matsubara_term(d, Polarization::TM, 0) == doctest::Approx(matsubara_term(p, Polarization::TM, 0)));
}

TEST_CASE("real-frequency spectrum reproduces the imaginary axis per k") {
  // Independent imaginary-axis value at fixed k: (hbar / 2 pi) int dxi sum_pol ln(1 - r^2 e^{-2 kappa L}).
  const auto m = PermittivityModel::plasma(wp);
  for (double x : {0.2, 1.0, 5.0})
    for (double k : {0.3 * wp / phys::c, 3.0 * wp / phys::c}) {
      const double L = x * lambda_p();
      const auto f = [&](double xi) {
        const double kap = std::sqrt(k * k + xi * xi / (phys::c * phys::c));
        double s = 0.0;
        for (auto pol : {Polarization::TE, Polarization::TM}) {
          const double r = fresnel_imaginary(pol, xi, k, m, 0.0);
          s += std::log1p(-r * r * std::exp(-2.0 * kap * L));
        }
        return s;
      };
      const auto g = [&](double u) { return f(u * wp); };
      const double ref = phys::hbar / (2.0 * pi) * wp * integrate(g, 0.0, INFINITY, 1e-12, 20).value;
      const auto kr = k_resolved_energy(wp, L, k);
      // Deep in the evanescent region the parts cancel to a few 1e-9 of their size.
      const double parts = std::abs(kr.plasmonic) + std::abs(kr.photonic_te) + std::abs(kr.photonic_tm);
      CHECK(std::abs(kr.real_axis_total() - ref) < 1e-7 * std::abs(ref) + 1e-8 * parts + 1e-12 * phys::hbar * wp);
    }
}

TEST_CASE("plasmonic energy sign") {
  const auto c = pair_of(PermittivityModel::plasma(wp), 2.0 * lambda_p());
  CHECK(plasmonic_energy(c) > 0.0);
  CHECK_THROWS_AS(identical_plasma_frequency(pair_of(PermittivityModel::drude(wp, 1e13), 1e-7)), InvalidArgument);
}

TEST_CASE("dissipative mode sum") {
  const double L = 0.02 * lambda_p();
  const auto drude = [&](double g) { return pair_of(PermittivityModel::drude(wp, g), L); };
  const auto r = dissipative_mode_energy(drude(1e-2 * wp));
  CHECK(std::abs(r.tau_defect) < 1e-6);
  CHECK(r.sum_rule_defect < 1e-6);
  CHECK(r.energy < 0.0);
  const auto r0 = dissipative_mode_energy(drude(1e-6 * wp));
  CHECK(rel_diff(r0.energy, quasi_static_plasma_energy(wp, L)) < 1e-4);
  // damping weakens the attraction
  CHECK(std::abs(r.energy) < std::abs(r0.energy));
}

TEST_CASE("eddy continuum") {
  const double g = 1e-3 * wp, L = 1e-6;
  const auto c = pair_of(PermittivityModel::drude(wp, g), L);
  for (double k : {1e3, 1e4, 1e5}) {
    const double x0 = eddy_branch_point(wp, g, k);
    CHECK(rel_diff(x0, g * std::pow(lambda_p() / (2.0 * pi), 2) * k * k) < 0.05);
    // the phase only moves on the cut [x0, gamma]
    const auto th = [&](double xi) { return eddy_phase(Polarization::TE, xi, k, c); };
    CHECK(std::abs(th(0.5 * x0) - th(0.01 * x0)) < 1e-8);
    CHECK(std::abs(th(4.0 * g) - th(2.0 * g)) < 1e-8);
    CHECK(std::abs(th(0.999 * g) - th(1.001 * x0)) > 0.1);
  }
  // repulsive at zero temperature
  const double tau = 1e-17;
  const double e1 = eddy_energy(c, tau).value, e2 = eddy_energy(c.at(1.01 * L), tau).value;
  CHECK(e1 > 0.0);
  CHECK(-(e2 - e1) / (0.01 * L) > 0.0);
}

TEST_CASE("high-temperature eddy compensation") {
  const auto d = pair_of(PermittivityModel::drude(wp, 1e-3 * wp), 1e-6, 300.0);
  const auto p = pair_of(PermittivityModel::plasma(wp), 1e-6, 300.0);
  const auto hi = eddy_free_energy_highT(d);
  CHECK(hi.te / matsubara_term(p, Polarization::TE, 0) == doctest::Approx(-1.0).epsilon(0.02));
  CHECK(std::abs(hi.tm) < 0.05 * std::abs(lifshitz_free_energy(d).tm));
}

TEST_CASE("overdamped mode helpers") {
  CHECK(overdamped_ground_energy(1e12, 1e-14) > 0.0);
  const double T = 10.0, xc = phys::kB * T / phys::hbar;
  CHECK(rel_diff(overdamped_thermal_free_energy(1e3 * xc, T), overdamped_thermal_quantum(1e3 * xc, T)) < 1e-4);
  CHECK(std::abs(overdamped_thermal_free_energy(1e-4 * xc, T) - overdamped_thermal_classical(1e-4 * xc, T)) <
        1e-3 * phys::kB * T);
}

TEST_CASE("entropy") {
  const double T[] = {1.0, 4.0};
  const auto sp = casimir_entropy(pair_of(PermittivityModel::plasma(wp), 1e-6), T);
  const auto sd = casimir_entropy(pair_of(PermittivityModel::drude(wp, 1e-3 * wp), 1e-6), T);
  // plasma: S ~ T^2 -> 0; Drude: finite negative offset of the order of the static TE term
  CHECK(sp[1].S / sp[0].S == doctest::Approx(16.0).epsilon(0.05));
  CHECK(sd[0].S < 0.0);
  CHECK(std::abs(sd[0].S) > 1e4 * std::abs(sp[0].S));
  const double s_te = static_te_entropy(wp, 1e-6);
  CHECK(sd[0].S / s_te > 0.5);
  CHECK(sd[0].S / s_te < 1.0);
  CHECK_THROWS_AS(casimir_entropy(pair_of(PerfectMirror{}, 1e-6), std::vector<double>{2.0, 1.0}), InvalidArgument);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(lifshitz_free_energy(pair_of(PerfectMirror{}, -1.0)), InvalidArgument);
  CHECK_THROWS_AS(lifshitz_free_energy(pair_of(PerfectMirror{}, 1e-6, -1.0)), InvalidArgument);
}

}  // TEST_SUITE
