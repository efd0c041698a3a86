#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ptmag/errors.hpp"
#include "ptmag/model.hpp"
#include "support.hpp"

using namespace ptmag;
using namespace testing;

TEST_SUITE("model") {

TEST_CASE("thermal occupancy at room temperature") {
  const double n = thermal_occupancy(kWb, 293.0);
  CHECK(std::abs(n - 6.25e5) / 6.25e5 < 0.05);
  // high-temperature oracle k T / (hbar omega) - 1/2
  const double classical = constants::k_boltzmann * 293.0 / (constants::hbar * kWb) - 0.5;
  CHECK(rel(n, classical) < 1e-9);
}

TEST_CASE("thermal occupancy limits") {
  CHECK(thermal_occupancy(kWb, 0.0) == 0.0);
  const double t = 0.05;
  const double omega = constants::k_boltzmann * t * std::log(2.0) / constants::hbar;
  CHECK(thermal_occupancy(omega, t) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(thermal_occupancy(kWb, -1.0), DomainError);
  CHECK_THROWS_AS(thermal_occupancy(0.0, 1.0), DomainError);
}

TEST_CASE("thermal occupancy is monotone") {
  Gen g(11);
  for (int k = 0; k < 200; ++k) {
    const double w = g.log_uniform(1e5, 1e11);
    const double t1 = g.log_uniform(1e-3, 1e3);
    const double t2 = t1 * g.uniform(1.01, 3.0);
    CHECK(thermal_occupancy(w, t2) > thermal_occupancy(w, t1));
    CHECK(thermal_occupancy(w * g.uniform(1.01, 3.0), t1) < thermal_occupancy(w, t1));
  }
}

TEST_CASE("Rabi frequency of the sphere drive") {
  SphereSpec s;
  CHECK(rabi_from_drive(s) == 0.0);

  s.drive_field_amplitude = 1e-5;
  const double radius = 125e-6;
  const double spins = 4.22e27 * 4.0 * std::numbers::pi / 3.0 * radius * radius * radius;
  CHECK(spins == doctest::Approx(3.4525e16).epsilon(1e-3));
  const double hand = std::sqrt(5.0) / 4.0 * (2.0 * std::numbers::pi * 28e9) * std::sqrt(spins) * 1e-5;
  CHECK(rel(rabi_from_drive(s), hand) < 1e-12);

  SphereSpec twice = s;
  twice.drive_field_amplitude *= 2.0;
  CHECK(rel(rabi_from_drive(twice), 2.0 * rabi_from_drive(s)) < 1e-14);
  SphereSpec dense = s;
  dense.spin_density *= 2.0;
  CHECK(rel(rabi_from_drive(dense), std::sqrt(2.0) * rabi_from_drive(s)) < 1e-14);
}

TEST_CASE("Kittel frequency from bias field") {
  SphereSpec s;
  CHECK(magnon_frequency_from_field(s) == 0.0);
  s.bias_field = 0.36072;
  const double f = magnon_frequency_from_field(s) / constants::two_pi;
  CHECK(f == doctest::Approx(10.10e9).epsilon(1e-3));
  CHECK(f == doctest::Approx(10.10016e9).epsilon(1e-12));
  SphereSpec d = s;
  d.bias_field = 2.0 * 0.36072;
  CHECK(rel(magnon_frequency_from_field(d), 2.0 * magnon_frequency_from_field(s)) < 1e-15);
  s.bias_field = 1.5;
  CHECK_THROWS_AS(magnon_frequency_from_field(s), DomainError);
}

TEST_CASE("parameter validation") {
  SystemParams p = canonical(1.0, 0.03);
  CHECK_NOTHROW(validate(p));
  p.kappa_a = -p.kappa_m; // lossy cavity is legal
  CHECK_NOTHROW(validate(p));
  SystemParams bad = p;
  bad.kappa_m = 0.0;
  CHECK_THROWS_AS(validate(bad), DomainError);
  bad = p;
  bad.gamma_b = -1.0;
  CHECK_THROWS_AS(validate(bad), DomainError);
  bad = p;
  bad.j_coupling = NAN;
  CHECK_THROWS_AS(validate(bad), DomainError);
  bad = p;
  bad.g_linearized_override = -1.0;
  CHECK_THROWS_AS(validate(bad), DomainError);
}

SystemParams driven() {
  SystemParams p = canonical(1.0, 0.0);
  p.g_linearized_override.reset();
  p.g_single = constants::two_pi * 1.5;
  p.rabi = 1e13;
  return p;
}

TEST_CASE("steady state without cavity coupling") {
  SystemParams p = driven();
  p.j_coupling = 0.0;
  const cplx i(0.0, 1.0);
  const cplx expected = p.rabi / (-i * p.delta_m() + p.kappa_m);
  CHECK(rel(steady_state_amplitudes(p).zeta, expected) < 1e-13);
}

TEST_CASE("no drive, no mean field") {
  SystemParams p = driven();
  p.rabi = 0.0;
  const SteadyState s = steady_state_amplitudes(p);
  CHECK(s.zeta == cplx{});
  CHECK(s.beta == cplx{});
  CHECK(s.g_eff == cplx{});
  CHECK(linearized_coupling(p) == cplx{});
}

TEST_CASE("zeta is linear in the drive and beta follows |zeta|^2") {
  Gen g(5);
  const cplx i(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    SystemParams p = g.params(g.coin());
    p.g_linearized_override.reset();
    p.g_single = g.uniform(0.1, 10.0);
    p.rabi = g.log_uniform(1e10, 1e15);
    const SteadyState a = steady_state_amplitudes(p);
    SystemParams q = p;
    const double factor = g.uniform(0.1, 10.0);
    q.rabi *= factor;
    CHECK(rel(steady_state_amplitudes(q).zeta, factor * a.zeta) < 1e-13);
    const cplx beta = -i * p.g_single * std::norm(a.zeta) / (i * p.omega_b + 0.5 * p.gamma_b);
    CHECK(rel(a.beta, beta) < 1e-13);
  }
}

TEST_CASE("drive needed for a target coupling round-trips") {
  SystemParams p = driven();
  const cplx i(0.0, 1.0);
  // invert zeta = Omega (-i Da + ka) / (J^2 + (-i Da + ka)(-i Dm + km)) for Omega
  const cplx cavity = -i * p.delta_a() + p.kappa_a;
  const cplx den = p.j_coupling * p.j_coupling + cavity * (-i * p.delta_m() + p.kappa_m);
  const double target = 0.03 * kWb;
  p.rabi = target / (p.g_single * std::abs(cavity / den));
  CHECK(rel(std::abs(linearized_coupling(p)), target) < 1e-9);
}

TEST_CASE("half-width switch only rescales the steady-state rates") {
  SystemParams p = driven();
  SystemParams h = p;
  h.steady_state_halfwidth = true;
  SystemParams manual = p;
  manual.kappa_a *= 0.5;
  manual.kappa_m *= 0.5;
  CHECK(rel(steady_state_amplitudes(h).zeta, steady_state_amplitudes(manual).zeta) < 1e-14);
  CHECK(rel(steady_state_amplitudes(h).zeta, steady_state_amplitudes(p).zeta) > 1e-6);
}

TEST_CASE("coupling phase convention") {
  SystemParams p = driven();
  const cplx kept = linearized_coupling(p, CouplingPhase::Keep);
  const cplx rotated = linearized_coupling(p);
  CHECK(rotated.imag() == 0.0);
  CHECK(rotated.real() >= 0.0);
  CHECK(rel(std::abs(kept), rotated.real()) < 1e-15);
  CHECK(std::abs(kept.imag()) > 0.0);

  p.g_linearized_override = 0.02 * kWb;
  CHECK(linearized_coupling(p) == cplx{0.02 * kWb, 0.0});
}

TEST_CASE("dropped detuning shift is reported") {
  SystemParams p = driven();
  const SteadyState s = steady_state_amplitudes(p);
  CHECK(s.detuning_shift == doctest::Approx(2.0 * p.g_single * s.beta.real()));
  CHECK(s.linearization_ratio == doctest::Approx(s.detuning_shift / p.delta_m()));
  CHECK(s.linearization_warning == (std::abs(s.linearization_ratio) > 0.1));
}

TEST_CASE("singular steady state is refused") {
  SystemParams p = driven();
  p.kappa_a = -p.kappa_m;
  p.omega_drive = p.omega_a; // Delta = 0
  p.j_coupling = p.kappa_m;  // J^2 = ka km with ka = -km
  CHECK_THROWS_AS(steady_state_amplitudes(p), SingularDriveError);
}

}
