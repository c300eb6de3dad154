#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <algorithm>
#include <random>

#include "fixtures/table1.hpp"
#include "oracles/radial_ode.hpp"
#include "oracles/variable_phase.hpp"
#include "phaseinv/errors.hpp"
#include "phaseinv/forward_solver.hpp"

using namespace phaseinv;

namespace {

const LayeredPotential kQ3({8.0}, {-10.0});

}  // namespace

TEST_CASE("layered potential validation and canonical form") {
  CHECK_THROWS_AS(LayeredPotential({2.0, 1.0}, {-1.0, -2.0}), DomainError);
  CHECK_THROWS_AS(LayeredPotential({0.0}, {-1.0}), DomainError);
  CHECK_THROWS_AS(LayeredPotential({1.0}, {-1.0, -2.0}), DomainError);
  CHECK_THROWS_AS(LayeredPotential({1.0}, {NAN}), DomainError);

  const LayeredPotential p({1.0, 2.0, 3.0, 4.0}, {-1.0, -1.0, -3.0, 0.0});
  CHECK(p.value_at(0.5) == -1.0);
  CHECK(p.value_at(2.0) == -3.0);
  CHECK(p.value_at(3.5) == 0.0);
  CHECK(p.value_at(9.0) == 0.0);
  const auto c = p.canonical();
  CHECK(c == LayeredPotential({2.0, 3.0}, {-1.0, -3.0}));
  CHECK(LayeredPotential({5.0}, {0.0}).canonical().empty());
}

TEST_CASE("published table for q = -10 on [0, 8)") {
  const auto k1 = phase_shifts(kQ3, 1.0, 30);
  const auto k4 = phase_shifts(kQ3, 4.0, 30);
  REQUIRE(k1.l_max() == 30);
  for (int l = 0; l <= 30; ++l) {
    INFO("l=" << l);
    CHECK(std::abs(k1.shifts[l] - fixtures::kTable1K1[l]) <= 5e-4);
    CHECK(std::abs(k4.shifts[l] - fixtures::kTable1K4[l]) <= 5e-4);
  }
  CHECK(std::abs(k1.shifts[0] + 0.66496) <= 5e-4);
  CHECK(std::abs(k4.shifts[17] - 1.56437) <= 5e-4);
}

TEST_CASE("free space gives exactly zero shifts") {
  for (double k : {0.3, 1.0, 4.0, 11.0}) {
    for (const auto& p : {LayeredPotential(), LayeredPotential({3.0, 7.0}, {0.0, 0.0})}) {
      const auto s = phase_shifts(p, k, 30);
      for (double d : s.shifts) CHECK(d == 0.0);
    }
  }
}

TEST_CASE("splitting a layer into equal sub-layers changes nothing") {
  const LayeredPotential whole({3.0, 8.0}, {-4.0, -1.5});
  const LayeredPotential split({1.2, 3.0, 5.5, 8.0}, {-4.0, -4.0, -1.5, -1.5});
  for (double k : {1.0, 2.5, 4.0}) {
    const auto a = phase_shifts(whole, k, 30), b = phase_shifts(split, k, 30);
    for (int l = 0; l <= 30; ++l) CHECK(oracle::phase_gap(a.shifts[l], b.shifts[l]) <= 1e-10);
  }
}

TEST_CASE("interface between equal wave numbers is the identity") {
  for (double kappa2 : {6.25, 1e-14, -3.0}) {
    CoefficientState s;
    s.a = 0.3;
    s.b = -0.7;
    s.anchor = 2.0;
    const auto t = propagate_interface(s, 4, kappa2, kappa2, 2.0);
    CHECK(t.b / t.a == doctest::Approx(s.b / s.a).epsilon(1e-12));
  }
}

TEST_CASE("single interface at l = 0 matches sin/cos matching") {
  const double q = -4.0, k = 2.0, r1 = 1.7;
  const double kappa = std::sqrt(k * k - q);
  // Inside: sin(kappa r). Outside: A sin(kr) - B cos(kr).
  const double u = std::sin(kappa * r1), v = kappa / k * std::cos(kappa * r1);
  const double s = std::sin(k * r1), c = std::cos(k * r1);
  const double a = u * s + v * c, b = v * s - u * c;

  const auto out = propagate_interface(CoefficientState{}, 0, kappa * kappa, k * k, r1);
  CHECK(out.b / out.a == doctest::Approx(b / a).epsilon(1e-12));

  const auto shifts = phase_shifts(LayeredPotential({r1}, {q}), k, 0);
  CHECK(oracle::phase_gap(shifts.shifts[0], -std::atan(b / a)) <= 1e-12);
}

TEST_CASE("propagation is projective") {
  CoefficientState s;
  s.a = 0.8;
  s.b = 0.25;
  s.anchor = 1.0;
  for (double scale : {-3.0, 1e-40, 7e30}) {
    CoefficientState t = s;
    t.a *= scale;
    t.b *= scale;
    for (auto [in, out] : {std::pair{14.0, 4.0}, std::pair{-2.0, 5.0}, std::pair{9.0, 0.0}}) {
      const auto x = propagate_interface(s, 3, in, out, 2.5);
      const auto y = propagate_interface(t, 3, in, out, 2.5);
      CHECK(y.b / y.a == doctest::Approx(x.b / x.a).epsilon(1e-13));
      CHECK(std::max(std::abs(y.a), std::abs(y.b)) == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("single layer q = -4 at k = 2 agrees with the variable-phase integrator") {
  const LayeredPotential p({8.0}, {-4.0});
  const auto s = phase_shifts(p, 2.0, 10);
  for (int l = 0; l <= 10; ++l) {
    INFO("l=" << l);
    CHECK(oracle::phase_gap(s.shifts[l], oracle::variable_phase_shift({8.0}, {-4.0}, 2.0, l)) <=
          1e-6);
  }
}

TEST_CASE("repulsive and evanescent layers agree with the variable-phase integrator") {
  // The middle layer has k^2 - q < 0 at k = 1, the outer one exactly zero.
  const std::vector<double> r{2.0, 3.5, 6.0}, q{-6.0, 3.0, 1.0};
  const auto s = phase_shifts(LayeredPotential(r, q), 1.0, 20);
  for (int l = 0; l <= 20; ++l) {
    INFO("l=" << l);
    CHECK(oracle::phase_gap(s.shifts[l], oracle::variable_phase_shift(r, q, 1.0, l)) <= 1e-6);
  }
}

TEST_CASE("the two independent integrators agree with each other") {
  for (int l = 0; l <= 10; ++l) {
    const double vpa = oracle::variable_phase_shift({3.0, 8.0}, {-6.0, -2.0}, 2.5, l);
    const double ode = oracle::radial_ode_shift({3.0, 8.0}, {-6.0, -2.0}, 2.5, l);
    CHECK(oracle::phase_gap(vpa, ode) <= 1e-8);
  }
}

TEST_CASE("deep random wells agree with the radial integrator for every l") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> layers(1, 3);
  std::uniform_real_distribution<double> radius(0.05, 10.0), value(-20.0, 0.0);
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<double> r(layers(rng)), q(r.size());
    for (auto& x : r) x = radius(rng);
    for (auto& x : q) x = value(rng);
    std::sort(r.begin(), r.end());
    const double k = trial % 3 == 0 ? 1.0 : trial % 3 == 1 ? 2.5 : 4.0;
    const auto s = phase_shifts(LayeredPotential(r, q), k, 30);
    for (int l = 0; l <= 30; ++l) {
      INFO("trial=" << trial << " l=" << l);
      CHECK(oracle::phase_gap(s.shifts[l], oracle::radial_ode_shift(r, q, k, l)) <= 1e-6);
    }
  }
}

TEST_CASE("shifts decay once l exceeds kR + 10") {
  const std::vector<LayeredPotential> potentials{
      LayeredPotential({8.0}, {-2.0 / 3.0}), LayeredPotential({8.0}, {-4.0}), kQ3};
  for (const auto& p : potentials) {
    for (double k : {1.0, 2.5, 4.0}) {
      const int l_max = 60;
      const auto s = phase_shifts(p, k, l_max);
      for (int l = static_cast<int>(k * 8.0) + 11; l <= l_max; ++l) CHECK(std::abs(s.shifts[l]) < 1e-6);
    }
  }
}

TEST_CASE("phase shift preconditions") {
  CHECK_THROWS_AS(phase_shifts(kQ3, 0.0, 3), DomainError);
  CHECK_THROWS_AS(phase_shifts(kQ3, 1.0, -1), DomainError);
  const auto s = phase_shifts(kQ3, 2.0, 30);
  for (double d : s.shifts) {
    CHECK(d > -M_PI / 2);
    CHECK(d <= M_PI / 2);
  }
}

TEST_CASE("noise model") {
  const auto exact = phase_shifts(kQ3, 2.5, 30);
  RandomStream rng = make_stream(7, {stream_tag("test")});

  CHECK(add_noise(exact, 0.0, rng) == exact);

  const auto noisy = add_noise(exact, 0.1, rng);
  for (int l = 0; l <= 30; ++l) CHECK(std::abs(noisy.shifts[l] - exact.shifts[l]) <= 0.05 * std::abs(exact.shifts[l]));

  RandomStream a = make_stream(11, {stream_tag("noise")});
  RandomStream b = make_stream(11, {stream_tag("noise")});
  CHECK(add_noise(exact, 0.01, a) == add_noise(exact, 0.01, b));

  CHECK_THROWS_AS(add_noise(exact, -0.1, rng), DomainError);
}
