#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles/quadrature.hpp"
#include "phaseinv/errors.hpp"
#include "phaseinv/objective.hpp"

using namespace phaseinv;

namespace {

const LayeredPotential kP1({7.932678, 8.025500}, {-9.997164, -7.487082});
const LayeredPotential kP2({7.987208, 8.102628}, {-9.999565, -1.236253});

LayeredPotential random_potential(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> layers(1, 3);
  std::uniform_real_distribution<double> radius(0.1, 10.0), value(-20.0, 0.0);
  const int m = layers(rng);
  std::vector<double> r(m), q(m);
  for (auto& x : r) x = radius(rng);
  for (auto& x : q) x = value(rng);
  std::sort(r.begin(), r.end());
  return config_to_potential(Configuration(r, q));
}

}  // namespace

TEST_CASE("configuration coordinates and admissibility") {
  Configuration c({3.0, 1.0}, {-2.0, -5.0});
  CHECK(c.coordinates() == std::vector<double>{3.0, 1.0, -2.0, -5.0});
  c.active = {true, false, true, true};
  c.sort_radii();
  CHECK(c.radii == std::vector<double>{1.0, 3.0});
  CHECK(c.values == std::vector<double>{-2.0, -5.0});
  CHECK(c.active == std::vector<bool>{false, true, true, true});

  const double x[] = {0.5, 9.0, -1.0, -19.0};
  c.set_coordinates(x);
  CHECK(c.is_admissible(AdmissibleBox{}));
  c.values[0] = 0.5;
  CHECK_FALSE(c.is_admissible(AdmissibleBox{}));
  CHECK_FALSE(Configuration({1.0, 2.0, 3.0}, {-1.0, -1.0, -1.0}).is_admissible(AdmissibleBox{}));
  CHECK_FALSE(Configuration({11.0}, {-1.0}).is_admissible(AdmissibleBox{}));

  AdmissibleBox bad;
  bad.q_low = 1.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("configurations map to canonical layered potentials") {
  CHECK(config_to_potential(Configuration({8.0, 10.0}, {-10.0, -10.0})) ==
        LayeredPotential({10.0}, {-10.0}));
  // The second layer [5, 5) has zero width; the first keeps its value.
  CHECK(config_to_potential(Configuration({5.0, 5.0}, {-1.0, -2.0})) ==
        LayeredPotential({5.0}, {-1.0}));
  CHECK(config_to_potential(Configuration({8.0, 10.0}, {-10.0, 0.0})) ==
        LayeredPotential({8.0}, {-10.0}));
  CHECK(config_to_potential(Configuration({0.0, 4.0}, {-3.0, -1.0})) ==
        LayeredPotential({4.0}, {-1.0}));
  CHECK(config_to_potential(Configuration({10.0, 8.0}, {-1.0, -2.0})) ==
        LayeredPotential({8.0, 10.0}, {-1.0, -2.0}));
}

TEST_CASE("misfit identity and normalization") {
  const auto data = phase_shifts(LayeredPotential({8.0}, {-10.0}), 2.5, 30);
  CHECK(phi(data, data) == 0.0);
  PhaseShiftSet zero{2.5, std::vector<double>(31, 0.0)};
  CHECK(phi(zero, data) == 1.0);
  CHECK(phi(data, data) >= 0.0);

  CHECK_THROWS_AS(phi(data, zero), DomainError);
  CHECK_THROWS_AS(phi(phase_shifts(LayeredPotential(), 1.0, 30), data), DomainError);
  CHECK_THROWS_AS(phi(phase_shifts(LayeredPotential(), 2.5, 20), data), DomainError);
  CHECK_THROWS_AS(ScatteringObjective{zero}, DomainError);
}

TEST_CASE("misfit ignores the ordering of l") {
  const auto data = phase_shifts(LayeredPotential({8.0}, {-10.0}), 2.5, 30);
  const auto cand = phase_shifts(LayeredPotential({7.5}, {-9.0}), 2.5, 30);
  auto pd = data, pc = cand;
  std::mt19937_64 rng(3);
  std::vector<int> perm(31);
  for (int i = 0; i < 31; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  for (int i = 0; i < 31; ++i) {
    pd.shifts[i] = data.shifts[perm[i]];
    pc.shifts[i] = cand.shifts[perm[i]];
  }
  CHECK(phi(pc, pd) == doctest::Approx(phi(cand, data)).epsilon(1e-14));
}

TEST_CASE("scattering objective is phi of the forward map") {
  const auto data = phase_shifts(LayeredPotential({8.0}, {-4.0}), 2.0, 30);
  const ScatteringObjective f(data);
  const Configuration c({6.0, 9.0}, {-3.0, -1.0});
  CHECK(f(c) == phi(phase_shifts(config_to_potential(c), 2.0, 30), data));
  CHECK(f(config_to_potential(c)) == f(c));
  CHECK(f(Configuration({8.0, 10.0}, {-4.0, 0.0})) == 0.0);
}

TEST_CASE("potential distance closed form") {
  CHECK(potential_distance(kP1, kP1) == 0.0);
  const LayeredPotential ball({1.0}, {-1.0});
  CHECK(potential_distance(ball, LayeredPotential()) ==
        doctest::Approx(std::sqrt(4.0 * std::numbers::pi / 3.0)).epsilon(1e-15));
  const double d = potential_distance(kP1, kP2);
  CHECK(std::abs(d - oracle::quadrature_distance(kP1, kP2)) <= 1e-8 * d);
}

TEST_CASE("potential distance agrees with quadrature on random pairs") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    const auto p = random_potential(rng), q = random_potential(rng);
    const double d = potential_distance(p, q);
    CHECK(std::abs(d - oracle::quadrature_distance(p, q)) <= 1e-8 * std::max(d, 1e-300));
  }
}

TEST_CASE("potential distance is a metric") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_potential(rng), b = random_potential(rng), c = random_potential(rng);
    const double ab = potential_distance(a, b), ba = potential_distance(b, a);
    CHECK(ab == doctest::Approx(ba).epsilon(1e-14));
    CHECK(ab >= 0.0);
    CHECK(potential_distance(a, c) <= ab + potential_distance(b, c) + 1e-12);
  }
}

TEST_CASE("layer permutations that describe the same function give the same shifts") {
  // Both configurations describe -3 on [0, 2), -7 on [2, 6).
  const Configuration a({2.0, 6.0}, {-3.0, -7.0});
  Configuration b({6.0, 2.0}, {-3.0, -7.0});
  CHECK(config_to_potential(a) == config_to_potential(b));
  const auto sa = phase_shifts(config_to_potential(a), 2.5, 30);
  const auto sb = phase_shifts(config_to_potential(b), 2.5, 30);
  CHECK(sa == sb);
}
