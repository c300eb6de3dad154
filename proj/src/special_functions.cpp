#include "phaseinv/special_functions.hpp"

#include <cmath>
#include <sstream>

#include "phaseinv/errors.hpp"

namespace phaseinv {
namespace {

void check_arguments(int l_max, double x, const char* who) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    std::ostringstream os;
    os << who << ": argument must be positive and finite, got " << x;
    throw DomainError(os.str());
  }
  if (l_max < 0) {
    std::ostringstream os;
    os << who << ": l_max must be non-negative, got " << l_max;
    throw DomainError(os.str());
  }
}

// Order at which the downward recurrence is seeded. The minimal solution
// dominates the seed error by many orders of magnitude once we are this far
// past max(l_max, x).
int miller_start(int l_max, double x) {
  const double top = std::max(static_cast<double>(l_max), std::ceil(x));
  return static_cast<int>(top) + 40 + static_cast<int>(std::sqrt(40.0 * (top + x)));
}

// Unnormalized minimal solution of f_{l-1} = sign * f_{l+1} + (2l+1)/x f_l
// for l in [lo, l_max], returned in out[lo..l_max]. sign = -1 gives the
// Riccati-Bessel recurrence, +1 the modified one.
void downward(int lo, int l_max, double x, double sign, std::vector<double>& out) {
  constexpr double kBig = 1e200;
  const int start = miller_start(l_max, x);
  double above = 0.0;  // f_{l+1}
  double here = 1e-30; // f_l
  for (int l = start; l > lo; --l) {
    const double below = (2.0 * l + 1.0) / x * here + sign * above;
    above = here;
    here = below;
    if (l - 1 <= l_max) out[l - 1] = here;
    if (std::abs(here) > kBig) {
      above /= kBig;
      here /= kBig;
      for (int m = std::max(l - 1, lo); m <= l_max; ++m) out[m] /= kBig;
    }
  }
}

}  // namespace

BesselTable riccati_table(int l_max, double x) {
  check_arguments(l_max, x, "riccati_table");
  BesselTable t;
  t.l_max = l_max;
  t.x = x;
  const auto size = static_cast<std::size_t>(l_max) + 1;
  t.regular.assign(size, 0.0);
  t.singular.assign(size, 0.0);
  t.regular_prime.assign(size, 0.0);
  t.singular_prime.assign(size, 0.0);

  const double s = std::sin(x);
  const double c = std::cos(x);

  // n_l: upward is stable for every l.
  t.singular[0] = -c;
  if (l_max >= 1) t.singular[1] = -c / x - s;
  for (int l = 1; l < l_max; ++l) {
    t.singular[l + 1] = (2.0 * l + 1.0) / x * t.singular[l] - t.singular[l - 1];
    if (!std::isfinite(t.singular[l + 1])) {
      std::ostringstream os;
      os << "riccati_table: n_" << (l + 1) << "(" << x << ") overflows";
      throw OverflowError(os.str(), l + 1, x);
    }
  }

  // j_l: upward while l <= x, Miller downward recurrence above.
  const int turning = std::min(l_max, static_cast<int>(std::floor(x)));
  t.regular[0] = s;
  if (turning >= 1) t.regular[1] = s / x - c;
  for (int l = 1; l < turning; ++l)
    t.regular[l + 1] = (2.0 * l + 1.0) / x * t.regular[l] - t.regular[l - 1];

  if (turning < l_max) {
    const int lo = std::max(turning - 1, 0);
    std::vector<double> f(size, 0.0);
    downward(lo, l_max, x, -1.0, f);
    double scale;
    if (turning == 0) {
      scale = s / f[0];
    } else {
      // Two-point match: consecutive j_l never vanish together.
      const double a = t.regular[turning - 1], b = t.regular[turning];
      const double norm = std::max(std::abs(f[turning - 1]), std::abs(f[turning]));
      const double fa = f[turning - 1] / norm, fb = f[turning] / norm;
      scale = (a * fa + b * fb) / (fa * fa + fb * fb) / norm;
    }
    for (int l = turning + 1; l <= l_max; ++l) t.regular[l] = scale * f[l];
  }

  t.regular_prime[0] = c;
  t.singular_prime[0] = s;
  for (int l = 1; l <= l_max; ++l) {
    t.regular_prime[l] = t.regular[l - 1] - l / x * t.regular[l];
    t.singular_prime[l] = t.singular[l - 1] - l / x * t.singular[l];
  }
  return t;
}

BesselTable modified_riccati_table(int l_max, double x) {
  check_arguments(l_max, x, "modified_riccati_table");
  BesselTable t;
  t.l_max = l_max;
  t.x = x;
  t.log_scale = x;
  const auto size = static_cast<std::size_t>(l_max) + 1;
  t.regular.assign(size, 0.0);
  t.singular.assign(size, 0.0);
  t.regular_prime.assign(size, 0.0);
  t.singular_prime.assign(size, 0.0);

  const double e2 = std::exp(-2.0 * x);
  const double sinh_scaled = -std::expm1(-2.0 * x) / 2.0;  // sinh(x) e^{-x}
  const double cosh_scaled = (1.0 + e2) / 2.0;              // cosh(x) e^{-x}

  // i_l is minimal in l for every x: downward over the whole range.
  std::vector<double> f(size, 0.0);
  if (l_max == 0) {
    f[0] = 1.0;
  } else {
    downward(0, l_max, x, +1.0, f);
  }
  const double scale = sinh_scaled / f[0];
  for (int l = 0; l <= l_max; ++l) t.regular[l] = scale * f[l];

  // k_l grows with l: upward.
  t.singular[0] = 1.0;
  if (l_max >= 1) t.singular[1] = 1.0 + 1.0 / x;
  for (int l = 1; l < l_max; ++l) {
    t.singular[l + 1] = t.singular[l - 1] + (2.0 * l + 1.0) / x * t.singular[l];
    if (!std::isfinite(t.singular[l + 1])) {
      std::ostringstream os;
      os << "modified_riccati_table: k_" << (l + 1) << "(" << x << ") overflows";
      throw OverflowError(os.str(), l + 1, x);
    }
  }

  t.regular_prime[0] = cosh_scaled;
  t.singular_prime[0] = -1.0;
  for (int l = 1; l <= l_max; ++l) {
    t.regular_prime[l] = t.regular[l - 1] - l / x * t.regular[l];
    t.singular_prime[l] = -t.singular[l - 1] - l / x * t.singular[l];
  }
  return t;
}

PowerSolutions power_solutions(int l, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    std::ostringstream os;
    os << "power_solutions: radius must be positive and finite, got " << r;
    throw DomainError(os.str());
  }
  if (l < 0) throw DomainError("power_solutions: negative order");
  const double up = std::pow(r, l);
  const double down = std::pow(r, -l);
  return {up * r, down, (l + 1) * up, -l * down / r};
}

}  // namespace phaseinv
