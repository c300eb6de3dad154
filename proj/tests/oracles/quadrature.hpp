#pragma once

// Potential-space distance by adaptive Gauss-Kronrod quadrature of the raw
// integrand, ignoring the piecewise structure the library exploits. Cells are
// bisected until the Gauss/Kronrod discrepancy drops below a fixed absolute
// tolerance, so refinement concentrates on the jumps.

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "phaseinv/forward_solver.hpp"

namespace phaseinv::oracle {

template <class F>
double bisecting_integral(const F& f, double a, double b, double abs_tol, int depth) {
  double error = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0, &error);
  if (error <= abs_tol || depth == 0) return value;
  const double mid = 0.5 * (a + b);
  return bisecting_integral(f, a, mid, abs_tol, depth - 1) +
         bisecting_integral(f, mid, b, abs_tol, depth - 1);
}

inline double quadrature_distance(const LayeredPotential& p, const LayeredPotential& q) {
  const double outer = std::max(p.support_radius(), q.support_radius());
  if (outer == 0.0) return 0.0;
  auto integrand = [&](double r) {
    const double d = p.value_at(r) - q.value_at(r);
    return 4.0 * std::numbers::pi * r * r * d * d;
  };
  double scale = 0.0;
  for (int i = 0; i < 1000; ++i) scale = std::max(scale, integrand(outer * (i + 0.5) / 1000));
  const double abs_tol = 1e-14 * std::max(scale, 1e-300) * outer;
  return std::sqrt(bisecting_integral(integrand, 0.0, outer, abs_tol, 60));
}

}  // namespace phaseinv::oracle
