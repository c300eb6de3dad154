#pragma once

#include <span>
#include <vector>

#include "phaseinv/objective.hpp"

namespace phaseinv {

struct LineSearchSpec {
  double initial_step = 0.1;        // trial displacement, configuration units
  double expansion = 1.618033988749895;
  double tolerance = 1e-6;          // final interval width, configuration units
  int max_evaluations = 200;

  void validate() const;  // throws DomainError
  friend bool operator==(const LineSearchSpec&, const LineSearchSpec&) = default;
};

struct PowellOptions {
  LineSearchSpec line;
  double ftol = 1e-8;     // fractional decrease per cycle that ends the search
  int max_cycles = 200;
  friend bool operator==(const PowellOptions&, const PowellOptions&) = default;
};

struct LocalPoint {
  Configuration config;
  double value = 0.0;
};

// One-dimensional golden-section minimization of f(origin + t * direction)
// over the t-interval that keeps every coordinate inside the box. Radii are
// re-sorted on the returned point. Never returns a value above origin_value.
LocalPoint line_minimize(const ConfigObjective& f, const LocalPoint& origin,
                         std::span<const double> direction, const AdmissibleBox& box,
                         const LineSearchSpec& spec);

// Powell-style direction set search over the coordinates flagged in
// `subspace` (size == start.dimension()):
//   temporary minimizations from Q0 along each unit direction order the
//   directions by the value they reach; sequential minimizations along the
//   ordered directions give Q_2M; a final line search from Q0 along
//   Q_2M - Q0 gives the next Q0.
LocalPoint powell_minimize(const ConfigObjective& f, const Configuration& start,
                           const AdmissibleBox& box, const std::vector<bool>& subspace,
                           const PowellOptions& options = {});

// Same, using start.active as the subspace.
LocalPoint powell_minimize(const ConfigObjective& f, const Configuration& start,
                           const AdmissibleBox& box, const PowellOptions& options = {});

// Greedy layer merging. Each sweep evaluates every downward (v_{i-1} <- v_i)
// and upward (v_{i+1} <- v_i) merge, including the phantom zero layer between
// the last radius and the box radius, and commits the cheapest one if its
// change in f is below eps_r * f(current). Sweeps repeat until none commits.
// Merging into the phantom pins the last radius at box.radius (inactive).
LocalPoint reduction_procedure(const ConfigObjective& f, const Configuration& c, double eps_r,
                               const AdmissibleBox& box);

// reduce -> powell in the reduced subspace -> reduce.
LocalPoint lmm(const ConfigObjective& f, const Configuration& start, const AdmissibleBox& box,
               double eps_r, const PowellOptions& options = {});

}  // namespace phaseinv
