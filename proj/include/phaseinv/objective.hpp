#pragma once

#include <functional>
#include <span>
#include <vector>

#include "phaseinv/forward_solver.hpp"

namespace phaseinv {

// Search box: up to `max_layers` layers with radii in [0, radius] and
// values in [q_low, q_high].
struct AdmissibleBox {
  int max_layers = 2;
  double radius = 10.0;
  double q_low = -20.0;
  double q_high = 0.0;

  void validate() const;  // throws DomainError
  friend bool operator==(const AdmissibleBox&, const AdmissibleBox&) = default;
};

// A point of the search space: radii r_1..r_m followed by values q_1..q_m
// (m <= max_layers), plus a mask of the coordinates a local search may move.
// Coordinate i < m is radius i, coordinate m + i is value i.
struct Configuration {
  std::vector<double> radii;
  std::vector<double> values;
  std::vector<bool> active;  // size 2m; empty means "all active"

  Configuration() = default;
  Configuration(std::vector<double> r, std::vector<double> q);

  std::size_t layers() const { return values.size(); }
  std::size_t dimension() const { return 2 * values.size(); }
  bool is_active(std::size_t coordinate) const {
    return active.empty() || active[coordinate];
  }
  std::vector<double> coordinates() const;
  void set_coordinates(std::span<const double> x);
  // Sorts radii ascending; values stay attached to their position.
  void sort_radii();
  bool is_admissible(const AdmissibleBox& box) const;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

using ConfigObjective = std::function<double(const Configuration&)>;

// q = values[m] on [r_{m-1}, r_m) after sorting radii; zero-width layers
// dropped, equal neighbours merged, zero tail removed.
LayeredPotential config_to_potential(const Configuration& c);

// Normalized misfit sum_l (delta - data)^2 / sum_l data^2 over every l in
// the sets. Throws DomainError on mismatched k / l range or all-zero data.
double phi(const PhaseShiftSet& candidate, const PhaseShiftSet& data);

// L2 norm of p - q over R^3 for radial functions:
// (4 pi int_0^inf |p - q|^2 r^2 dr)^{1/2}, exact for piecewise constants.
double potential_distance(const LayeredPotential& p, const LayeredPotential& q);

// Phi of a configuration against fixed data. A configuration the forward
// solver cannot propagate scores +inf so that searches simply avoid it.
class ScatteringObjective {
 public:
  explicit ScatteringObjective(PhaseShiftSet data);

  double operator()(const Configuration& c) const;
  double operator()(const LayeredPotential& p) const;
  const PhaseShiftSet& data() const { return data_; }

 private:
  PhaseShiftSet data_;
};

}  // namespace phaseinv
