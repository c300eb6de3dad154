#pragma once

#include <cstddef>
#include <vector>

#include "phaseinv/rng.hpp"

namespace phaseinv {

// Piecewise-constant radial potential: q(r) = values[i] on
// [breakpoints[i-1], breakpoints[i]) with an implicit inner edge at 0 and
// q = 0 beyond the last breakpoint. An empty potential is q == 0.
class LayeredPotential {
 public:
  LayeredPotential() = default;
  // Throws DomainError unless breakpoints are positive, strictly ascending,
  // finite, and match values in length.
  LayeredPotential(std::vector<double> breakpoints, std::vector<double> values);

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t layers() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  // Outer edge of the support (0 for the empty potential).
  double support_radius() const { return breakpoints_.empty() ? 0.0 : breakpoints_.back(); }
  double value_at(double r) const;

  // Same function of r with equal neighbours merged and the zero tail dropped.
  LayeredPotential canonical() const;

  friend bool operator==(const LayeredPotential&, const LayeredPotential&) = default;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

struct PhaseShiftSet {
  double k = 0.0;
  std::vector<double> shifts;  // delta(k, l), l = 0..l_max, each in (-pi/2, pi/2]

  int l_max() const { return static_cast<int>(shifts.size()) - 1; }
  friend bool operator==(const PhaseShiftSet&, const PhaseShiftSet&) = default;
};

// Solution coefficients phi = a * f + b * g in one layer, where (f, g) is the
// regular/singular pair of that layer's branch. Projective: only the ratio
// matters. `anchor` is the inner radius of the layer; evanescent layers use it
// to keep their exponentially scaled basis finite.
struct CoefficientState {
  double a = 1.0;
  double b = 0.0;
  int layer_index = 0;
  double anchor = 0.0;
};

// Squared local wave numbers with |kappa^2| below this use the power basis.
inline constexpr double kZeroKappaSquared = 1e-12;

// Carries the state across the interface at radius r from a layer with
// squared wave number kappa2_in to one with kappa2_out, enforcing continuity
// of phi and dphi/dr. The result is renormalized to max(|a|,|b|) == 1 and
// anchored at r. Throws SolverError on non-finite input or a (0,0) result.
CoefficientState propagate_interface(const CoefficientState& state, int l, double kappa2_in,
                                     double kappa2_out, double r);

// Fixed-energy phase shifts for l = 0..l_max. Throws DomainError for k <= 0
// or l_max < 0, SolverError (naming l and the layer) if propagation breaks down.
PhaseShiftSet phase_shifts(const LayeredPotential& potential, double k, int l_max);

// delta_h = delta * (1 + (0.5 - z) h), z ~ U[0,1] drawn per shift from `stream`.
PhaseShiftSet add_noise(const PhaseShiftSet& shifts, double h, RandomStream& stream);

}  // namespace phaseinv
