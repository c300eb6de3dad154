#include "phaseinv/forward_solver.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "phaseinv/errors.hpp"
#include "phaseinv/special_functions.hpp"

namespace phaseinv {

LayeredPotential::LayeredPotential(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  std::ostringstream problems;
  if (breakpoints_.size() != values_.size())
    problems << " breakpoints/values length mismatch (" << breakpoints_.size() << " vs "
             << values_.size() << ");";
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    const double r = breakpoints_[i];
    if (!std::isfinite(r) || r <= 0.0) problems << " breakpoint " << i << " not positive;";
    if (i > 0 && !(r > breakpoints_[i - 1]))
      problems << " breakpoint " << i << " not strictly ascending;";
  }
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!std::isfinite(values_[i])) problems << " value " << i << " not finite;";
  const auto msg = problems.str();
  if (!msg.empty()) throw DomainError("LayeredPotential:" + msg);
}

double LayeredPotential::value_at(double r) const {
  for (std::size_t i = 0; i < breakpoints_.size(); ++i)
    if (r < breakpoints_[i]) return values_[i];
  return 0.0;
}

LayeredPotential LayeredPotential::canonical() const {
  std::vector<double> r, q;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!q.empty() && q.back() == values_[i]) {
      r.back() = breakpoints_[i];
    } else {
      r.push_back(breakpoints_[i]);
      q.push_back(values_[i]);
    }
  }
  while (!q.empty() && q.back() == 0.0) {
    q.pop_back();
    r.pop_back();
  }
  return LayeredPotential(std::move(r), std::move(q));
}

namespace {

// Regular/singular pair of one layer evaluated at a radius, for all orders.
// Derivatives are with respect to r; wronskian = f g' - f' g.
struct Basis {
  std::vector<double> f, g, fp, gp, wronskian;
};

Basis layer_basis(int l_max, double kappa2, double r, double anchor) {
  const auto size = static_cast<std::size_t>(l_max) + 1;
  Basis b;
  if (kappa2 > kZeroKappaSquared) {
    const double kappa = std::sqrt(kappa2);
    auto t = riccati_table(l_max, kappa * r);
    b.f = std::move(t.regular);
    b.g = std::move(t.singular);
    b.fp = std::move(t.regular_prime);
    b.gp = std::move(t.singular_prime);
    for (std::size_t l = 0; l < size; ++l) {
      b.fp[l] *= kappa;
      b.gp[l] *= kappa;
    }
    b.wronskian.assign(size, kappa);
  } else if (kappa2 < -kZeroKappaSquared) {
    const double mu = std::sqrt(-kappa2);
    auto t = modified_riccati_table(l_max, mu * r);
    // Basis anchored at the layer's inner edge: i_l e^{-mu anchor}, k_l e^{mu anchor}.
    const double grow = std::exp(mu * (r - anchor));
    if (!std::isfinite(grow))
      throw SolverError("layer_basis: evanescent layer too thick to represent");
    b.f = std::move(t.regular);
    b.g = std::move(t.singular);
    b.fp = std::move(t.regular_prime);
    b.gp = std::move(t.singular_prime);
    for (std::size_t l = 0; l < size; ++l) {
      b.f[l] *= grow;
      b.fp[l] *= mu * grow;
      b.g[l] /= grow;
      b.gp[l] *= mu / grow;
    }
    b.wronskian.assign(size, -mu);
  } else {
    b.f.resize(size);
    b.g.resize(size);
    b.fp.resize(size);
    b.gp.resize(size);
    b.wronskian.resize(size);
    for (int l = 0; l <= l_max; ++l) {
      const auto p = power_solutions(l, r);
      b.f[l] = p.regular;
      b.g[l] = p.singular;
      b.fp[l] = p.regular_prime;
      b.gp[l] = p.singular_prime;
      b.wronskian[l] = -(2.0 * l + 1.0);
    }
  }
  return b;
}

// Matches value and slope of (a, b) in basis `in` to the basis `out` at the
// same radius; returns false if the result is degenerate or non-finite.
bool transfer(double& a, double& b, const Basis& in, const Basis& out, std::size_t l) {
  const double value = a * in.f[l] + b * in.g[l];
  const double slope = a * in.fp[l] + b * in.gp[l];
  double na = (value * out.gp[l] - slope * out.g[l]) / out.wronskian[l];
  double nb = (slope * out.f[l] - value * out.fp[l]) / out.wronskian[l];
  const double scale = std::max(std::abs(na), std::abs(nb));
  if (!std::isfinite(scale) || scale == 0.0) return false;
  a = na / scale;
  b = nb / scale;
  return true;
}

double shift_from_ratio(double a, double b) {
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  if (a == 0.0) return kHalfPi;
  const double d = -std::atan(b / a);
  return d <= -kHalfPi ? kHalfPi : d;
}

}  // namespace

CoefficientState propagate_interface(const CoefficientState& state, int l, double kappa2_in,
                                      double kappa2_out, double r) {
  if (!std::isfinite(state.a) || !std::isfinite(state.b) || !std::isfinite(kappa2_in) ||
      !std::isfinite(kappa2_out) || !std::isfinite(r))
    throw SolverError("propagate_interface: non-finite input");
  if (!(r > 0.0)) throw DomainError("propagate_interface: radius must be positive");
  if (l < 0) throw DomainError("propagate_interface: negative order");
  const Basis in = layer_basis(l, kappa2_in, r, state.anchor);
  const Basis out = layer_basis(l, kappa2_out, r, r);
  CoefficientState next{state.a, state.b, state.layer_index + 1, r};
  if (!transfer(next.a, next.b, in, out, static_cast<std::size_t>(l)))
    throw SolverError("propagate_interface: degenerate coefficient pair");
  return next;
}

PhaseShiftSet phase_shifts(const LayeredPotential& potential, double k, int l_max) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("phase_shifts: k must be positive");
  if (l_max < 0) throw DomainError("phase_shifts: l_max must be non-negative");

  const auto size = static_cast<std::size_t>(l_max) + 1;
  std::vector<double> a(size, 1.0), b(size, 0.0);
  const double k2 = k * k;
  const auto& radii = potential.breakpoints();
  const auto& values = potential.values();
  double anchor = 0.0;

  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    const double inner = i == 0 ? 0.0 : radii[i - 1];
    if (!(r > inner)) continue;
    const double kappa2_in = k2 - values[i];
    const double kappa2_out = k2 - (i + 1 < values.size() ? values[i + 1] : 0.0);
    if (kappa2_in == kappa2_out) continue;  // no physical interface

    Basis in, out;
    try {
      in = layer_basis(l_max, kappa2_in, r, anchor);
      out = layer_basis(l_max, kappa2_out, r, r);
    } catch (const OverflowError& e) {
      std::ostringstream os;
      os << "phase_shifts: basis overflow at l=" << e.order() << ", layer " << i + 1 << " ("
         << e.what() << ")";
      throw SolverError(os.str());
    }
    for (std::size_t l = 0; l < size; ++l) {
      if (!transfer(a[l], b[l], in, out, l)) {
        std::ostringstream os;
        os << "phase_shifts: propagation broke down at l=" << l << ", layer " << i + 1;
        throw SolverError(os.str());
      }
    }
    anchor = r;
  }

  PhaseShiftSet out{k, std::vector<double>(size)};
  for (std::size_t l = 0; l < size; ++l) out.shifts[l] = shift_from_ratio(a[l], b[l]);
  return out;
}

PhaseShiftSet add_noise(const PhaseShiftSet& shifts, double h, RandomStream& stream) {
  if (!(h >= 0.0) || !std::isfinite(h)) throw DomainError("add_noise: h must be non-negative");
  PhaseShiftSet noisy = shifts;
  if (h == 0.0) return noisy;
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (auto& d : noisy.shifts) d *= 1.0 + (0.5 - uniform(stream)) * h;
  return noisy;
}

}  // namespace phaseinv
