#include "phaseinv/local_min.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "phaseinv/errors.hpp"

namespace phaseinv {

void LineSearchSpec::validate() const {
  if (!(tolerance > 0.0)) throw DomainError("LineSearchSpec: tolerance must be positive");
  if (max_evaluations < 3) throw DomainError("LineSearchSpec: max_evaluations must be >= 3");
  if (!(initial_step > 0.0)) throw DomainError("LineSearchSpec: initial_step must be positive");
  if (!(expansion > 1.0)) throw DomainError("LineSearchSpec: expansion must exceed 1");
}

namespace {

struct Bounds {
  double lo, hi;
};

Bounds coordinate_bounds(std::size_t i, std::size_t layers, const AdmissibleBox& box) {
  if (i < layers) return {0.0, box.radius};
  return {box.q_low, box.q_high};
}

// Evaluates points origin + t * direction, keeping the best one seen.
class LineProbe {
 public:
  LineProbe(const ConfigObjective& f, const LocalPoint& origin, std::span<const double> direction,
            const AdmissibleBox& box)
      : f_(f), origin_(origin), x0_(origin.config.coordinates()), direction_(direction),
        box_(box), best_(origin) {}

  double operator()(double t) {
    ++evaluations_;
    Configuration c = origin_.config;
    std::vector<double> x(x0_);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (direction_[i] == 0.0) continue;
      const auto b = coordinate_bounds(i, c.layers(), box_);
      x[i] = std::clamp(x0_[i] + t * direction_[i], b.lo, b.hi);
    }
    c.set_coordinates(x);
    c.sort_radii();
    const double value = f_(c);
    if (value < best_.value) best_ = {std::move(c), value};
    return value;
  }

  int evaluations() const { return evaluations_; }
  LocalPoint best() const { return best_; }

 private:
  const ConfigObjective& f_;
  const LocalPoint& origin_;
  std::vector<double> x0_;
  std::span<const double> direction_;
  const AdmissibleBox& box_;
  LocalPoint best_;
  int evaluations_ = 0;
};

}  // namespace

LocalPoint line_minimize(const ConfigObjective& f, const LocalPoint& origin,
                         std::span<const double> direction, const AdmissibleBox& box,
                         const LineSearchSpec& spec) {
  spec.validate();
  const auto& x0 = origin.config.coordinates();
  if (direction.size() != x0.size())
    throw DomainError("line_minimize: direction has the wrong dimension");

  double t_lo = -std::numeric_limits<double>::infinity();
  double t_hi = std::numeric_limits<double>::infinity();
  double norm2 = 0.0;
  for (std::size_t i = 0; i < x0.size(); ++i) {
    const double d = direction[i];
    if (d == 0.0) continue;
    norm2 += d * d;
    const auto b = coordinate_bounds(i, origin.config.layers(), box);
    double a = (b.lo - x0[i]) / d, c = (b.hi - x0[i]) / d;
    if (d < 0.0) std::swap(a, c);
    t_lo = std::max(t_lo, a);
    t_hi = std::min(t_hi, c);
  }
  if (norm2 == 0.0) return origin;
  t_lo = std::min(t_lo, 0.0);
  t_hi = std::max(t_hi, 0.0);
  if (t_lo == 0.0 && t_hi == 0.0) return origin;

  const double norm = std::sqrt(norm2);
  const double step = spec.initial_step / norm;
  const double tol = spec.tolerance / norm;
  LineProbe probe(f, origin, direction, box);
  const auto budget_left = [&] { return probe.evaluations() < spec.max_evaluations; };

  // Walks from 0 in the sign of `dir` while f keeps falling; returns the
  // bracket [near, far] (unordered) around the lowest point found.
  auto expand = [&](double dir, double limit, double first, double f_first) {
    double a = 0.0, b = first, fb = f_first;
    while (budget_left()) {
      double c = b + spec.expansion * (b - a);
      c = dir > 0 ? std::min(c, limit) : std::max(c, limit);
      if (c == b) return std::pair{a, b};
      const double fc = probe(c);
      if (fc >= fb) return std::pair{a, c};
      a = b;
      b = c;
      fb = fc;
    }
    return std::pair{a, b};
  };

  double lo, hi;
  const double up = std::min(step, t_hi);
  const double down = std::max(-step, t_lo);
  // Both neighbours are probed: on a discontinuous f the first improving side
  // is often the wrong one.
  const double inf = std::numeric_limits<double>::infinity();
  const double f_up = up > 0.0 ? probe(up) : inf;
  const double f_down = down < 0.0 ? probe(down) : inf;
  if (std::min(f_up, f_down) >= origin.value) {
    lo = down;
    hi = up;
  } else if (f_up <= f_down) {
    std::tie(lo, hi) = expand(+1.0, t_hi, up, f_up);
  } else {
    std::tie(lo, hi) = expand(-1.0, t_lo, down, f_down);
  }
  if (lo > hi) std::swap(lo, hi);

  // Golden-section refinement.
  constexpr double kInvPhi = 0.6180339887498949;
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = probe(c), fd = probe(d);
  while (hi - lo > tol && budget_left()) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = probe(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = probe(d);
    }
  }
  return probe.best();
}

LocalPoint powell_minimize(const ConfigObjective& f, const Configuration& start,
                           const AdmissibleBox& box, const std::vector<bool>& subspace,
                           const PowellOptions& options) {
  if (subspace.size() != start.dimension())
    throw DomainError("powell_minimize: subspace mask has the wrong dimension");
  Configuration first = start;
  first.active = subspace;
  first.sort_radii();
  LocalPoint q0{first, f(first)};
  const std::size_t n = first.dimension();

  std::vector<double> unit(n, 0.0);
  auto along_axis = [&](const LocalPoint& from, std::size_t i) {
    unit[i] = 1.0;
    auto r = line_minimize(f, from, unit, box, options.line);
    unit[i] = 0.0;
    return r;
  };

  for (int cycle = 0; cycle < options.max_cycles; ++cycle) {
    std::vector<std::size_t> axes;
    for (std::size_t i = 0; i < n; ++i)
      if (q0.config.is_active(i)) axes.push_back(i);
    if (axes.empty()) break;

    // Temporary minima only decide the order of the directions.
    std::vector<double> reached(n, 0.0);
    for (auto i : axes) reached[i] = along_axis(q0, i).value;
    std::stable_sort(axes.begin(), axes.end(),
                     [&](std::size_t i, std::size_t j) { return reached[i] < reached[j]; });

    LocalPoint q = q0;
    for (auto i : axes) q = along_axis(q, i);

    LocalPoint next = q;
    const auto x0 = q0.config.coordinates();
    const auto x1 = q.config.coordinates();
    std::vector<double> v(n);
    std::transform(x1.begin(), x1.end(), x0.begin(), v.begin(), std::minus<>());
    if (std::any_of(v.begin(), v.end(), [](double e) { return e != 0.0; })) {
      auto extrapolated = line_minimize(f, q0, v, box, options.line);
      if (extrapolated.value <= q.value) next = std::move(extrapolated);
    }

    const bool converged = 2.0 * (q0.value - next.value) <=
                           options.ftol * (std::abs(q0.value) + std::abs(next.value)) + 1e-25;
    q0 = std::move(next);
    if (converged) break;
  }
  return q0;
}

LocalPoint powell_minimize(const ConfigObjective& f, const Configuration& start,
                           const AdmissibleBox& box, const PowellOptions& options) {
  std::vector<bool> mask = start.active.empty() ? std::vector<bool>(start.dimension(), true)
                                                : start.active;
  return powell_minimize(f, start, box, mask, options);
}

namespace {

void erase_layer(Configuration& c, std::size_t j) {
  const std::size_t m = c.layers();
  if (!c.active.empty()) {
    c.active.erase(c.active.begin() + static_cast<std::ptrdiff_t>(m + j));
    c.active.erase(c.active.begin() + static_cast<std::ptrdiff_t>(j));
  }
  c.radii.erase(c.radii.begin() + static_cast<std::ptrdiff_t>(j));
  c.values.erase(c.values.begin() + static_cast<std::ptrdiff_t>(j));
}

// Candidate merges in sweep order: downward i = 2..m+1, then upward i = 1..m
// (1-based layer indices, layer m+1 being the phantom zero layer).
std::vector<Configuration> merge_candidates(const Configuration& c, const AdmissibleBox& box) {
  const std::size_t m = c.layers();
  const bool phantom = m > 0 && c.radii.back() < box.radius;
  std::vector<Configuration> out;

  for (std::size_t i = 2; i <= m; ++i) {
    Configuration d = c;
    erase_layer(d, i - 2);  // layer i absorbs layer i-1 with value v_i
    out.push_back(std::move(d));
  }
  if (phantom && m >= 2) {
    Configuration d = c;
    erase_layer(d, m - 1);  // v_m <- 0
    out.push_back(std::move(d));
  }
  for (std::size_t i = 1; i < m; ++i) {
    Configuration u = c;
    const std::size_t a = i - 1, b = i;
    u.values[b] = u.values[a];
    if (!u.active.empty()) u.active[m + b] = u.active[m + a];
    erase_layer(u, a);  // layer i+1 takes v_i
    out.push_back(std::move(u));
  }
  if (phantom) {
    Configuration u = c;
    if (u.active.empty()) u.active.assign(u.dimension(), true);
    u.radii.back() = box.radius;  // v_{m+1} <- v_m: layer m reaches R
    u.active[m - 1] = false;
    out.push_back(std::move(u));
  }
  return out;
}

}  // namespace

LocalPoint reduction_procedure(const ConfigObjective& f, const Configuration& c, double eps_r,
                               const AdmissibleBox& box) {
  if (!(eps_r > 0.0)) throw DomainError("reduction_procedure: eps_r must be positive");
  LocalPoint current{c, f(c)};
  while (true) {
    const double threshold = eps_r * std::max(current.value, 1e-15);
    double best_cost = std::numeric_limits<double>::infinity();
    LocalPoint best;
    for (auto& candidate : merge_candidates(current.config, box)) {
      const double value = f(candidate);
      const double cost = std::abs(current.value - value);
      if (cost < best_cost) {
        best_cost = cost;
        best = {std::move(candidate), value};
      }
    }
    if (!(best_cost < threshold)) return current;
    current = std::move(best);
  }
}

LocalPoint lmm(const ConfigObjective& f, const Configuration& start, const AdmissibleBox& box,
               double eps_r, const PowellOptions& options) {
  const auto reduced = reduction_procedure(f, start, eps_r, box);
  const auto polished = powell_minimize(f, reduced.config, box, options);
  return reduction_procedure(f, polished.config, eps_r, box);
}

}  // namespace phaseinv
