#include "phaseinv/objective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "phaseinv/errors.hpp"

namespace phaseinv {

void AdmissibleBox::validate() const {
  std::ostringstream problems;
  if (max_layers < 1) problems << " max_layers must be >= 1;";
  if (!(radius >= 0.0) || !std::isfinite(radius)) problems << " radius must be non-negative;";
  if (!(q_low <= q_high) || !std::isfinite(q_low) || !std::isfinite(q_high))
    problems << " q_low <= q_high required;";
  const auto msg = problems.str();
  if (!msg.empty()) throw DomainError("AdmissibleBox:" + msg);
}

Configuration::Configuration(std::vector<double> r, std::vector<double> q)
    : radii(std::move(r)), values(std::move(q)) {
  if (radii.size() != values.size())
    throw DomainError("Configuration: radii and values differ in length");
}

std::vector<double> Configuration::coordinates() const {
  std::vector<double> x(radii);
  x.insert(x.end(), values.begin(), values.end());
  return x;
}

void Configuration::set_coordinates(std::span<const double> x) {
  const std::size_t m = layers();
  std::copy_n(x.begin(), m, radii.begin());
  std::copy_n(x.begin() + static_cast<std::ptrdiff_t>(m), m, values.begin());
}

void Configuration::sort_radii() {
  if (active.empty()) {
    std::sort(radii.begin(), radii.end());
    return;
  }
  // Radius flags travel with the radii.
  const std::size_t m = layers();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [this](std::size_t i, std::size_t j) { return radii[i] < radii[j]; });
  std::vector<double> r(m);
  std::vector<bool> flags(active);
  for (std::size_t i = 0; i < m; ++i) {
    r[i] = radii[order[i]];
    flags[i] = active[order[i]];
  }
  radii = std::move(r);
  active = std::move(flags);
}

bool Configuration::is_admissible(const AdmissibleBox& box) const {
  if (radii.size() != values.size()) return false;
  if (static_cast<int>(layers()) > box.max_layers) return false;
  if (!active.empty() && active.size() != dimension()) return false;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] >= 0.0 && radii[i] <= box.radius)) return false;
    if (i > 0 && radii[i] < radii[i - 1]) return false;
  }
  for (double q : values)
    if (!(q >= box.q_low && q <= box.q_high)) return false;
  return true;
}

LayeredPotential config_to_potential(const Configuration& c) {
  std::vector<double> r(c.radii);
  std::sort(r.begin(), r.end());
  std::vector<double> edges, q;
  double inner = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] > inner)) continue;
    edges.push_back(r[i]);
    q.push_back(c.values[i]);
    inner = r[i];
  }
  return LayeredPotential(std::move(edges), std::move(q)).canonical();
}

double phi(const PhaseShiftSet& candidate, const PhaseShiftSet& data) {
  if (candidate.shifts.size() != data.shifts.size())
    throw DomainError("phi: candidate and data cover different l ranges");
  if (candidate.k != data.k) throw DomainError("phi: candidate and data use different k");
  double num = 0.0, den = 0.0;
  for (std::size_t l = 0; l < data.shifts.size(); ++l) {
    const double d = candidate.shifts[l] - data.shifts[l];
    num += d * d;
    den += data.shifts[l] * data.shifts[l];
  }
  if (den == 0.0) throw DomainError("phi: data shifts are identically zero");
  return num / den;
}

double potential_distance(const LayeredPotential& p, const LayeredPotential& q) {
  std::vector<double> edges(p.breakpoints());
  edges.insert(edges.end(), q.breakpoints().begin(), q.breakpoints().end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  double sum = 0.0, inner = 0.0;
  for (double outer : edges) {
    const double mid = 0.5 * (inner + outer);
    const double d = p.value_at(mid) - q.value_at(mid);
    sum += d * d * (outer * outer * outer - inner * inner * inner) / 3.0;
    inner = outer;
  }
  return std::sqrt(4.0 * std::numbers::pi * sum);
}

ScatteringObjective::ScatteringObjective(PhaseShiftSet data) : data_(std::move(data)) {
  const bool all_zero =
      std::all_of(data_.shifts.begin(), data_.shifts.end(), [](double d) { return d == 0.0; });
  if (all_zero) throw DomainError("ScatteringObjective: data shifts are identically zero");
}

double ScatteringObjective::operator()(const LayeredPotential& p) const {
  try {
    return phi(phase_shifts(p, data_.k, data_.l_max()), data_);
  } catch (const SolverError&) {
    return std::numeric_limits<double>::infinity();
  }
}

double ScatteringObjective::operator()(const Configuration& c) const {
  return (*this)(config_to_potential(c));
}

}  // namespace phaseinv
