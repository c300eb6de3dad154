#include "phaseinv/global_min.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "phaseinv/errors.hpp"
#include "phaseinv/rng.hpp"

namespace phaseinv {
namespace {

std::size_t count_of(double fraction_of_batch) {
  const double nearest = std::round(fraction_of_batch);
  if (std::abs(fraction_of_batch - nearest) < 1e-9) return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(std::floor(fraction_of_batch));
}

int thread_count(int workers) {
#ifdef _OPENMP
  return workers > 0 ? workers : omp_get_max_threads();
#else
  (void)workers;
  return 1;
#endif
}

bool record_less(const MinimizerRecord& a, const MinimizerRecord& b) {
  if (a.phi != b.phi) return a.phi < b.phi;
  if (a.iteration != b.iteration) return a.iteration < b.iteration;
  return a.index < b.index;
}

std::optional<MinimizerRecord> local_search(const ConfigObjective& f, const Configuration& start,
                                            const AdmissibleBox& box, const IrrsParams& params,
                                            int iteration, std::size_t index) {
  try {
    auto result = lmm(f, start, box, params.eps_r, params.local);
    if (!std::isfinite(result.value)) return std::nullopt;
    return MinimizerRecord{std::move(result.config), result.value, iteration, index};
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

std::size_t IrrsParams::reduced_count() const {
  return count_of(gamma * static_cast<double>(batch_size));
}

std::size_t IrrsParams::minimizing_count() const {
  return count_of(nu * gamma * static_cast<double>(batch_size));
}

void IrrsParams::validate() const {
  std::ostringstream problems;
  if (batch_size < 1) problems << " L must be >= 1;";
  if (!(gamma > 0.0 && gamma < 1.0)) problems << " gamma must satisfy 0 < gamma < 1;";
  if (!(nu > 0.0 && nu < 1.0)) problems << " nu must satisfy 0 < nu < 1;";
  if (!(beta > 1.0)) problems << " beta must exceed 1;";
  if (!(epsilon > 0.0)) problems << " epsilon must be positive;";
  if (j_max < 1) problems << " j_max must be >= 1;";
  if (!(eps_r > 0.0)) problems << " eps_r must be positive;";
  if (gamma > 0.0 && gamma < 1.0 && reduced_count() < 1)
    problems << " gamma * L must be >= 1;";
  if (nu > 0.0 && nu < 1.0 && gamma > 0.0 && gamma < 1.0 && minimizing_count() < 1)
    problems << " nu * gamma * L must be >= 1;";
  const auto msg = problems.str();
  if (!msg.empty()) throw DomainError("IrrsParams:" + msg);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kStable: return "stable";
    case Verdict::kUnstable: return "unstable";
    case Verdict::kExhausted: return "exhausted";
  }
  return "unknown";
}

std::string to_string(MergePolicy p) {
  return p == MergePolicy::kAccumulated ? "accumulated" : "previous_iteration";
}

std::vector<double> StabilityReport::indices() const {
  std::vector<double> d;
  for (const auto& it : iterations) d.push_back(it.index);
  return d;
}

std::vector<Configuration> generate_batch(const AdmissibleBox& box, std::size_t count,
                                          std::uint64_t seed, std::uint64_t iteration) {
  box.validate();
  const auto m = static_cast<std::size_t>(box.max_layers);
  std::vector<Configuration> batch;
  batch.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto stream = make_stream(seed, {stream_tag("batch"), iteration, i});
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> r(m), q(m);
    for (auto& x : r) x = unit(stream) * box.radius;
    for (auto& x : q) x = box.q_low + unit(stream) * (box.q_high - box.q_low);
    Configuration c(std::move(r), std::move(q));
    c.sort_radii();
    batch.push_back(std::move(c));
  }
  return batch;
}

std::vector<double> evaluate_batch_serial(const ConfigObjective& f,
                                          const std::vector<Configuration>& batch) {
  std::vector<double> values(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) values[i] = f(batch[i]);
  return values;
}

std::vector<double> evaluate_batch(const ConfigObjective& f,
                                   const std::vector<Configuration>& batch, int workers) {
  std::vector<double> values(batch.size());
  const auto n = static_cast<std::ptrdiff_t>(batch.size());
#pragma omp parallel for schedule(static) num_threads(thread_count(workers))
  for (std::ptrdiff_t i = 0; i < n; ++i) values[i] = f(batch[i]);
  return values;
}

std::vector<std::size_t> reduce_batch(const std::vector<double>& values, std::size_t keep) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  keep = std::min(keep, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                    [&values](std::size_t a, std::size_t b) {
                      if (values[a] != values[b]) return values[a] < values[b];
                      return a < b;
                    });
  order.resize(keep);
  return order;
}

std::vector<Configuration> reduce_batch(const std::vector<Configuration>& batch,
                                        const ConfigObjective& f, double gamma) {
  const auto keep = count_of(gamma * static_cast<double>(batch.size()));
  std::vector<Configuration> out;
  for (auto i : reduce_batch(evaluate_batch_serial(f, batch), keep)) out.push_back(batch[i]);
  return out;
}

std::vector<std::optional<MinimizerRecord>> run_local_searches_serial(
    const ConfigObjective& f, const std::vector<Configuration>& starts, const AdmissibleBox& box,
    const IrrsParams& params, int iteration) {
  std::vector<std::optional<MinimizerRecord>> out(starts.size());
  for (std::size_t i = 0; i < starts.size(); ++i)
    out[i] = local_search(f, starts[i], box, params, iteration, i);
  return out;
}

std::vector<std::optional<MinimizerRecord>> run_local_searches(
    const ConfigObjective& f, const std::vector<Configuration>& starts, const AdmissibleBox& box,
    const IrrsParams& params, int iteration) {
  std::vector<std::optional<MinimizerRecord>> out(starts.size());
  const auto n = static_cast<std::ptrdiff_t>(starts.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_count(params.workers))
  for (std::ptrdiff_t i = 0; i < n; ++i)
    out[i] = local_search(f, starts[i], box, params, iteration, static_cast<std::size_t>(i));
  return out;
}

double stability_index(const std::vector<MinimizerRecord>& minimizing_set, double d_av) {
  if (!(d_av > 0.0)) throw DomainError("stability_index: d_av must be positive");
  if (minimizing_set.empty()) throw DomainError("stability_index: empty minimizing set");
  std::vector<LayeredPotential> p;
  p.reserve(minimizing_set.size());
  for (const auto& rec : minimizing_set) p.push_back(config_to_potential(rec.config));
  double diameter = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      diameter = std::max(diameter, potential_distance(p[i], p[j]));
  return diameter / d_av;
}

StabilityReport irrs(const ConfigObjective& f, const AdmissibleBox& box, const IrrsParams& params) {
  params.validate();
  box.validate();

  StabilityReport report;
  report.merge_policy = params.merge_policy;
  std::vector<MinimizerRecord> previous;  // pool partner for the next merge
  std::vector<MinimizerRecord> selected;
  const LayeredPotential zero;

  for (int j = 1; j <= params.j_max; ++j) {
    const auto batch = generate_batch(box, params.batch_size, params.seed, static_cast<std::uint64_t>(j));
    const auto values = evaluate_batch(f, batch, params.workers);
    std::vector<Configuration> starts;
    for (auto i : reduce_batch(values, params.reduced_count())) starts.push_back(batch[i]);

    std::vector<MinimizerRecord> minimizers;
    int failed = 0;
    for (auto& r : run_local_searches(f, starts, box, params, j)) {
      if (r) {
        minimizers.push_back(std::move(*r));
      } else {
        ++failed;
      }
    }
    report.failed_starts += failed;
    if (minimizers.empty()) {
      std::ostringstream os;
      os << "irrs: every local search failed in iteration " << j;
      throw SolverError(os.str());
    }

    if (j == 1) {
      double total = 0.0;
      for (const auto& rec : minimizers) total += potential_distance(config_to_potential(rec.config), zero);
      report.d_av = total / static_cast<double>(minimizers.size());
      if (report.d_av == 0.0) {
        report.d_av = 1.0;
        report.d_av_fallback = true;
      }
    }

    std::vector<MinimizerRecord> pool = minimizers;
    pool.insert(pool.end(), previous.begin(), previous.end());
    std::sort(pool.begin(), pool.end(), record_less);
    pool.resize(std::min(pool.size(), params.minimizing_count()));
    selected = std::move(pool);

    const double d = stability_index(selected, report.d_av);
    const double best_phi = selected.front().phi;
    report.iterations.push_back({j, d, best_phi, selected.back().phi, failed});

    if (d <= params.epsilon) {
      report.verdict = Verdict::kStable;
      break;
    }
    const bool flat = std::all_of(selected.begin(), selected.end(), [&](const MinimizerRecord& r) {
      return r.phi <= params.beta * best_phi;
    });
    if (flat) {
      report.verdict = Verdict::kUnstable;
      break;
    }
    report.verdict = Verdict::kExhausted;
    previous = params.merge_policy == MergePolicy::kAccumulated ? selected : minimizers;
  }

  report.best = selected.front();
  report.minimizing_set = selected;
  return report;
}

StabilityReport irrs(const PhaseShiftSet& data, const AdmissibleBox& box, const IrrsParams& params) {
  const ScatteringObjective objective(data);
  return irrs(ConfigObjective(std::cref(objective)), box, params);
}

}  // namespace phaseinv
