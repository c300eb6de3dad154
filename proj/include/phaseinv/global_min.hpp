#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phaseinv/local_min.hpp"

namespace phaseinv {

// Which earlier minimizers compete with the current iteration's for the
// minimizing set: the previous selected set (so the best points found so far
// are never lost) or only the raw minimizers of the previous iteration.
enum class MergePolicy { kAccumulated, kPreviousIteration };

struct IrrsParams {
  std::size_t batch_size = 5000;  // L
  double gamma = 0.01;            // fraction of the batch that is polished
  double nu = 0.16;               // fraction of the polished points kept
  double epsilon = 0.02;          // stability threshold on D
  double beta = 1.1;              // flatness factor for the unstable verdict
  int j_max = 30;
  double eps_r = 0.1;             // reduction threshold used by the local phase
  std::uint64_t seed = 0;
  int workers = 0;                // 0: OpenMP default
  MergePolicy merge_policy = MergePolicy::kAccumulated;
  PowellOptions local;

  // floor(gamma * L) and floor(nu * gamma * L), robust to representation error.
  std::size_t reduced_count() const;
  std::size_t minimizing_count() const;
  void validate() const;  // throws DomainError listing every violation
  friend bool operator==(const IrrsParams&, const IrrsParams&) = default;
};

struct MinimizerRecord {
  Configuration config;
  double phi = 0.0;
  int iteration = 0;
  std::size_t index = 0;  // position in the iteration's reduced sample
};

enum class Verdict { kStable, kUnstable, kExhausted };

std::string to_string(Verdict v);
std::string to_string(MergePolicy p);

struct IterationSummary {
  int iteration = 0;
  double index = 0.0;       // D^j
  double best_phi = 0.0;
  double worst_selected_phi = 0.0;
  int failed_starts = 0;
};

struct StabilityReport {
  std::vector<IterationSummary> iterations;
  Verdict verdict = Verdict::kExhausted;
  MinimizerRecord best;
  std::vector<MinimizerRecord> minimizing_set;
  double d_av = 0.0;
  bool d_av_fallback = false;  // all first-iteration minimizers were zero
  int failed_starts = 0;
  MergePolicy merge_policy = MergePolicy::kAccumulated;

  std::vector<double> indices() const;
};

// L uniform configurations in the box (max_layers layers each), radii sorted.
// Point i of iteration j draws from its own sub-stream of `seed`.
std::vector<Configuration> generate_batch(const AdmissibleBox& box, std::size_t count,
                                          std::uint64_t seed, std::uint64_t iteration);

// Objective values for a batch. The serial version is the reference the
// OpenMP version is tested against.
std::vector<double> evaluate_batch_serial(const ConfigObjective& f,
                                          const std::vector<Configuration>& batch);
std::vector<double> evaluate_batch(const ConfigObjective& f,
                                   const std::vector<Configuration>& batch, int workers = 0);

// Indices of the `keep` smallest values; ties go to the earlier index.
std::vector<std::size_t> reduce_batch(const std::vector<double>& values, std::size_t keep);
std::vector<Configuration> reduce_batch(const std::vector<Configuration>& batch,
                                        const ConfigObjective& f, double gamma);

// LMM from every start. A start whose search throws or ends non-finite
// yields std::nullopt.
std::vector<std::optional<MinimizerRecord>> run_local_searches_serial(
    const ConfigObjective& f, const std::vector<Configuration>& starts, const AdmissibleBox& box,
    const IrrsParams& params, int iteration);
std::vector<std::optional<MinimizerRecord>> run_local_searches(
    const ConfigObjective& f, const std::vector<Configuration>& starts, const AdmissibleBox& box,
    const IrrsParams& params, int iteration);

// max_{i,j} ||p_i - p_j|| / d_av over the potentials of the records.
double stability_index(const std::vector<MinimizerRecord>& minimizing_set, double d_av);

// Iterative reduced random search with the stability-index stopping rule.
StabilityReport irrs(const ConfigObjective& f, const AdmissibleBox& box, const IrrsParams& params);
StabilityReport irrs(const PhaseShiftSet& data, const AdmissibleBox& box, const IrrsParams& params);

}  // namespace phaseinv
