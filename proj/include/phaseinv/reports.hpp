#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "phaseinv/run_config.hpp"

namespace phaseinv {

inline constexpr int kReportSchemaVersion = 1;

// Phase shifts of cfg.potential for every k in cfg.k_values.
std::vector<PhaseShiftSet> forward_tables(const RunConfig& cfg);

// Tab-delimited: "l" then one column per k, 5-decimal fixed point.
std::string format_forward_table(const std::vector<PhaseShiftSet>& columns);
nlohmann::json forward_json(const RunConfig& cfg, const std::vector<PhaseShiftSet>& columns);

struct InversionRun {
  double k = 0.0;
  double h = 0.0;
  PhaseShiftSet data;  // noisy shifts actually fitted
  StabilityReport report;
};

// Exact shifts of cfg.potential at k, perturbed with noise level h drawn from
// the "noise" sub-stream of cfg.irrs.seed (identical for any solver settings).
PhaseShiftSet synthesize_data(const RunConfig& cfg, double k, double h);

// Seed handed to irrs for one (k, h) run of a campaign.
std::uint64_t run_seed(std::uint64_t master, double k, double h);

InversionRun run_inversion(const RunConfig& cfg, double k, double h);

// Stability indices in the layout k | iteration | D per noise level.
std::string format_stability_table(const std::vector<InversionRun>& runs);
// Best recovered potential and minimizing set per run.
std::string format_recovered(const std::vector<InversionRun>& runs);
// Full machine-readable campaign report. `metadata` holds anything run
// specific (timestamps); everything else is a pure function of the config.
nlohmann::json inversion_json(const RunConfig& cfg, const std::vector<InversionRun>& runs,
                              const nlohmann::json& metadata = nlohmann::json::object());

// 0 stable, 2 unstable, 3 exhausted; a campaign reports its worst run.
int exit_code(Verdict v);
int exit_code(const std::vector<InversionRun>& runs);

// Writes via a temporary file and rename.
void write_file_atomically(const std::filesystem::path& path, const std::string& content);

}  // namespace phaseinv
