// phaseinv: forward phase-shift tables and stability-index inversions.
//
//   phaseinv forward --config run.cfg --out results/
//   phaseinv invert  --config run.cfg --seed 7 --workers 8 --out results/
//
// Exit codes: 0 stable, 2 unstable, 3 exhausted (worst run of a campaign),
// 1 error.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "phaseinv/errors.hpp"
#include "phaseinv/reports.hpp"

namespace fs = std::filesystem;
using namespace phaseinv;

namespace {

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::string> output_dir;
};

RunConfig load(const Overrides& o, Mode mode) {
  RunConfig cfg = o.config_path.empty() ? parse_config_text("") : parse_config(o.config_path);
  cfg.mode = mode;
  if (o.seed) cfg.irrs.seed = *o.seed;
  if (o.workers) cfg.irrs.workers = *o.workers;
  if (o.output_dir) cfg.output_dir = *o.output_dir;
  return cfg;
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

int run_forward(const RunConfig& cfg) {
  const auto columns = forward_tables(cfg);
  fs::create_directories(cfg.output_dir);
  const fs::path dir = cfg.output_dir;
  write_file_atomically(dir / "phase_shifts.tsv", format_forward_table(columns));
  write_file_atomically(dir / "phase_shifts.json", forward_json(cfg, columns).dump(2) + "\n");
  std::cout << format_forward_table(columns);
  return 0;
}

int run_invert(const RunConfig& cfg) {
  std::vector<InversionRun> runs;
  for (double k : cfg.k_values) {
    for (double h : cfg.noise_levels) {
      std::cerr << "invert: k=" << k << " h=" << h << " ..." << std::flush;
      runs.push_back(run_inversion(cfg, k, h));
      const auto& rep = runs.back().report;
      std::cerr << " " << to_string(rep.verdict) << " after " << rep.iterations.size()
                << " iteration(s), D=" << rep.iterations.back().index << "\n";
    }
  }
  fs::create_directories(cfg.output_dir);
  const fs::path dir = cfg.output_dir;
  const nlohmann::json metadata = {{"generated_at", timestamp()},
                                     {"workers", cfg.irrs.workers},
                                     {"output_dir", cfg.output_dir}};
  write_file_atomically(dir / "stability_indices.tsv", format_stability_table(runs));
  write_file_atomically(dir / "recovered.tsv", format_recovered(runs));
  write_file_atomically(dir / "report.json", inversion_json(cfg, runs, metadata).dump(2) + "\n");
  std::cout << format_stability_table(runs);
  return exit_code(runs);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixed-energy inverse scattering by the stability index method"};
  app.require_subcommand(1);

  Overrides o;
  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("-c,--config", o.config_path, "Run configuration (key = value)")
        ->check(CLI::ExistingFile);
    sub->add_option("-o,--out", o.output_dir, "Output directory");
  };
  auto* forward = app.add_subcommand("forward", "Tabulate phase shifts of the configured potential");
  add_common(forward);
  auto* invert = app.add_subcommand("invert", "Recover the potential from synthesized phase shifts");
  add_common(invert);
  invert->add_option("-s,--seed", o.seed, "Master seed override");
  invert->add_option("-w,--workers", o.workers, "OpenMP worker count (0 = default)")
      ->check(CLI::NonNegativeNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (forward->parsed()) return run_forward(load(o, Mode::kForward));
    return run_invert(load(o, Mode::kInvert));
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 1;
}
