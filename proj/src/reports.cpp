#include "phaseinv/reports.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "phaseinv/errors.hpp"

namespace phaseinv {
namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s(buf);
  // Rounded-to-zero negatives print as 0.
  if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::uint64_t bits_of(double v) {
  std::uint64_t b;
  std::memcpy(&b, &v, sizeof b);
  return b;
}

nlohmann::json config_json(const Configuration& c) {
  return {{"radii", c.radii}, {"values", c.values}};
}

nlohmann::json potential_json(const LayeredPotential& p) {
  return {{"breakpoints", p.breakpoints()}, {"values", p.values()}};
}

nlohmann::json record_json(const MinimizerRecord& r) {
  return {{"config", config_json(r.config)},
          {"potential", potential_json(config_to_potential(r.config))},
          {"phi", r.phi},
          {"iteration", r.iteration},
          {"index", r.index}};
}

}  // namespace

std::vector<PhaseShiftSet> forward_tables(const RunConfig& cfg) {
  std::vector<PhaseShiftSet> columns;
  for (double k : cfg.k_values) columns.push_back(phase_shifts(cfg.potential, k, cfg.l_max));
  return columns;
}

std::string format_forward_table(const std::vector<PhaseShiftSet>& columns) {
  std::ostringstream os;
  os << "l";
  for (const auto& c : columns) os << "\tk=" << fixed(c.k, 2);
  os << "\n";
  const std::size_t rows = columns.empty() ? 0 : columns.front().shifts.size();
  for (std::size_t l = 0; l < rows; ++l) {
    os << l;
    for (const auto& c : columns) os << "\t" << fixed(c.shifts[l], 5);
    os << "\n";
  }
  return os.str();
}

nlohmann::json forward_json(const RunConfig& cfg, const std::vector<PhaseShiftSet>& columns) {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = "forward";
  j["potential"] = {{"name", cfg.potential_name}, {"layers", potential_json(cfg.potential)}};
  j["l_max"] = cfg.l_max;
  j["columns"] = nlohmann::json::array();
  for (const auto& c : columns) j["columns"].push_back({{"k", c.k}, {"shifts", c.shifts}});
  return j;
}

PhaseShiftSet synthesize_data(const RunConfig& cfg, double k, double h) {
  const auto exact = phase_shifts(cfg.potential, k, cfg.l_max);
  auto stream = make_stream(cfg.irrs.seed, {stream_tag("noise"), bits_of(k), bits_of(h)});
  return add_noise(exact, h, stream);
}

std::uint64_t run_seed(std::uint64_t master, double k, double h) {
  auto stream = make_stream(master, {stream_tag("irrs"), bits_of(k), bits_of(h)});
  return stream();
}

InversionRun run_inversion(const RunConfig& cfg, double k, double h) {
  InversionRun run;
  run.k = k;
  run.h = h;
  run.data = synthesize_data(cfg, k, h);
  IrrsParams params = cfg.irrs;
  params.seed = run_seed(cfg.irrs.seed, k, h);
  run.report = irrs(run.data, cfg.box, params);
  return run;
}

std::string format_stability_table(const std::vector<InversionRun>& runs) {
  std::set<double> ks, hs;
  std::map<std::pair<double, double>, const InversionRun*> by_key;
  for (const auto& r : runs) {
    ks.insert(r.k);
    hs.insert(r.h);
    by_key[{r.k, r.h}] = &r;
  }
  std::ostringstream os;
  os << "k\titeration";
  for (double h : hs) os << "\th=" << fixed(h, 2);
  os << "\n";
  for (double k : ks) {
    std::size_t rows = 0;
    for (double h : hs)
      if (auto it = by_key.find({k, h}); it != by_key.end())
        rows = std::max(rows, it->second->report.iterations.size());
    for (std::size_t i = 0; i < rows; ++i) {
      os << fixed(k, 2) << "\t" << i + 1;
      for (double h : hs) {
        os << "\t";
        auto it = by_key.find({k, h});
        if (it != by_key.end() && i < it->second->report.iterations.size())
          os << fixed(it->second->report.iterations[i].index, 6);
      }
      os << "\n";
    }
  }
  return os.str();
}

std::string format_recovered(const std::vector<InversionRun>& runs) {
  std::ostringstream os;
  os << "k\th\tverdict\trank\tphi\tlayers (outer_radius:value)\n";
  for (const auto& r : runs) {
    const auto& set = r.report.minimizing_set;
    for (std::size_t i = 0; i < set.size(); ++i) {
      const auto p = config_to_potential(set[i].config);
      char phi_buf[32];
      std::snprintf(phi_buf, sizeof phi_buf, "%.7g", set[i].phi);
      os << fixed(r.k, 2) << "\t" << fixed(r.h, 2) << "\t" << to_string(r.report.verdict) << "\t"
         << i + 1 << "\t" << phi_buf << "\t";
      for (std::size_t m = 0; m < p.layers(); ++m)
        os << (m ? " " : "") << fixed(p.breakpoints()[m], 6) << ":" << fixed(p.values()[m], 6);
      if (p.empty()) os << "-";
      os << "\n";
    }
  }
  return os.str();
}

nlohmann::json inversion_json(const RunConfig& cfg, const std::vector<InversionRun>& runs,
                              const nlohmann::json& metadata) {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = "invert";
  j["metadata"] = metadata;
  j["seed"] = cfg.irrs.seed;
  // Worker count and output location do not affect results; they live in
  // metadata.
  RunConfig canonical = cfg;
  canonical.irrs.workers = RunConfig{}.irrs.workers;
  canonical.output_dir = RunConfig{}.output_dir;
  j["config"] = serialize_config(canonical);
  const auto& p = cfg.irrs;
  j["parameters"] = {{"L", p.batch_size},       {"gamma", p.gamma},
                     {"nu", p.nu},              {"epsilon", p.epsilon},
                     {"beta", p.beta},          {"j_max", p.j_max},
                     {"eps_r", p.eps_r},        {"M", cfg.box.max_layers},
                     {"R", cfg.box.radius},     {"q_low", cfg.box.q_low},
                     {"q_high", cfg.box.q_high}, {"l_max", cfg.l_max},
                     {"merge_policy", to_string(p.merge_policy)}};
  j["true_potential"] = {{"name", cfg.potential_name}, {"layers", potential_json(cfg.potential)}};
  j["runs"] = nlohmann::json::array();
  for (const auto& r : runs) {
    nlohmann::json run;
    run["k"] = r.k;
    run["h"] = r.h;
    run["run_seed"] = run_seed(cfg.irrs.seed, r.k, r.h);
    run["data"] = r.data.shifts;
    run["verdict"] = to_string(r.report.verdict);
    run["d_av"] = r.report.d_av;
    run["d_av_fallback"] = r.report.d_av_fallback;
    run["failed_starts"] = r.report.failed_starts;
    run["iterations"] = nlohmann::json::array();
    for (const auto& it : r.report.iterations)
      run["iterations"].push_back({{"iteration", it.iteration},
                                   {"D", it.index},
                                   {"best_phi", it.best_phi},
                                   {"worst_selected_phi", it.worst_selected_phi},
                                   {"failed_starts", it.failed_starts}});
    run["best"] = record_json(r.report.best);
    run["minimizing_set"] = nlohmann::json::array();
    for (const auto& rec : r.report.minimizing_set) run["minimizing_set"].push_back(record_json(rec));
    j["runs"].push_back(std::move(run));
  }
  return j;
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::kStable: return 0;
    case Verdict::kUnstable: return 2;
    case Verdict::kExhausted: return 3;
  }
  return 1;
}

int exit_code(const std::vector<InversionRun>& runs) {
  int code = 0;
  for (const auto& r : runs) code = std::max(code, exit_code(r.report.verdict));
  return code;
}

void write_file_atomically(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw std::runtime_error("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

}  // namespace phaseinv
