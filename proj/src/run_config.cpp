#include "phaseinv/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "phaseinv/errors.hpp"

namespace phaseinv {

RunConfig::RunConfig() : potential(preset_potential("q3")) {}

LayeredPotential preset_potential(std::string_view name) {
  if (name == "q1") return LayeredPotential({8.0}, {-2.0 / 3.0});
  if (name == "q2") return LayeredPotential({8.0}, {-4.0});
  if (name == "q3") return LayeredPotential({8.0}, {-10.0});
  if (name == "zero") return {};
  throw ConfigError("unknown potential preset '" + std::string(name) + "'");
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) return parts;
    start = pos + 1;
  }
}

double to_double(const std::string& s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw std::invalid_argument("'" + s + "' is not a finite number");
  return v;
}

long long to_integer(const std::string& s) {
  long long v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw std::invalid_argument("'" + s + "' is not an integer");
  return v;
}

std::uint64_t to_unsigned(const std::string& s) {
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw std::invalid_argument("'" + s + "' is not a non-negative integer");
  return v;
}

std::vector<double> to_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& part : split(s, ',')) out.push_back(to_double(part));
  return out;
}

// "8:-10, 10:0" -> outer radius : value pairs.
LayeredPotential to_layers(const std::string& s) {
  std::vector<double> r, q;
  for (const auto& part : split(s, ',')) {
    const auto rv = split(part, ':');
    if (rv.size() != 2) throw std::invalid_argument("layer '" + part + "' is not radius:value");
    r.push_back(to_double(rv[0]));
    q.push_back(to_double(rv[1]));
  }
  try {
    return LayeredPotential(std::move(r), std::move(q));
  } catch (const DomainError& e) {
    throw std::invalid_argument(e.what());
  }
}

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string format_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_number(v[i]);
  return s;
}

struct Entry {
  int line;
  std::string value;
};

}  // namespace

RunConfig parse_config_text(std::string_view text, std::string_view source) {
  RunConfig cfg;
  std::vector<std::string> errors;
  std::map<std::string, Entry> entries;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto content = trim(line);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    std::ostringstream where;
    where << source << ":" << line_no << ": ";
    if (eq == std::string::npos) {
      errors.push_back(where.str() + "expected 'key = value'");
      continue;
    }
    const auto key = trim(std::string_view(content).substr(0, eq));
    const auto value = trim(std::string_view(content).substr(eq + 1));
    if (entries.contains(key)) {
      errors.push_back(where.str() + "duplicate key '" + key + "' (first set on line " +
                       std::to_string(entries[key].line) + ")");
      continue;
    }
    entries[key] = {line_no, value};
  }

  auto& p = cfg.irrs;
  auto& box = cfg.box;
  const std::map<std::string, std::function<void(const std::string&)>> setters{
      {"mode",
       [&](const std::string& v) {
         if (v == "forward") cfg.mode = Mode::kForward;
         else if (v == "invert") cfg.mode = Mode::kInvert;
         else throw std::invalid_argument("mode must be 'forward' or 'invert'");
       }},
      {"potential",
       [&](const std::string& v) {
         if (v.find(':') != std::string::npos) {
           cfg.potential = to_layers(v);
           cfg.potential_name = "custom";
         } else {
           try {
             cfg.potential = preset_potential(v);
           } catch (const ConfigError& e) {
             throw std::invalid_argument(e.what());
           }
           cfg.potential_name = v;
         }
       }},
      {"k", [&](const std::string& v) { cfg.k_values = to_list(v); }},
      {"l_max", [&](const std::string& v) { cfg.l_max = static_cast<int>(to_integer(v)); }},
      {"noise", [&](const std::string& v) { cfg.noise_levels = to_list(v); }},
      {"M", [&](const std::string& v) { box.max_layers = static_cast<int>(to_integer(v)); }},
      {"R", [&](const std::string& v) { box.radius = to_double(v); }},
      {"q_low", [&](const std::string& v) { box.q_low = to_double(v); }},
      {"q_high", [&](const std::string& v) { box.q_high = to_double(v); }},
      {"L",
       [&](const std::string& v) {
         const auto n = to_integer(v);
         if (n < 1) throw std::invalid_argument("L must be >= 1");
         p.batch_size = static_cast<std::size_t>(n);
       }},
      {"gamma", [&](const std::string& v) { p.gamma = to_double(v); }},
      {"nu", [&](const std::string& v) { p.nu = to_double(v); }},
      {"epsilon", [&](const std::string& v) { p.epsilon = to_double(v); }},
      {"beta", [&](const std::string& v) { p.beta = to_double(v); }},
      {"j_max", [&](const std::string& v) { p.j_max = static_cast<int>(to_integer(v)); }},
      {"eps_r", [&](const std::string& v) { p.eps_r = to_double(v); }},
      {"seed", [&](const std::string& v) { p.seed = to_unsigned(v); }},
      {"workers",
       [&](const std::string& v) {
         const auto n = to_integer(v);
         if (n < 0) throw std::invalid_argument("workers must be >= 0");
         p.workers = static_cast<int>(n);
       }},
      {"merge_policy",
       [&](const std::string& v) {
         if (v == "accumulated") p.merge_policy = MergePolicy::kAccumulated;
         else if (v == "previous_iteration") p.merge_policy = MergePolicy::kPreviousIteration;
         else throw std::invalid_argument("merge_policy must be 'accumulated' or 'previous_iteration'");
       }},
      {"line_tolerance", [&](const std::string& v) { p.local.line.tolerance = to_double(v); }},
      {"line_initial_step", [&](const std::string& v) { p.local.line.initial_step = to_double(v); }},
      {"line_max_evaluations",
       [&](const std::string& v) { p.local.line.max_evaluations = static_cast<int>(to_integer(v)); }},
      {"powell_ftol", [&](const std::string& v) { p.local.ftol = to_double(v); }},
      {"powell_max_cycles",
       [&](const std::string& v) { p.local.max_cycles = static_cast<int>(to_integer(v)); }},
      {"output_dir", [&](const std::string& v) { cfg.output_dir = v; }},
  };

  auto at = [&](const std::string& key) {
    std::ostringstream os;
    os << source << ":" << entries.at(key).line << ": ";
    return os.str();
  };
  auto where = [&](const std::string& key) {
    return entries.contains(key) ? at(key) : std::string(source) + ": ";
  };

  for (const auto& [key, entry] : entries) {
    const auto it = setters.find(key);
    if (it == setters.end()) {
      errors.push_back(at(key) + "unknown key '" + key + "'");
      continue;
    }
    try {
      it->second(entry.value);
    } catch (const std::invalid_argument& e) {
      errors.push_back(at(key) + key + ": " + e.what());
    }
  }

  // Invariants, each attributed to the line that set the offending key.
  if (!(p.gamma > 0.0 && p.gamma < 1.0)) errors.push_back(where("gamma") + "gamma must satisfy 0 < gamma < 1");
  if (!(p.nu > 0.0 && p.nu < 1.0)) errors.push_back(where("nu") + "nu must satisfy 0 < nu < 1");
  if (!(p.beta > 1.0)) errors.push_back(where("beta") + "beta must exceed 1");
  if (!(p.epsilon > 0.0)) errors.push_back(where("epsilon") + "epsilon must be positive");
  if (p.j_max < 1) errors.push_back(where("j_max") + "j_max must be >= 1");
  if (!(p.eps_r > 0.0)) errors.push_back(where("eps_r") + "eps_r must be positive");
  if (p.gamma > 0.0 && p.gamma < 1.0 && p.reduced_count() < 1)
    errors.push_back(where("gamma") + "gamma * L must be >= 1");
  if (p.nu > 0.0 && p.nu < 1.0 && p.gamma > 0.0 && p.gamma < 1.0 && p.reduced_count() >= 1 &&
      p.minimizing_count() < 1)
    errors.push_back(where("nu") + "nu * gamma * L must be >= 1");
  try {
    p.local.line.validate();
  } catch (const DomainError& e) {
    errors.push_back(where("line_tolerance") + e.what());
  }
  if (p.local.max_cycles < 1) errors.push_back(where("powell_max_cycles") + "powell_max_cycles must be >= 1");
  if (!(p.local.ftol > 0.0)) errors.push_back(where("powell_ftol") + "powell_ftol must be positive");
  if (box.max_layers < 1) errors.push_back(where("M") + "M must be >= 1");
  if (!(box.radius > 0.0)) errors.push_back(where("R") + "R must be positive");
  if (!(box.q_low <= box.q_high)) errors.push_back(where("q_low") + "q_low must not exceed q_high");
  if (cfg.k_values.empty()) errors.push_back(where("k") + "at least one k is required");
  for (double k : cfg.k_values)
    if (!(k > 0.0)) errors.push_back(where("k") + "every k must be positive");
  if (cfg.l_max < 0) errors.push_back(where("l_max") + "l_max must be >= 0");
  if (cfg.noise_levels.empty()) errors.push_back(where("noise") + "at least one noise level is required");
  for (double h : cfg.noise_levels)
    if (!(h >= 0.0)) errors.push_back(where("noise") + "noise levels must be >= 0");
  if (cfg.potential.support_radius() > box.radius)
    errors.push_back(where("potential") + "potential support exceeds R");
  if (cfg.output_dir.empty()) errors.push_back(where("output_dir") + "output_dir must not be empty");

  if (!errors.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw ConfigError(msg);
  }
  return cfg;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str(), path.string());
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream os;
  const auto& p = c.irrs;
  os << "mode = " << (c.mode == Mode::kForward ? "forward" : "invert") << "\n";
  if (c.potential_name == "custom") {
    os << "potential = ";
    const auto& r = c.potential.breakpoints();
    const auto& q = c.potential.values();
    for (std::size_t i = 0; i < r.size(); ++i)
      os << (i ? ", " : "") << format_number(r[i]) << ":" << format_number(q[i]);
    os << "\n";
  } else {
    os << "potential = " << c.potential_name << "\n";
  }
  os << "k = " << format_list(c.k_values) << "\n"
     << "l_max = " << c.l_max << "\n"
     << "noise = " << format_list(c.noise_levels) << "\n"
     << "M = " << c.box.max_layers << "\n"
     << "R = " << format_number(c.box.radius) << "\n"
     << "q_low = " << format_number(c.box.q_low) << "\n"
     << "q_high = " << format_number(c.box.q_high) << "\n"
     << "L = " << p.batch_size << "\n"
     << "gamma = " << format_number(p.gamma) << "\n"
     << "nu = " << format_number(p.nu) << "\n"
     << "epsilon = " << format_number(p.epsilon) << "\n"
     << "beta = " << format_number(p.beta) << "\n"
     << "j_max = " << p.j_max << "\n"
     << "eps_r = " << format_number(p.eps_r) << "\n"
     << "seed = " << p.seed << "\n"
     << "workers = " << p.workers << "\n"
     << "merge_policy = " << to_string(p.merge_policy) << "\n"
     << "line_tolerance = " << format_number(p.local.line.tolerance) << "\n"
     << "line_initial_step = " << format_number(p.local.line.initial_step) << "\n"
     << "line_max_evaluations = " << p.local.line.max_evaluations << "\n"
     << "powell_ftol = " << format_number(p.local.ftol) << "\n"
     << "powell_max_cycles = " << p.local.max_cycles << "\n"
     << "output_dir = " << c.output_dir << "\n";
  return os.str();
}

}  // namespace phaseinv
