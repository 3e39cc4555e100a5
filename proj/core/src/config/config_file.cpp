#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ddc/config.hpp"

namespace ddc::config {

ConfigError::ConfigError(const std::string& message, int line_number)
    : std::runtime_error(line_number > 0 ? "line " +
                                               std::to_string(line_number) +
                                               ": " + message
                                         : message),
      line(line_number) {}

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) {
    ++begin;
  }
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) {
    --end;
  }
  return s.substr(begin, end - begin);
}

struct Entry {
  std::string value;
  int line = 0;
};
using Entries = std::map<std::string, Entry>;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"domain", {"example"}},
      {"physics",
       {"gamma", "alpha", "conductivity", "viscosity", "nu1", "nu2",
        "kappa"}},
      {"discretization", {"k", "levels"}},
      {"solver",
       {"picard", "lagged", "tolerance", "max_outer", "dt", "steps"}},
      {"output", {"directory", "vtk", "jobs"}},
  };
  return keys;
}

Entries parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'", 0);
  }
  Entries entries;
  std::string section;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("malformed section header '" + line + "'", lineno);
      }
      section = trim(line.substr(1, line.size() - 2));
      if (known_keys().find(section) == known_keys().end()) {
        throw ConfigError("unknown section [" + section + "]", lineno);
      }
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected 'key = value', got '" + line + "'", lineno);
    }
    if (section.empty()) {
      throw ConfigError("key outside any [section]", lineno);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto& allowed = known_keys().at(section);
    if (allowed.find(key) == allowed.end()) {
      throw ConfigError("unknown key '" + key + "' in [" + section + "]",
                        lineno);
    }
    const std::string full = section + "." + key;
    if (entries.count(full)) {
      throw ConfigError("duplicate key '" + full + "'", lineno);
    }
    if (value.empty()) {
      throw ConfigError("empty value for '" + full + "'", lineno);
    }
    entries[full] = {value, lineno};
  }
  return entries;
}

const Entry* find(const Entries& entries, const std::string& key) {
  const auto it = entries.find(key);
  return it == entries.end() ? nullptr : &it->second;
}

double to_double(const Entry& e, const std::string& key) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(e.value, &used);
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "' needs a number, got '" + e.value + "'",
                      e.line);
  }
  if (trim(e.value.substr(used)).size() != 0) {
    throw ConfigError("'" + key + "' needs a number, got '" + e.value + "'",
                      e.line);
  }
  return v;
}

int to_int(const Entry& e, const std::string& key) {
  const double v = to_double(e, key);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v) {
    throw ConfigError("'" + key + "' needs an integer, got '" + e.value + "'",
                      e.line);
  }
  return i;
}

bool to_bool(const Entry& e, const std::string& key) {
  if (e.value == "true" || e.value == "on" || e.value == "1") return true;
  if (e.value == "false" || e.value == "off" || e.value == "0") return false;
  throw ConfigError("'" + key + "' needs true/false, got '" + e.value + "'",
                    e.line);
}

std::vector<double> to_list(const Entry& e, const std::string& key,
                            std::size_t count) {
  std::vector<double> values;
  std::stringstream stream(e.value);
  std::string item;
  while (std::getline(stream, item, ',')) {
    values.push_back(to_double(Entry{trim(item), e.line}, key));
  }
  if (values.size() != count) {
    throw ConfigError("'" + key + "' needs " + std::to_string(count) +
                          " comma-separated numbers, got '" + e.value + "'",
                      e.line);
  }
  return values;
}

}  // namespace

FileConfig load_config(const std::string& path) {
  const Entries entries = parse_file(path);

  const Entry* example_entry = find(entries, "domain.example");
  if (!example_entry) {
    throw ConfigError("missing required key 'domain.example'", 0);
  }
  const int id = to_int(*example_entry, "domain.example");
  if (id < 1 || id > 3) {
    throw ConfigError("'domain.example' must be 1, 2, or 3", example_entry->line);
  }

  PhysicsOverrides overrides;
  if (const Entry* e = find(entries, "physics.gamma")) {
    const double gamma = to_double(*e, "physics.gamma");
    if (gamma <= 0.0) {
      throw ConfigError("'physics.gamma' must be positive", e->line);
    }
    overrides.gamma = gamma;
  }
  if (const Entry* e = find(entries, "physics.alpha")) {
    const auto v = to_list(*e, "physics.alpha", 2);
    overrides.alpha = Vec2{v[0], v[1]};
  }
  if (const Entry* e = find(entries, "physics.conductivity")) {
    const auto v = to_list(*e, "physics.conductivity", 2);
    if (v[0] <= 0.0 || v[1] <= 0.0) {
      throw ConfigError("'physics.conductivity' entries must be positive",
                        e->line);
    }
    overrides.conductivity = Vec2{v[0], v[1]};
  }
  if (const Entry* e = find(entries, "physics.viscosity")) {
    if (id != 3) {
      throw ConfigError(
          "'physics.viscosity' is fixed by the manufactured data of "
          "examples 1 and 2",
          e->line);
    }
    try {
      viscosity(e->value);  // validate the registry name now
    } catch (const std::invalid_argument& err) {
      throw ConfigError(err.what(), e->line);
    }
    overrides.viscosity = e->value;
  }
  if (const Entry* e = find(entries, "physics.nu1")) {
    overrides.nu1 = to_double(*e, "physics.nu1");
  }
  if (const Entry* e = find(entries, "physics.nu2")) {
    overrides.nu2 = to_double(*e, "physics.nu2");
  }
  const Entry* kappa_entry = find(entries, "physics.kappa");
  if (kappa_entry) {
    const auto v = to_list(*kappa_entry, "physics.kappa", 3);
    if (v[0] <= 0.0 || v[1] <= 0.0 || v[2] <= 0.0) {
      throw ConfigError("'physics.kappa' weights must be positive",
                        kappa_entry->line);
    }
    overrides.kappas = Kappas{v[0], v[1], v[2]};
  }

  int k = id == 2 ? 1 : 0;
  if (const Entry* e = find(entries, "discretization.k")) {
    k = to_int(*e, "discretization.k");
    if (k < 0 || k > 2) {
      throw ConfigError("'discretization.k' must be 0, 1, or 2", e->line);
    }
  }

  FileConfig cfg;
  if (const Entry* e = find(entries, "discretization.levels")) {
    cfg.levels = to_int(*e, "discretization.levels");
    if (cfg.levels < 2) {
      throw ConfigError("'discretization.levels' must be at least 2",
                        e->line);
    }
  }
  if (const Entry* e = find(entries, "solver.picard")) {
    cfg.picard = to_bool(*e, "solver.picard");
  }
  if (const Entry* e = find(entries, "solver.lagged")) {
    cfg.lagged = to_bool(*e, "solver.lagged");
  }
  if (const Entry* e = find(entries, "solver.tolerance")) {
    cfg.outer_tol = to_double(*e, "solver.tolerance");
    if (cfg.outer_tol <= 0.0) {
      throw ConfigError("'solver.tolerance' must be positive", e->line);
    }
  }
  if (const Entry* e = find(entries, "solver.max_outer")) {
    cfg.max_outer = to_int(*e, "solver.max_outer");
    if (cfg.max_outer < 1) {
      throw ConfigError("'solver.max_outer' must be at least 1", e->line);
    }
  }
  if (const Entry* e = find(entries, "solver.dt")) {
    if (id != 3) {
      throw ConfigError("'solver.dt' applies only to example 3", e->line);
    }
    const double dt = to_double(*e, "solver.dt");
    if (dt <= 0.0) throw ConfigError("'solver.dt' must be positive", e->line);
    overrides.dt = dt;
  }
  if (const Entry* e = find(entries, "solver.steps")) {
    if (id != 3) {
      throw ConfigError("'solver.steps' applies only to example 3", e->line);
    }
    const int steps = to_int(*e, "solver.steps");
    if (steps < 1) {
      throw ConfigError("'solver.steps' must be at least 1", e->line);
    }
    overrides.steps = steps;
  }
  if (const Entry* e = find(entries, "output.directory")) {
    cfg.out_dir = e->value;
  }
  if (const Entry* e = find(entries, "output.vtk")) {
    cfg.vtk = to_bool(*e, "output.vtk");
  }
  if (const Entry* e = find(entries, "output.jobs")) {
    cfg.jobs = to_int(*e, "output.jobs");
    if (cfg.jobs < 1) {
      throw ConfigError("'output.jobs' must be at least 1", e->line);
    }
  }

  try {
    cfg.example = make_example(id, k, overrides);
  } catch (const std::invalid_argument& err) {
    throw ConfigError(err.what(), 0);
  }

  if (kappa_entry) {
    cfg.warnings = kappa_warnings(*overrides.kappas, cfg.example.nu1,
                                  cfg.example.nu2,
                                  cfg.example.problem.flow.gamma);
    if (cfg.example.transient) {
      cfg.warnings.push_back(
          "kappa2 is recomputed each time step from gamma + 1/dt; the "
          "configured value is ignored");
    }
  }
  return cfg;
}

}  // namespace ddc::config
