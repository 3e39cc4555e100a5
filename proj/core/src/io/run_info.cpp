#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "ddc/io.hpp"

namespace ddc::io {

void write_run_info(const std::string& path, const RunInfo& info) {
  using json = nlohmann::ordered_json;

  json doc;
  doc["command"] = info.command;
  doc["example"] = info.example;
  doc["k"] = info.k;
  doc["levels"] = info.levels;
  doc["transient"] = info.transient;
  if (info.transient) {
    doc["dt"] = info.dt;
    doc["steps"] = info.steps;
  }
  doc["physics"] = {
      {"gamma", info.gamma},
      {"alpha", {info.alpha.x, info.alpha.y}},
      {"conductivity", {info.conductivity.x, info.conductivity.y}},
      {"viscosity", info.viscosity},
      {"nu1", info.nu1},
      {"nu2", info.nu2},
  };
  doc["stabilization"] = {
      {"kappa1", info.kappas.k1},
      {"kappa2", info.kappas.k2},
      {"kappa3", info.kappas.k3},
  };
  doc["solver"] = {
      {"linearization", info.picard ? "one-sided" : "two-sided"},
      {"lagged_advection", info.lagged},
      {"tolerance", info.outer_tol},
      {"max_outer", info.max_outer},
      {"jobs", info.jobs},
  };
  doc["vtk"] = info.vtk;
  doc["converged"] = info.converged;

  json levels = json::array();
  for (const verify::StudyRow& row : info.rows) {
    json level;
    level["h"] = row.h;
    level["unknowns"] = row.unknowns;
    level["outer_iterations"] = row.outer_iterations;
    level["flow_iterations"] = row.flow_iterations;
    level["last_increment"] = row.last_increment;
    level["flow_residual"] = row.flow_residual;
    level["transport_residual"] = row.transport_residual;
    level["pressure_integral"] = row.pressure_integral;
    level["pressure_norm"] = row.pressure_norm;
    level["errors"] = {
        {"t", row.errors.strain},       {"sig", row.errors.stress},
        {"u", row.errors.velocity},     {"phi", row.errors.transport},
        {"p", row.errors.pressure},
    };
    level["rates"] = {
        {"t", row.rates.strain},       {"sig", row.rates.stress},
        {"u", row.rates.velocity},     {"phi", row.rates.transport},
        {"p", row.rates.pressure},
    };
    levels.push_back(level);
  }
  doc["levels_detail"] = levels;

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write run summary '" + path + "'");
  }
  out << doc.dump(2) << "\n";
  if (!out) {
    throw std::runtime_error("error while writing run summary '" + path +
                             "'");
  }
}

}  // namespace ddc::io
