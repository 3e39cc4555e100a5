#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ddc/config.hpp"

namespace ddc::config {

namespace {

std::vector<double> parse_params(const std::string& spec, std::size_t count,
                                 const std::string& name) {
  std::vector<double> values;
  std::stringstream stream(spec);
  std::string item;
  while (std::getline(stream, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("viscosity '" + name +
                                  "': bad parameter '" + item + "'");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(
                                     item[used]))) {
      ++used;
    }
    if (used != item.size()) {
      throw std::invalid_argument("viscosity '" + name +
                                  "': bad parameter '" + item + "'");
    }
    values.push_back(v);
  }
  if (values.size() != count) {
    throw std::invalid_argument("viscosity '" + name + "': expected " +
                                std::to_string(count) + " parameter(s)");
  }
  return values;
}

}  // namespace

std::function<double(Vec2, Vec2)> viscosity(const std::string& name) {
  const std::size_t colon = name.find(':');
  const std::string family = name.substr(0, colon);
  const std::string params =
      colon == std::string::npos ? std::string{} : name.substr(colon + 1);

  if (family == "constant") {
    const double v = parse_params(params, 1, name)[0];
    if (v <= 0.0) {
      throw std::invalid_argument("viscosity '" + name +
                                  "': value must be positive");
    }
    return [v](Vec2, Vec2) { return v; };
  }
  if (family == "rational") {
    if (!params.empty()) {
      throw std::invalid_argument("viscosity 'rational' takes no parameters");
    }
    return [](Vec2 x, Vec2) { return 1.0 / (x.x * x.x + x.y * x.y + 1.0); };
  }
  if (family == "exponential") {
    if (!params.empty()) {
      throw std::invalid_argument(
          "viscosity 'exponential' takes no parameters");
    }
    return [](Vec2 x, Vec2) { return 1.0 + std::exp(-x.x * x.x); };
  }
  if (family == "affine_fields") {
    const std::vector<double> abc = parse_params(params, 3, name);
    return [abc](Vec2, Vec2 phi) {
      return abc[0] + abc[1] * phi.x + abc[2] * phi.y;
    };
  }
  throw std::invalid_argument("unknown viscosity family: '" + name + "'");
}

Kappas default_kappas(double nu1, double nu2, double gamma) {
  return {0.5 * nu1, 1.0 / gamma, nu1 / (2.0 * nu2 * nu2)};
}

std::vector<std::string> kappa_warnings(const Kappas& k, double nu1,
                                        double nu2, double gamma) {
  std::vector<std::string> warnings;
  const auto add = [&warnings](const std::string& which, double value,
                               double upper) {
    warnings.push_back(which + " = " + std::to_string(value) +
                       " lies outside the coercivity range (0, " +
                       std::to_string(upper) +
                       "); the scheme may lose stability");
  };
  const double k3_upper = 2.0 * nu1 / (nu2 * nu2);
  if (k.k3 <= 0.0 || k.k3 >= k3_upper) add("kappa3", k.k3, k3_upper);
  const double k2_upper = 4.0 / gamma;
  if (k.k2 <= 0.0 || k.k2 >= k2_upper) add("kappa2", k.k2, k2_upper);
  const double k1_upper = 2.0 * (2.0 * nu1 - k.k3 * nu2 * nu2);
  if (k.k1 <= 0.0 || k.k1 >= k1_upper) add("kappa1", k.k1, k1_upper);
  return warnings;
}

}  // namespace ddc::config
