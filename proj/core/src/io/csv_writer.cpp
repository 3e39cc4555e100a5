#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "ddc/io.hpp"

namespace ddc::io {

namespace {

std::string compact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string precise(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string format_table(int k, const std::vector<verify::StudyRow>& rows,
                         bool full) {
  const auto err = [full](double v) { return full ? precise(v) : compact(v); };
  const auto rate = [full](double v) { return full ? precise(v) : fixed2(v); };

  std::string out = "k,h,N,e_t,r_t,e_sig,r_sig,e_u,r_u,e_phi,r_phi,e_p,r_p\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const verify::StudyRow& row = rows[i];
    const bool first = i == 0;
    const auto cell = [&](double e, double r) {
      return err(e) + "," + (first ? std::string{} : rate(r));
    };
    out += std::to_string(k) + "," + err(row.h) + "," +
           std::to_string(row.unknowns) + "," +
           cell(row.errors.strain, row.rates.strain) + "," +
           cell(row.errors.stress, row.rates.stress) + "," +
           cell(row.errors.velocity, row.rates.velocity) + "," +
           cell(row.errors.transport, row.rates.transport) + "," +
           cell(row.errors.pressure, row.rates.pressure) + "\n";
  }
  return out;
}

void write_table(const std::string& path, int k,
                 const std::vector<verify::StudyRow>& rows, bool full) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write table file '" + path + "'");
  }
  out << format_table(k, rows, full);
  if (!out) {
    throw std::runtime_error("error while writing table file '" + path + "'");
  }
}

}  // namespace ddc::io
