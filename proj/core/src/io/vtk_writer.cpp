#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ddc/io.hpp"
#include "ddc/types.hpp"

namespace ddc::io {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

void write_vtk(const std::string& path, const assembly::FlowSystem& flow,
               const assembly::TransportSystem& transport,
               const solver::CoupledState& state) {
  const mesh::Mesh& m = flow.mesh();
  const int nv = m.num_vertices();
  const int nt = m.num_triangles();

  // Vertex samples of the continuous fields: the reference coordinates of
  // local vertex 0, 1, 2 are (0,0), (1,0), (0,1); shared vertices receive
  // the same value from every incident triangle.
  std::vector<Vec2> velocity(nv, Vec2{0.0, 0.0});
  std::vector<Vec2> fields(nv, Vec2{0.0, 0.0});
  constexpr double kRef[3][2] = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  for (int t = 0; t < nt; ++t) {
    for (int lv = 0; lv < 3; ++lv) {
      const int v = m.triangle(t).v[lv];
      const double xi = kRef[lv][0];
      const double eta = kRef[lv][1];
      velocity[v] = flow.velocity_value(state.flow, t, xi, eta);
      fields[v] = transport.value(state.transport, t, xi, eta);
    }
  }

  const solver::PressureField pressure =
      solver::recover_pressure(flow, state.flow);

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write VTK file '" + path + "'");
  }

  out << "# vtk DataFile Version 3.0\n"
         "coupled flow and transport snapshot\n"
         "ASCII\n"
         "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << nv << " double\n";
  for (int v = 0; v < nv; ++v) {
    const Vec2 x = m.vertex(v);
    out << num(x.x) << " " << num(x.y) << " 0\n";
  }
  out << "CELLS " << nt << " " << 4 * nt << "\n";
  for (int t = 0; t < nt; ++t) {
    const auto& tri = m.triangle(t);
    out << "3 " << tri.v[0] << " " << tri.v[1] << " " << tri.v[2] << "\n";
  }
  out << "CELL_TYPES " << nt << "\n";
  for (int t = 0; t < nt; ++t) out << "5\n";

  out << "POINT_DATA " << nv << "\n";
  out << "VECTORS velocity double\n";
  for (int v = 0; v < nv; ++v) {
    out << num(velocity[v].x) << " " << num(velocity[v].y) << " 0\n";
  }
  out << "SCALARS phi1 double 1\nLOOKUP_TABLE default\n";
  for (int v = 0; v < nv; ++v) out << num(fields[v].x) << "\n";
  out << "SCALARS phi2 double 1\nLOOKUP_TABLE default\n";
  for (int v = 0; v < nv; ++v) out << num(fields[v].y) << "\n";

  out << "CELL_DATA " << nt << "\n";
  out << "SCALARS pressure double 1\nLOOKUP_TABLE default\n";
  const double third = 1.0 / 3.0;
  for (int t = 0; t < nt; ++t) {
    const Vec2 x = m.map_to_physical(t, third, third);
    out << num(pressure.value(t, third, third, x)) << "\n";
  }
  if (!out) {
    throw std::runtime_error("error while writing VTK file '" + path + "'");
  }
}

}  // namespace ddc::io
