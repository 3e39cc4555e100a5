#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "ddc/assembly.hpp"
#include "ddc/config.hpp"

namespace ddc::config {

namespace {

constexpr double kTol = 1e-9;

// Wire the manufactured sources and boundary data of a steady experiment
// from its exact solution and the (possibly overridden) coefficients.
void wire_manufactured(Example& ex) {
  const mms::ExactSolution exact = *ex.exact;
  const assembly::FlowCoefficients fc = ex.problem.flow;
  const assembly::TransportCoefficients tc = ex.problem.transport;

  ex.problem.flow_fields.source = assembly::analytic<Vec2>(
      [exact, fc](Vec2 x) { return mms::flow_source(exact, fc, x); });
  ex.problem.flow_fields.dirichlet = exact.u;

  ex.problem.transport_fields.source = assembly::analytic<Vec2>(
      [exact, tc](Vec2 x) { return mms::transport_source(exact, tc, x); });
  ex.problem.transport_fields.dirichlet = exact.phi;
  ex.problem.transport_fields.neumann = [exact, tc](Vec2 x, Vec2 n) {
    return mms::transport_flux(exact, tc, x, n);
  };
  ex.problem.transport_opts.dirichlet_tag = [](int tag) {
    return tag == kDirichletTag;
  };
}

Example example_one(int k) {
  Example ex;
  ex.id = 1;
  ex.order = k;
  ex.default_levels = k == 0 ? 4 : 3;
  ex.viscosity_name = "rational";
  ex.nu1 = 1.0;
  ex.nu2 = 2.0;
  ex.exact = mms::smooth_square();

  ex.problem.flow.gamma = 0.1;
  ex.problem.flow.alpha = {0.5, 1.5};
  ex.problem.flow.gravity = {0.0, -1.0};
  ex.problem.transport.conductivity = {2.0, 2.0};

  // Unit square; the transported fields are prescribed on the horizontal
  // sides and leave flux data on the vertical ones.
  ex.mesh_for_level = [](int level) {
    mesh::Mesh m = mesh::Mesh::unit_square_crisscross(8 << level);
    m.tag_boundary([](Vec2 x) {
      const bool horizontal = std::abs(x.y) < kTol || std::abs(x.y - 1.0) < kTol;
      return horizontal ? kDirichletTag : kNeumannTag;
    });
    return m;
  };
  return ex;
}

Example example_two(int k) {
  Example ex;
  ex.id = 2;
  ex.order = k;
  ex.default_levels = 4;
  ex.viscosity_name = "exponential";
  ex.nu1 = 1.0;
  ex.nu2 = 2.0;
  ex.exact = mms::singular_lshape();

  ex.problem.flow.gamma = 1e-3;
  ex.problem.flow.alpha = {1.0, 0.5};
  ex.problem.flow.gravity = {0.0, -1.0};
  ex.problem.transport.conductivity = {1.0, 2.0};

  // L-shaped domain; flux data on the two edges meeting at the re-entrant
  // corner, prescribed values on the remaining boundary.
  ex.mesh_for_level = [](int level) {
    mesh::Mesh m = mesh::Mesh::l_shape_crisscross(4 << level);
    m.tag_boundary([](Vec2 x) {
      const bool reentrant =
          (std::abs(x.y) < kTol && x.x > -kTol && x.x < 1.0 + kTol) ||
          (std::abs(x.x) < kTol && x.y > -kTol && x.y < 1.0 + kTol);
      return reentrant ? kNeumannTag : kDirichletTag;
    });
    return m;
  };
  return ex;
}

Example example_three(int k) {
  Example ex;
  ex.id = 3;
  ex.order = k;
  ex.transient = true;
  ex.dt = 0.02;
  ex.steps = 25;
  ex.default_levels = 3;
  ex.viscosity_name = "constant:0.01";
  ex.nu1 = 0.01;
  ex.nu2 = 0.01;

  ex.problem.flow.gamma = 1e-3;
  ex.problem.flow.alpha = {1.0, 10.0};
  ex.problem.flow.gravity = {0.0, -1.0};
  ex.problem.transport.conductivity = {1.0, 0.1};

  // No volume sources and no-slip velocity; the transported fields are
  // driven to opposite states on the vertical sides and insulated on the
  // horizontal ones.
  ex.problem.transport_fields.dirichlet = [](Vec2 x) {
    return x.x < 0.5 ? Vec2{1.0, 1.0} : Vec2{-1.0, -1.0};
  };
  ex.problem.transport_opts.dirichlet_tag = [](int tag) {
    return tag == kDirichletTag;
  };

  ex.initial_velocity = mms::transient_initial_velocity();
  ex.initial_transport = mms::transient_initial_transport();

  // Level 0 is a coarse criss-cross grid; deeper levels refine uniformly
  // so every level nests into the next (the self-convergence study
  // evaluates a finer reference solution on coarser quadrature points).
  ex.mesh_for_level = [](int level) {
    mesh::Mesh m = mesh::Mesh::unit_square_crisscross(4);
    m.tag_boundary([](Vec2 x) {
      const bool vertical = std::abs(x.x) < kTol || std::abs(x.x - 1.0) < kTol;
      return vertical ? kDirichletTag : kNeumannTag;
    });
    for (int i = 0; i < level; ++i) m = m.refine_red();
    return m;
  };
  return ex;
}

}  // namespace

Example make_example(int id, int k) {
  return make_example(id, k, PhysicsOverrides{});
}

Example make_example(int id, int k, const PhysicsOverrides& overrides) {
  if (id < 1 || id > 3) {
    throw std::invalid_argument("example id must be 1, 2, or 3 (got " +
                                std::to_string(id) + ")");
  }
  if (k < 0 || k > 2) {
    throw std::invalid_argument("polynomial order k must be 0, 1, or 2 (got " +
                                std::to_string(k) + ")");
  }

  Example ex = id == 1 ? example_one(k) : id == 2 ? example_two(k)
                                                  : example_three(k);

  if (overrides.viscosity) {
    if (!ex.transient) {
      throw std::invalid_argument(
          "the viscosity of examples 1 and 2 is fixed by their "
          "manufactured data");
    }
    ex.viscosity_name = *overrides.viscosity;
  }
  if (overrides.gamma) {
    if (*overrides.gamma <= 0.0) {
      throw std::invalid_argument("gamma must be positive");
    }
    ex.problem.flow.gamma = *overrides.gamma;
  }
  if (overrides.alpha) ex.problem.flow.alpha = *overrides.alpha;
  if (overrides.conductivity) {
    if (overrides.conductivity->x <= 0.0 || overrides.conductivity->y <= 0.0) {
      throw std::invalid_argument("conductivity entries must be positive");
    }
    ex.problem.transport.conductivity = *overrides.conductivity;
  }
  if (overrides.nu1) ex.nu1 = *overrides.nu1;
  if (overrides.nu2) ex.nu2 = *overrides.nu2;
  if (ex.nu1 <= 0.0 || ex.nu2 < ex.nu1) {
    throw std::invalid_argument("viscosity bounds need 0 < nu1 <= nu2");
  }
  if (overrides.dt || overrides.steps) {
    if (!ex.transient) {
      throw std::invalid_argument(
          "dt and steps apply only to the transient example 3");
    }
    if (overrides.dt) ex.dt = *overrides.dt;
    if (overrides.steps) ex.steps = *overrides.steps;
    if (ex.dt <= 0.0) throw std::invalid_argument("dt must be positive");
    if (ex.steps < 1) throw std::invalid_argument("steps must be at least 1");
  }

  // The scheme's viscosity closure: the steady experiments use the family
  // their manufactured data were derived with.
  if (ex.transient) {
    ex.problem.flow.nu = viscosity(ex.viscosity_name);
  } else {
    const mms::ExactSolution& exact = *ex.exact;
    ex.problem.flow.nu = [f = exact.nu](Vec2 x, Vec2) { return f(x); };
  }

  const Kappas kappas =
      overrides.kappas
          ? *overrides.kappas
          : default_kappas(ex.nu1, ex.nu2, ex.problem.flow.gamma);
  if (kappas.k1 <= 0.0 || kappas.k2 <= 0.0 || kappas.k3 <= 0.0) {
    throw std::invalid_argument("stabilization weights must be positive");
  }
  ex.problem.flow.kappa1 = kappas.k1;
  ex.problem.flow.kappa2 = kappas.k2;
  ex.problem.flow.kappa3 = kappas.k3;

  if (!ex.transient) wire_manufactured(ex);
  return ex;
}

}  // namespace ddc::config
