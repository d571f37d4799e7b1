#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "ttdvm/boundary.hpp"

using namespace ttdvm;
using Eigen::Vector3d;

namespace {

GasParameters argon() {
  GasParameters g;
  g.molecule_mass = 6.6335e-26;
  g.gas_constant = 208.13;
  g.mu_ref = 2.117e-5;
  g.t_ref = 273.0;
  g.omega = 0.734;
  return g;
}

/// Dense masked half-range balance: n_w such that the exact-node mass flux
/// through the face vanishes.
double dense_wall_density(const Dense3& f, const Dense3& wall_maxwell,
                          const Dense3& xin) {
  double out = 0.0, in = 0.0;
  for (int i = 0; i < f.n1(); ++i)
    for (int j = 0; j < f.n2(); ++j)
      for (int k = 0; k < f.n3(); ++k) {
        double x = xin(i, j, k);
        if (x > 0)
          out += x * f(i, j, k);
        else
          in += x * wall_maxwell(i, j, k);
      }
  return out / (-in);
}

}  // namespace

TEST_CASE("bc kind strings round trip") {
  for (auto name : {"wall", "sym-x", "sym-y", "sym-z", "in", "out"})
    CHECK(to_string(bc_kind_from_string(name)) == name);
  CHECK_THROWS_AS(bc_kind_from_string("periodic"), std::runtime_error);
}

TEST_CASE("wall ghost satisfies detailed balance at the wall temperature") {
  GasParameters gas = argon();
  const double t_wall = 500.0, n0 = 7e20;
  VelocityGrid grid(32, 4.8 * std::sqrt(2 * gas.gas_constant * t_wall));
  TtTensor f = maxwell_tt(n0, t_wall, Vector3d::Zero(), grid, gas);

  TtTensor ghost = wall_ghost(f, t_wall, grid, gas, Vector3d(1, 0, 0), 4);
  Macroparameters m = compute_macro(ghost, grid, gas);
  CHECK(m.number_density == doctest::Approx(n0).epsilon(1e-6));
  CHECK(m.temperature == doctest::Approx(t_wall).epsilon(1e-6));
}

TEST_CASE("wall ghost density matches the dense masked oracle") {
  GasParameters gas = argon();
  const double t_wall = 1000.0;
  VelocityGrid grid(32, 4.8 * std::sqrt(2 * gas.gas_constant * t_wall));
  // incoming state: drifting warm gas
  TtTensor f = maxwell_tt(5e20, 600.0, Vector3d(250, -80, 40), grid, gas);
  TtTensor mw = maxwell_tt(1.0, t_wall, Vector3d::Zero(), grid, gas);
  Dense3 df = f.to_full(), dmw = mw.to_full();

  SUBCASE("axis-aligned normal reproduces the oracle to 1e-10") {
    Vector3d n(1, 0, 0);
    double want = dense_wall_density(df, dmw, grid.dense_xi_normal(n));
    TtTensor ghost = wall_ghost(f, t_wall, grid, gas, n, 4);
    double got = compute_macro(ghost, grid, gas).number_density;
    double quad = compute_macro(mw.scaled(want), grid, gas).number_density;
    CHECK(got == doctest::Approx(quad).epsilon(1e-10));
  }

  SUBCASE("oblique normal stays within the estimate error bound") {
    Vector3d n = Vector3d(1, 1, 0).normalized();
    double want = dense_wall_density(df, dmw, grid.dense_xi_normal(n));
    TtTensor ghost = wall_ghost(f, t_wall, grid, gas, n, 4);
    double got_nw = compute_macro(ghost, grid, gas).number_density /
                    compute_macro(mw, grid, gas).number_density;
    CHECK(std::abs(got_nw - want) / want < 0.02);
  }
}

TEST_CASE("wall ghost impermeability residual vanishes for axis normals") {
  GasParameters gas = argon();
  const double t_wall = 800.0;
  VelocityGrid grid(24, 4.8 * std::sqrt(2 * gas.gas_constant * t_wall));
  TtTensor f = maxwell_tt(3e20, 400.0, Vector3d(150, 60, 0), grid, gas);
  Vector3d n(0, 1, 0);
  TtTensor ghost = wall_ghost(f, t_wall, grid, gas, n, 4);

  Dense3 df = f.to_full(), dg = ghost.to_full();
  Dense3 xin = grid.dense_xi_normal(n);
  double incoming = 0.0, total = 0.0;
  for (int i = 0; i < 24; ++i)
    for (int j = 0; j < 24; ++j)
      for (int k = 0; k < 24; ++k) {
        double x = xin(i, j, k);
        total += x > 0 ? x * df(i, j, k) : x * dg(i, j, k);
        if (x > 0) incoming += x * df(i, j, k);
      }
  CHECK(std::abs(total) <= 1e-10 * incoming);
}

TEST_CASE("wall ghost rejects states with no incoming flux") {
  GasParameters gas = argon();
  VelocityGrid grid(16, 1000.0);
  TtTensor zero = TtTensor::constant(16, 16, 16, 0.0);
  CHECK_THROWS_AS(wall_ghost(zero, 300.0, grid, gas, Vector3d(1, 0, 0), 4),
                  std::runtime_error);
}

TEST_CASE("symmetry ghost reflects one velocity axis exactly") {
  GasParameters gas = argon();
  VelocityGrid grid(16, 1200.0);
  TtTensor f = maxwell_tt(1e20, 300.0, Vector3d(200, -140, 90), grid, gas);

  TtTensor g = symmetry_ghost(f, 2);
  CHECK(g.ranks() == f.ranks());
  Macroparameters mf = compute_macro(f, grid, gas);
  Macroparameters mg = compute_macro(g, grid, gas);
  CHECK(mg.velocity(0) == doctest::Approx(mf.velocity(0)));
  CHECK(mg.velocity(1) == doctest::Approx(-mf.velocity(1)));
  CHECK(mg.velocity(2) == doctest::Approx(mf.velocity(2)));
  CHECK(mg.number_density == doctest::Approx(mf.number_density));
  CHECK(mg.temperature == doctest::Approx(mf.temperature));

  // involution, and even states are fixed points
  CHECK((symmetry_ghost(g, 2) - f).frobenius_norm() == 0.0);
  TtTensor even = maxwell_tt(1e20, 250.0, Vector3d(100, 0, 0), grid, gas);
  CHECK((symmetry_ghost(even, 3) - even).frobenius_norm() <
        1e-14 * even.frobenius_norm());
}

TEST_CASE("freestream ghost returns the prescribed Maxwellian") {
  GasParameters gas = argon();
  VelocityGrid grid(32, 2630.0 + 4.5 * std::sqrt(2 * gas.gas_constant * 200.0));
  auto bc = BoundaryCondition::freestream_in(2e23, 200.0,
                                             Vector3d(2630, 0, 0), grid, gas);
  const TtTensor& g = freestream_ghost(bc);
  CHECK(g.ranks() == std::array<int, 4>{1, 1, 1, 1});
  Macroparameters m = compute_macro(g, grid, gas);
  CHECK(m.number_density == doctest::Approx(2e23).epsilon(1e-3));
  CHECK(m.velocity(0) == doctest::Approx(2630.0).epsilon(1e-3));
  CHECK(m.temperature == doctest::Approx(200.0).epsilon(1e-3));
}
