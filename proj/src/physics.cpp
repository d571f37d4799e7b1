#include "ttdvm/physics.hpp"

#include <cmath>
#include <stdexcept>

namespace ttdvm {

using Eigen::Vector3d;
using Eigen::VectorXd;

double viscosity(double temperature, const GasParameters& gas) {
  if (!(temperature > 0.0))
    throw std::runtime_error("viscosity: temperature must be positive");
  return gas.mu_ref * std::pow(temperature / gas.t_ref, gas.omega);
}

Macroparameters compute_macro(const TtTensor& f, const VelocityGrid& grid,
                              const GasParameters& gas) {
  const VectorXd& w = grid.weights();
  const VectorXd& xi = grid.nodes();
  VectorXd xw = xi.cwiseProduct(w);
  VectorXd x2w = xi.cwiseProduct(xw);

  Macroparameters m;
  m.number_density = f.convolve(w, w, w);
  if (!(m.number_density > 0.0))
    throw std::runtime_error("compute_macro: nonpositive density");

  Vector3d momentum(f.convolve(xw, w, w), f.convolve(w, xw, w),
                    f.convolve(w, w, xw));
  m.velocity = momentum / m.number_density;

  double e2 = f.convolve(x2w, w, w) + f.convolve(w, x2w, w) +
              f.convolve(w, w, x2w);
  m.temperature = (e2 - m.number_density * m.velocity.squaredNorm()) /
                  (3.0 * m.number_density * gas.gas_constant);
  if (!(m.temperature > 0.0))
    throw std::runtime_error("compute_macro: nonpositive temperature");

  m.mass_density = gas.molecule_mass * m.number_density;
  m.pressure = m.mass_density * gas.gas_constant * m.temperature;

  // S_i = (1/n) sum c_i c^2 f dxi with c = (xi - u)/sqrt(2 R T); the
  // separable expansion of c^2 turns each component into three
  // convolutions.
  const double s = std::sqrt(2.0 * gas.gas_constant * m.temperature);
  std::array<VectorXd, 3> c;
  for (int a = 0; a < 3; ++a) c[a] = (xi.array() - m.velocity(a)) / s;
  std::array<VectorXd, 3> cw, c2w, c3w;
  for (int a = 0; a < 3; ++a) {
    cw[a] = c[a].cwiseProduct(w);
    c2w[a] = c[a].cwiseProduct(cw[a]);
    c3w[a] = c[a].cwiseProduct(c2w[a]);
  }
  m.shakhov_s(0) = f.convolve(c3w[0], w, w) + f.convolve(cw[0], c2w[1], w) +
                   f.convolve(cw[0], w, c2w[2]);
  m.shakhov_s(1) = f.convolve(c2w[0], cw[1], w) + f.convolve(w, c3w[1], w) +
                   f.convolve(w, cw[1], c2w[2]);
  m.shakhov_s(2) = f.convolve(c2w[0], w, cw[2]) + f.convolve(w, c2w[1], cw[2]) +
                   f.convolve(w, w, c3w[2]);
  m.shakhov_s /= m.number_density;

  // q = (m/2) sum v v^2 f dxi = (m/2) (2 R T)^{3/2} n S
  m.heat_flux = 0.5 * gas.molecule_mass * std::pow(s, 3) * m.number_density *
                m.shakhov_s;
  return m;
}

TtTensor maxwell_tt(double number_density, double temperature,
                    const Vector3d& velocity, const VelocityGrid& grid,
                    const GasParameters& gas) {
  if (!(number_density > 0.0) || !(temperature > 0.0))
    throw std::runtime_error("maxwell_tt: state must have n > 0, T > 0");
  const double two_rt = 2.0 * gas.gas_constant * temperature;
  const double norm1d = 1.0 / std::sqrt(M_PI * two_rt);
  const VectorXd& xi = grid.nodes();
  std::array<VectorXd, 3> factor;
  for (int a = 0; a < 3; ++a) {
    factor[a].resize(xi.size());
    for (int i = 0; i < xi.size(); ++i) {
      double v = xi(i) - velocity(a);
      factor[a](i) = norm1d * std::exp(-v * v / two_rt);
    }
  }
  factor[0] *= number_density;
  return TtTensor::rank_one(factor[0], factor[1], factor[2]);
}

TtTensor shakhov_tt(const Macroparameters& macro, const VelocityGrid& grid,
                    const GasParameters& gas, double eps_round) {
  const int n = grid.n();
  TtTensor fm = maxwell_tt(macro.number_density, macro.temperature,
                           macro.velocity, grid, gas);

  const double s = std::sqrt(2.0 * gas.gas_constant * macro.temperature);
  const VectorXd ones = VectorXd::Ones(n);
  std::array<VectorXd, 3> c;
  for (int a = 0; a < 3; ++a) c[a] = (grid.nodes().array() - macro.velocity(a)) / s;

  TtTensor sc = TtTensor::rank_one(c[0], ones, ones).scaled(macro.shakhov_s(0)) +
                TtTensor::rank_one(ones, c[1], ones).scaled(macro.shakhov_s(1)) +
                TtTensor::rank_one(ones, ones, c[2]).scaled(macro.shakhov_s(2));
  TtTensor c2 = TtTensor::rank_one(c[0].cwiseProduct(c[0]), ones, ones) +
                TtTensor::rank_one(ones, c[1].cwiseProduct(c[1]), ones) +
                TtTensor::rank_one(ones, ones, c[2].cwiseProduct(c[2]));
  TtTensor bracket = TtTensor::constant(n, n, n, 1.0) +
                     hadamard(sc, c2 + TtTensor::constant(n, n, n, -2.5))
                         .scaled(0.8 * (1.0 - gas.prandtl));
  return hadamard(fm, bracket).rounded(eps_round);
}

TtTensor compute_collision(const TtTensor& f, const VelocityGrid& grid,
                           const GasParameters& gas, double eps_round,
                           Macroparameters& macro_out) {
  macro_out = compute_macro(f, grid, gas);
  TtTensor fs = shakhov_tt(macro_out, grid, gas, eps_round);
  const double nu = macro_out.pressure / viscosity(macro_out.temperature, gas);
  return (fs - f).rounded(eps_round).scaled(nu);
}

TtTensor compute_collision(const TtTensor& f, const VelocityGrid& grid,
                           const GasParameters& gas, double eps_round) {
  Macroparameters unused;
  return compute_collision(f, grid, gas, eps_round, unused);
}

}  // namespace ttdvm
