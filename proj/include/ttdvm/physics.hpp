#ifndef TTDVM_PHYSICS_HPP_
#define TTDVM_PHYSICS_HPP_

#include <Eigen/Dense>

#include "ttdvm/tt_tensor.hpp"
#include "ttdvm/velocity_grid.hpp"

namespace ttdvm {

struct GasParameters {
  double molecule_mass;    // kg
  double gas_constant;     // J/(kg K)
  double prandtl = 2.0 / 3.0;
  double mu_ref;           // Pa s at t_ref
  double t_ref;            // K
  double omega;            // viscosity power-law exponent
};

/// Power-law dynamic viscosity mu_ref (T / t_ref)^omega.
double viscosity(double temperature, const GasParameters& gas);

struct Macroparameters {
  double number_density = 0.0;             // m^-3
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();  // m/s
  double temperature = 0.0;                // K
  double mass_density = 0.0;               // kg/m^3
  double pressure = 0.0;                   // Pa
  Eigen::Vector3d shakhov_s = Eigen::Vector3d::Zero();  // dimensionless
  Eigen::Vector3d heat_flux = Eigen::Vector3d::Zero();  // W/m^2, diagnostic
};

/// Moments of the distribution tensor by quadrature convolutions.
/// Throws std::runtime_error when density or temperature is nonpositive
/// (state blow-up diagnostic).
Macroparameters compute_macro(const TtTensor& f, const VelocityGrid& grid,
                              const GasParameters& gas);

/// Rank-(1,1,1,1) Maxwellian for the given state.
TtTensor maxwell_tt(double number_density, double temperature,
                    const Eigen::Vector3d& velocity, const VelocityGrid& grid,
                    const GasParameters& gas);

/// Shakhov equilibrium built in TT form and rounded once after assembly;
/// interior ranks stay <= 10 independently of the grid size.
TtTensor shakhov_tt(const Macroparameters& macro, const VelocityGrid& grid,
                    const GasParameters& gas, double eps_round);

/// Relaxation collision term J = (p / mu(T)) (f_S - f), rounded to eps.
TtTensor compute_collision(const TtTensor& f, const VelocityGrid& grid,
                           const GasParameters& gas, double eps_round);

/// Variant that also reports the moments used (one moment pass per step).
TtTensor compute_collision(const TtTensor& f, const VelocityGrid& grid,
                           const GasParameters& gas, double eps_round,
                           Macroparameters& macro_out);

}  // namespace ttdvm

#endif  // TTDVM_PHYSICS_HPP_
