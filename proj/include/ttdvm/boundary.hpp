#ifndef TTDVM_BOUNDARY_HPP_
#define TTDVM_BOUNDARY_HPP_

#include <Eigen/Dense>
#include <string>

#include "ttdvm/physics.hpp"
#include "ttdvm/tt_tensor.hpp"
#include "ttdvm/velocity_grid.hpp"

namespace ttdvm {

enum class BcKind { Wall, SymmetryX, SymmetryY, SymmetryZ, Inflow, Outflow };

/// Accepts exactly "wall", "sym-x", "sym-y", "sym-z", "in", "out".
BcKind bc_kind_from_string(const std::string& name);
std::string to_string(BcKind kind);
bool is_symmetry(BcKind kind);
int symmetry_axis(BcKind kind);  // 1..3

struct BoundaryCondition {
  BcKind kind;
  double wall_temperature = 0.0;                      // wall
  TtTensor freestream;                                // in/out ghost tensor
  double free_n = 0.0, free_t = 0.0;                  // recorded free-stream
  Eigen::Vector3d free_u = Eigen::Vector3d::Zero();   // state (in/out)

  static BoundaryCondition wall(double t_wall);
  static BoundaryCondition freestream_in(double n, double t,
                                         const Eigen::Vector3d& u,
                                         const VelocityGrid& grid,
                                         const GasParameters& gas);
  static BoundaryCondition freestream_out(double n, double t,
                                          const Eigen::Vector3d& u,
                                          const VelocityGrid& grid,
                                          const GasParameters& gas);
  static BoundaryCondition symmetry(int axis);
};

/// Diffuse wall ghost: n_w M(T_w) with n_w from the impermeability balance
/// of the half-range mass fluxes through the face.  The normal points out
/// of the computational domain.  Throws when the balance yields n_w <= 0.
TtTensor wall_ghost(const TtTensor& f_interior, double t_wall,
                    const VelocityGrid& grid, const GasParameters& gas,
                    const Eigen::Vector3d& outward_normal, int cap_rank);

/// Specular reflection across an axis-aligned symmetry plane: exact index
/// reversal of one TT core.
TtTensor symmetry_ghost(const TtTensor& f_interior, int axis);

inline const TtTensor& freestream_ghost(const BoundaryCondition& bc) {
  return bc.freestream;
}

}  // namespace ttdvm

#endif  // TTDVM_BOUNDARY_HPP_
