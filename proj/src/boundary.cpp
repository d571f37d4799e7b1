#include "ttdvm/boundary.hpp"

#include <stdexcept>

namespace ttdvm {

using Eigen::Vector3d;

BcKind bc_kind_from_string(const std::string& name) {
  if (name == "wall") return BcKind::Wall;
  if (name == "sym-x") return BcKind::SymmetryX;
  if (name == "sym-y") return BcKind::SymmetryY;
  if (name == "sym-z") return BcKind::SymmetryZ;
  if (name == "in") return BcKind::Inflow;
  if (name == "out") return BcKind::Outflow;
  throw std::runtime_error("unknown boundary condition kind: " + name);
}

std::string to_string(BcKind kind) {
  switch (kind) {
    case BcKind::Wall: return "wall";
    case BcKind::SymmetryX: return "sym-x";
    case BcKind::SymmetryY: return "sym-y";
    case BcKind::SymmetryZ: return "sym-z";
    case BcKind::Inflow: return "in";
    case BcKind::Outflow: return "out";
  }
  return "?";
}

bool is_symmetry(BcKind kind) {
  return kind == BcKind::SymmetryX || kind == BcKind::SymmetryY ||
         kind == BcKind::SymmetryZ;
}

int symmetry_axis(BcKind kind) {
  switch (kind) {
    case BcKind::SymmetryX: return 1;
    case BcKind::SymmetryY: return 2;
    case BcKind::SymmetryZ: return 3;
    default: throw std::runtime_error("symmetry_axis: not a symmetry kind");
  }
}

BoundaryCondition BoundaryCondition::wall(double t_wall) {
  if (!(t_wall > 0.0))
    throw std::runtime_error("wall boundary requires positive temperature");
  BoundaryCondition bc;
  bc.kind = BcKind::Wall;
  bc.wall_temperature = t_wall;
  return bc;
}

BoundaryCondition BoundaryCondition::freestream_in(double n, double t,
                                                   const Vector3d& u,
                                                   const VelocityGrid& grid,
                                                   const GasParameters& gas) {
  BoundaryCondition bc;
  bc.kind = BcKind::Inflow;
  bc.freestream = maxwell_tt(n, t, u, grid, gas);
  bc.free_n = n;
  bc.free_t = t;
  bc.free_u = u;
  return bc;
}

BoundaryCondition BoundaryCondition::freestream_out(double n, double t,
                                                    const Vector3d& u,
                                                    const VelocityGrid& grid,
                                                    const GasParameters& gas) {
  BoundaryCondition bc = freestream_in(n, t, u, grid, gas);
  bc.kind = BcKind::Outflow;
  return bc;
}

BoundaryCondition BoundaryCondition::symmetry(int axis) {
  BoundaryCondition bc;
  bc.kind = axis == 1   ? BcKind::SymmetryX
            : axis == 2 ? BcKind::SymmetryY
                        : BcKind::SymmetryZ;
  return bc;
}

TtTensor wall_ghost(const TtTensor& f_interior, double t_wall,
                    const VelocityGrid& grid, const GasParameters& gas,
                    const Vector3d& outward_normal, int cap_rank) {
  TtTensor unit_maxwell = maxwell_tt(1.0, t_wall, Vector3d::Zero(), grid, gas);
  const TtTensor& pos = grid.xi_normal_positive(outward_normal, cap_rank);
  const TtTensor& neg = grid.xi_normal_negative(outward_normal, cap_rank);
  const Eigen::VectorXd& w = grid.weights();

  double flux_to_wall = hadamard(pos, f_interior).convolve(w, w, w);
  double flux_from_wall = hadamard(neg, unit_maxwell).convolve(w, w, w);
  if (!(flux_from_wall < 0.0))
    throw std::runtime_error("wall_ghost: degenerate wall Maxwellian flux");
  double n_wall = flux_to_wall / (-flux_from_wall);
  if (!(n_wall > 0.0))
    throw std::runtime_error(
        "wall_ghost: impermeability balance gave nonpositive density");
  return unit_maxwell.scaled(n_wall);
}

TtTensor symmetry_ghost(const TtTensor& f_interior, int axis) {
  if (axis < 1 || axis > 3)
    throw std::runtime_error("symmetry_ghost: axis must be 1..3");
  return f_interior.mode_reflected(axis);
}

}  // namespace ttdvm
