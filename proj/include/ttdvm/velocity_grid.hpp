#ifndef TTDVM_VELOCITY_GRID_HPP_
#define TTDVM_VELOCITY_GRID_HPP_

#include <Eigen/Dense>
#include <map>
#include <mutex>

#include "ttdvm/tt_tensor.hpp"

namespace ttdvm {

/// Uniform Cartesian velocity mesh, symmetric about zero, with the
/// rectangle-rule quadrature weights and the velocity-dependent TT tensors
/// needed by the kinetic scheme.  Tensors derived from face normals are
/// cached per quantized normal direction; the grid itself is immutable.
class VelocityGrid {
 public:
  /// nodes xi_i = -bound + i * dxi, dxi = 2 bound / (n - 1).
  VelocityGrid(int n, double bound);

  VelocityGrid(const VelocityGrid&) = delete;
  VelocityGrid& operator=(const VelocityGrid&) = delete;

  int n() const { return n_; }
  double xi_min() const { return -bound_; }
  double xi_max() const { return bound_; }
  double dxi() const { return dxi_; }
  const Eigen::VectorXd& nodes() const { return nodes_; }
  const Eigen::VectorXd& weights() const { return weights_; }

  /// Rank-1 tensor of the velocity component along the given axis (1..3).
  TtTensor xi_tensor(int axis) const;

  /// xi_n = n1 xi_1 + n2 xi_2 + n3 xi_3, rounded at machine precision;
  /// interior ranks <= 2.  The normal must be unit to 1e-12.
  TtTensor xi_normal(const Eigen::Vector3d& normal) const;

  /// Low-rank estimate E of |xi_n| with E >= |xi_n| at every node and
  /// interior ranks <= cap_rank.  Used as the Rusanov dissipation bound.
  const TtTensor& abs_xi_estimate(const Eigen::Vector3d& normal,
                                  int cap_rank = 4) const;

  /// Accuracy-oriented estimates of xi_n^+ = max(xi_n, 0) and
  /// xi_n^- = min(xi_n, 0) with interior ranks <= cap_rank + 2; used for
  /// wall-boundary moment integrals only.
  const TtTensor& xi_normal_positive(const Eigen::Vector3d& normal,
                                     int cap_rank = 4) const;
  const TtTensor& xi_normal_negative(const Eigen::Vector3d& normal,
                                     int cap_rank = 4) const;

  /// Dense evaluation of xi_n (oracle and dense-solver path).
  Dense3 dense_xi_normal(const Eigen::Vector3d& normal) const;

 private:
  struct NormalTensors {
    TtTensor abs_estimate;
    TtTensor positive;
    TtTensor negative;
  };

  const NormalTensors& cached(const Eigen::Vector3d& normal, int cap) const;

  int n_ = 0;
  double bound_ = 0.0;
  double dxi_ = 0.0;
  Eigen::VectorXd nodes_;
  Eigen::VectorXd weights_;

  mutable std::mutex cache_mutex_;
  mutable std::map<std::array<long long, 4>, NormalTensors> cache_;
};

}  // namespace ttdvm

#endif  // TTDVM_VELOCITY_GRID_HPP_
