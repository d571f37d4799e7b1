#include "ttdvm/velocity_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace ttdvm {

using Eigen::Vector3d;
using Eigen::VectorXd;

VelocityGrid::VelocityGrid(int n, double bound) : n_(n), bound_(bound) {
  if (n < 2) throw std::invalid_argument("VelocityGrid: need at least 2 nodes");
  if (!(bound > 0.0))
    throw std::invalid_argument("VelocityGrid: bound must be positive");
  dxi_ = 2.0 * bound / (n - 1);
  nodes_.resize(n);
  for (int i = 0; i < n; ++i) nodes_(i) = -bound + i * dxi_;
  weights_ = VectorXd::Constant(n, dxi_);
}

TtTensor VelocityGrid::xi_tensor(int axis) const {
  VectorXd ones = VectorXd::Ones(n_);
  switch (axis) {
    case 1:
      return TtTensor::rank_one(nodes_, ones, ones);
    case 2:
      return TtTensor::rank_one(ones, nodes_, ones);
    case 3:
      return TtTensor::rank_one(ones, ones, nodes_);
    default:
      throw std::invalid_argument("xi_tensor: axis must be 1, 2 or 3");
  }
}

TtTensor VelocityGrid::xi_normal(const Vector3d& normal) const {
  if (std::abs(normal.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("xi_normal: normal must be a unit vector");
  TtTensor result;
  bool have = false;
  for (int axis = 1; axis <= 3; ++axis) {
    double c = normal(axis - 1);
    if (c == 0.0) continue;
    TtTensor term = xi_tensor(axis).scaled(c);
    result = have ? result + term : term;
    have = true;
  }
  if (result.ranks()[1] > 1) result = result.rounded(1e-14);
  return result;
}

Dense3 VelocityGrid::dense_xi_normal(const Vector3d& normal) const {
  Dense3 d(n_, n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k)
        d(i, j, k) =
            normal(0) * nodes_(i) + normal(1) * nodes_(j) + normal(2) * nodes_(k);
  return d;
}

const VelocityGrid::NormalTensors& VelocityGrid::cached(const Vector3d& normal,
                                                        int cap) const {
  if (std::abs(normal.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("normal tensors: normal must be a unit vector");
  if (cap < 1) throw std::invalid_argument("normal tensors: cap_rank >= 1");
  const double quantum = 1e-12;
  std::array<long long, 4> key = {std::llround(normal(0) / quantum),
                                  std::llround(normal(1) / quantum),
                                  std::llround(normal(2) / quantum), cap};
  std::scoped_lock lock(cache_mutex_);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;

  Dense3 xin = dense_xi_normal(normal);
  const std::size_t total = xin.size();

  Dense3 abs_xin(n_, n_, n_), pos(n_, n_, n_), neg(n_, n_, n_);
  for (std::size_t idx = 0; idx < total; ++idx) {
    double v = xin.data()[idx];
    abs_xin.data()[idx] = std::abs(v);
    pos.data()[idx] = v > 0.0 ? v : 0.0;
    neg.data()[idx] = v < 0.0 ? v : 0.0;
  }

  // Dominating estimate of |xi_n|: truncate a smooth surrogate
  // sqrt(xi_n^2 + h^2) >= |xi_n| and shift by the remaining deficit.
  // The smoothing width h is picked by a small search per normal.
  const double mx = abs_xin.max_abs();
  const double h_grid[] = {0.0, 0.08, 0.10, 0.12, 0.14, 0.16, 0.20, 0.30};
  TtTensor best;
  double best_err = -1.0;
  Dense3 surrogate(n_, n_, n_);
  for (double hrel : h_grid) {
    const double h2 = (hrel * mx) * (hrel * mx);
    for (std::size_t idx = 0; idx < total; ++idx) {
      double v = abs_xin.data()[idx];
      surrogate.data()[idx] = std::sqrt(v * v + h2);
    }
    for (int strategy = 0; strategy < 2; ++strategy) {
      const int r = strategy == 0 ? cap - 1 : cap;
      if (r < 1) continue;
      TtTensor cand = TtTensor::from_full(surrogate, 1e-12, r);
      Dense3 dc = cand.to_full();
      double deficit = 0.0;
      for (std::size_t idx = 0; idx < total; ++idx)
        deficit = std::max(deficit, abs_xin.data()[idx] - dc.data()[idx]);
      if (deficit <= 1e-13 * mx) deficit = 0.0;  // exact up to roundoff
      if (strategy == 1 && deficit > 0.0) continue;  // full cap leaves no room
      if (deficit > 0.0) {
        cand = cand + TtTensor::constant(n_, n_, n_, deficit);
        for (std::size_t idx = 0; idx < total; ++idx) dc.data()[idx] += deficit;
      }
      double err2 = 0.0;
      for (std::size_t idx = 0; idx < total; ++idx) {
        double d = dc.data()[idx] - abs_xin.data()[idx];
        err2 += d * d;
      }
      if (best_err < 0.0 || err2 < best_err) {
        best_err = err2;
        best = std::move(cand);
      }
    }
  }

  NormalTensors t;
  t.abs_estimate = std::move(best);
  t.positive = TtTensor::from_full(pos, 1e-12, cap + 2);
  t.negative = TtTensor::from_full(neg, 1e-12, cap + 2);
  auto [pos_it, inserted] = cache_.emplace(key, std::move(t));
  return pos_it->second;
}

const TtTensor& VelocityGrid::abs_xi_estimate(const Vector3d& normal,
                                              int cap_rank) const {
  return cached(normal, cap_rank).abs_estimate;
}

const TtTensor& VelocityGrid::xi_normal_positive(const Vector3d& normal,
                                                 int cap_rank) const {
  return cached(normal, cap_rank).positive;
}

const TtTensor& VelocityGrid::xi_normal_negative(const Vector3d& normal,
                                                 int cap_rank) const {
  return cached(normal, cap_rank).negative;
}

}  // namespace ttdvm
