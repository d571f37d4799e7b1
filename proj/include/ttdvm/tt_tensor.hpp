#ifndef TTDVM_TT_TENSOR_HPP_
#define TTDVM_TT_TENSOR_HPP_

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "ttdvm/dense_tensor.hpp"

namespace ttdvm {

/// Order-3 tensor in Tensor-Train form.
///
/// A(i,j,k) = first.row(i) * middle[j] * last.col(k), with
/// first: n1 x r1, middle[j]: r1 x r2, last: r2 x n3.
/// Boundary ranks are fixed to 1.  Instances are immutable after
/// construction; every operation returns a new tensor, so values can be
/// shared freely between threads.
class TtTensor {
 public:
  TtTensor() = default;
  TtTensor(Eigen::MatrixXd first, std::vector<Eigen::MatrixXd> middle,
           Eigen::MatrixXd last);

  /// Rank-(1,1,1,1) tensor A(i,j,k) = u(i) v(j) w(k).
  static TtTensor rank_one(const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                           const Eigen::VectorXd& w);

  /// Constant tensor (value = 0 gives the canonical zero tensor with
  /// unit ranks and zero cores).
  static TtTensor constant(int n1, int n2, int n3, double value);

  /// TT-SVD compression of a full tensor to relative Frobenius accuracy
  /// eps.  max_rank = 0 means no cap; otherwise every interior rank is
  /// clamped to max_rank (the eps guarantee is void where the cap binds).
  static TtTensor from_full(const Dense3& a, double eps, int max_rank = 0);

  bool empty() const { return middle_.empty(); }
  std::array<int, 3> mode_sizes() const;
  std::array<int, 4> ranks() const;
  long storage_count() const;

  double value(int i, int j, int k) const;
  Dense3 to_full() const;

  /// QR/SVD recompression to relative accuracy eps (optionally rank-capped).
  TtTensor rounded(double eps, int max_rank = 0) const;

  /// S = sum_{ijk} A(i,j,k) u(i) v(j) w(k), computed core by core.
  double convolve(const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                  const Eigen::VectorXd& w) const;

  TtTensor scaled(double s) const;
  TtTensor hadamard(const TtTensor& b) const;

  /// Exact element-wise division by the rank-1 tensor u1(i) u2(j) u3(k);
  /// all divisor entries must be strictly positive.
  TtTensor divided_by_rank_one(const Eigen::VectorXd& u1,
                               const Eigen::VectorXd& u2,
                               const Eigen::VectorXd& u3) const;

  /// Index reversal along one mode (1-based axis), A(..., i, ...) ->
  /// A(..., n+1-i, ...).  Exact, ranks unchanged.
  TtTensor mode_reflected(int axis) const;

  /// Frobenius norm via the Gram-matrix chain; never densifies.
  double frobenius_norm() const;

  const Eigen::MatrixXd& first_core() const { return first_; }
  const std::vector<Eigen::MatrixXd>& middle_core() const { return middle_; }
  const Eigen::MatrixXd& last_core() const { return last_; }

 private:
  Eigen::MatrixXd first_;               // n1 x r1
  std::vector<Eigen::MatrixXd> middle_; // n2 slices, each r1 x r2
  Eigen::MatrixXd last_;                // r2 x n3
};

TtTensor operator+(const TtTensor& a, const TtTensor& b);
TtTensor operator-(const TtTensor& a, const TtTensor& b);
inline TtTensor operator*(double s, const TtTensor& a) { return a.scaled(s); }
inline TtTensor operator*(const TtTensor& a, double s) { return a.scaled(s); }
inline TtTensor hadamard(const TtTensor& a, const TtTensor& b) {
  return a.hadamard(b);
}

}  // namespace ttdvm

#endif  // TTDVM_TT_TENSOR_HPP_
