#ifndef TTDVM_DENSE_TENSOR_HPP_
#define TTDVM_DENSE_TENSOR_HPP_

#include <cmath>
#include <cstddef>
#include <vector>

namespace ttdvm {

/// Plain row-major 3D array of doubles, index order (i, j, k) with k fastest.
class Dense3 {
 public:
  Dense3() = default;
  Dense3(int n1, int n2, int n3, double fill = 0.0)
      : n1_(n1), n2_(n2), n3_(n3),
        data_(static_cast<std::size_t>(n1) * n2 * n3, fill) {}

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  int n3() const { return n3_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(int i, int j, int k) {
    return data_[(static_cast<std::size_t>(i) * n2_ + j) * n3_ + k];
  }
  double operator()(int i, int j, int k) const {
    return data_[(static_cast<std::size_t>(i) * n2_ + j) * n3_ + k];
  }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  double frobenius_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  double sum() const {
    double s = 0.0;
    for (double v : data_) s += v;
    return s;
  }

  bool all_finite() const {
    for (double v : data_)
      if (!std::isfinite(v)) return false;
    return true;
  }

  Dense3& operator+=(const Dense3& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Dense3& operator-=(const Dense3& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Dense3& operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
  }

 private:
  int n1_ = 0, n2_ = 0, n3_ = 0;
  std::vector<double> data_;
};

inline Dense3 operator+(Dense3 a, const Dense3& b) { return a += b; }
inline Dense3 operator-(Dense3 a, const Dense3& b) { return a -= b; }

}  // namespace ttdvm

#endif  // TTDVM_DENSE_TENSOR_HPP_
