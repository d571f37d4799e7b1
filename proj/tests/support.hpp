#ifndef TTDVM_TESTS_SUPPORT_HPP_
#define TTDVM_TESTS_SUPPORT_HPP_

#include <Eigen/Dense>
#include <random>

#include "ttdvm/dense_tensor.hpp"
#include "ttdvm/tt_tensor.hpp"

namespace ttdvm::test {

inline Eigen::VectorXd random_vector(std::mt19937& rng, int n) {
  std::normal_distribution<double> dist;
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = dist(rng);
  return v;
}

/// Random TT tensor with prescribed interior ranks and N(0,1) core entries.
inline TtTensor random_tt(std::mt19937& rng, int n1, int n2, int n3, int r1,
                          int r2) {
  std::normal_distribution<double> dist;
  Eigen::MatrixXd first(n1, r1), last(r2, n3);
  for (int i = 0; i < n1; ++i)
    for (int a = 0; a < r1; ++a) first(i, a) = dist(rng);
  std::vector<Eigen::MatrixXd> middle(n2);
  for (int j = 0; j < n2; ++j) {
    middle[j].resize(r1, r2);
    for (int a = 0; a < r1; ++a)
      for (int b = 0; b < r2; ++b) middle[j](a, b) = dist(rng);
  }
  for (int b = 0; b < r2; ++b)
    for (int k = 0; k < n3; ++k) last(b, k) = dist(rng);
  return TtTensor(std::move(first), std::move(middle), std::move(last));
}

inline Dense3 random_dense(std::mt19937& rng, int n1, int n2, int n3) {
  std::normal_distribution<double> dist;
  Dense3 a(n1, n2, n3);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j)
      for (int k = 0; k < n3; ++k) a(i, j, k) = dist(rng);
  return a;
}

inline double rel_err(const Dense3& got, const Dense3& want) {
  double w = want.frobenius_norm();
  return (got - want).frobenius_norm() / (w > 0 ? w : 1.0);
}

/// Dense oracle for the triple-weighted sum.
inline double dense_convolve(const Dense3& a, const Eigen::VectorXd& u,
                             const Eigen::VectorXd& v,
                             const Eigen::VectorXd& w) {
  double s = 0.0;
  for (int i = 0; i < a.n1(); ++i)
    for (int j = 0; j < a.n2(); ++j)
      for (int k = 0; k < a.n3(); ++k) s += a(i, j, k) * u(i) * v(j) * w(k);
  return s;
}

}  // namespace ttdvm::test

#endif  // TTDVM_TESTS_SUPPORT_HPP_
