#include "ttdvm/tt_tensor.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ttdvm {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Keep the smallest leading rank whose discarded tail of squared singular
/// values stays within budget2; at least 1, at most cap (0 = no cap).
int truncation_rank(const VectorXd& sigma, double budget2, int cap) {
  int r = static_cast<int>(sigma.size());
  double tail = 0.0;
  while (r > 1) {
    double s2 = sigma(r - 1) * sigma(r - 1);
    if (tail + s2 > budget2) break;
    tail += s2;
    --r;
  }
  if (cap > 0 && r > cap) r = cap;
  return r;
}

struct Svd {
  MatrixXd u;
  VectorXd sigma;
  MatrixXd v;
};

Svd thin_svd(const MatrixXd& m) {
  Eigen::BDCSVD<MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

}  // namespace

TtTensor::TtTensor(MatrixXd first, std::vector<MatrixXd> middle, MatrixXd last)
    : first_(std::move(first)), middle_(std::move(middle)),
      last_(std::move(last)) {
  if (middle_.empty()) throw std::invalid_argument("TtTensor: empty middle core");
  const auto r1 = first_.cols();
  const auto r2 = last_.rows();
  for (const auto& g : middle_) {
    if (g.rows() != r1 || g.cols() != r2)
      throw std::invalid_argument("TtTensor: core rank mismatch");
  }
}

TtTensor TtTensor::rank_one(const VectorXd& u, const VectorXd& v,
                            const VectorXd& w) {
  if (u.size() == 0 || v.size() == 0 || w.size() == 0)
    throw std::invalid_argument("rank_one: empty factor");
  MatrixXd first = u;
  std::vector<MatrixXd> middle(v.size());
  for (int j = 0; j < v.size(); ++j)
    middle[j] = MatrixXd::Constant(1, 1, v(j));
  MatrixXd last = w.transpose();
  return TtTensor(std::move(first), std::move(middle), std::move(last));
}

TtTensor TtTensor::constant(int n1, int n2, int n3, double value) {
  return rank_one(VectorXd::Constant(n1, value), VectorXd::Ones(n2),
                  VectorXd::Ones(n3));
}

std::array<int, 3> TtTensor::mode_sizes() const {
  return {static_cast<int>(first_.rows()), static_cast<int>(middle_.size()),
          static_cast<int>(last_.cols())};
}

std::array<int, 4> TtTensor::ranks() const {
  return {1, static_cast<int>(first_.cols()), static_cast<int>(last_.rows()),
          1};
}

long TtTensor::storage_count() const {
  long s = static_cast<long>(first_.size()) + last_.size();
  for (const auto& g : middle_) s += g.size();
  return s;
}

double TtTensor::value(int i, int j, int k) const {
  return first_.row(i) * middle_[j] * last_.col(k);
}

Dense3 TtTensor::to_full() const {
  const auto [n1, n2, n3] = mode_sizes();
  Dense3 out(n1, n2, n3);
  for (int j = 0; j < n2; ++j) {
    MatrixXd slab = first_ * middle_[j] * last_;  // n1 x n3
    for (int i = 0; i < n1; ++i)
      for (int k = 0; k < n3; ++k) out(i, j, k) = slab(i, k);
  }
  return out;
}

TtTensor TtTensor::from_full(const Dense3& a, double eps, int max_rank) {
  if (eps <= 0.0) throw std::invalid_argument("from_full: eps must be > 0");
  if (!a.all_finite())
    throw std::invalid_argument("from_full: input contains non-finite values");
  const int n1 = a.n1(), n2 = a.n2(), n3 = a.n3();
  const double norm = a.frobenius_norm();
  // Per-unfolding budget: eps^2 ||A||^2 split uniformly over d-1 = 2 cuts.
  const double budget2 = eps * eps * norm * norm / 2.0;

  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      a1(a.data(), n1, static_cast<long>(n2) * n3);

  Svd s1 = thin_svd(a1);
  const int r1 = truncation_rank(s1.sigma, budget2, max_rank);
  MatrixXd first = s1.u.leftCols(r1);
  MatrixXd m = s1.sigma.head(r1).asDiagonal() * s1.v.leftCols(r1).transpose();

  // Second unfolding: rows (a, j) -> a + r1*j, columns k.
  MatrixXd b(static_cast<long>(r1) * n2, n3);
  for (int j = 0; j < n2; ++j)
    for (int aa = 0; aa < r1; ++aa)
      for (int k = 0; k < n3; ++k)
        b(static_cast<long>(j) * r1 + aa, k) = m(aa, static_cast<long>(j) * n3 + k);

  Svd s2 = thin_svd(b);
  const int r2 = truncation_rank(s2.sigma, budget2, max_rank);
  std::vector<MatrixXd> middle(n2);
  for (int j = 0; j < n2; ++j)
    middle[j] = s2.u.block(static_cast<long>(j) * r1, 0, r1, r2);
  MatrixXd last = s2.sigma.head(r2).asDiagonal() * s2.v.leftCols(r2).transpose();

  return TtTensor(std::move(first), std::move(middle), std::move(last));
}

TtTensor TtTensor::rounded(double eps, int max_rank) const {
  if (eps <= 0.0) throw std::invalid_argument("rounded: eps must be > 0");
  const auto [n1, n2, n3] = mode_sizes();
  const int r1 = static_cast<int>(first_.cols());
  const int r2 = static_cast<int>(last_.rows());

  // Right-to-left orthogonalization: make rows of the last two cores
  // orthonormal, pushing the remainder into the first core.
  Eigen::HouseholderQR<MatrixXd> qr3(last_.transpose());  // n3 x r2
  const int q3 = std::min<int>(n3, r2);
  MatrixXd thin_q3 = qr3.householderQ() * MatrixXd::Identity(n3, q3);
  MatrixXd rfac3 = qr3.matrixQR().topRows(q3).triangularView<Eigen::Upper>();
  MatrixXd last_orth = thin_q3.transpose();  // q3 x n3
  std::vector<MatrixXd> mid(n2);
  for (int j = 0; j < n2; ++j) mid[j] = middle_[j] * rfac3.transpose();

  MatrixXd wide(r1, static_cast<long>(n2) * q3);  // row unfolding of middle
  for (int j = 0; j < n2; ++j)
    wide.middleCols(static_cast<long>(j) * q3, q3) = mid[j];
  Eigen::HouseholderQR<MatrixXd> qr2(wide.transpose());
  const int q2 = static_cast<int>(std::min<long>(static_cast<long>(n2) * q3, r1));
  MatrixXd thin_q2 =
      qr2.householderQ() * MatrixXd::Identity(static_cast<long>(n2) * q3, q2);
  MatrixXd rfac2 = qr2.matrixQR().topRows(q2).triangularView<Eigen::Upper>();
  MatrixXd mid_orth = thin_q2.transpose();  // q2 x n2*q3
  MatrixXd first_carry = first_ * rfac2.transpose();  // n1 x q2

  // With the tail orthonormal, the whole norm sits in the first core.
  const double norm = first_carry.norm();
  if (norm == 0.0) return constant(n1, n2, n3, 0.0);
  const double budget2 = eps * eps * norm * norm / 2.0;

  // Left-to-right truncation sweep.
  Svd s1 = thin_svd(first_carry);
  const int t1 = truncation_rank(s1.sigma, budget2, max_rank);
  MatrixXd new_first = s1.u.leftCols(t1);
  MatrixXd carry = s1.sigma.head(t1).asDiagonal() * s1.v.leftCols(t1).transpose();

  // carry: t1 x q2; fold into middle slices, then unfold for the second cut.
  MatrixXd stacked(static_cast<long>(t1) * n2, q3);
  for (int j = 0; j < n2; ++j)
    stacked.middleRows(static_cast<long>(j) * t1, t1) =
        carry * mid_orth.middleCols(static_cast<long>(j) * q3, q3);

  Svd s2 = thin_svd(stacked);
  const int t2 = truncation_rank(s2.sigma, budget2, max_rank);
  std::vector<MatrixXd> new_middle(n2);
  for (int j = 0; j < n2; ++j)
    new_middle[j] = s2.u.block(static_cast<long>(j) * t1, 0, t1, t2);
  MatrixXd new_last = s2.sigma.head(t2).asDiagonal() *
                      s2.v.leftCols(t2).transpose() * last_orth;

  return TtTensor(std::move(new_first), std::move(new_middle),
                  std::move(new_last));
}

double TtTensor::convolve(const VectorXd& u, const VectorXd& v,
                          const VectorXd& w) const {
  const auto [n1, n2, n3] = mode_sizes();
  if (u.size() != n1 || v.size() != n2 || w.size() != n3)
    throw std::invalid_argument("convolve: weight length mismatch");
  Eigen::RowVectorXd acc1 = u.transpose() * first_;  // 1 x r1
  Eigen::RowVectorXd acc2 = Eigen::RowVectorXd::Zero(last_.rows());
  for (int j = 0; j < n2; ++j) acc2 += v(j) * (acc1 * middle_[j]);
  return acc2 * (last_ * w);
}

TtTensor TtTensor::scaled(double s) const {
  TtTensor out = *this;
  out.first_ *= s;
  return out;
}

TtTensor TtTensor::hadamard(const TtTensor& b) const {
  if (mode_sizes() != b.mode_sizes())
    throw std::invalid_argument("hadamard: mode size mismatch");
  const auto [n1, n2, n3] = mode_sizes();
  const int ra1 = static_cast<int>(first_.cols());
  const int rb1 = static_cast<int>(b.first_.cols());
  const int ra2 = static_cast<int>(last_.rows());
  const int rb2 = static_cast<int>(b.last_.rows());

  MatrixXd first(n1, ra1 * rb1);
  for (int i = 0; i < n1; ++i)
    for (int p = 0; p < ra1; ++p)
      for (int q = 0; q < rb1; ++q)
        first(i, p * rb1 + q) = first_(i, p) * b.first_(i, q);

  std::vector<MatrixXd> middle(n2);
  for (int j = 0; j < n2; ++j) {
    MatrixXd c(ra1 * rb1, ra2 * rb2);
    const MatrixXd& am = middle_[j];
    const MatrixXd& bm = b.middle_[j];
    for (int p = 0; p < ra1; ++p)
      for (int s = 0; s < ra2; ++s)
        c.block(p * rb1, s * rb2, rb1, rb2) = am(p, s) * bm;
    middle[j] = std::move(c);
  }

  MatrixXd last(ra2 * rb2, n3);
  for (int k = 0; k < n3; ++k)
    for (int p = 0; p < ra2; ++p)
      for (int q = 0; q < rb2; ++q)
        last(p * rb2 + q, k) = last_(p, k) * b.last_(q, k);

  return TtTensor(std::move(first), std::move(middle), std::move(last));
}

TtTensor TtTensor::divided_by_rank_one(const VectorXd& u1, const VectorXd& u2,
                                       const VectorXd& u3) const {
  const auto [n1, n2, n3] = mode_sizes();
  if (u1.size() != n1 || u2.size() != n2 || u3.size() != n3)
    throw std::invalid_argument("divided_by_rank_one: length mismatch");
  if ((u1.array() <= 0.0).any() || (u2.array() <= 0.0).any() ||
      (u3.array() <= 0.0).any())
    throw std::invalid_argument(
        "divided_by_rank_one: divisor entries must be strictly positive");
  TtTensor out = *this;
  for (int i = 0; i < n1; ++i) out.first_.row(i) /= u1(i);
  for (int j = 0; j < n2; ++j) out.middle_[j] /= u2(j);
  for (int k = 0; k < n3; ++k) out.last_.col(k) /= u3(k);
  return out;
}

TtTensor TtTensor::mode_reflected(int axis) const {
  TtTensor out = *this;
  const auto [n1, n2, n3] = mode_sizes();
  switch (axis) {
    case 1:
      out.first_ = first_.colwise().reverse();
      break;
    case 2:
      for (int j = 0; j < n2; ++j) out.middle_[j] = middle_[n2 - 1 - j];
      break;
    case 3:
      out.last_ = last_.rowwise().reverse();
      break;
    default:
      throw std::invalid_argument("mode_reflected: axis must be 1, 2 or 3");
  }
  return out;
}

double TtTensor::frobenius_norm() const {
  MatrixXd w1 = first_.transpose() * first_;  // r1 x r1
  MatrixXd w2 = MatrixXd::Zero(last_.rows(), last_.rows());
  for (const auto& g : middle_) w2 += g.transpose() * w1 * g;
  double s = (last_.transpose() * w2 * last_).trace();
  return std::sqrt(std::max(0.0, s));
}

TtTensor operator+(const TtTensor& a, const TtTensor& b) {
  if (a.mode_sizes() != b.mode_sizes())
    throw std::invalid_argument("tt add: mode size mismatch");
  const auto [n1, n2, n3] = a.mode_sizes();
  const int ra1 = a.ranks()[1], ra2 = a.ranks()[2];
  const int rb1 = b.ranks()[1], rb2 = b.ranks()[2];

  Eigen::MatrixXd first(n1, ra1 + rb1);
  first << a.first_core(), b.first_core();

  std::vector<Eigen::MatrixXd> middle(n2);
  for (int j = 0; j < n2; ++j) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(ra1 + rb1, ra2 + rb2);
    m.topLeftCorner(ra1, ra2) = a.middle_core()[j];
    m.bottomRightCorner(rb1, rb2) = b.middle_core()[j];
    middle[j] = std::move(m);
  }

  Eigen::MatrixXd last(ra2 + rb2, n3);
  last << a.last_core(), b.last_core();

  return TtTensor(std::move(first), std::move(middle), std::move(last));
}

TtTensor operator-(const TtTensor& a, const TtTensor& b) {
  return a + b.scaled(-1.0);
}

}  // namespace ttdvm
