#include "scalebench/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace scalebench::linalg {

namespace {

template <class M>
double svd_norm(const M& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<M> svd(m);
  return svd.singularValues()(0);
}

// Power iteration on MᴴM; falls back to SVD when it stalls.
template <class M>
double power_norm(const M& m) {
  using Scalar = typename M::Scalar;
  using V = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = m.cols();
  V x(n);
  for (Eigen::Index i = 0; i < n; ++i)
    x(i) = Scalar(1.0 + 0.01 * std::sin(1.0 + static_cast<double>(i)));
  x.normalize();
  double prev = 0.0;
  for (int it = 0; it < 400; ++it) {
    V y = m * x;
    V z = m.adjoint() * y;
    const double est = std::sqrt(std::abs(x.dot(z)));
    const double zn = z.norm();
    if (zn == 0.0) return 0.0;
    x = z / zn;
    if (it > 3 && std::abs(est - prev) <= 1e-12 * est) return std::max(est, (m * x).norm());
    prev = est;
  }
  return svd_norm(m);
}

}  // namespace

double spectral_norm(const Matrix& m) {
  if (std::max(m.rows(), m.cols()) <= kDenseSvdLimit) return svd_norm(m);
  return power_norm(m);
}

double spectral_norm(const CMatrix& m) {
  if (std::max(m.rows(), m.cols()) <= kDenseSvdLimit) return svd_norm(m);
  return power_norm(m);
}

double scaled_spectral_norm(const Matrix& m, const Vector& left, const Vector& right) {
  return spectral_norm(Matrix(left.asDiagonal() * m * right.asDiagonal()));
}

double scaled_spectral_norm(const CMatrix& m, const Vector& left, const Vector& right) {
  CMatrix s = left.cast<cplx>().asDiagonal() * m * right.cast<cplx>().asDiagonal();
  return spectral_norm(s);
}

Matrix random_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Matrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = nd(rng);
  return g;
}

Matrix random_orthogonal(Eigen::Index n, Rng& rng) {
  Matrix g = random_gaussian(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

Matrix random_symmetric(Eigen::Index n, Rng& rng) {
  Matrix g = random_gaussian(n, n, rng);
  return 0.5 * (g + g.transpose());
}

double relative_asymmetry(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.transpose()).cwiseAbs().maxCoeff() / scale;
}

Eigen::Index numerical_rank(const Matrix& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0) return 0;
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * s(0)) ++r;
  return r;
}

}  // namespace scalebench::linalg
