#include "scalebench/quadrature.hpp"

#include <map>
#include <mutex>

namespace scalebench {

void QuadratureConfig::validate() const {
  if (!(tolerance > 0.0)) throw Error(ErrorKind::InvalidArgument, "quadrature tolerance must be > 0");
  if (nodes_per_panel < 2) throw Error(ErrorKind::InvalidArgument, "quadrature needs at least 2 nodes per panel");
  if (panels_per_segment < 1) throw Error(ErrorKind::InvalidArgument, "quadrature needs at least 1 panel per segment");
  if (max_subdivisions < 0) throw Error(ErrorKind::InvalidArgument, "max_subdivisions must be >= 0");
  if (!(max_panel_length > 0.0)) throw Error(ErrorKind::InvalidArgument, "max_panel_length must be > 0");
}

namespace quad {

const GaussRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Matrix j = Matrix::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    j(k, k - 1) = b;
    j(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(j);
  GaussRule rule;
  for (int k = 0; k < n; ++k) {
    rule.nodes.push_back(es.eigenvalues()(k));
    const double v = es.eigenvectors()(0, k);
    rule.weights.push_back(2.0 * v * v);
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

}  // namespace quad
}  // namespace scalebench
