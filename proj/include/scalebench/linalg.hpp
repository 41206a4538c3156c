#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

namespace scalebench {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using cplx = std::complex<double>;
using Rng = std::mt19937_64;

namespace linalg {

// Dense SVD up to this size, power iteration above it.
inline constexpr Eigen::Index kDenseSvdLimit = 64;

double spectral_norm(const Matrix& m);
double spectral_norm(const CMatrix& m);

// Largest singular value of diag(left) * m * diag(right).
double scaled_spectral_norm(const Matrix& m, const Vector& left, const Vector& right);
double scaled_spectral_norm(const CMatrix& m, const Vector& left, const Vector& right);

// Haar-distributed orthogonal matrix (QR of a Gaussian matrix with sign fix).
Matrix random_orthogonal(Eigen::Index n, Rng& rng);
Matrix random_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng);
Matrix random_symmetric(Eigen::Index n, Rng& rng);

// ‖m − mᵀ‖_max / max(1, ‖m‖_max).
double relative_asymmetry(const Matrix& m);

// Rank by counting singular values above tol·σ_max.
Eigen::Index numerical_rank(const Matrix& m, double tol = 1e-10);

}  // namespace linalg
}  // namespace scalebench
