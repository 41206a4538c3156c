#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "scalebench/error.hpp"
#include "scalebench/projection.hpp"

using namespace scalebench;
using namespace scalebench::projection;
using hessian::random_hessian;

namespace {

constexpr double kPi = std::numbers::pi;

double opnorm(const Matrix& m) { return linalg::spectral_norm(m); }

Matrix unit_delta(const WeakHessian& a, Rng& rng) {
  Matrix d = linalg::random_symmetric(a.dim(), rng);
  return d / shifted_norm(d, a, 0.0);
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Parse;
}

}  // namespace

TEST_CASE("contour geometry") {
  for (double s : {0.25, 1.0, 3.0}) {
    for (Sign sign : {Sign::Plus, Sign::Minus}) {
      const Contour c = make_contour(s, sign);
      CHECK(c.closed());
      CHECK(c.alpha_length() == doctest::Approx(4.0 + 2.0 / s));
      const double inside = sign == Sign::Plus ? 0.5 / s : -0.5 / s;
      CHECK(winding_number(c, inside) == 1);
      CHECK(winding_number(c, -inside) == 0);
      CHECK(winding_number(c, cplx(0.0, 3.0)) == 0);
    }
  }
  CHECK_THROWS_AS(make_contour(0.0, Sign::Plus), Error);
}

TEST_CASE("diag(1,-1) gives coordinate projections") {
  const auto a = WeakHessian::from_spectrum({-1}, {1});
  const Matrix pp = contour_projection(a, Sign::Plus);
  const Matrix pm = contour_projection(a, Sign::Minus);
  Matrix e1 = Matrix::Zero(2, 2), e2 = Matrix::Zero(2, 2);
  e1(0, 0) = 1;
  e2(1, 1) = 1;
  CHECK((pp - e1).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((pm - e2).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("contour projections match the eigenprojection oracle") {
  Rng rng(101);
  std::uniform_int_distribution<int> size(1, 12);
  std::uniform_real_distribution<double> gap(0.1, 4.0);
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = random_hessian(rng, size(rng), size(rng), gap(rng));
    const Matrix p = contour_projection(a, Sign::Plus);
    const Matrix m = contour_projection(a, Sign::Minus);
    CHECK(opnorm(p - eigenprojection_oracle(a, Sign::Plus)) <= 1e-7);
    CHECK(opnorm(m - eigenprojection_oracle(a, Sign::Minus)) <= 1e-7);
    CHECK(opnorm(p * p - p) <= 1e-7);
    CHECK(opnorm(p + m - Matrix::Identity(a.dim(), a.dim())) <= 1e-7);
  }
}

TEST_CASE("resolvent poles and K factor") {
  const auto a = WeakHessian::from_spectrum({-2}, {0.5});
  CHECK(kind_of([&] { resolvent_factor(a, cplx(2.0, 0.0)); }) == ErrorKind::ResolventPole);
  const cplx z(0.3, 0.2);
  const CMatrix r = resolvent_factor(a, z);
  const CMatrix id = CMatrix::Identity(2, 2);
  CHECK(((id - z * a.matrix().cast<cplx>()) * r - id).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((k_factor(a, z) - a.matrix().cast<cplx>() * r).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("closed 2x2 derivative is offdiag(delta/2)") {
  const auto a = WeakHessian::from_spectrum({-1}, {1});
  for (double delta : {0.3, 1.0, -2.0}) {
    Matrix d = Matrix::Zero(2, 2);
    d(0, 1) = d(1, 0) = delta;
    const Matrix dp = projection_derivative(a, d, Sign::Plus);
    Matrix expect = Matrix::Zero(2, 2);
    expect(0, 1) = expect(1, 0) = delta / 2.0;
    CHECK((dp - expect).cwiseAbs().maxCoeff() < 1e-7);
  }
}

TEST_CASE("derivative: beta and alpha parts sum to the total") {
  Rng rng(4);
  const auto a = random_hessian(rng, 3, 4, 0.7);
  const Matrix d = unit_delta(a, rng);
  const auto parts = derivative_parts(a, d, Sign::Plus);
  CHECK((parts.beta + parts.alpha - parts.total).cwiseAbs().maxCoeff() < 1e-12);
  // dΠ₋ = −dΠ₊ since Π₊ + Π₋ = Id.
  const Matrix dm = projection_derivative(a, d, Sign::Minus);
  CHECK((dm + parts.total).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("central differences converge at order two") {
  Rng rng(77);
  for (int trial = 0; trial < 5; ++trial) {
    const auto a = random_hessian(rng, 2 + trial, 3, 0.5 + trial);
    Matrix d = linalg::random_symmetric(a.dim(), rng);
    d /= opnorm(d);
    const Matrix exact = projection_derivative(a, d, Sign::Plus);
    std::vector<double> err;
    double eps = 0.02;
    for (int j = 0; j < 5; ++j, eps /= 2) {
      const auto ap = WeakHessian::from_matrix(a.matrix() + eps * d);
      const auto am = WeakHessian::from_matrix(a.matrix() - eps * d);
      err.push_back(opnorm((contour_projection(ap, Sign::Plus) - contour_projection(am, Sign::Plus)) / (2 * eps) - exact));
    }
    const double order = std::log2(err[3] / err[4]);
    CAPTURE(trial);
    CHECK(order >= 1.9);
  }
}

TEST_CASE("Neumann series matches the resolvent difference") {
  Rng rng(12);
  const auto a = random_hessian(rng, 2, 3, 1.0);
  Matrix d = linalg::random_symmetric(a.dim(), rng);
  d *= 0.1 / opnorm(d);
  const auto rep = neumann_difference_check(a, d, cplx(0.2, 0.5), 6);
  CHECK(rep.rho < 1.0);
  CHECK(rep.pass);
  CHECK(rep.residual <= rep.bound);
  for (std::size_t k = 1; k < rep.residual_by_k.size(); ++k) CHECK(rep.residual_by_k[k] < rep.residual_by_k[k - 1]);
  CHECK(kind_of([&] { neumann_difference_check(a, 100.0 * d, cplx(0.2, 0.5), 3); }) == ErrorKind::PreconditionViolation);
}

TEST_CASE("Hadamard kernel values") {
  CHECK(hadamard_q(1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(hadamard_q(1.0, -1.0) == doctest::Approx(kPi / 4).epsilon(1e-15));
  CHECK(hadamard_q(2.0, 3.0) == doctest::Approx((std::atan(3.0) - std::atan(2.0))));
  CHECK(hadamard_q(0.7, 0.7 + 1e-13) == doctest::Approx(1.0 / (1.0 + 0.49)));
}

TEST_CASE("beta block equals direct beta-segment quadrature") {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_hessian(rng, 1 + trial % 6, 1 + trial % 5, 0.2 + 0.1 * trial);
    const Matrix d = unit_delta(a, rng);
    const Matrix c = beta_block_hadamard(a, d);
    const Matrix q = beta_segment_quadrature(a, d);
    CHECK((c - q).cwiseAbs().maxCoeff() <= 1e-7);
    // In eigen coordinates the β part of the derivative is c.
    const Matrix beta = derivative_parts(a, d, Sign::Plus).beta;
    CHECK((a.basis().transpose() * beta * a.basis() - c).cwiseAbs().maxCoeff() <= 1e-7);
  }
}

TEST_CASE("block decomposition reassembles") {
  Rng rng(21);
  const auto a = random_hessian(rng, 3, 2, 0.5);
  const Matrix op = linalg::random_gaussian(5, 5, rng);
  for (double r : {0.0, 0.5, 1.5}) {
    const auto b = block_decompose(op, a, r);
    const Vector w = a.values().cwiseAbs().array().pow(r);
    const Matrix scaled = w.asDiagonal() * (a.basis().transpose() * op * a.basis()) * w.cwiseInverse().asDiagonal();
    CHECK((b.reassemble() - scaled).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(b.pp.rows() == 2);
    CHECK(b.mm.rows() == 3);
    CHECK(level_norm(op, a, r) <= b.norm_sum() * (1 + 1e-12));
    CHECK(level_norm(op, a, r) == doctest::Approx(opnorm(scaled)));
  }
}

TEST_CASE("half-level norm with unit weights is the spectral norm") {
  Rng rng(2);
  const Matrix m = linalg::random_gaussian(4, 4, rng);
  CHECK(half_level_norm(m, Vector::Ones(4), 0.5) == doctest::Approx(opnorm(m)));
  Vector w(2);
  w << 1, 4;
  Matrix e = Matrix::Zero(2, 2);
  e(0, 1) = 1;
  // D^{1/4} e D^{-1/4}: entry (0,1) scales by (1/4)^{1/4}.
  CHECK(half_level_norm(e, w, 0.5) == doctest::Approx(std::pow(0.25, 0.25)));
}

TEST_CASE("norm bounds hold over a sigma sweep") {
  Rng rng(31);
  std::uniform_int_distribution<int> size(1, 8);
  for (double s : {0.25, 0.5, 1.0, 2.0}) {
    for (int trial = 0; trial < 8; ++trial) {
      const auto a = random_hessian(rng, size(rng), size(rng), s);
      const Matrix d = unit_delta(a, rng);
      const auto al = alpha_bound_check(a, d, Sign::Plus);
      CHECK(al.pass);
      CHECK(al.bound == doctest::Approx((2 * s + 1) / (kPi * s * s)));
      CHECK(al.stein_consistent);
      const auto dp = dpi_half_bound_check(a, d);
      CHECK(dp.pass);
      CHECK(dp.beta_pm <= kPi / 2);
      CHECK(dp.beta_mp <= kPi / 2);
      CHECK(dp.total <= kPi + (4 * s + 2) / (kPi * s * s));
    }
  }
}

TEST_CASE("continuity on seeded pairs") {
  Rng rng(44);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_hessian(rng, 3, 4, 1.0);
    Matrix p = linalg::random_symmetric(a.dim(), rng);
    p *= 0.2 / opnorm(p);
    const auto b = WeakHessian::from_matrix(a.matrix() + p);
    const auto rep = projection_continuity_check(a, b);
    CHECK(rep.sigma0 > 0.0);
    CHECK(rep.pass_half);
    CHECK(rep.pass_three_half_shifted);
  }
}

TEST_CASE("level 3/2 against the H1->H0 norm fails for wide spectra") {
  // diag(1, -L) with a fixed off-diagonal perturbation: the literal ratio grows like sqrt(L).
  std::vector<double> ratio;
  for (double l : {10.0, 100.0, 1000.0}) {
    const auto a = WeakHessian::from_spectrum({-l}, {1.0});
    Matrix m = a.matrix();
    m(0, 1) = m(1, 0) = 0.05;
    const auto rep = projection_continuity_check(a, WeakHessian::from_matrix(m));
    ratio.push_back(rep.diff_three_half / rep.bound_three_half);
    CHECK(rep.pass_half);
    CHECK(rep.pass_three_half_shifted);
  }
  CHECK(ratio[0] < 1.0);
  CHECK(ratio[2] > 1.0);
  CHECK(ratio[2] / ratio[1] == doctest::Approx(std::sqrt(10.0)).epsilon(0.05));
}

TEST_CASE("a segment through a singular Hessian is a gap violation") {
  const auto a = WeakHessian::from_spectrum({-1}, {1});
  try {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = -1;
    m(1, 1) = -1;
    projection_continuity_check(a, WeakHessian::from_matrix(m));
    FAIL("expected a gap violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GapViolation);
    CHECK(std::string(e.what()).find("eigenvalue") != std::string::npos);
  }
}

TEST_CASE("restricted projections are isomorphisms inside the ball") {
  Rng rng(55);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_hessian(rng, 3, 3, 1.0);
    Matrix p = linalg::random_symmetric(a.dim(), rng);
    p *= 0.05 / opnorm(p);
    const auto rep = restricted_projection_iso_check(a, WeakHessian::from_matrix(a.matrix() + p));
    CHECK(rep.pass);
    CHECK(rep.eps_plus == doctest::Approx(0.25));
    CHECK(rep.dev_a_half <= 0.25);
    CHECK(rep.dev_b_half <= 0.5);
    CHECK(rep.rank_a == rep.rank_b);
  }
  const auto a = random_hessian(rng, 3, 3, 1.0);
  Matrix far = linalg::random_symmetric(6, rng);
  far *= 50.0 / opnorm(far);
  CHECK(kind_of([&] { restricted_projection_iso_check(a, WeakHessian::from_matrix(a.matrix() + far)); }) ==
        ErrorKind::PreconditionViolation);
}
