#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "scalebench/error.hpp"
#include "scalebench/schur.hpp"

using namespace scalebench;
using namespace scalebench::schur;

namespace {

constexpr double kPi = std::numbers::pi;

Vector seq(Rng& rng, Eigen::Index n) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = std::exp(u(rng));
  return v;
}

double schur_ratio(const Matrix& b, const Matrix& a) {
  return linalg::spectral_norm(hadamard(a, b)) / linalg::spectral_norm(a);
}

}  // namespace

TEST_CASE("generators evaluate 1-based closed forms") {
  const auto ob = SchurMatrix::obstruction();
  CHECK(ob(1, 1) == 0.5);
  CHECK(ob(3, 1) == 0.75);
  const Matrix w = ob.window(2, 3);
  CHECK(w(1, 2) == doctest::Approx(2.0 / 5.0));
  auto id = [](std::int64_t k) { return static_cast<double>(k); };
  const auto cor = SchurMatrix::corollary(id, id);
  CHECK(cor(2, 8) == doctest::Approx(4.0 / 10.0));
  const auto e3 = SchurMatrix::example_iii(id, id);
  CHECK(e3(1, 1) == doctest::Approx(0.5 * 2 * std::atan(1.0)));
  CHECK(SchurMatrix::constant(2.5)(7, 9) == 2.5);
  CHECK(ob.provenance() == Provenance::Obstruction);
}

TEST_CASE("hadamard product checks shapes") {
  const Matrix a = Matrix::Constant(2, 3, 2.0), b = Matrix::Constant(2, 3, 0.5);
  CHECK(hadamard(a, b).isApproxToConstant(1.0));
  CHECK_THROWS_AS(hadamard(a, Matrix::Ones(3, 2)), Error);
  CHECK(hadamard(a, SchurMatrix::constant(3.0)).isApproxToConstant(6.0));
}

TEST_CASE("factorization certificates reproduce entries") {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Vector a = seq(rng, 7), b = seq(rng, 5);
    const auto cm = corollary_matrix(a, b);
    CHECK_NOTHROW(cm.certificate.verify(cm.window, 1e-10));
    CHECK(cm.certificate.bound() <= 0.5 * (1 + 1e-9));
    for (Eigen::Index i = 0; i < 7; ++i)
      for (Eigen::Index j = 0; j < 5; ++j)
        CHECK(cm.window(i, j) == doctest::Approx(std::sqrt(a(i) * b(j)) / (a(i) + b(j))));
    const auto e3 = example_iii_matrix(a, b);
    CHECK_NOTHROW(e3.certificate.verify(e3.window, 1e-10));
    CHECK(e3.nominal_bound == doctest::Approx(kPi / 2));
    CHECK(e3.certificate.bound() <= kPi / 2 * (1 + 1e-9));
    CHECK_NOTHROW(example_i_matrix(a, b).certificate.verify(example_i_matrix(a, b).window, 1e-10));
    CHECK_NOTHROW(example_ii_matrix(a, b).certificate.verify(example_ii_matrix(a, b).window, 1e-10));
  }
}

TEST_CASE("tampered certificates are rejected") {
  const auto cm = corollary_matrix(Vector::LinSpaced(3, 1, 3), Vector::LinSpaced(3, 1, 3));
  Matrix wrong = cm.window;
  wrong(0, 0) += 1e-6;
  try {
    cm.certificate.verify(wrong);
    FAIL("expected mismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CertificateMismatch);
  }
  CHECK_THROWS_AS(corollary_matrix(Vector::Constant(2, -1.0), Vector::Ones(2)), Error);
}

TEST_CASE("certificate sum and tensor") {
  const auto x = FactorizationCertificate::from_vectors(Matrix::Identity(2, 2), 2.0 * Matrix::Identity(2, 2));
  const auto y = FactorizationCertificate::from_vectors(Matrix::Ones(1, 2), Matrix::Ones(1, 2));
  const auto s = certificate_sum(x, y);
  CHECK((s.entries() - (x.entries() + y.entries())).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(s.kappa1 == doctest::Approx(s.kappa2));
  const auto t = certificate_tensor(x, y);
  CHECK((t.entries() - x.entries().cwiseProduct(y.entries())).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(t.bound() == doctest::Approx(x.bound() * y.bound()));
}

TEST_CASE("Schur's L2 criterion for exponentials matches the closed form") {
  const Vector a = Vector::LinSpaced(4, 0.5, 4.0), b = Vector::LinSpaced(3, 1.0, 9.0);
  std::vector<L2Function> fs, gs;
  for (Eigen::Index j = 0; j < b.size(); ++j) {
    const double x = b(j);
    fs.push_back([x](double s) { return std::sqrt(x) * std::exp(-x * s); });
  }
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double x = a(i);
    gs.push_back([x](double s) { return std::sqrt(x) * std::exp(-x * s); });
  }
  const auto res = schur_from_l2(fs, gs, {}, 0.5);
  CHECK((res.b - corollary_matrix(a, b).window).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(res.max_f_norm_sq == doctest::Approx(0.5));
  CHECK_THROWS_AS(schur_from_l2(fs, gs, {}, 0.4), Error);
  // Finite interval: indicator-like functions.
  std::vector<L2Function> ones{[](double) { return 1.0; }};
  const auto fin = schur_from_l2(ones, ones, {0.0, 2.0}, 2.0);
  CHECK(fin.b(0, 0) == doctest::Approx(2.0));
}

TEST_CASE("lower bounds never exceed certified upper bounds") {
  Rng rng(19);
  for (Eigen::Index n : {4, 16, 48}) {
    const Vector a = seq(rng, n), b = seq(rng, n);
    for (const auto& cm : {corollary_matrix(a, b), example_iii_matrix(a, b)}) {
      const auto lb = schur_norm_lower_bound(cm.window);
      CHECK(lb.value <= cm.nominal_bound * (1 + 1e-9));
      CHECK(schur_ratio(cm.window, lb.witness) == doctest::Approx(lb.value).epsilon(1e-9));
      const auto up = grothendieck_upper_bound(cm.certificate, cm.window);
      CHECK(up.pass);
      CHECK(up.max_probe_ratio <= up.bound * (1 + 1e-9));
    }
  }
}

TEST_CASE("the corollary bound 1/2 is attained on the diagonal") {
  const auto cm = corollary_matrix(Vector::LinSpaced(8, 1, 8), Vector::LinSpaced(8, 1, 8));
  CHECK(schur_norm_lower_bound(cm.window).value == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("constant multipliers have norm |c|") {
  CHECK(schur_norm_lower_bound(SchurMatrix::constant(-3.0), 6).value == doctest::Approx(3.0));
}

TEST_CASE("warm starts carry over along nested windows") {
  ProbeConfig cfg;
  const auto ob = SchurMatrix::obstruction();
  const auto small = schur_norm_lower_bound(ob, 8, cfg);
  const auto big = schur_norm_lower_bound(ob, 16, cfg, &small);
  CHECK(big.value >= small.value);
  CHECK(big.witness.rows() == 16);
}

TEST_CASE("probe set is normalized and deterministic") {
  ProbeConfig cfg;
  const auto p1 = probe_set(6, cfg), p2 = probe_set(6, cfg);
  REQUIRE(p1.size() == p2.size());
  for (std::size_t i = 0; i < p1.size(); ++i) {
    CHECK(p1[i].first == p2[i].first);
    CHECK(p1[i].second == p2[i].second);
    CHECK(linalg::spectral_norm(p1[i].second) == doctest::Approx(1.0));
  }
}

TEST_CASE("Aitken extrapolation") {
  // Geometric convergence is extrapolated exactly.
  CHECK(aitken(1.5, 1.25, 1.125) == doctest::Approx(1.0));
  CHECK(aitken(2.0, 2.0, 2.0) == 2.0);
}

TEST_CASE("iterated limits") {
  const auto ob = iterated_limits_check(SchurMatrix::obstruction());
  CHECK(ob.converged);
  CHECK(ob.obstruction);
  CHECK(ob.gap == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(ob.l1 == doctest::Approx(0.0).epsilon(1e-3));
  const auto c = iterated_limits_check(SchurMatrix::constant(0.7));
  CHECK(c.converged);
  CHECK_FALSE(c.obstruction);
  CHECK(c.gap < 1e-9);
}

TEST_CASE("obstruction demo grows without bound on the schedule") {
  const auto rep = obstruction_demo({1, 2, 4, 8, 16, 32, 64, 128});
  CHECK(rep.non_decreasing);
  REQUIRE(rep.rows.size() == 8);
  CHECK(rep.rows.front().lower_bound == doctest::Approx(0.5));
  CHECK(rep.rows.back().lower_bound > 1.0);
  for (std::size_t i = 1; i < rep.rows.size(); ++i) CHECK(rep.rows[i].lower_bound >= rep.rows[i - 1].lower_bound);
  CHECK(rep.limits.gap == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(obstruction_to_csv(rep).rfind("n,lower_bound,gap_witness\n", 0) == 0);
}
