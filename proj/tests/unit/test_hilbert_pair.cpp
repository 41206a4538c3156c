#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "scalebench/error.hpp"
#include "scalebench/growth_spec.hpp"
#include "scalebench/hilbert_pair.hpp"

using namespace scalebench;
using namespace scalebench::pair;

namespace {

Vector sorted_weights(Rng& rng, Eigen::Index n) {
  std::uniform_real_distribution<double> u(0.0, 2.0);
  Vector h(n);
  h(0) = 1.0 + u(rng);
  for (Eigen::Index i = 1; i < n; ++i) h(i) = h(i - 1) * (1.0 + u(rng));
  return h;
}

}  // namespace

TEST_CASE("weighted inner product and norm") {
  const HilbertScale sc{Vector::LinSpaced(3, 1.0, 3.0), 1.0};
  Vector x(3), y(3);
  x << 1, 1, 1;
  y << 1, 2, 3;
  CHECK(inner_product(x, y, sc) == doctest::Approx(1 + 4 + 9));
  CHECK(norm(x, sc) == doctest::Approx(std::sqrt(6.0)));
  CHECK_THROWS_AS(inner_product(Vector::Ones(2), y, sc), Error);
}

TEST_CASE("scale validation") {
  Vector bad(3);
  bad << 1, 3, 2;
  CHECK_THROWS_AS((HilbertScale{bad, 0.0}.validate()), Error);
  const auto s = HilbertScale::from_sample(growth::sample(growth::parse_spec("pow:2"), 4), 0.5);
  CHECK(s.weights()(3) == doctest::Approx(4.0));
}

TEST_CASE("level shift is an isometry onto the shifted pair") {
  Rng rng(3);
  for (double r : {0.5, 1.0, 2.5}) {
    const Vector h = sorted_weights(rng, 7);
    const auto m = level_shift_isometry({h, 0.0}, r);
    const GramPair target{h.array().pow(r).matrix().asDiagonal(), h.array().pow(r + 1.0).matrix().asDiagonal()};
    CHECK(isometry_defect(m.t, GramPair::from_weights(h), target).max() < 1e-14);
  }
}

TEST_CASE("Riesz operator solves G1 T = G0") {
  Rng rng(5);
  const Matrix q = linalg::random_orthogonal(6, rng);
  const Vector h = sorted_weights(rng, 6);
  const GramPair gp{Matrix::Identity(6, 6), q * h.asDiagonal() * q.transpose()};
  const Matrix t = riesz_operator(gp);
  CHECK((gp.g1 * t - gp.g0).cwiseAbs().maxCoeff() < 1e-12);
  const Vector x = Vector::Random(6), y = Vector::Random(6);
  CHECK(x.dot(gp.g0 * y) == doctest::Approx(x.dot(gp.g1 * (t * y))));
}

TEST_CASE("pair growth extraction recovers h, invariant under conjugation") {
  Rng rng(7);
  for (Eigen::Index n : {5, 10, 20}) {
    for (int trial = 0; trial < 10; ++trial) {
      const Vector h = sorted_weights(rng, n);
      const auto plain = extract_pair_growth(GramPair::from_weights(h));
      for (Eigen::Index i = 0; i < n; ++i)
        REQUIRE(std::abs(plain.h.values[i] - h(i)) <= 1e-9 * h(i));
      // Congruence by an invertible S maps the pair isometrically.
      Matrix s = linalg::random_orthogonal(n, rng) + 0.3 * linalg::random_gaussian(n, n, rng) / std::sqrt(double(n));
      const GramPair bent{s.transpose() * s, s.transpose() * h.asDiagonal() * s};
      const auto conj = extract_pair_growth(bent);
      for (Eigen::Index i = 0; i < n; ++i)
        REQUIRE(std::abs(conj.h.values[i] - h(i)) <= 1e-7 * h(i));
      // Basis vectors are orthonormal in G0 and diagonalize G1 with entries h.
      const Matrix e = conj.basis.t;
      CHECK((e.transpose() * bent.g0 * e - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-8);
      const Vector hv = Eigen::Map<const Vector>(conj.h.values.data(), n);
      CHECK(((e.transpose() * bent.g1 * e) - Matrix(hv.asDiagonal())).cwiseAbs().maxCoeff() < 1e-7 * h(n - 1));
    }
  }
}

TEST_CASE("degenerate pairs are flagged") {
  const auto pg = extract_pair_growth(GramPair::from_weights(Vector::Constant(4, 2.0)));
  CHECK(pg.degenerate);
}

TEST_CASE("Gram validation rejects asymmetric and indefinite input") {
  Matrix g0 = Matrix::Identity(2, 2);
  Matrix asym(2, 2);
  asym << 1, 0.5, 0, 1;
  CHECK_THROWS_AS(extract_pair_growth({g0, asym}), Error);
  Matrix indef(2, 2);
  indef << 1, 0, 0, -1;
  try {
    extract_pair_growth({g0, indef});
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPositiveDefinite);
  }
}

TEST_CASE("pair isomorphism check") {
  const std::size_t n = 40;
  const auto f = growth::sample(growth::parse_spec("pow:1"), n);
  const auto same = pair_isomorphism_equivalence_check(f, f, Matrix::Identity(n, n), n);
  CHECK(same.identity_certified);
  CHECK(same.c0 == doctest::Approx(1.0));
  CHECK(same.inequality_holds);

  const auto twice = growth::sample(growth::parse_spec("offset(pow:1,1)"), n);
  const auto near = pair_isomorphism_equivalence_check(f, twice, Matrix::Identity(n, n), n);
  CHECK(near.identity_certified);
  CHECK(near.identity_constant == doctest::Approx(std::sqrt(2.0)));

  const auto g = growth::sample(growth::parse_spec("exp:e"), n);
  const auto far = pair_isomorphism_equivalence_check(f, g, Matrix::Identity(n, n), n);
  CHECK_FALSE(far.identity_certified);
  CHECK(far.c0_diverging);
  // On a finite window the inequality always holds with the window's c0.
  CHECK(far.inequality_holds);
  CHECK_THROWS_AS(pair_isomorphism_equivalence_check(f, f, Matrix::Zero(n, n), n), Error);
}

TEST_CASE("inclusion norms") {
  Vector h(3);
  h << 1, 4, 9;
  CHECK(inclusion_norm(h, 1.0, 0.0) == doctest::Approx(1.0));
  CHECK(inclusion_norm(h, 0.0, 1.0) == doctest::Approx(3.0));
}
