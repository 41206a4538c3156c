#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "scalebench/error.hpp"
#include "scalebench/growth_spec.hpp"
#include "scalebench/hessian.hpp"

using namespace scalebench;
using namespace scalebench::hessian;

TEST_CASE("canonical eigenvalue order") {
  const auto a = WeakHessian::from_spectrum({-5, -2}, {3, 1});
  CHECK(a.positives() == std::vector<double>{1, 3});
  CHECK(a.negatives() == std::vector<double>{-2, -5});
  CHECK(a.a(1) == 1.0);
  CHECK(a.a(-2) == -5.0);
  CHECK(a.sigma() == 1.0);
  CHECK_THROWS_AS(a.a(3), Error);
  CHECK((a.matrix() * a.basis() - a.basis() * a.values().asDiagonal()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("from_spectrum rejects zeros and inconsistent declared types") {
  CHECK_THROWS_AS(WeakHessian::from_spectrum({-1, 0}, {1}), Error);
  CHECK_THROWS_AS(WeakHessian::from_spectrum({}, {1, 2}, std::nullopt, std::nullopt, HessianType::Floer), Error);
  CHECK_THROWS_AS(WeakHessian::from_spectrum({-1}, {}, std::nullopt, std::nullopt, HessianType::Morse), Error);
  const auto morse = WeakHessian::from_spectrum({}, {1, 2});
  CHECK(morse.declared_type() == HessianType::Morse);
  CHECK(morse.n_neg() == 0);
  Matrix skew(2, 2);
  skew << 1, 2, 0, 1;
  CHECK_THROWS_AS(WeakHessian::from_spectrum({-1}, {1}, skew), Error);
}

TEST_CASE("from_matrix round-trips and tolerates zeros") {
  Rng rng(2);
  const auto a = random_hessian(rng, 3, 4, 0.5);
  const auto b = WeakHessian::from_matrix(a.matrix());
  CHECK(b.positives().size() == 4);
  CHECK(b.sigma() == doctest::Approx(0.5));
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = 2;
  m(1, 1) = -1;
  const auto s = WeakHessian::from_matrix(m);
  CHECK(s.n_zero() == 1);
  CHECK_FALSE(s.invertible());
}

TEST_CASE("signed growth merge identity") {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_hessian(rng, 1 + trial % 5, 1 + trial % 7, 0.3);
    const auto sg = signed_growth(a);
    CHECK(sg.merge_identity_exact);
    CHECK(sg.total.size() == static_cast<std::size_t>(a.dim()));
    CHECK(sg.total.value(1) == doctest::Approx(0.09));
  }
}

TEST_CASE("translation shifts the spectrum") {
  const auto a = WeakHessian::from_spectrum({-2}, {1, 3});
  const auto t = translate(a, 2.0);
  std::vector<double> v(t.values().data(), t.values().data() + t.dim());
  std::sort(v.begin(), v.end());
  CHECK(v == std::vector<double>{-4, -1, 1});
}

TEST_CASE("translation growth equivalence over all proof cases") {
  const HessianFamily fam{growth::parse_spec("pow:1"), growth::parse_spec("pow:1"), HessianType::Floer};
  std::set<int> cases;
  for (int k = 0; k < 20; ++k) {
    const double lambda = -9.3 + k;
    const auto rep = verify_translation_growth_equivalence(fam, lambda, 200);
    CAPTURE(lambda);
    CHECK(rep.pass);
    CHECK(rep.plus.report.verdict == growth::Verdict::EquivalentOnWindow);
    CHECK(rep.minus.report.verdict == growth::Verdict::EquivalentOnWindow);
    CHECK(rep.plus.report.c_estimate <= rep.plus.proof_constant * (1 + 1e-12));
    CHECK(rep.minus.report.c_estimate <= rep.minus.proof_constant * (1 + 1e-12));
    cases.insert(rep.plus.proof_case);
    cases.insert(rep.minus.proof_case);
  }
  CHECK(cases == std::set<int>{1, 2, 3});
  CHECK_THROWS_AS(verify_translation_growth_equivalence(fam, 2.0, 200), Error);
}

TEST_CASE("non shift-invariant families are rejected") {
  const HessianFamily fam{growth::parse_spec("expsq:e"), growth::parse_spec("pow:1"), HessianType::Floer};
  CHECK_THROWS_AS(verify_translation_growth_equivalence(fam, 0.5, 100), Error);
}

TEST_CASE("resolvent norms: diagonal formula") {
  const auto a = WeakHessian::from_spectrum({-2}, {1, 3});
  const auto r = resolvent_level_norms(a, 0.5);
  REQUIRE(r.diagonal_formula);
  // max |a|/|a − λ| over the spectrum.
  CHECK(*r.diagonal_formula == doctest::Approx(2.0));
  CHECK(r.norm_h1_to_h2 == doctest::Approx(*r.diagonal_formula));
  CHECK(r.eigenspaces_coincide);
  CHECK(r.fredholm_index_zero);
  CHECK_THROWS_AS(resolvent_level_norms(a, 1.0), Error);
}

TEST_CASE("path crossings") {
  Matrix from = Matrix::Identity(3, 3), to = Matrix::Identity(3, 3);
  to(0, 0) = -1;
  to(1, 1) = -2;
  const auto rep = path_type_demo(linear_path(from, to, 40));
  CHECK(rep.net_crossings == -2);
  CHECK(rep.signature_change == -4);
  CHECK(rep.total_crossings >= 2);
  CHECK(rep.parity_consistent);
  CHECK(rep.samples.front().n_pos == 3);
  CHECK(rep.samples.back().n_neg == 2);
}

TEST_CASE("random Hessians have the requested gap") {
  Rng rng(1);
  for (double s : {0.1, 1.0, 4.0}) {
    const auto a = random_hessian(rng, 4, 5, s);
    CHECK(a.sigma() == doctest::Approx(s));
    CHECK((a.basis().transpose() * a.basis() - Matrix::Identity(9, 9)).cwiseAbs().maxCoeff() < 1e-12);
  }
}
