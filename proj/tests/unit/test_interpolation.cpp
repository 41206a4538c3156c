#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "scalebench/error.hpp"
#include "scalebench/growth_spec.hpp"
#include "scalebench/interpolation.hpp"

using namespace scalebench;
using namespace scalebench::interpolation;

namespace {

WeightedNormContext ctx(const char* f, const char* g, std::size_t n) {
  return WeightedNormContext::from_samples(growth::sample(growth::parse_spec(f), n),
                                           growth::sample(growth::parse_spec(g), n));
}

}  // namespace

TEST_CASE("levels") {
  CHECK(exponent(Level::Half) == 0.5);
  CHECK(level_from_double(1.0) == Level::One);
  CHECK_THROWS_AS(level_from_double(0.3), Error);
}

TEST_CASE("level 0 is the plain spectral norm") {
  Rng rng(1);
  const Matrix t = linalg::random_gaussian(6, 6, rng);
  CHECK(weighted_operator_norm(t, ctx("pow:2", "pow:3", 6), Level::Zero) ==
        doctest::Approx(linalg::spectral_norm(t)));
}

TEST_CASE("diagonal operators: closed form and Stein equality") {
  const auto c = ctx("pow:2", "pow:3", 10);
  Vector d(10);
  for (int i = 0; i < 10; ++i) d(i) = 1.0 / (i + 1.0);
  const Matrix t = d.asDiagonal();
  // ‖D_g^{1/2} T D_f^{−1/2}‖ = max d_i √(g_i/f_i) = max d_i √i = 1.
  CHECK(weighted_operator_norm(t, c, Level::One) == doctest::Approx(1.0));
  const auto rep = stein_check(t, c);
  CHECK(rep.pass);
  CHECK(std::abs(rep.m_half - rep.bound) <= 1e-12 * rep.bound);
  Matrix id = Matrix::Identity(10, 10);
  const auto same = stein_check(id, ctx("pow:2", "pow:2", 10));
  CHECK(same.m_half == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(same.bound == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Stein inequality over a seeded sweep") {
  const auto rows = stein_sweep(ctx("pow:2", "pow:3", 30), 200, 42);
  REQUIRE(rows.size() == 200);
  int violations = 0;
  for (const auto& r : rows) {
    violations += !r.report.pass;
    CHECK(r.report.m_half <= r.report.bound * (1 + 1e-10));
  }
  CHECK(violations == 0);
  CHECK(rows[3].seed == 45);
  CHECK(sweep_to_csv(rows).rfind("seed,M0,M1,Mhalf,bound,slack\n", 0) == 0);
}

TEST_CASE("sweeps are deterministic") {
  const auto c = ctx("pow:1", "exp:2", 12);
  const auto a = stein_sweep(c, 10, 7), b = stein_sweep(c, 10, 7);
  CHECK(sweep_to_csv(a) == sweep_to_csv(b));
}

TEST_CASE("complex operators") {
  Rng rng(4);
  const CMatrix t = linalg::random_gaussian(5, 5, rng).cast<cplx>() * cplx(0.0, 1.0) +
                    linalg::random_gaussian(5, 5, rng).cast<cplx>();
  const auto rep = stein_check(t, ctx("pow:1", "pow:4", 5));
  CHECK(rep.pass);
}

TEST_CASE("context validation") {
  WeightedNormContext bad{Vector::Ones(3), Vector::Ones(2)};
  CHECK_THROWS_AS(bad.validate(), Error);
  CHECK_THROWS_AS(weighted_operator_norm(Matrix(Matrix::Ones(2, 2)), ctx("pow:1", "pow:1", 3), Level::Half), Error);
}
