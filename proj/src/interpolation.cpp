#include "scalebench/interpolation.hpp"

#include <cmath>
#include <sstream>

#include "scalebench/error.hpp"
#include "scalebench/growth_spec.hpp"

namespace scalebench::interpolation {

double exponent(Level level) {
  switch (level) {
    case Level::Zero: return 0.0;
    case Level::Half: return 0.5;
    case Level::One: return 1.0;
  }
  return 0.0;
}

Level level_from_double(double r) {
  if (r == 0.0) return Level::Zero;
  if (r == 0.5) return Level::Half;
  if (r == 1.0) return Level::One;
  throw Error(ErrorKind::InvalidArgument, "level must be one of 0, 0.5, 1");
}

WeightedNormContext WeightedNormContext::from_samples(const growth::GrowthSample& f,
                                                      const growth::GrowthSample& g) {
  WeightedNormContext c;
  c.f = Eigen::Map<const Vector>(f.values.data(), static_cast<Eigen::Index>(f.size()));
  c.g = Eigen::Map<const Vector>(g.values.data(), static_cast<Eigen::Index>(g.size()));
  c.validate();
  return c;
}

void WeightedNormContext::validate() const {
  if (f.size() != g.size()) throw Error(ErrorKind::DimensionMismatch, "source and target windows differ");
  if (f.size() && (f.minCoeff() <= 0.0 || g.minCoeff() <= 0.0))
    throw Error(ErrorKind::InvalidArgument, "weights must be positive");
}

namespace {

template <class M>
double norm_impl(const M& t, const WeightedNormContext& ctx, Level level) {
  ctx.validate();
  if (t.rows() != ctx.g.size() || t.cols() != ctx.f.size())
    throw Error(ErrorKind::DimensionMismatch, "operator does not match the weight window");
  const double r = exponent(level);
  const Vector left = ctx.g.array().pow(r / 2.0);
  const Vector right = ctx.f.array().pow(-r / 2.0);
  return linalg::scaled_spectral_norm(t, left, right);
}

template <class M>
SteinReport stein_impl(const M& t, const WeightedNormContext& ctx, double rel_tol) {
  SteinReport r;
  r.m0 = norm_impl(t, ctx, Level::Zero);
  r.m1 = norm_impl(t, ctx, Level::One);
  r.m_half = norm_impl(t, ctx, Level::Half);
  r.bound = std::sqrt(r.m0 * r.m1);
  r.slack = r.bound > 0.0 ? r.m_half / r.bound - 1.0 : (r.m_half > 0.0 ? INFINITY : 0.0);
  r.pass = r.slack <= rel_tol;
  return r;
}

}  // namespace

double weighted_operator_norm(const Matrix& t, const WeightedNormContext& ctx, Level level) {
  return norm_impl(t, ctx, level);
}
double weighted_operator_norm(const CMatrix& t, const WeightedNormContext& ctx, Level level) {
  return norm_impl(t, ctx, level);
}

SteinReport stein_check(const Matrix& t, const WeightedNormContext& ctx, double rel_tol) {
  return stein_impl(t, ctx, rel_tol);
}
SteinReport stein_check(const CMatrix& t, const WeightedNormContext& ctx, double rel_tol) {
  return stein_impl(t, ctx, rel_tol);
}

std::vector<SteinSweepRow> stein_sweep(const WeightedNormContext& ctx, int trials,
                                       std::uint64_t base_seed, double rel_tol) {
  std::vector<SteinSweepRow> rows;
  rows.reserve(static_cast<std::size_t>(std::max(trials, 0)));
  const Eigen::Index n = ctx.window();
  for (int i = 0; i < trials; ++i) {
    const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(i);
    Rng rng(seed);
    const Matrix t = linalg::random_gaussian(n, n, rng);
    rows.push_back({seed, stein_check(t, ctx, rel_tol)});
  }
  return rows;
}

std::string sweep_to_csv(const std::vector<SteinSweepRow>& rows) {
  using growth::format_number;
  std::ostringstream os;
  os << "seed,M0,M1,Mhalf,bound,slack\n";
  for (const auto& r : rows)
    os << r.seed << "," << format_number(r.report.m0) << "," << format_number(r.report.m1) << ","
       << format_number(r.report.m_half) << "," << format_number(r.report.bound) << ","
       << format_number(r.report.slack) << "\n";
  return os.str();
}

}  // namespace scalebench::interpolation
