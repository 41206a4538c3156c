#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scalebench/growth.hpp"
#include "scalebench/linalg.hpp"

namespace scalebench::interpolation {

enum class Level { Zero, Half, One };
double exponent(Level level);
Level level_from_double(double r);

// Source weights f and target weights g of ℓ²_f → ℓ²_g.
struct WeightedNormContext {
  Vector f;
  Vector g;

  static WeightedNormContext from_samples(const growth::GrowthSample& f,
                                          const growth::GrowthSample& g);
  Eigen::Index window() const { return f.size(); }
  void validate() const;
};

// Largest singular value of D_g^{r/2} T D_f^{−r/2}.
double weighted_operator_norm(const Matrix& t, const WeightedNormContext& ctx, Level level);
double weighted_operator_norm(const CMatrix& t, const WeightedNormContext& ctx, Level level);

struct SteinReport {
  double m0 = 0.0;
  double m1 = 0.0;
  double m_half = 0.0;
  double bound = 0.0;  // √(M₀M₁)
  double slack = 0.0;  // M_{1/2}/bound − 1; ≤ tolerance means pass
  bool pass = false;
};

SteinReport stein_check(const Matrix& t, const WeightedNormContext& ctx, double rel_tol = 1e-10);
SteinReport stein_check(const CMatrix& t, const WeightedNormContext& ctx, double rel_tol = 1e-10);

struct SteinSweepRow {
  std::uint64_t seed;
  SteinReport report;
};

// Seeded Gaussian operators at window n; trial i uses seed base_seed + i.
std::vector<SteinSweepRow> stein_sweep(const WeightedNormContext& ctx, int trials,
                                       std::uint64_t base_seed, double rel_tol = 1e-10);
std::string sweep_to_csv(const std::vector<SteinSweepRow>& rows);

}  // namespace scalebench::interpolation
