#pragma once

#include <cstddef>
#include <string>

#include "scalebench/growth.hpp"
#include "scalebench/linalg.hpp"

namespace scalebench::pair {

// H_r = ℓ²_{h^r} on a window of length N.
struct HilbertScale {
  Vector h;
  double level = 0.0;

  static HilbertScale from_sample(const growth::GrowthSample& s, double level = 0.0);
  Vector weights() const;  // h^r
  void validate() const;
};

double inner_product(const Vector& x, const Vector& y, const HilbertScale& scale);
double norm(const Vector& x, const HilbertScale& scale);

struct GramPair {
  Matrix g0;
  Matrix g1;

  Eigen::Index n() const { return g0.rows(); }
  // Symmetry to 1e-12 relative and positive definiteness.
  void validate() const;
  static GramPair from_weights(const Vector& h);  // G0 = I, G1 = diag(h)
};

struct PairMap {
  Matrix t;
  std::string source;
  std::string target;
};

// x_ν ↦ h(ν)^{−r/2} x_ν, an isometry (H₀,H₁) → (H_r,H_{r+1}).
PairMap level_shift_isometry(const HilbertScale& scale, double r);

// Largest relative defect of TᵀG_tT against G_s at each of the two levels.
struct IsometryDefect {
  double level0 = 0.0;
  double level1 = 0.0;
  double max() const { return std::max(level0, level1); }
};
IsometryDefect isometry_defect(const Matrix& t, const GramPair& source, const GramPair& target);

// T with ⟨ξ,η⟩₀ = ⟨ξ,Tη⟩₁, i.e. G1 T = G0 (solved, never inverted).
Matrix riesz_operator(const GramPair& pair);

struct PairGrowth {
  growth::GrowthSample h;  // 1/κ_ν, non-decreasing
  Vector kappa;            // non-increasing
  PairMap basis;           // columns e_ν = κ_ν^{−1/2} E_ν
  bool degenerate = false; // all κ equal
};
PairGrowth extract_pair_growth(const GramPair& pair);

struct PairIsoReport {
  double norm_t = 0.0;        // ‖T‖ on ℓ²
  double norm_t_inv = 0.0;    // ‖T⁻¹‖ on ℓ²
  double norm_t_fg = 0.0;     // ‖T‖_{ℓ²_f → ℓ²_g}
  double norm_t_inv_gf = 0.0; // ‖T⁻¹‖_{ℓ²_g → ℓ²_f}
  double c0 = 1.0;
  double c = 1.0;             // c₀⁴
  double max_log_ratio = 0.0; // max |log g − log f|
  bool inequality_holds = false;
  double c0_half = 1.0;       // c₀ on the leading half window
  bool c0_diverging = false;  // c₀ grew by more than 1% from N/2 to N
  double identity_constant = 1.0;  // max(‖I‖_{f→g}, ‖I‖_{g→f})
  bool identity_certified = false; // identity is a pair isomorphism with c ≤ cap, stable
};

PairIsoReport pair_isomorphism_equivalence_check(const growth::GrowthSample& f,
                                                 const growth::GrowthSample& g, const Matrix& t,
                                                 std::size_t n, double c_cap = 1e6);

// ‖id: H_r → H_s‖ = max h^{(s−r)/2}.
double inclusion_norm(const Vector& h, double r, double s);

}  // namespace scalebench::pair
