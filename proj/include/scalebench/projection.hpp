#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scalebench/hessian.hpp"
#include "scalebench/linalg.hpp"
#include "scalebench/quadrature.hpp"

namespace scalebench::projection {

using hessian::WeakHessian;

enum class Sign { Plus, Minus };
const char* to_string(Sign s);

struct Segment {
  cplx from;
  cplx to;
  std::string name;
  double length() const { return std::abs(to - from); }
};

// γ± = β # α±. β runs from i to −i for Π₊ (reversed for Π₋); α± is the
// right (left) half of the rectangle [−1−1/σ, 1+1/σ] × [−1, 1]. Both loops are
// traversed counterclockwise so that the i/2π prefactor yields +Π±.
struct Contour {
  double sigma = 1.0;
  Sign sign = Sign::Plus;
  Segment beta;
  std::vector<Segment> alpha;

  double alpha_length() const;
  bool closed() const;
};
Contour make_contour(double sigma, Sign sign);
// Numerical winding number of the closed contour around z.
int winding_number(const Contour& c, cplx z);

// (Id − ζA)⁻¹ by LU; throws ResolventPole near a pole 1/a_ℓ.
CMatrix resolvent_factor(const WeakHessian& a, cplx zeta);
// K_ζ(A) = A(Id − ζA)⁻¹.
CMatrix k_factor(const WeakHessian& a, cplx zeta);

struct QuadratureStats {
  int evaluations = 0;
  int beta_panels = 0;
  double beta_error_estimate = 0.0;
};

Matrix contour_projection(const WeakHessian& a, Sign sign, const QuadratureConfig& quad = {},
                          QuadratureStats* stats = nullptr);
Matrix eigenprojection_oracle(const WeakHessian& a, Sign sign);

// Split of (i/2π)∮ (Id−ζA)⁻¹Δ(Id−ζA)⁻¹ dζ into the β segment and the α arc.
struct DerivativeParts {
  Matrix beta;
  Matrix alpha;
  Matrix total;
};
DerivativeParts derivative_parts(const WeakHessian& a, const Matrix& delta, Sign sign,
                                 const QuadratureConfig& quad = {});
Matrix projection_derivative(const WeakHessian& a, const Matrix& delta, Sign sign,
                             const QuadratureConfig& quad = {});

struct NeumannReport {
  double rho = 0.0;                  // ‖ζΔ(Id−ζA)⁻¹‖
  std::vector<double> residual_by_k; // residual after k = 1..K terms
  double residual = 0.0;             // after K terms
  double bound = 0.0;                // ‖R‖‖ΔR‖ρ^K/(1−ρ)
  bool pass = false;
};
NeumannReport neumann_difference_check(const WeakHessian& a, const Matrix& delta, cplx zeta, int k);

// q(a,a') = (arctan a' − arctan a)/(a' − a), q(a,a) = 1/(1+a²).
double hadamard_q(double a, double b);
// c_{ℓm} = d_{ℓm} q(a_ℓ,a_m)/π in eigenbasis coordinates, d = VᵀΔV.
Matrix beta_block_hadamard(const WeakHessian& a, const Matrix& delta);
// Direct quadrature of the β part, expressed in eigenbasis coordinates.
Matrix beta_segment_quadrature(const WeakHessian& a, const Matrix& delta,
                               const QuadratureConfig& quad = {});

// Blocks w.r.t. H^± at a level of the A-norm scale, eigenbasis coordinates.
// Naming is target-source: `pm` maps H^− into H^+.
struct BlockOperator {
  Matrix pp, pm, mp, mm;
  Matrix reassemble() const;
  double norm_sum() const;
};
BlockOperator block_decompose(const Matrix& op, const WeakHessian& a, double level);

// Largest singular value of D^{r/2} Op D^{−r/2}.
double half_level_norm(const Matrix& op, const Vector& weights, double r);
double half_level_norm(const CMatrix& op, const Vector& weights, double r);
// Level-r norm in the A-norm scale: weights a_ℓ² in the eigenbasis.
double level_norm(const Matrix& op, const WeakHessian& a, double r);
double level_norm(const CMatrix& op, const WeakHessian& a, double r);
// ‖Δ‖_{H_{r+1} → H_r} in the A-norm scale.
double shifted_norm(const Matrix& delta, const WeakHessian& a, double r = 0.0);

struct AlphaBoundReport {
  double sigma = 0.0;
  double delta_norm = 0.0;           // ‖Δ‖_{H₁→H₀}
  double measured = 0.0;             // ‖T^α Δ‖ at level 1/2
  double bound = 0.0;                // (2σ+1)/(πσ²)·‖Δ‖
  double pointwise_max_ratio = 0.0;  // max over nodes and levels of ‖RΔR‖/(‖Δ‖/σ)
  std::optional<cplx> offending;
  bool stein_consistent = true;      // level-1/2 node norms satisfy the Stein bound
  bool pass = false;
};
AlphaBoundReport alpha_bound_check(const WeakHessian& a, const Matrix& delta, Sign sign,
                                   const QuadratureConfig& quad = {}, double slack = 1e-6);

struct DpiBoundReport {
  double sigma = 0.0;
  double delta_norm = 0.0;
  double total = 0.0;                // ‖dΠ₊Δ‖ at level 1/2
  double total_bound = 0.0;          // (π + (4σ+2)/(πσ²))‖Δ‖
  double alpha = 0.0;                // ‖T^{α+}Δ‖ at level 1/2
  double alpha_bound = 0.0;
  double beta_pm = 0.0;              // off-diagonal β blocks at level 1/2
  double beta_mp = 0.0;
  double beta_block_bound = 0.0;     // (π/2)‖Δ‖
  double diagonal_blocks = 0.0;      // max of ++ and −− block norms of dΠ₊Δ
  bool pass = false;
};
DpiBoundReport dpi_half_bound_check(const WeakHessian& a, const Matrix& delta,
                                    const QuadratureConfig& quad = {}, double slack = 1e-6);

struct ContinuityReport {
  double sigma0 = 0.0;               // certified uniform gap along the segment
  double delta_h1_h0 = 0.0;          // ‖B−A‖_{H₁→H₀}
  double delta_h2_h1 = 0.0;          // ‖B−A‖_{H₂→H₁}
  double constant = 0.0;             // π + (4σ₀+2)/(πσ₀²)
  double diff_half = 0.0;
  double diff_three_half = 0.0;
  double bound_half = 0.0;           // constant·‖B−A‖_{H₁→H₀}
  double bound_three_half = 0.0;     // constant·‖B−A‖_{H₁→H₀}
  double bound_three_half_shifted = 0.0;  // constant·‖B−A‖_{H₂→H₁}
  bool pass_half = false;
  bool pass_three_half = false;
  bool pass_three_half_shifted = false;
  bool pass = false;
};
ContinuityReport projection_continuity_check(const WeakHessian& a, const WeakHessian& b,
                                             const QuadratureConfig& quad = {},
                                             double slack = 1e-6, int sweep = 200);

struct RestrictedIsoReport {
  double eps_plus = 0.0;
  double pre_half = 0.0;        // ‖Π₊ᴮ − Π₊ᴬ‖ at level 1/2
  double pre_three_half = 0.0;
  double dev_a_half = 0.0;      // ‖Π₊ᴬ|_B ∘ Π₊ᴮ|_A − Id‖ on im Π₊ᴬ
  double dev_a_three_half = 0.0;
  double dev_b_half = 0.0;      // ‖Π₊ᴮ|_A ∘ Π₊ᴬ|_B − Id‖ on im Π₊ᴮ
  double dev_b_three_half = 0.0;
  Eigen::Index rank_a = 0;
  Eigen::Index rank_b = 0;
  double cond_half = 0.0;       // condition number of Π₊ᴮ|_A
  double cond_three_half = 0.0;
  bool pass = false;
};
// Throws PreconditionViolation when B lies outside the ε₊ ball.
RestrictedIsoReport restricted_projection_iso_check(const WeakHessian& a, const WeakHessian& b,
                                                    const QuadratureConfig& quad = {});

}  // namespace scalebench::projection
