#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "scalebench/growth.hpp"
#include "scalebench/linalg.hpp"

namespace scalebench::hessian {

enum class HessianType { Morse, CoMorse, Floer };
const char* to_string(HessianType t);
HessianType hessian_type_from_string(const std::string& s);

// Finite truncated weak Hessian M = V diag(a) Vᵀ.
// Column order of V: positives ascending (ℓ = 1, 2, …), then negatives by
// decreasing value (ℓ = −1, −2, …), then zeros (singular values only).
class WeakHessian {
 public:
  // negatives < 0 < positives, any order; default basis is the identity and
  // default scale weights are h ≡ 1. Zero entries are rejected.
  static WeakHessian from_spectrum(std::vector<double> negatives, std::vector<double> positives,
                                   std::optional<Matrix> basis = std::nullopt,
                                   std::optional<Vector> scale = std::nullopt,
                                   std::optional<HessianType> type = std::nullopt);
  // Accepts zero eigenvalues; for translation and path experiments.
  static WeakHessian from_eigenpairs(const Vector& values, const Matrix& basis, const Vector& scale,
                                     HessianType type);
  // Eigen-decomposes a symmetric matrix (singular allowed).
  static WeakHessian from_matrix(const Matrix& m, std::optional<Vector> scale = std::nullopt,
                                 HessianType type = HessianType::Floer);

  const Vector& values() const { return values_; }
  const Matrix& basis() const { return basis_; }
  const Vector& scale() const { return scale_; }
  HessianType declared_type() const { return type_; }

  Eigen::Index dim() const { return values_.size(); }
  Eigen::Index n_pos() const { return n_pos_; }
  Eigen::Index n_neg() const { return n_neg_; }
  Eigen::Index n_zero() const { return dim() - n_pos_ - n_neg_; }
  bool invertible() const { return n_zero() == 0; }
  void require_invertible(const char* op) const;

  // σ = min{a₁, −a₋₁} over the signs present.
  double sigma() const;
  Matrix matrix() const;
  // a_ℓ for ℓ ∈ ℤ*, |ℓ| within range.
  double a(long ell) const;
  std::vector<double> positives() const;  // a_1 ≤ a_2 ≤ …
  std::vector<double> negatives() const;  // a_{−1} ≥ a_{−2} ≥ …
  // A-norm ‖x‖₁ = ‖Ax‖₀.
  double a_norm(const Vector& x) const;

 private:
  Vector values_;
  Matrix basis_;
  Vector scale_;
  HessianType type_ = HessianType::Floer;
  Eigen::Index n_pos_ = 0;
  Eigen::Index n_neg_ = 0;
};

struct SignedGrowth {
  growth::GrowthSample total;     // ordered squares
  growth::GrowthSample positive;  // a_1, a_2, …
  growth::GrowthSample negative;  // |a_{−1}|, |a_{−2}|, …
  bool merge_identity_exact = false;  // total == positive² * negative² bit for bit
};
SignedGrowth signed_growth(const WeakHessian& a);

WeakHessian translate(const WeakHessian& a, double lambda);

// Generator family: a_ν = plus(ν), a_{−ν} = −minus(ν).
struct HessianFamily {
  growth::GrowthFunction plus;
  growth::GrowthFunction minus;
  HessianType type = HessianType::Floer;
};

struct TranslationSide {
  growth::EquivalenceReport report;
  int proof_case = 0;       // 1: λ past ℓ positives, 2: λ among negatives, 3: in the gap
  long crossed = 0;         // eigenvalues of this sign crossed by λ
  double shift_constant = 1.0;
  double proof_constant = 1.0;
  bool within_constant = false;
  bool pass = false;
};

struct TranslationReport {
  double lambda = 0.0;
  TranslationSide plus;
  TranslationSide minus;
  bool pass = false;
};

TranslationReport verify_translation_growth_equivalence(const HessianFamily& family, double lambda,
                                                        std::size_t n, double c_cap = 1e6);

struct ResolventReport {
  double norm_h1_to_h2 = 0.0;
  std::optional<double> diagonal_formula;  // when (A−λ)⁻¹ is diagonal
  double eigenspace_defect = 0.0;          // H₂→H₁ eigenvectors vs H₁→H₀ eigenspaces
  bool eigenspaces_coincide = false;
  bool fredholm_index_zero = true;         // dim ker = dim coker
};
ResolventReport resolvent_level_norms(const WeakHessian& a, double lambda);

struct PathSample {
  double t = 0.0;
  int n_neg = 0;
  int n_zero = 0;
  int n_pos = 0;
};
struct PathReport {
  std::vector<PathSample> samples;
  std::vector<std::size_t> crossing_after;  // sample indices k with a count change on [k, k+1]
  int total_crossings = 0;
  int net_crossings = 0;        // n_pos(end) − n_pos(start)
  int signature_change = 0;     // (n_pos − n_neg)(end) − (…)(start)
  bool parity_consistent = false;
  HessianType declared_type = HessianType::Floer;
};
// Samples are taken as given; t-values are k/(len−1).
PathReport path_type_demo(const std::vector<WeakHessian>& path);
// Convenience: straight segment from a to b with `steps` intervals.
std::vector<WeakHessian> linear_path(const Matrix& a, const Matrix& b, int steps,
                                     HessianType type = HessianType::Floer);

// Seeded Floer-type Hessian with gap exactly σ and a random orthogonal basis.
WeakHessian random_hessian(Rng& rng, Eigen::Index n_neg, Eigen::Index n_pos, double sigma,
                           bool rotate = true);

}  // namespace scalebench::hessian
