#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "scalebench/linalg.hpp"

namespace scalebench::schur {

enum class Provenance { L2Functions, Corollary, ExampleI, ExampleII, ExampleIII, Obstruction, Custom };
const char* to_string(Provenance p);

// Entries b_{μν} with 1-based indices; evaluable on any finite window.
class SchurMatrix {
 public:
  using Generator = std::function<double(std::int64_t mu, std::int64_t nu)>;

  SchurMatrix(Generator gen, Provenance provenance, std::string name,
              std::int64_t max_rows = std::numeric_limits<std::int64_t>::max(),
              std::int64_t max_cols = std::numeric_limits<std::int64_t>::max());

  double operator()(std::int64_t mu, std::int64_t nu) const;
  Matrix window(Eigen::Index rows, Eigen::Index cols) const;
  Matrix window(Eigen::Index n) const { return window(n, n); }

  Provenance provenance() const { return provenance_; }
  const std::string& name() const { return name_; }
  std::int64_t max_rows() const { return max_rows_; }
  std::int64_t max_cols() const { return max_cols_; }

  static SchurMatrix constant(double c);
  // μ/(μ+ν).
  static SchurMatrix obstruction();
  // √(a_μ b_ν)/(a_μ + b_ν) for positive sequences.
  static SchurMatrix corollary(std::function<double(std::int64_t)> a, std::function<double(std::int64_t)> b);
  // √(a_μ b_ν)/(a_μ + b_ν)·(arctan a_μ + arctan b_ν).
  static SchurMatrix example_iii(std::function<double(std::int64_t)> a, std::function<double(std::int64_t)> b);

 private:
  Generator gen_;
  Provenance provenance_;
  std::string name_;
  std::int64_t max_rows_, max_cols_;
};

// Entrywise product; throws DimensionMismatch.
Matrix hadamard(const Matrix& a, const Matrix& b);
Matrix hadamard(const Matrix& a, const SchurMatrix& b);

// b_{μν} = ⟨g_μ, f_ν⟩ with f_ν the columns of `f` and g_μ the columns of `g`.
struct FactorizationCertificate {
  Matrix f;  // d × cols
  Matrix g;  // d × rows
  double kappa1 = 0.0;  // ≥ max ‖f_ν‖
  double kappa2 = 0.0;  // ≥ max ‖g_μ‖

  Eigen::Index hilbert_dim() const { return f.rows(); }
  Matrix entries() const { return g.transpose() * f; }
  double bound() const { return kappa1 * kappa2; }
  // Throws CertificateMismatch when entries differ from b by more than tol.
  void verify(const Matrix& b, double tol = 1e-10) const;

  static FactorizationCertificate from_vectors(Matrix f, Matrix g);
};

// Direct sum: certifies b + b̃ after balancing both to κ₁ = κ₂.
FactorizationCertificate certificate_sum(const FactorizationCertificate& x, const FactorizationCertificate& y);
// Tensor product: certifies b ⊙ b̃.
FactorizationCertificate certificate_tensor(const FactorizationCertificate& x, const FactorizationCertificate& y);

// Functions on [lo, hi]; hi may be +∞ (mapped to [0,1) by s = lo + t/(1−t)).
using L2Function = std::function<double(double)>;
struct L2Interval {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
};

struct SchurFromL2 {
  Matrix b;               // rows μ from gs, columns ν from fs
  double kappa = 0.0;
  double max_f_norm_sq = 0.0;
  double max_g_norm_sq = 0.0;
};
// Schur's criterion: ‖f_ν‖², ‖g_μ‖² ≤ κ gives ‖S_b‖ ≤ κ for b_{μν} = ∫ g_μ f_ν.
SchurFromL2 schur_from_l2(const std::vector<L2Function>& fs, const std::vector<L2Function>& gs,
                          L2Interval interval, double kappa, double tol = 1e-12);

struct CertifiedMatrix {
  SchurMatrix matrix;
  Matrix window;
  FactorizationCertificate certificate;
  double nominal_bound = 0.0;
};
// Finite sequences a (rows) and b (columns); throws InvalidArgument unless all > 0.
CertifiedMatrix corollary_matrix(const Vector& a, const Vector& b);
CertifiedMatrix example_i_matrix(const Vector& a, const Vector& b);   // arctan a_μ
CertifiedMatrix example_ii_matrix(const Vector& a, const Vector& b);  // arctan b_ν
CertifiedMatrix example_iii_matrix(const Vector& a, const Vector& b);

struct ProbeConfig {
  std::uint64_t seed = 0x5c4u;
  int random_orthogonals = 32;
  int random_signs = 4;
  int refine_top = 2;       // probes refined by alternating iteration
  int refine_iterations = 10;
  double refine_min_gain = 1e-6;  // stop once the relative improvement drops below this
};

struct LowerBound {
  double value = 0.0;
  Matrix witness;         // contraction a with ‖b⊙a‖/‖a‖ = value
  std::string probe;      // which probe family produced it
};

// max over the probe set of ‖b⊙a‖/‖a‖. A warm start from a smaller nested
// window is zero-padded; its ratio carries over unchanged, so bounds along a
// window schedule are non-decreasing.
LowerBound schur_norm_lower_bound(const Matrix& b, const ProbeConfig& cfg = {},
                                  const LowerBound* warm_start = nullptr);
LowerBound schur_norm_lower_bound(const SchurMatrix& b, Eigen::Index n, const ProbeConfig& cfg = {},
                                  const LowerBound* warm_start = nullptr);

// The fixed probe contractions (each normalized to spectral norm 1).
using ProbeSet = std::vector<std::pair<std::string, Matrix>>;
ProbeSet probe_set(Eigen::Index n, const ProbeConfig& cfg);
// Same search with a prebuilt probe set of matching size (shared across matrices).
LowerBound schur_norm_lower_bound(const Matrix& b, const ProbeSet& probes, const ProbeConfig& cfg,
                                  const LowerBound* warm_start = nullptr);

struct GrothendieckReport {
  double bound = 0.0;              // κ₁κ₂
  double max_probe_ratio = 0.0;    // over the probe set
  bool pass = false;
};
// Verifies the certificate against b, then every probe against κ₁κ₂(1+slack).
GrothendieckReport grothendieck_upper_bound(const FactorizationCertificate& cert, const Matrix& b,
                                            const ProbeConfig& cfg = {}, double slack = 1e-9);

struct LimitsConfig {
  std::int64_t outer_base = 1 << 10;    // μ-schedule base
  std::int64_t inner_scale = 1 << 20;   // ν starts at inner_scale·μ
  double tolerance = 1e-6;
};

struct IteratedLimitsReport {
  double l1 = 0.0;        // lim_μ lim_ν
  double l2 = 0.0;        // lim_ν lim_μ
  double gap = 0.0;
  double l1_check = 0.0;  // same with a doubled base
  double l2_check = 0.0;
  bool converged = false;
  bool obstruction = false;   // converged with gap above tolerance
  bool inconclusive = false;
};
IteratedLimitsReport iterated_limits_check(const SchurMatrix& b, const LimitsConfig& cfg = {});

// Aitken Δ² on three successive terms; falls back to the last term.
double aitken(double x0, double x1, double x2);

struct ObstructionRow {
  Eigen::Index n = 0;
  double lower_bound = 0.0;
  double gap_witness = 0.0;
};
struct ObstructionReport {
  std::vector<ObstructionRow> rows;
  IteratedLimitsReport limits;
  bool non_decreasing = false;
};
ObstructionReport obstruction_demo(const std::vector<Eigen::Index>& schedule, const ProbeConfig& cfg = {});
std::string obstruction_to_csv(const ObstructionReport& r);

}  // namespace scalebench::schur
