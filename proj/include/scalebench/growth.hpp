#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace scalebench::growth {

enum class Kind {
  Power,
  Exponential,
  ExpSquare,
  Table,
  Offset,
  Subsample,
  Remainder,
  Pointwise,
  Kang,
  Shift,
  Lift,
};

// Extension of a finite table past its prefix.
struct TableRule {
  enum class Type { None, Add, Mul };
  Type type = Type::None;
  double param = 0.0;
};

// A value together with its logarithm. `value` may overflow to +inf for fast
// growing generators; `log` is always finite for valid inputs.
struct Eval {
  double log;
  double value;
};

namespace detail {
struct Node;
}

// Lazily evaluated monotone positive sequence ν ↦ f(ν), ν ≥ 1.
class GrowthFunction {
 public:
  static GrowthFunction power(double r);
  static GrowthFunction exponential(double base);
  static GrowthFunction exp_square(double base);
  static GrowthFunction table(std::vector<double> prefix, TableRule rule = {});

  Eval eval(std::size_t nu) const;
  double log_at(std::size_t nu) const { return eval(nu).log; }
  double at(std::size_t nu) const { return eval(nu).value; }

  Kind kind() const;
  // Canonical growth-spec string; parses back to an equal generator.
  std::string to_spec() const;

  explicit GrowthFunction(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}
  const std::shared_ptr<const detail::Node>& node() const { return node_; }

 private:
  std::shared_ptr<const detail::Node> node_;
};

GrowthFunction pointwise_product(const GrowthFunction& f, const GrowthFunction& g);
GrowthFunction kang_product(const GrowthFunction& f, const GrowthFunction& g);
GrowthFunction shift(const GrowthFunction& f);
// ν ↦ f(ν) + λ; requires λ > −f(1).
GrowthFunction offset(const GrowthFunction& f, double lambda);
// ν ↦ ν^κ f(ν); requires κ ≥ 0.
GrowthFunction lift(const GrowthFunction& f, double kappa);
// ν ↦ f(kν).
GrowthFunction subsample(const GrowthFunction& f, long k);
// The complementary subsequence: all f(ν) with k ∤ ν, in order.
GrowthFunction remainder(const GrowthFunction& f, long k);

// Finite window f(1..N), stored as values and logs.
struct GrowthSample {
  std::vector<double> values;
  std::vector<double> logs;
  std::string origin;

  std::size_t size() const { return logs.size(); }
  // 1-based access.
  double value(std::size_t nu) const { return values.at(nu - 1); }
  double log_value(std::size_t nu) const { return logs.at(nu - 1); }

  // Validates positivity and monotonicity.
  static GrowthSample from_values(std::vector<double> values, std::string origin = "data");
  void validate() const;
  GrowthSample prefix(std::size_t n) const;
};

GrowthSample sample(const GrowthFunction& f, std::size_t n);
std::string to_csv(const GrowthSample& s);

enum class Verdict { EquivalentOnWindow, RatioDiverging, Inconclusive };
const char* to_string(Verdict v);

struct Thresholds {
  double c_cap = 1e6;
  double divergence = 1e6;
  double stability_tol = 0.01;
};

struct EquivalenceReport {
  double c_estimate = 1.0;  // may be +inf when exp overflows; see log_c
  double log_c = 0.0;
  std::size_t window = 0;
  bool stable = true;
  Verdict verdict = Verdict::Inconclusive;
  double log_final_ratio = 0.0;  // |log g(N) − log f(N)|
};

EquivalenceReport equivalence_report(const GrowthSample& f, const GrowthSample& g,
                                     const Thresholds& t = {});
EquivalenceReport equivalence_report(const GrowthFunction& f, const GrowthFunction& g,
                                     std::size_t n, const Thresholds& t = {});

struct OrderReport {
  bool leq = false;
  double max_ratio = 0.0;  // max f/g on the window
  bool stable = true;
};
OrderReport partial_order_leq(const GrowthFunction& f, const GrowthFunction& g, std::size_t n,
                              const Thresholds& t = {});

struct InvarianceReport {
  bool yes = false;
  double c_estimate = 1.0;
  double log_c = 0.0;
  bool stable = true;
};
InvarianceReport is_shift_invariant(const GrowthFunction& f, std::size_t n, double c_cap = 1e6);
InvarianceReport is_scale_invariant(const GrowthFunction& f, std::size_t n, double c_cap = 1e6);

struct Decomposition {
  GrowthFunction f_k;
  GrowthFunction g_k;
};
Decomposition kang_decompose(const GrowthFunction& f, long k);

}  // namespace scalebench::growth
