#include "scalebench/growth.hpp"

#include <cmath>
#include <mutex>
#include <optional>
#include <sstream>

#include "scalebench/error.hpp"
#include "scalebench/growth_spec.hpp"

namespace scalebench::growth {

namespace detail {

struct Node {
  virtual ~Node() = default;
  virtual Eval eval(std::size_t nu) const = 0;
  virtual Kind kind() const = 0;
  virtual std::string spec() const = 0;
};

}  // namespace detail

namespace {

using detail::Node;

void require_index(std::size_t nu) {
  if (nu == 0) throw Error(ErrorKind::OutOfRange, "growth functions are indexed from 1");
}

struct PowerNode final : Node {
  double r;
  explicit PowerNode(double r_) : r(r_) {}
  Eval eval(std::size_t nu) const override {
    const double x = static_cast<double>(nu);
    return {r * std::log(x), std::pow(x, r)};
  }
  Kind kind() const override { return Kind::Power; }
  std::string spec() const override { return "pow:" + format_number(r); }
};

struct ExpNode final : Node {
  double base;
  explicit ExpNode(double b) : base(b) {}
  Eval eval(std::size_t nu) const override {
    const double x = static_cast<double>(nu);
    return {x * std::log(base), std::pow(base, x)};
  }
  Kind kind() const override { return Kind::Exponential; }
  std::string spec() const override { return "exp:" + format_number(base); }
};

struct ExpSquareNode final : Node {
  double base;
  explicit ExpSquareNode(double b) : base(b) {}
  Eval eval(std::size_t nu) const override {
    const double x = static_cast<double>(nu);
    return {x * x * std::log(base), std::pow(base, x * x)};
  }
  Kind kind() const override { return Kind::ExpSquare; }
  std::string spec() const override { return "expsq:" + format_number(base); }
};

struct TableNode final : Node {
  std::vector<double> prefix;
  TableRule rule;
  TableNode(std::vector<double> p, TableRule r) : prefix(std::move(p)), rule(r) {}
  Eval eval(std::size_t nu) const override {
    if (nu <= prefix.size()) return {std::log(prefix[nu - 1]), prefix[nu - 1]};
    const double last = prefix.back();
    const double steps = static_cast<double>(nu - prefix.size());
    switch (rule.type) {
      case TableRule::Type::Add: {
        const double v = last + rule.param * steps;
        return {std::log(v), v};
      }
      case TableRule::Type::Mul:
        return {std::log(last) + steps * std::log(rule.param), last * std::pow(rule.param, steps)};
      case TableRule::Type::None:
        break;
    }
    throw Error(ErrorKind::OutOfRange, "table without extension rule has only " +
                                           std::to_string(prefix.size()) + " values");
  }
  Kind kind() const override { return Kind::Table; }
  std::string spec() const override {
    std::string s = "table:[";
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      if (i) s += ",";
      s += format_number(prefix[i]);
    }
    s += "]";
    if (rule.type == TableRule::Type::Add) s += "+last+" + format_number(rule.param);
    if (rule.type == TableRule::Type::Mul) s += "+last*" + format_number(rule.param);
    return s;
  }
};

struct OffsetNode final : Node {
  GrowthFunction f;
  double lambda;
  OffsetNode(GrowthFunction f_, double l) : f(std::move(f_)), lambda(l) {}
  Eval eval(std::size_t nu) const override {
    const Eval e = f.eval(nu);
    return {e.log + std::log1p(lambda * std::exp(-e.log)), e.value + lambda};
  }
  Kind kind() const override { return Kind::Offset; }
  std::string spec() const override {
    return "offset(" + f.to_spec() + "," + format_number(lambda) + ")";
  }
};

struct LiftNode final : Node {
  GrowthFunction f;
  double kappa;
  LiftNode(GrowthFunction f_, double k) : f(std::move(f_)), kappa(k) {}
  Eval eval(std::size_t nu) const override {
    const Eval e = f.eval(nu);
    const double x = static_cast<double>(nu);
    return {kappa * std::log(x) + e.log, std::pow(x, kappa) * e.value};
  }
  Kind kind() const override { return Kind::Lift; }
  std::string spec() const override {
    return "lift(" + f.to_spec() + "," + format_number(kappa) + ")";
  }
};

struct SubsampleNode final : Node {
  GrowthFunction f;
  std::size_t k;
  SubsampleNode(GrowthFunction f_, std::size_t k_) : f(std::move(f_)), k(k_) {}
  Eval eval(std::size_t nu) const override { return f.eval(k * nu); }
  Kind kind() const override { return Kind::Subsample; }
  std::string spec() const override { return "sub(" + f.to_spec() + "," + std::to_string(k) + ")"; }
};

struct RemainderNode final : Node {
  GrowthFunction f;
  std::size_t k;
  RemainderNode(GrowthFunction f_, std::size_t k_) : f(std::move(f_)), k(k_) {}
  // Block ℓ of the remainder holds k−1 consecutive values after skipping ℓ multiples of k.
  Eval eval(std::size_t nu) const override { return f.eval(nu + (nu - 1) / (k - 1)); }
  Kind kind() const override { return Kind::Remainder; }
  std::string spec() const override { return "rem(" + f.to_spec() + "," + std::to_string(k) + ")"; }
};

struct PointwiseNode final : Node {
  GrowthFunction f, g;
  PointwiseNode(GrowthFunction a, GrowthFunction b) : f(std::move(a)), g(std::move(b)) {}
  Eval eval(std::size_t nu) const override {
    const Eval a = f.eval(nu), b = g.eval(nu);
    return {a.log + b.log, a.value * b.value};
  }
  Kind kind() const override { return Kind::Pointwise; }
  std::string spec() const override { return "ptw(" + f.to_spec() + "," + g.to_spec() + ")"; }
};

struct ShiftNode final : Node {
  GrowthFunction f;
  explicit ShiftNode(GrowthFunction a) : f(std::move(a)) {}
  Eval eval(std::size_t nu) const override { return f.eval(nu + 1); }
  Kind kind() const override { return Kind::Shift; }
  std::string spec() const override { return "shift(" + f.to_spec() + ")"; }
};

// A finite table past its end acts as +inf in a merge.
std::optional<Eval> try_eval(const GrowthFunction& f, std::size_t nu) {
  try {
    return f.eval(nu);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::OutOfRange) throw;
    return std::nullopt;
  }
}

// Sorted merge with a memoized cursor; ties go to the left factor.
struct KangNode final : Node {
  GrowthFunction f, g;
  mutable std::mutex mu;
  mutable std::vector<Eval> merged;
  mutable std::size_t i = 1, j = 1;
  KangNode(GrowthFunction a, GrowthFunction b) : f(std::move(a)), g(std::move(b)) {}
  Eval eval(std::size_t nu) const override {
    std::lock_guard<std::mutex> lock(mu);
    while (merged.size() < nu) {
      const auto a = try_eval(f, i), b = try_eval(g, j);
      if (!a && !b)
        throw Error(ErrorKind::OutOfRange, "Kang product of finite tables has only " +
                                               std::to_string(merged.size()) + " values");
      if (a && (!b || a->log <= b->log)) {
        merged.push_back(*a);
        ++i;
      } else {
        merged.push_back(*b);
        ++j;
      }
    }
    return merged[nu - 1];
  }
  Kind kind() const override { return Kind::Kang; }
  std::string spec() const override { return "kang(" + f.to_spec() + "," + g.to_spec() + ")"; }
};

template <class T, class... Args>
GrowthFunction make(Args&&... args) {
  return GrowthFunction(std::make_shared<const T>(std::forward<Args>(args)...));
}

}  // namespace

Eval GrowthFunction::eval(std::size_t nu) const {
  require_index(nu);
  return node_->eval(nu);
}

Kind GrowthFunction::kind() const { return node_->kind(); }
std::string GrowthFunction::to_spec() const { return node_->spec(); }

GrowthFunction GrowthFunction::power(double r) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw Error(ErrorKind::MalformedGenerator, "power exponent must be a positive real");
  return make<PowerNode>(r);
}

GrowthFunction GrowthFunction::exponential(double base) {
  if (!(base > 1.0) || !std::isfinite(base))
    throw Error(ErrorKind::MalformedGenerator, "exponential base must exceed 1");
  return make<ExpNode>(base);
}

GrowthFunction GrowthFunction::exp_square(double base) {
  if (!(base > 1.0) || !std::isfinite(base))
    throw Error(ErrorKind::MalformedGenerator, "exponential base must exceed 1");
  return make<ExpSquareNode>(base);
}

GrowthFunction GrowthFunction::table(std::vector<double> prefix, TableRule rule) {
  if (prefix.empty()) throw Error(ErrorKind::MalformedGenerator, "table prefix is empty");
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (!(prefix[i] > 0.0) || !std::isfinite(prefix[i]))
      throw Error(ErrorKind::MalformedGenerator, "table entry " + std::to_string(i + 1) + " is not positive");
    if (i && prefix[i] < prefix[i - 1])
      throw Error(ErrorKind::MalformedGenerator, "table decreases at entry " + std::to_string(i + 1));
  }
  if (rule.type == TableRule::Type::Add && !(rule.param >= 0.0))
    throw Error(ErrorKind::MalformedGenerator, "additive table rule needs a step >= 0");
  if (rule.type == TableRule::Type::Mul && !(rule.param >= 1.0))
    throw Error(ErrorKind::MalformedGenerator, "multiplicative table rule needs a factor >= 1");
  return make<TableNode>(std::move(prefix), rule);
}

GrowthFunction pointwise_product(const GrowthFunction& f, const GrowthFunction& g) {
  return make<PointwiseNode>(f, g);
}
GrowthFunction kang_product(const GrowthFunction& f, const GrowthFunction& g) {
  return make<KangNode>(f, g);
}
GrowthFunction shift(const GrowthFunction& f) { return make<ShiftNode>(f); }

GrowthFunction offset(const GrowthFunction& f, double lambda) {
  if (!std::isfinite(lambda)) throw Error(ErrorKind::MalformedGenerator, "offset must be finite");
  if (lambda < 0.0 && !(lambda > -f.at(1)))
    throw Error(ErrorKind::MalformedGenerator, "negative offset must satisfy lambda > -f(1)");
  return make<OffsetNode>(f, lambda);
}

GrowthFunction lift(const GrowthFunction& f, double kappa) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa))
    throw Error(ErrorKind::MalformedGenerator, "lift exponent must be >= 0");
  return make<LiftNode>(f, kappa);
}

GrowthFunction subsample(const GrowthFunction& f, long k) {
  if (k < 2) throw Error(ErrorKind::InvalidStride, "stride must be >= 2, got " + std::to_string(k));
  return make<SubsampleNode>(f, static_cast<std::size_t>(k));
}

GrowthFunction remainder(const GrowthFunction& f, long k) {
  if (k < 2) throw Error(ErrorKind::InvalidStride, "stride must be >= 2, got " + std::to_string(k));
  return make<RemainderNode>(f, static_cast<std::size_t>(k));
}

// ---------------------------------------------------------------- samples

void GrowthSample::validate() const {
  if (logs.empty()) throw Error(ErrorKind::MalformedGenerator, "sample is empty");
  if (values.size() != logs.size()) throw Error(ErrorKind::MalformedGenerator, "values/logs size mismatch");
  for (std::size_t i = 0; i < logs.size(); ++i) {
    if (!(values[i] > 0.0) || std::isnan(logs[i]) || logs[i] == -INFINITY)
      throw Error(ErrorKind::MalformedGenerator, "non-positive value at nu=" + std::to_string(i + 1));
    if (i && logs[i] < logs[i - 1])
      throw Error(ErrorKind::MalformedGenerator, "decreasing value at nu=" + std::to_string(i + 1));
  }
}

GrowthSample GrowthSample::from_values(std::vector<double> values, std::string origin) {
  GrowthSample s;
  s.logs.reserve(values.size());
  for (double v : values) s.logs.push_back(v > 0.0 ? std::log(v) : NAN);
  s.values = std::move(values);
  s.origin = std::move(origin);
  s.validate();
  return s;
}

GrowthSample GrowthSample::prefix(std::size_t n) const {
  if (n > size()) throw Error(ErrorKind::OutOfRange, "prefix longer than sample");
  GrowthSample s;
  s.values.assign(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(n));
  s.logs.assign(logs.begin(), logs.begin() + static_cast<std::ptrdiff_t>(n));
  s.origin = origin;
  return s;
}

GrowthSample sample(const GrowthFunction& f, std::size_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "sample window must be >= 1");
  GrowthSample s;
  s.values.reserve(n);
  s.logs.reserve(n);
  for (std::size_t nu = 1; nu <= n; ++nu) {
    const Eval e = f.eval(nu);
    s.values.push_back(e.value);
    s.logs.push_back(e.log);
  }
  s.origin = f.to_spec();
  s.validate();
  return s;
}

std::string to_csv(const GrowthSample& s) {
  std::ostringstream os;
  os << "nu,value\n";
  for (std::size_t i = 0; i < s.size(); ++i) os << (i + 1) << "," << format_number(s.values[i]) << "\n";
  return os.str();
}

// ------------------------------------------------------------ comparisons

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::EquivalentOnWindow: return "equivalent-on-window";
    case Verdict::RatioDiverging: return "ratio-diverging";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

double max_abs_log_ratio(const GrowthSample& f, const GrowthSample& g, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(g.logs[i] - f.logs[i]));
  return m;
}

bool stable_between(double log_small, double log_large, double tol) {
  return log_large - log_small < std::log1p(tol);
}

}  // namespace

EquivalenceReport equivalence_report(const GrowthSample& f, const GrowthSample& g,
                                     const Thresholds& t) {
  const std::size_t n = std::min(f.size(), g.size());
  if (n < 8) throw Error(ErrorKind::InvalidArgument, "equivalence window must be >= 8");
  EquivalenceReport r;
  r.window = n;
  r.log_c = max_abs_log_ratio(f, g, n);
  r.c_estimate = std::exp(r.log_c);
  r.stable = stable_between(max_abs_log_ratio(f, g, n / 2), r.log_c, t.stability_tol);
  r.log_final_ratio = std::abs(g.logs[n - 1] - f.logs[n - 1]);
  if (r.log_c <= std::log(t.c_cap) && r.stable) {
    r.verdict = Verdict::EquivalentOnWindow;
    return r;
  }
  bool increasing = true;
  for (std::size_t i = (3 * n) / 4; i < n; ++i) {
    const double prev = std::abs(g.logs[i - 1] - f.logs[i - 1]);
    const double cur = std::abs(g.logs[i] - f.logs[i]);
    if (!(cur > prev)) {
      increasing = false;
      break;
    }
  }
  r.verdict = (increasing && r.log_final_ratio > std::log(t.divergence)) ? Verdict::RatioDiverging
                                                                          : Verdict::Inconclusive;
  return r;
}

EquivalenceReport equivalence_report(const GrowthFunction& f, const GrowthFunction& g,
                                     std::size_t n, const Thresholds& t) {
  return equivalence_report(sample(f, n), sample(g, n), t);
}

OrderReport partial_order_leq(const GrowthFunction& f, const GrowthFunction& g, std::size_t n,
                              const Thresholds& t) {
  if (n < 8) throw Error(ErrorKind::InvalidArgument, "order window must be >= 8");
  const GrowthSample sf = sample(f, n), sg = sample(g, n);
  auto max_log = [&](std::size_t m) {
    double best = -INFINITY;
    for (std::size_t i = 0; i < m; ++i) best = std::max(best, sf.logs[i] - sg.logs[i]);
    return best;
  };
  const double full = max_log(n);
  OrderReport r;
  r.max_ratio = std::exp(full);
  r.stable = stable_between(max_log(n / 2), full, t.stability_tol);
  r.leq = full <= std::log(t.c_cap) && r.stable;
  return r;
}

InvarianceReport is_shift_invariant(const GrowthFunction& f, std::size_t n, double c_cap) {
  Thresholds t;
  t.c_cap = c_cap;
  const EquivalenceReport e = equivalence_report(f, shift(f), n, t);
  return {e.verdict == Verdict::EquivalentOnWindow, e.c_estimate, e.log_c, e.stable};
}

InvarianceReport is_scale_invariant(const GrowthFunction& f, std::size_t n, double c_cap) {
  if (n < 8) throw Error(ErrorKind::InvalidArgument, "scale window must be >= 8");
  auto max_log = [&](std::size_t m) {
    double best = 0.0;
    for (std::size_t nu = 1; nu <= m; ++nu) best = std::max(best, f.log_at(2 * nu) - f.log_at(nu));
    return best;
  };
  const double full = max_log(n / 2);
  InvarianceReport r;
  r.log_c = full;
  r.c_estimate = std::exp(full);
  r.stable = stable_between(max_log(n / 4), full, Thresholds{}.stability_tol);
  r.yes = full <= std::log(c_cap) && r.stable;
  return r;
}

Decomposition kang_decompose(const GrowthFunction& f, long k) {
  return {subsample(f, k), remainder(f, k)};
}

}  // namespace scalebench::growth
