#include "scalebench/schur.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "scalebench/error.hpp"
#include "scalebench/quadrature.hpp"

namespace scalebench::schur {

using std::numbers::pi;

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::L2Functions: return "l2-functions";
    case Provenance::Corollary: return "corollary";
    case Provenance::ExampleI: return "example-I";
    case Provenance::ExampleII: return "example-II";
    case Provenance::ExampleIII: return "example-III";
    case Provenance::Obstruction: return "obstruction";
    case Provenance::Custom: return "custom";
  }
  return "custom";
}

// ------------------------------------------------------------- SchurMatrix

SchurMatrix::SchurMatrix(Generator gen, Provenance provenance, std::string name, std::int64_t max_rows,
                         std::int64_t max_cols)
    : gen_(std::move(gen)), provenance_(provenance), name_(std::move(name)), max_rows_(max_rows),
      max_cols_(max_cols) {
  if (!gen_) throw Error(ErrorKind::InvalidArgument, "Schur matrix needs a generator");
}

double SchurMatrix::operator()(std::int64_t mu, std::int64_t nu) const {
  if (mu < 1 || nu < 1 || mu > max_rows_ || nu > max_cols_)
    throw Error(ErrorKind::OutOfRange, "entry (" + std::to_string(mu) + "," + std::to_string(nu) +
                                           ") outside the defined window of " + name_);
  const double v = gen_(mu, nu);
  if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "non-finite entry in " + name_);
  return v;
}

Matrix SchurMatrix::window(Eigen::Index rows, Eigen::Index cols) const {
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = (*this)(i + 1, j + 1);
  return m;
}

SchurMatrix SchurMatrix::constant(double c) {
  return SchurMatrix([c](std::int64_t, std::int64_t) { return c; }, Provenance::Custom,
                     "constant");
}

SchurMatrix SchurMatrix::obstruction() {
  return SchurMatrix(
      [](std::int64_t mu, std::int64_t nu) {
        return static_cast<double>(mu) / (static_cast<double>(mu) + static_cast<double>(nu));
      },
      Provenance::Obstruction, "mu/(mu+nu)");
}

namespace {

double corollary_entry(double a, double b) { return std::sqrt(a) * std::sqrt(b) / (a + b); }

void require_positive(const Vector& v, const char* what) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!(v(i) > 0.0) || !std::isfinite(v(i)))
      throw Error(ErrorKind::InvalidArgument, std::string(what) + " entries must be positive and finite");
}

double checked(const std::function<double(std::int64_t)>& s, std::int64_t k) {
  const double v = s(k);
  if (!(v > 0.0)) throw Error(ErrorKind::InvalidArgument, "sequence entry " + std::to_string(k) + " not positive");
  return v;
}

}  // namespace

SchurMatrix SchurMatrix::corollary(std::function<double(std::int64_t)> a, std::function<double(std::int64_t)> b) {
  return SchurMatrix(
      [a, b](std::int64_t mu, std::int64_t nu) { return corollary_entry(checked(a, mu), checked(b, nu)); },
      Provenance::Corollary, "sqrt(a b)/(a+b)");
}

SchurMatrix SchurMatrix::example_iii(std::function<double(std::int64_t)> a, std::function<double(std::int64_t)> b) {
  return SchurMatrix(
      [a, b](std::int64_t mu, std::int64_t nu) {
        const double x = checked(a, mu), y = checked(b, nu);
        return corollary_entry(x, y) * (std::atan(x) + std::atan(y));
      },
      Provenance::ExampleIII, "sqrt(a b)/(a+b)(atan a + atan b)");
}

Matrix hadamard(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::DimensionMismatch, "Hadamard product of mismatched shapes");
  return a.cwiseProduct(b);
}

Matrix hadamard(const Matrix& a, const SchurMatrix& b) { return hadamard(a, b.window(a.rows(), a.cols())); }

// ------------------------------------------------------------ certificates

void FactorizationCertificate::verify(const Matrix& b, double tol) const {
  if (f.rows() != g.rows()) throw Error(ErrorKind::CertificateMismatch, "factor vectors live in different spaces");
  if (b.rows() != g.cols() || b.cols() != f.cols())
    throw Error(ErrorKind::CertificateMismatch, "certificate window does not match the matrix");
  const double err = b.size() ? (entries() - b).cwiseAbs().maxCoeff() : 0.0;
  if (!(err <= tol))
    throw Error(ErrorKind::CertificateMismatch, "entries differ from inner products by " + std::to_string(err));
  for (Eigen::Index j = 0; j < f.cols(); ++j)
    if (f.col(j).norm() > kappa1 * (1.0 + 1e-14))
      throw Error(ErrorKind::CertificateMismatch, "f vector exceeds kappa1");
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    if (g.col(j).norm() > kappa2 * (1.0 + 1e-14))
      throw Error(ErrorKind::CertificateMismatch, "g vector exceeds kappa2");
}

FactorizationCertificate FactorizationCertificate::from_vectors(Matrix f, Matrix g) {
  if (f.rows() != g.rows()) throw Error(ErrorKind::DimensionMismatch, "factor vectors live in different spaces");
  FactorizationCertificate c;
  c.kappa1 = f.cols() ? f.colwise().norm().maxCoeff() : 0.0;
  c.kappa2 = g.cols() ? g.colwise().norm().maxCoeff() : 0.0;
  c.f = std::move(f);
  c.g = std::move(g);
  return c;
}

FactorizationCertificate certificate_sum(const FactorizationCertificate& x, const FactorizationCertificate& y) {
  if (x.f.cols() != y.f.cols() || x.g.cols() != y.g.cols())
    throw Error(ErrorKind::DimensionMismatch, "certificates cover different windows");
  auto balance = [](const FactorizationCertificate& c) {
    const double s = c.kappa1 > 0.0 && c.kappa2 > 0.0 ? std::sqrt(c.kappa2 / c.kappa1) : 1.0;
    return std::pair<Matrix, Matrix>(c.f * s, c.g / s);
  };
  const auto [fx, gx] = balance(x);
  const auto [fy, gy] = balance(y);
  Matrix f(fx.rows() + fy.rows(), fx.cols());
  f << fx, fy;
  Matrix g(gx.rows() + gy.rows(), gx.cols());
  g << gx, gy;
  return FactorizationCertificate::from_vectors(std::move(f), std::move(g));
}

FactorizationCertificate certificate_tensor(const FactorizationCertificate& x, const FactorizationCertificate& y) {
  if (x.f.cols() != y.f.cols() || x.g.cols() != y.g.cols())
    throw Error(ErrorKind::DimensionMismatch, "certificates cover different windows");
  auto kron_cols = [](const Matrix& p, const Matrix& q) {
    Matrix out(p.rows() * q.rows(), p.cols());
    for (Eigen::Index j = 0; j < p.cols(); ++j)
      for (Eigen::Index i = 0; i < p.rows(); ++i) out.col(j).segment(i * q.rows(), q.rows()) = p(i, j) * q.col(j);
    return out;
  };
  return FactorizationCertificate::from_vectors(kron_cols(x.f, y.f), kron_cols(x.g, y.g));
}

// ------------------------------------------------------------ L² criterion

SchurFromL2 schur_from_l2(const std::vector<L2Function>& fs, const std::vector<L2Function>& gs,
                          L2Interval interval, double kappa, double tol) {
  if (!(interval.hi > interval.lo)) throw Error(ErrorKind::InvalidArgument, "empty interval");
  if (std::isinf(interval.lo)) throw Error(ErrorKind::InvalidArgument, "interval must have a finite left end");
  const bool infinite = std::isinf(interval.hi);
  auto integrate = [&](const L2Function& p, const L2Function& q) {
    if (infinite) {
      auto h = [&](double t) {
        const double u = 1.0 - t;
        const double s = interval.lo + t / u;
        const double v = p(s) * q(s);
        return v == 0.0 ? 0.0 : v / (u * u);
      };
      return quad::adaptive_gk15(h, 0.0, 1.0, {0.5, 0.9, 0.99}, tol, 2000);
    }
    auto h = [&](double s) { return p(s) * q(s); };
    return quad::adaptive_gk15(h, interval.lo, interval.hi, {}, tol, 2000);
  };
  SchurFromL2 out;
  out.kappa = kappa;
  for (const auto& f : fs) out.max_f_norm_sq = std::max(out.max_f_norm_sq, integrate(f, f));
  for (const auto& g : gs) out.max_g_norm_sq = std::max(out.max_g_norm_sq, integrate(g, g));
  const double allowed = kappa * (1.0 + 1e-10) + tol;
  if (out.max_f_norm_sq > allowed || out.max_g_norm_sq > allowed)
    throw Error(ErrorKind::NormConditionViolated,
                "squared L2 norms " + std::to_string(out.max_f_norm_sq) + ", " +
                    std::to_string(out.max_g_norm_sq) + " exceed kappa " + std::to_string(kappa));
  out.b.resize(static_cast<Eigen::Index>(gs.size()), static_cast<Eigen::Index>(fs.size()));
  for (std::size_t mu = 0; mu < gs.size(); ++mu)
    for (std::size_t nu = 0; nu < fs.size(); ++nu)
      out.b(static_cast<Eigen::Index>(mu), static_cast<Eigen::Index>(nu)) = integrate(gs[mu], fs[nu]);
  return out;
}

// ------------------------------------------------- closed-form constructions

namespace {

SchurMatrix finite(const Vector& a, const Vector& b, Provenance p, std::string name,
                   std::function<double(double, double)> entry) {
  return SchurMatrix(
      [a, b, entry](std::int64_t mu, std::int64_t nu) { return entry(a(mu - 1), b(nu - 1)); }, p,
      std::move(name), a.size(), b.size());
}

// Exponentials √c e^{−cs} in L²[0,∞) have Gram matrix √(c_i c_j)/(c_i + c_j).
// A square root of that Gram matrix realizes them as vectors in ℝ^d.
FactorizationCertificate exponential_certificate(const Vector& a, const Vector& b) {
  std::map<double, Eigen::Index> index;
  for (Eigen::Index i = 0; i < a.size(); ++i) index.emplace(a(i), 0);
  for (Eigen::Index i = 0; i < b.size(); ++i) index.emplace(b(i), 0);
  Vector c(static_cast<Eigen::Index>(index.size()));
  Eigen::Index k = 0;
  for (auto& [value, slot] : index) {
    slot = k;
    c(k++) = value;
  }
  Matrix gram(c.size(), c.size());
  for (Eigen::Index i = 0; i < c.size(); ++i)
    for (Eigen::Index j = 0; j < c.size(); ++j) gram(i, j) = corollary_entry(c(i), c(j));
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
  const Vector lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Matrix x = lam.asDiagonal() * es.eigenvectors().transpose();
  Matrix f(x.rows(), b.size()), g(x.rows(), a.size());
  for (Eigen::Index j = 0; j < b.size(); ++j) f.col(j) = x.col(index.at(b(j)));
  for (Eigen::Index i = 0; i < a.size(); ++i) g.col(i) = x.col(index.at(a(i)));
  return FactorizationCertificate::from_vectors(std::move(f), std::move(g));
}

const double kHalfPi = pi / 2.0;

}  // namespace

CertifiedMatrix corollary_matrix(const Vector& a, const Vector& b) {
  require_positive(a, "a");
  require_positive(b, "b");
  SchurMatrix m = finite(a, b, Provenance::Corollary, "sqrt(a b)/(a+b)", corollary_entry);
  Matrix w = m.window(a.size(), b.size());
  return {m, w, exponential_certificate(a, b), 0.5};
}

CertifiedMatrix example_i_matrix(const Vector& a, const Vector& b) {
  require_positive(a, "a");
  require_positive(b, "b");
  SchurMatrix m = finite(a, b, Provenance::ExampleI, "atan a", [](double x, double) { return std::atan(x); });
  Matrix f = Matrix::Constant(1, b.size(), std::sqrt(kHalfPi));
  Matrix g = (a.array().atan() / std::sqrt(kHalfPi)).matrix().transpose();
  return {m, m.window(a.size(), b.size()), FactorizationCertificate::from_vectors(f, g), kHalfPi};
}

CertifiedMatrix example_ii_matrix(const Vector& a, const Vector& b) {
  require_positive(a, "a");
  require_positive(b, "b");
  SchurMatrix m = finite(a, b, Provenance::ExampleII, "atan b", [](double, double y) { return std::atan(y); });
  Matrix f = (b.array().atan() / std::sqrt(kHalfPi)).matrix().transpose();
  Matrix g = Matrix::Constant(1, a.size(), std::sqrt(kHalfPi));
  return {m, m.window(a.size(), b.size()), FactorizationCertificate::from_vectors(f, g), kHalfPi};
}

CertifiedMatrix example_iii_matrix(const Vector& a, const Vector& b) {
  const CertifiedMatrix cor = corollary_matrix(a, b);
  const CertifiedMatrix one = example_i_matrix(a, b);
  const CertifiedMatrix two = example_ii_matrix(a, b);
  SchurMatrix m = finite(a, b, Provenance::ExampleIII, "sqrt(a b)/(a+b)(atan a + atan b)",
                         [](double x, double y) { return corollary_entry(x, y) * (std::atan(x) + std::atan(y)); });
  FactorizationCertificate cert =
      certificate_tensor(cor.certificate, certificate_sum(one.certificate, two.certificate));
  return {m, m.window(a.size(), b.size()), std::move(cert), kHalfPi};
}

// ------------------------------------------------------------ lower bounds

namespace {

// √λ_max(MᵀM); relative accuracy near machine precision for the top value.
double top_singular_value(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  const Matrix g = m.transpose() * m;
  Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues()(g.rows() - 1)));
}

double ratio(const Matrix& b, const Matrix& a) {
  const double na = top_singular_value(a);
  return na > 0.0 ? top_singular_value(b.cwiseProduct(a)) / na : 0.0;
}

Vector sign_vector(Eigen::Index n, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  Vector s(n);
  for (Eigen::Index i = 0; i < n; ++i) s(i) = coin(rng) ? 1.0 : -1.0;
  return s;
}

// a ← polar(b ⊙ uvᵀ) with (u,v) the top singular pair of b ⊙ a; never decreases the ratio.
Matrix refine(const Matrix& b, Matrix a, double& value, int iterations, double min_gain) {
  for (int it = 0; it < iterations; ++it) {
    const Matrix m = b.cwiseProduct(a);
    Eigen::SelfAdjointEigenSolver<Matrix> es(m.transpose() * m);
    const Vector v = es.eigenvectors().col(m.cols() - 1);
    const Vector mv = m * v;
    if (!(mv.norm() > 0.0)) break;
    const Matrix c = b.cwiseProduct(mv.normalized() * v.transpose());
    Eigen::BDCSVD<Matrix> pol(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Matrix next = pol.matrixU() * pol.matrixV().transpose();
    const double r = ratio(b, next);
    if (!(r > value)) break;
    const bool small = r <= value * (1.0 + min_gain);
    value = r;
    a = std::move(next);
    if (small) break;
  }
  return a;
}

}  // namespace

ProbeSet probe_set(Eigen::Index n, const ProbeConfig& cfg) {
  ProbeSet out;
  const double dn = static_cast<double>(n);
  out.emplace_back("identity", Matrix::Identity(n, n));
  out.emplace_back("ones", Matrix::Constant(n, n, 1.0 / dn));
  Vector alt(n);
  for (Eigen::Index i = 0; i < n; ++i) alt(i) = i % 2 ? -1.0 : 1.0;
  out.emplace_back("alternating", alt * alt.transpose() / dn);
  Rng sign_rng(cfg.seed);
  for (int k = 0; k < cfg.random_signs; ++k) {
    const Vector s = sign_vector(n, sign_rng), t = sign_vector(n, sign_rng);
    out.emplace_back("sign-" + std::to_string(k), s * t.transpose() / dn);
  }
  Matrix h(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) h(i, j) = 1.0 / static_cast<double>(i + j + 1);
  out.emplace_back("hilbert", h / top_singular_value(h));
  for (int k = 0; k < cfg.random_orthogonals; ++k) {
    Rng rng(cfg.seed + 1000003ull * static_cast<std::uint64_t>(k + 1));
    out.emplace_back("orthogonal-" + std::to_string(k), linalg::random_orthogonal(n, rng));
  }
  return out;
}

LowerBound schur_norm_lower_bound(const Matrix& b, const ProbeConfig& cfg, const LowerBound* warm_start) {
  if (b.rows() != b.cols() || b.rows() < 1)
    throw Error(ErrorKind::InvalidArgument, "lower bound needs a nonempty square window");
  return schur_norm_lower_bound(b, probe_set(b.rows(), cfg), cfg, warm_start);
}

LowerBound schur_norm_lower_bound(const Matrix& b, const ProbeSet& probes, const ProbeConfig& cfg,
                                  const LowerBound* warm_start) {
  if (b.rows() != b.cols() || b.rows() < 1)
    throw Error(ErrorKind::InvalidArgument, "lower bound needs a nonempty square window");
  const Eigen::Index n = b.rows();
  for (const auto& p : probes)
    if (p.second.rows() != n || p.second.cols() != n)
      throw Error(ErrorKind::DimensionMismatch, "probe " + p.first + " does not match the window");
  struct Scored {
    double value;
    std::string name;
    Matrix a;
  };
  std::vector<Scored> scored;
  for (const auto& [name, a] : probes) scored.push_back({ratio(b, a), name, a});
  std::stable_sort(scored.begin(), scored.end(), [](const Scored& x, const Scored& y) { return x.value > y.value; });
  const int top = std::min<int>(cfg.refine_top, static_cast<int>(scored.size()));
  for (int k = 0; k < top; ++k) {
    Scored& s = scored[static_cast<std::size_t>(k)];
    const double before = s.value;
    s.a = refine(b, s.a, s.value, cfg.refine_iterations, cfg.refine_min_gain);
    if (s.value > before) s.name += "+refined";
  }
  LowerBound best{scored.front().value, scored.front().a, scored.front().name};
  for (const auto& s : scored)
    if (s.value > best.value) best = {s.value, s.a, s.name};
  if (warm_start && warm_start->witness.size() > 0) {
    const Eigen::Index m = warm_start->witness.rows();
    if (m > n) throw Error(ErrorKind::DimensionMismatch, "warm start from a larger window");
    Matrix padded = Matrix::Zero(n, n);
    padded.topLeftCorner(m, m) = warm_start->witness;
    double value = ratio(b, padded);
    padded = refine(b, std::move(padded), value, cfg.refine_iterations, cfg.refine_min_gain);
    // The padded witness realizes the earlier ratio exactly; rounding in the
    // re-evaluation must not make the schedule decrease.
    value = std::max(value, warm_start->value);
    if (value >= best.value) best = {value, std::move(padded), "warm-start"};
  }
  return best;
}

LowerBound schur_norm_lower_bound(const SchurMatrix& b, Eigen::Index n, const ProbeConfig& cfg,
                                  const LowerBound* warm_start) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "window must be at least 1");
  return schur_norm_lower_bound(b.window(n), cfg, warm_start);
}

GrothendieckReport grothendieck_upper_bound(const FactorizationCertificate& cert, const Matrix& b,
                                            const ProbeConfig& cfg, double slack) {
  cert.verify(b);
  GrothendieckReport r;
  r.bound = cert.bound();
  if (b.rows() == b.cols() && b.rows() > 0)
    for (const auto& [name, a] : probe_set(b.rows(), cfg)) r.max_probe_ratio = std::max(r.max_probe_ratio, ratio(b, a));
  r.pass = r.max_probe_ratio <= r.bound * (1.0 + slack);
  return r;
}

// ---------------------------------------------------------- iterated limits

double aitken(double x0, double x1, double x2) {
  const double d1 = x1 - x0, d2 = x2 - x1, den = d2 - d1;
  const double scale = std::max({std::abs(x0), std::abs(x1), std::abs(x2), 1e-300});
  if (!std::isfinite(den) || std::abs(den) <= 1e-14 * scale) return x2;
  const double v = x2 - d2 * d2 / den;
  return std::isfinite(v) ? v : x2;
}

namespace {

// lim_outer lim_inner with the inner index starting at inner_scale·outer.
double nested_limit(const SchurMatrix& b, std::int64_t base, std::int64_t scale, bool rows_outer) {
  auto entry = [&](std::int64_t outer, std::int64_t inner) { return rows_outer ? b(outer, inner) : b(inner, outer); };
  double outer_vals[3];
  for (int i = 0; i < 3; ++i) {
    const std::int64_t o = base << i;
    const std::int64_t in = scale * o;
    outer_vals[i] = aitken(entry(o, in), entry(o, 2 * in), entry(o, 4 * in));
  }
  return aitken(outer_vals[0], outer_vals[1], outer_vals[2]);
}

}  // namespace

IteratedLimitsReport iterated_limits_check(const SchurMatrix& b, const LimitsConfig& cfg) {
  if (cfg.outer_base < 1 || cfg.inner_scale < 1)
    throw Error(ErrorKind::InvalidArgument, "limit schedule needs positive base and scale");
  IteratedLimitsReport r;
  r.l1 = nested_limit(b, cfg.outer_base, cfg.inner_scale, true);
  r.l2 = nested_limit(b, cfg.outer_base, cfg.inner_scale, false);
  r.l1_check = nested_limit(b, 2 * cfg.outer_base, 2 * cfg.inner_scale, true);
  r.l2_check = nested_limit(b, 2 * cfg.outer_base, 2 * cfg.inner_scale, false);
  r.gap = std::abs(r.l1 - r.l2);
  auto close = [&](double x, double y) { return std::abs(x - y) <= cfg.tolerance * std::max(1.0, std::abs(x)); };
  r.converged = close(r.l1, r.l1_check) && close(r.l2, r.l2_check);
  r.inconclusive = !r.converged;
  r.obstruction = r.converged && r.gap > cfg.tolerance;
  return r;
}

ObstructionReport obstruction_demo(const std::vector<Eigen::Index>& schedule, const ProbeConfig& cfg) {
  for (std::size_t i = 0; i < schedule.size(); ++i)
    if (schedule[i] < 1 || (i > 0 && schedule[i] <= schedule[i - 1]))
      throw Error(ErrorKind::InvalidArgument, "window schedule must be positive and increasing");
  const SchurMatrix b = SchurMatrix::obstruction();
  ObstructionReport r;
  r.limits = iterated_limits_check(b);
  std::optional<LowerBound> prev;
  for (Eigen::Index n : schedule) {
    LowerBound lb = schur_norm_lower_bound(b, n, cfg, prev ? &*prev : nullptr);
    LimitsConfig lc;
    lc.outer_base = n;
    const IteratedLimitsReport w = iterated_limits_check(b, lc);
    r.rows.push_back({n, lb.value, w.converged ? w.gap : std::numeric_limits<double>::quiet_NaN()});
    prev = std::move(lb);
  }
  r.non_decreasing = true;
  for (std::size_t i = 1; i < r.rows.size(); ++i)
    if (r.rows[i].lower_bound < r.rows[i - 1].lower_bound) r.non_decreasing = false;
  return r;
}

std::string obstruction_to_csv(const ObstructionReport& r) {
  std::string out = "n,lower_bound,gap_witness\n";
  char buf[128];
  for (const auto& row : r.rows) {
    std::snprintf(buf, sizeof buf, "%ld,%.17g,%.17g\n", static_cast<long>(row.n), row.lower_bound, row.gap_witness);
    out += buf;
  }
  return out;
}

}  // namespace scalebench::schur
