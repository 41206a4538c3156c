#include "scalebench/hessian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "scalebench/error.hpp"
#include "scalebench/interpolation.hpp"

namespace scalebench::hessian {

const char* to_string(HessianType t) {
  switch (t) {
    case HessianType::Morse: return "Morse";
    case HessianType::CoMorse: return "CoMorse";
    case HessianType::Floer: return "Floer";
  }
  return "?";
}

HessianType hessian_type_from_string(const std::string& s) {
  if (s == "Morse" || s == "morse") return HessianType::Morse;
  if (s == "CoMorse" || s == "comorse" || s == "co-morse") return HessianType::CoMorse;
  if (s == "Floer" || s == "floer") return HessianType::Floer;
  throw Error(ErrorKind::InvalidArgument, "unknown Hessian type '" + s + "'");
}

void WeakHessian::require_invertible(const char* op) const {
  if (!invertible())
    throw Error(ErrorKind::ZeroEigenvalue, std::string(op) + " requires an invertible Hessian");
}

WeakHessian WeakHessian::from_eigenpairs(const Vector& values, const Matrix& basis,
                                         const Vector& scale, HessianType type) {
  const Eigen::Index n = values.size();
  if (basis.rows() != n || basis.cols() != n)
    throw Error(ErrorKind::DimensionMismatch, "basis must be N x N for N eigenvalues");
  if (scale.size() != n) throw Error(ErrorKind::DimensionMismatch, "scale window differs from dimension");
  if (n && scale.minCoeff() <= 0.0) throw Error(ErrorKind::InvalidArgument, "scale weights must be positive");
  if (n && (basis.transpose() * basis - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10)
    throw Error(ErrorKind::InvalidArgument, "basis is not orthogonal");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  auto group = [&](Eigen::Index i) { return values(i) > 0 ? 0 : (values(i) < 0 ? 1 : 2); };
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    const int gi = group(i), gj = group(j);
    if (gi != gj) return gi < gj;
    if (gi == 0) return values(i) < values(j);
    if (gi == 1) return values(i) > values(j);
    return false;
  });
  WeakHessian h;
  h.values_.resize(n);
  h.basis_.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    h.values_(k) = values(src);
    h.basis_.col(k) = basis.col(src);
    if (values(src) > 0) ++h.n_pos_;
    else if (values(src) < 0) ++h.n_neg_;
  }
  h.scale_ = scale;
  h.type_ = type;
  return h;
}

WeakHessian WeakHessian::from_spectrum(std::vector<double> negatives, std::vector<double> positives,
                                       std::optional<Matrix> basis, std::optional<Vector> scale,
                                       std::optional<HessianType> type) {
  for (double v : negatives)
    if (!(v < 0.0)) throw Error(ErrorKind::NotInvertible, "negative list contains a non-negative entry; use from_eigenpairs for singular spectra");
  for (double v : positives)
    if (!(v > 0.0)) throw Error(ErrorKind::NotInvertible, "positive list contains a non-positive entry; use from_eigenpairs for singular spectra");
  HessianType t = type.value_or(negatives.empty() ? HessianType::Morse
                                : positives.empty() ? HessianType::CoMorse
                                                    : HessianType::Floer);
  if (negatives.empty() && t != HessianType::Morse)
    throw Error(ErrorKind::InvalidArgument, "empty negative spectrum requires declared type Morse");
  if (positives.empty() && t != HessianType::CoMorse)
    throw Error(ErrorKind::InvalidArgument, "empty positive spectrum requires declared type CoMorse");
  std::sort(positives.begin(), positives.end());
  std::sort(negatives.begin(), negatives.end(), std::greater<>());
  const auto n = static_cast<Eigen::Index>(positives.size() + negatives.size());
  Vector vals(n);
  Eigen::Index k = 0;
  for (double v : positives) vals(k++) = v;
  for (double v : negatives) vals(k++) = v;
  return from_eigenpairs(vals, basis.value_or(Matrix::Identity(n, n)), scale.value_or(Vector::Ones(n)), t);
}

WeakHessian WeakHessian::from_matrix(const Matrix& m, std::optional<Vector> scale, HessianType type) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "Hessian matrix must be square");
  if (linalg::relative_asymmetry(m) > 1e-12) throw Error(ErrorKind::InvalidArgument, "Hessian matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()));
  Vector vals = es.eigenvalues();
  const double cut = 1e-12 * std::max(1.0, vals.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    if (std::abs(vals(i)) <= cut) vals(i) = 0.0;
  return from_eigenpairs(vals, es.eigenvectors(), scale.value_or(Vector::Ones(m.rows())), type);
}

double WeakHessian::sigma() const {
  require_invertible("spectral gap");
  double s = INFINITY;
  if (n_pos_) s = std::min(s, values_(0));
  if (n_neg_) s = std::min(s, -values_(n_pos_));
  return s;
}

Matrix WeakHessian::matrix() const {
  Matrix m = basis_ * values_.asDiagonal() * basis_.transpose();
  return 0.5 * (m + m.transpose());
}

double WeakHessian::a(long ell) const {
  if (ell > 0 && ell <= n_pos_) return values_(ell - 1);
  if (ell < 0 && -ell <= n_neg_) return values_(n_pos_ + (-ell) - 1);
  throw Error(ErrorKind::OutOfRange, "eigenvalue index " + std::to_string(ell) + " out of range");
}

std::vector<double> WeakHessian::positives() const {
  return std::vector<double>(values_.data(), values_.data() + n_pos_);
}

std::vector<double> WeakHessian::negatives() const {
  return std::vector<double>(values_.data() + n_pos_, values_.data() + n_pos_ + n_neg_);
}

double WeakHessian::a_norm(const Vector& x) const { return (matrix() * x).norm(); }

// ------------------------------------------------------------------ growth

namespace {

growth::GrowthSample raw_sample(std::vector<double> v, const char* origin) {
  growth::GrowthSample s;
  for (double x : v) s.logs.push_back(std::log(x));
  s.values = std::move(v);
  s.origin = origin;
  if (!s.values.empty()) s.validate();
  return s;
}

}  // namespace

SignedGrowth signed_growth(const WeakHessian& a) {
  a.require_invertible("signed_growth");
  std::vector<double> pos = a.positives();
  std::vector<double> neg;
  for (double v : a.negatives()) neg.push_back(-v);
  std::vector<double> total;
  for (Eigen::Index i = 0; i < a.dim(); ++i) total.push_back(a.values()(i) * a.values()(i));
  std::sort(total.begin(), total.end());

  // Left-first merge of the squared component lists.
  std::vector<double> merged;
  std::size_t i = 0, j = 0;
  while (i < pos.size() || j < neg.size()) {
    const bool left = j == neg.size() || (i < pos.size() && pos[i] * pos[i] <= neg[j] * neg[j]);
    merged.push_back(left ? pos[i] * pos[i] : neg[j] * neg[j]);
    (left ? i : j)++;
  }
  SignedGrowth g;
  g.merge_identity_exact = merged == total;
  g.total = raw_sample(std::move(total), "total");
  g.positive = raw_sample(std::move(pos), "positive");
  g.negative = raw_sample(std::move(neg), "negative");
  return g;
}

WeakHessian translate(const WeakHessian& a, double lambda) {
  Vector shifted = a.values().array() - lambda;
  return WeakHessian::from_eigenpairs(shifted, a.basis(), a.scale(), a.declared_type());
}

// ------------------------------------------------------------ translation

namespace {

// Plus side of A − λ where a_ν = P(ν), a_{−ν} = −M(ν).
TranslationSide translation_side(const growth::GrowthFunction& p, const growth::GrowthFunction& m,
                                 double lambda, std::size_t n, double c_cap) {
  constexpr std::size_t kMaxScan = 10'000'000;
  TranslationSide side;
  std::vector<double> shifted(n), base(n);
  for (std::size_t nu = 1; nu <= n; ++nu) base[nu - 1] = p.at(nu);

  std::size_t crossed = 0;
  if (lambda >= 0.0) {
    while (true) {
      const double v = p.at(crossed + 1);
      if (v == lambda) throw Error(ErrorKind::ResolventSetViolation, "lambda is an eigenvalue");
      if (v > lambda) break;
      if (++crossed > kMaxScan) throw Error(ErrorKind::ResolventSetViolation, "lambda beyond scan range");
    }
    for (std::size_t nu = 1; nu <= n; ++nu) shifted[nu - 1] = p.at(crossed + nu) - lambda;
    side.proof_case = crossed == 0 ? 3 : 1;
  } else {
    while (true) {
      const double v = -m.at(crossed + 1);
      if (v == lambda) throw Error(ErrorKind::ResolventSetViolation, "lambda is an eigenvalue");
      if (v < lambda) break;
      if (++crossed > kMaxScan) throw Error(ErrorKind::ResolventSetViolation, "lambda beyond scan range");
    }
    for (std::size_t nu = 1; nu <= n; ++nu)
      shifted[nu - 1] = nu <= crossed ? -m.at(crossed - nu + 1) - lambda : p.at(nu - crossed) - lambda;
    side.proof_case = crossed == 0 ? 3 : 2;
  }
  side.crossed = static_cast<long>(crossed);

  // Window shift constant sup a_{k+1}/a_k.
  double log_shift = 0.0;
  for (std::size_t k = 1; k <= n + crossed + 1; ++k) log_shift = std::max(log_shift, p.log_at(k + 1) - p.log_at(k));
  side.shift_constant = std::exp(log_shift);

  const double a1 = p.at(1);
  switch (side.proof_case) {
    case 3:
      side.proof_constant = std::max(a1, a1 - lambda) / std::min(a1, a1 - lambda);
      break;
    case 1: {
      const double next = p.at(crossed + 1);
      side.proof_constant = std::max(std::exp(static_cast<double>(crossed) * log_shift), next / (next - lambda));
      break;
    }
    case 2: {
      double c = std::max((a1 - lambda) / a1, std::exp(static_cast<double>(crossed + 1) * log_shift));
      for (std::size_t nu = 1; nu <= std::min(n, crossed + 1); ++nu) c = std::max(c, base[nu - 1] / shifted[nu - 1]);
      side.proof_constant = c;
      break;
    }
  }

  growth::Thresholds t;
  t.c_cap = c_cap;
  side.report = growth::equivalence_report(growth::GrowthSample::from_values(base, p.to_spec()),
                                           growth::GrowthSample::from_values(shifted, "translated"), t);
  side.within_constant = side.report.c_estimate <= side.proof_constant * (1.0 + 1e-12);
  side.pass = side.report.verdict == growth::Verdict::EquivalentOnWindow && side.within_constant;
  return side;
}

}  // namespace

TranslationReport verify_translation_growth_equivalence(const HessianFamily& family, double lambda,
                                                        std::size_t n, double c_cap) {
  if (!std::isfinite(lambda)) throw Error(ErrorKind::InvalidArgument, "lambda must be finite");
  for (const auto* f : {&family.plus, &family.minus}) {
    const auto inv = growth::is_shift_invariant(*f, std::max<std::size_t>(n, 8), c_cap);
    if (!inv.yes)
      throw Error(ErrorKind::PreconditionViolation, "family growth " + f->to_spec() + " is not shift invariant on the window");
  }
  TranslationReport r;
  r.lambda = lambda;
  r.plus = translation_side(family.plus, family.minus, lambda, n, c_cap);
  r.minus = translation_side(family.minus, family.plus, -lambda, n, c_cap);
  r.pass = r.plus.pass && r.minus.pass;
  return r;
}

// -------------------------------------------------------------- resolvent

ResolventReport resolvent_level_norms(const WeakHessian& a, double lambda) {
  for (Eigen::Index i = 0; i < a.dim(); ++i)
    if (a.values()(i) == lambda)
      throw Error(ErrorKind::ResolventSetViolation, "lambda equals an eigenvalue");
  const Eigen::Index n = a.dim();
  const Matrix m = a.matrix();
  const Matrix shifted = m - lambda * Matrix::Identity(n, n);
  Eigen::PartialPivLU<Matrix> lu(shifted);
  const Matrix r = lu.solve(Matrix::Identity(n, n));

  const Vector& h = a.scale();
  ResolventReport rep;
  interpolation::WeightedNormContext ctx{h, h.array().square().matrix()};
  rep.norm_h1_to_h2 = interpolation::weighted_operator_norm(r, ctx, interpolation::Level::One);
  Matrix off = r;
  off.diagonal().setZero();
  if (off.cwiseAbs().maxCoeff() == 0.0) {
    double best = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) best = std::max(best, std::sqrt(h(i)) * std::abs(r(i, i)));
    rep.diagonal_formula = best;
  }

  // A as a map H₂ → H₁ in H₁-orthonormal coordinates: D^{1/2} A D^{−1/2}.
  const Vector sq = h.array().sqrt();
  const Matrix conj = sq.asDiagonal() * m * sq.cwiseInverse().asDiagonal();
  Eigen::EigenSolver<Matrix> es(conj);
  const double scale = std::max(1.0, a.values().cwiseAbs().maxCoeff());
  for (Eigen::Index k = 0; k < n; ++k) {
    const double ev = es.eigenvalues()(k).real();
    Vector x = sq.cwiseInverse().asDiagonal() * es.eigenvectors().col(k).real();
    if (x.norm() == 0.0) x = sq.cwiseInverse().asDiagonal() * es.eigenvectors().col(k).imag();
    x.normalize();
    Matrix cluster(n, 0);
    for (Eigen::Index l = 0; l < n; ++l)
      if (std::abs(a.values()(l) - ev) <= 1e-8 * scale) {
        cluster.conservativeResize(n, cluster.cols() + 1);
        cluster.col(cluster.cols() - 1) = a.basis().col(l);
      }
    const double defect = cluster.cols() ? (x - cluster * (cluster.transpose() * x)).norm() : 1.0;
    rep.eigenspace_defect = std::max(rep.eigenspace_defect, defect);
  }
  rep.eigenspaces_coincide = rep.eigenspace_defect <= 1e-8;
  // Square matrix: dim ker = dim coker always.
  Eigen::FullPivLU<Matrix> full(m);
  rep.fredholm_index_zero = full.dimensionOfKernel() == n - full.rank();
  return rep;
}

// ------------------------------------------------------------------- paths

PathReport path_type_demo(const std::vector<WeakHessian>& path) {
  PathReport rep;
  if (path.empty()) return rep;
  const Eigen::Index n = path.front().dim();
  rep.declared_type = path.front().declared_type();
  for (std::size_t k = 0; k < path.size(); ++k) {
    const WeakHessian& w = path[k];
    if (w.dim() != n) throw Error(ErrorKind::DimensionMismatch, "path samples differ in dimension");
    PathSample s;
    s.t = path.size() > 1 ? static_cast<double>(k) / static_cast<double>(path.size() - 1) : 0.0;
    s.n_neg = static_cast<int>(w.n_neg());
    s.n_pos = static_cast<int>(w.n_pos());
    s.n_zero = static_cast<int>(w.n_zero());
    rep.samples.push_back(s);
  }
  for (std::size_t k = 0; k + 1 < rep.samples.size(); ++k) {
    const int d = rep.samples[k + 1].n_pos - rep.samples[k].n_pos;
    const int dz = rep.samples[k + 1].n_zero - rep.samples[k].n_zero;
    if (d != 0 || dz != 0) rep.crossing_after.push_back(k);
    rep.total_crossings += std::abs(d);
  }
  const PathSample& a = rep.samples.front();
  const PathSample& b = rep.samples.back();
  rep.net_crossings = b.n_pos - a.n_pos;
  rep.signature_change = (b.n_pos - b.n_neg) - (a.n_pos - a.n_neg);
  rep.parity_consistent = (rep.total_crossings % 2) == (std::abs(rep.signature_change / 2) % 2);
  return rep;
}

std::vector<WeakHessian> linear_path(const Matrix& a, const Matrix& b, int steps, HessianType type) {
  if (steps < 1) throw Error(ErrorKind::InvalidArgument, "path needs at least one step");
  std::vector<WeakHessian> out;
  for (int k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) / steps;
    out.push_back(WeakHessian::from_matrix((1.0 - t) * a + t * b, std::nullopt, type));
  }
  return out;
}

WeakHessian random_hessian(Rng& rng, Eigen::Index n_neg, Eigen::Index n_pos, double sigma, bool rotate) {
  if (!(sigma > 0.0)) throw Error(ErrorKind::InvalidArgument, "sigma must be positive");
  std::uniform_real_distribution<double> gap(0.2, 1.5), lift(0.0, 1.0), coin(0.0, 1.0);
  const bool exact_on_plus = n_neg == 0 || (n_pos > 0 && coin(rng) < 0.5);
  const double step = std::max(sigma, 0.5);
  std::vector<double> pos, neg;
  double v = exact_on_plus ? sigma : sigma * (1.0 + lift(rng));
  for (Eigen::Index i = 0; i < n_pos; ++i) {
    pos.push_back(v);
    v += gap(rng) * step;
  }
  v = exact_on_plus ? sigma * (1.0 + lift(rng)) : sigma;
  for (Eigen::Index i = 0; i < n_neg; ++i) {
    neg.push_back(-v);
    v += gap(rng) * step;
  }
  const Eigen::Index n = n_neg + n_pos;
  std::optional<Matrix> basis;
  if (rotate) basis = linalg::random_orthogonal(n, rng);
  return WeakHessian::from_spectrum(neg, pos, basis, std::nullopt);
}

}  // namespace scalebench::hessian
