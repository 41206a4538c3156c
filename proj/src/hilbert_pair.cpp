#include "scalebench/hilbert_pair.hpp"

#include <cmath>

#include "scalebench/error.hpp"
#include "scalebench/interpolation.hpp"

namespace scalebench::pair {

HilbertScale HilbertScale::from_sample(const growth::GrowthSample& s, double level) {
  HilbertScale sc;
  sc.h = Eigen::Map<const Vector>(s.values.data(), static_cast<Eigen::Index>(s.size()));
  sc.level = level;
  sc.validate();
  return sc;
}

Vector HilbertScale::weights() const { return h.array().pow(level); }

void HilbertScale::validate() const {
  if (h.size() == 0) throw Error(ErrorKind::InvalidArgument, "empty scale");
  for (Eigen::Index i = 0; i < h.size(); ++i) {
    if (!(h(i) > 0.0)) throw Error(ErrorKind::InvalidArgument, "scale weights must be positive");
    if (i && h(i) < h(i - 1)) throw Error(ErrorKind::InvalidArgument, "scale weights must be non-decreasing");
  }
}

double inner_product(const Vector& x, const Vector& y, const HilbertScale& scale) {
  if (x.size() != scale.h.size() || y.size() != scale.h.size())
    throw Error(ErrorKind::DimensionMismatch, "vector length differs from scale window");
  return (scale.weights().array() * x.array() * y.array()).sum();
}

double norm(const Vector& x, const HilbertScale& scale) { return std::sqrt(inner_product(x, x, scale)); }

void GramPair::validate() const {
  if (g0.rows() != g0.cols() || g1.rows() != g1.cols() || g0.rows() != g1.rows())
    throw Error(ErrorKind::DimensionMismatch, "Gram matrices must be square of equal size");
  if (g0.rows() == 0) throw Error(ErrorKind::DimensionMismatch, "empty Gram pair");
  for (const Matrix* g : {&g0, &g1}) {
    const double scale = g->cwiseAbs().maxCoeff();
    if ((*g - g->transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
      throw Error(ErrorKind::NotPositiveDefinite, "Gram matrix is not symmetric");
    Eigen::LLT<Matrix> llt(*g);
    if (llt.info() != Eigen::Success)
      throw Error(ErrorKind::NotPositiveDefinite, "Gram matrix is not positive definite");
  }
}

GramPair GramPair::from_weights(const Vector& h) {
  GramPair p;
  p.g0 = Matrix::Identity(h.size(), h.size());
  p.g1 = h.asDiagonal();
  return p;
}

PairMap level_shift_isometry(const HilbertScale& scale, double r) {
  scale.validate();
  PairMap m;
  m.t = scale.h.array().pow(-r / 2.0).matrix().asDiagonal();
  m.source = "(H0,H1)";
  m.target = "(H" + std::to_string(r) + ",H" + std::to_string(r + 1) + ")";
  return m;
}

IsometryDefect isometry_defect(const Matrix& t, const GramPair& source, const GramPair& target) {
  auto defect = [&](const Matrix& gs, const Matrix& gt) {
    const Matrix pulled = t.transpose() * gt * t;
    const double scale = std::max(gs.cwiseAbs().maxCoeff(), 1e-300);
    return (pulled - gs).cwiseAbs().maxCoeff() / scale;
  };
  return {defect(source.g0, target.g0), defect(source.g1, target.g1)};
}

Matrix riesz_operator(const GramPair& pair) {
  pair.validate();
  Eigen::LLT<Matrix> llt(pair.g1);
  if (llt.info() != Eigen::Success) throw Error(ErrorKind::NotPositiveDefinite, "G1 is singular");
  return llt.solve(pair.g0);
}

PairGrowth extract_pair_growth(const GramPair& pair) {
  pair.validate();
  const Eigen::Index n = pair.n();
  Eigen::LLT<Matrix> llt(pair.g1);
  if (llt.info() != Eigen::Success) throw Error(ErrorKind::NotPositiveDefinite, "G1 is singular");
  const Matrix l = llt.matrixL();
  // S = L⁻¹ G0 L⁻ᵀ shares its spectrum with T = G1⁻¹G0.
  Matrix s = l.triangularView<Eigen::Lower>().solve(pair.g0);
  s = l.triangularView<Eigen::Lower>().solve(Matrix(s.transpose()));
  s = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(s);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::NotPositiveDefinite, "eigen solver failed");
  const Vector evals = es.eigenvalues();
  if (evals.minCoeff() <= 0.0) throw Error(ErrorKind::NotPositiveDefinite, "Riesz operator not positive");

  PairGrowth out;
  out.kappa.resize(n);
  Matrix u(n, n);
  // Ascending eigenvalues, reversed: κ₁ ≥ κ₂ ≥ … .
  for (Eigen::Index k = 0; k < n; ++k) {
    out.kappa(k) = evals(n - 1 - k);
    u.col(k) = es.eigenvectors().col(n - 1 - k);
  }
  // E = L⁻ᵀU is G1-orthonormal; e_ν = κ_ν^{−1/2} E_ν is G0-orthonormal.
  Matrix e = l.transpose().triangularView<Eigen::Upper>().solve(u);
  for (Eigen::Index k = 0; k < n; ++k) e.col(k) /= std::sqrt(out.kappa(k));
  std::vector<double> h(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) h[static_cast<std::size_t>(k)] = 1.0 / out.kappa(k);
  for (std::size_t k = 1; k < h.size(); ++k) h[k] = std::max(h[k], h[k - 1]);  // rounding ties
  out.h = growth::GrowthSample::from_values(std::move(h), "pair");
  out.basis = {e, "standard", "pair"};
  out.degenerate = out.kappa(0) - out.kappa(n - 1) <= 1e-9 * out.kappa(0);
  return out;
}

namespace {

double c0_on(const Vector& f, const Vector& g, const Matrix& t) {
  using interpolation::Level;
  interpolation::WeightedNormContext fg{f, g}, gf{g, f}, one{Vector::Ones(f.size()), Vector::Ones(f.size())};
  Eigen::PartialPivLU<Matrix> lu(t);
  const Matrix tinv = lu.inverse();
  return std::max({interpolation::weighted_operator_norm(t, one, Level::Zero),
                   interpolation::weighted_operator_norm(tinv, one, Level::Zero),
                   interpolation::weighted_operator_norm(t, fg, Level::One),
                   interpolation::weighted_operator_norm(tinv, gf, Level::One)});
}

}  // namespace

PairIsoReport pair_isomorphism_equivalence_check(const growth::GrowthSample& fs,
                                                 const growth::GrowthSample& gs, const Matrix& t,
                                                 std::size_t n, double c_cap) {
  using interpolation::Level;
  if (fs.size() < n || gs.size() < n) throw Error(ErrorKind::DimensionMismatch, "samples shorter than window");
  const auto ni = static_cast<Eigen::Index>(n);
  if (t.rows() != ni || t.cols() != ni) throw Error(ErrorKind::DimensionMismatch, "map does not match window");
  Eigen::FullPivLU<Matrix> check(t);
  if (!check.isInvertible()) throw Error(ErrorKind::NotInvertible, "pair map is singular");

  const Vector f = Eigen::Map<const Vector>(fs.values.data(), ni);
  const Vector g = Eigen::Map<const Vector>(gs.values.data(), ni);
  PairIsoReport r;
  interpolation::WeightedNormContext fg{f, g}, gf{g, f}, one{Vector::Ones(ni), Vector::Ones(ni)};
  const Matrix tinv = check.inverse();
  r.norm_t = interpolation::weighted_operator_norm(t, one, Level::Zero);
  r.norm_t_inv = interpolation::weighted_operator_norm(tinv, one, Level::Zero);
  r.norm_t_fg = interpolation::weighted_operator_norm(t, fg, Level::One);
  r.norm_t_inv_gf = interpolation::weighted_operator_norm(tinv, gf, Level::One);
  r.c0 = std::max({r.norm_t, r.norm_t_inv, r.norm_t_fg, r.norm_t_inv_gf});
  r.c = std::pow(r.c0, 4);
  for (Eigen::Index i = 0; i < ni; ++i)
    r.max_log_ratio = std::max(r.max_log_ratio, std::abs(gs.logs[i] - fs.logs[i]));
  r.inequality_holds = r.max_log_ratio <= 4.0 * std::log(r.c0) * (1.0 + 1e-12) + 1e-12;

  const Eigen::Index half = ni / 2;
  if (half >= 1) {
    r.c0_half = c0_on(f.head(half), g.head(half), t.topLeftCorner(half, half));
    r.c0_diverging = r.c0 > r.c0_half * 1.01;
  }
  // Identity as a pair map: ‖I‖_{f→g}² = max g/f, ‖I‖_{g→f}² = max f/g.
  auto id_const = [&](Eigen::Index m) {
    double best = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) best = std::max(best, std::abs(gs.logs[i] - fs.logs[i]));
    return std::exp(0.5 * best);
  };
  r.identity_constant = id_const(ni);
  const double id_half = id_const(std::max<Eigen::Index>(half, 1));
  r.identity_certified = r.identity_constant * r.identity_constant <= c_cap &&
                         r.identity_constant <= id_half * 1.01;
  return r;
}

double inclusion_norm(const Vector& h, double r, double s) {
  if (h.size() == 0) return 0.0;
  return h.array().pow((s - r) / 2.0).maxCoeff();
}

}  // namespace scalebench::pair
