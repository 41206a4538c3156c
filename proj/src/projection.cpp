#include "scalebench/projection.hpp"

#include <cmath>
#include <numbers>

#include "scalebench/error.hpp"
#include "scalebench/interpolation.hpp"

namespace scalebench::projection {

using std::numbers::pi;

const char* to_string(Sign s) { return s == Sign::Plus ? "+" : "-"; }

// ----------------------------------------------------------------- contour

double Contour::alpha_length() const {
  double l = 0.0;
  for (const auto& s : alpha) l += s.length();
  return l;
}

bool Contour::closed() const {
  if (alpha.empty()) return false;
  if (std::abs(beta.to - alpha.front().from) > 1e-15) return false;
  for (std::size_t i = 0; i + 1 < alpha.size(); ++i)
    if (std::abs(alpha[i].to - alpha[i + 1].from) > 1e-15) return false;
  return std::abs(alpha.back().to - beta.from) <= 1e-15;
}

Contour make_contour(double sigma, Sign sign) {
  if (!(sigma > 0.0)) throw Error(ErrorKind::InvalidArgument, "contour needs sigma > 0");
  const cplx i(0.0, 1.0);
  const double r = 1.0 + 1.0 / sigma;
  Contour c;
  c.sigma = sigma;
  c.sign = sign;
  if (sign == Sign::Plus) {
    c.beta = {i, -i, "beta"};
    c.alpha = {{-i, r - i, "bottom"}, {r - i, r + i, "far"}, {r + i, i, "top"}};
  } else {
    c.beta = {-i, i, "beta"};
    c.alpha = {{i, -r + i, "top"}, {-r + i, -r - i, "far"}, {-r - i, -i, "bottom"}};
  }
  return c;
}

int winding_number(const Contour& c, cplx z) {
  std::vector<Segment> all{c.beta};
  all.insert(all.end(), c.alpha.begin(), c.alpha.end());
  double total = 0.0;
  for (const auto& s : all) {
    constexpr int kSteps = 256;
    for (int k = 0; k < kSteps; ++k) {
      const cplx p0 = s.from + (s.to - s.from) * (static_cast<double>(k) / kSteps) - z;
      const cplx p1 = s.from + (s.to - s.from) * (static_cast<double>(k + 1) / kSteps) - z;
      total += std::arg(p1 / p0);
    }
  }
  return static_cast<int>(std::lround(total / (2.0 * pi)));
}

// --------------------------------------------------------------- resolvent

namespace {

void check_pole(const WeakHessian& a, cplx zeta) {
  const double scale = std::max(1.0, std::abs(zeta) * a.values().cwiseAbs().maxCoeff());
  for (Eigen::Index l = 0; l < a.dim(); ++l) {
    if (std::abs(1.0 - zeta * a.values()(l)) <= 1e-13 * scale) {
      const long ell = l < a.n_pos() ? static_cast<long>(l + 1) : -static_cast<long>(l - a.n_pos() + 1);
      throw Error(ErrorKind::ResolventPole, "zeta is the pole 1/a_" + std::to_string(ell));
    }
  }
}

}  // namespace

CMatrix resolvent_factor(const WeakHessian& a, cplx zeta) {
  check_pole(a, zeta);
  const Eigen::Index n = a.dim();
  const CMatrix m = CMatrix::Identity(n, n) - zeta * a.matrix().cast<cplx>();
  return Eigen::PartialPivLU<CMatrix>(m).solve(CMatrix::Identity(n, n));
}

CMatrix k_factor(const WeakHessian& a, cplx zeta) {
  return a.matrix().cast<cplx>() * resolvent_factor(a, zeta);
}

// ------------------------------------------------------- tridiagonal model

namespace {

// A = Q T Qᵀ with T tridiagonal (Householder reduction, no eigensolve).
// Resolvent solves (Id − ζT)X = B then cost O(N²) per right-hand block.
struct TriModel {
  Matrix q;
  Vector diag;
  Vector sub;
  CMatrix t_dense;
  Eigen::Index n = 0;

  explicit TriModel(const Matrix& a) : n(a.rows()) {
    if (n == 1) {
      q = Matrix::Identity(1, 1);
      diag = a.diagonal();
      sub = Vector();
    } else {
      Eigen::Tridiagonalization<Matrix> tri(a);
      q = tri.matrixQ();
      diag = tri.diagonal();
      sub = tri.subDiagonal();
    }
    t_dense = CMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) t_dense(i, i) = diag(i);
    for (Eigen::Index i = 0; i + 1 < n; ++i) t_dense(i + 1, i) = t_dense(i, i + 1) = sub(i);
  }

  // Gaussian elimination with partial pivoting on the band (LAPACK gtsv).
  void solve(cplx zeta, CMatrix& b) const {
    std::vector<cplx> dl(static_cast<std::size_t>(std::max<Eigen::Index>(n - 1, 0)));
    std::vector<cplx> du(dl.size());
    std::vector<cplx> d(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) d[i] = 1.0 - zeta * diag(i);
    for (Eigen::Index i = 0; i + 1 < n; ++i) dl[i] = du[i] = -zeta * sub(i);
    std::vector<cplx> du2(dl.size(), 0.0);
    const Eigen::Index m = b.cols();
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
      if (std::abs(d[k]) >= std::abs(dl[k])) {
        if (d[k] == 0.0) throw Error(ErrorKind::ResolventPole, "singular resolvent on the contour");
        const cplx mult = dl[k] / d[k];
        d[k + 1] -= mult * du[k];
        b.row(k + 1) -= mult * b.row(k);
      } else {
        const cplx mult = d[k] / dl[k];
        d[k] = dl[k];
        const cplx temp = d[k + 1];
        d[k + 1] = du[k] - mult * temp;
        if (k + 2 < n) {
          du2[k] = du[k + 1];
          du[k + 1] = -mult * du2[k];
        }
        du[k] = temp;
        for (Eigen::Index j = 0; j < m; ++j) {
          const cplx tb = b(k, j);
          b(k, j) = b(k + 1, j);
          b(k + 1, j) = tb - mult * b(k + 1, j);
        }
      }
    }
    if (d[n - 1] == 0.0) throw Error(ErrorKind::ResolventPole, "singular resolvent on the contour");
    b.row(n - 1) /= d[n - 1];
    if (n > 1) b.row(n - 2) = (b.row(n - 2) - du[n - 2] * b.row(n - 1)) / d[n - 2];
    for (Eigen::Index k = n - 3; k >= 0; --k)
      b.row(k) = (b.row(k) - du[k] * b.row(k + 1) - du2[k] * b.row(k + 2)) / d[k];
  }

  // T(Id − ζT)⁻¹.
  CMatrix k_factor(cplx zeta) const {
    CMatrix x = t_dense;
    solve(zeta, x);
    return x;
  }

  // (Id − ζT)⁻¹ D (Id − ζT)⁻¹ for symmetric D.
  CMatrix sandwich(cplx zeta, const CMatrix& dm) const {
    CMatrix y = dm;
    solve(zeta, y);
    CMatrix yt = y.transpose();
    solve(zeta, yt);
    return yt.transpose();
  }
};

int panel_count(const Segment& s, const QuadratureConfig& q) {
  const int by_length = static_cast<int>(std::ceil(s.length() / q.max_panel_length - 1e-12));
  return std::max(q.panels_per_segment, by_length);
}

template <class F>
CMatrix integrate_fixed(F&& f, const Segment& s, const QuadratureConfig& q, Eigen::Index n,
                        QuadratureStats* stats) {
  const cplx dz = s.to - s.from;
  auto g = [&](double t) -> CMatrix { return f(s.from + t * dz) * dz; };
  int evals = 0;
  CMatrix r = quad::fixed_gauss(g, 0.0, 1.0, panel_count(s, q), q.nodes_per_panel,
                                CMatrix(CMatrix::Zero(n, n)), &evals);
  if (stats) stats->evaluations += evals;
  return r;
}

// β from i to −i, refined geometrically toward ζ = 0 at scale 1/max|a|.
template <class F>
CMatrix integrate_beta(F&& f, double amax, const QuadratureConfig& q, QuadratureStats* stats) {
  const cplx from(0.0, 1.0), dz(0.0, -2.0);
  auto g = [&](double t) -> CMatrix { return f(from + t * dz) * dz; };
  std::vector<double> breaks{0.5};
  const double s = 0.5 / std::max(amax, 1.0);
  for (double w = s; w < 0.5; w *= 2.0) {
    breaks.push_back(0.5 - w);
    breaks.push_back(0.5 + w);
  }
  quad::AdaptiveStats st;
  CMatrix r = quad::adaptive_gk15(g, 0.0, 1.0, breaks, q.tolerance, q.max_subdivisions, &st);
  if (stats) {
    stats->evaluations += st.evaluations;
    stats->beta_panels += st.panels;
    stats->beta_error_estimate += st.error_estimate;
  }
  return r;
}

Matrix finish(const TriModel& tm, const CMatrix& j) {
  const CMatrix scaled = j * cplx(0.0, 1.0 / (2.0 * pi));
  return tm.q * scaled.real() * tm.q.transpose();
}

double max_abs_eigenvalue(const WeakHessian& a) { return a.values().cwiseAbs().maxCoeff(); }

}  // namespace

Matrix contour_projection(const WeakHessian& a, Sign sign, const QuadratureConfig& quad,
                          QuadratureStats* stats) {
  a.require_invertible("contour_projection");
  quad.validate();
  const TriModel tm(a.matrix());
  const Contour c = make_contour(a.sigma(), sign);
  auto f = [&](cplx z) { return tm.k_factor(z); };
  CMatrix j = integrate_beta(f, max_abs_eigenvalue(a), quad, stats);
  if (sign == Sign::Minus) j = -j;
  for (const auto& s : c.alpha) j += integrate_fixed(f, s, quad, a.dim(), stats);
  return finish(tm, j);
}

Matrix eigenprojection_oracle(const WeakHessian& a, Sign sign) {
  a.require_invertible("eigenprojection_oracle");
  const Eigen::Index n = a.dim();
  Vector sel = Vector::Zero(n);
  for (Eigen::Index l = 0; l < n; ++l)
    if ((sign == Sign::Plus) == (a.values()(l) > 0.0)) sel(l) = 1.0;
  return a.basis() * sel.asDiagonal() * a.basis().transpose();
}

DerivativeParts derivative_parts(const WeakHessian& a, const Matrix& delta, Sign sign,
                                 const QuadratureConfig& quad) {
  a.require_invertible("projection_derivative");
  quad.validate();
  if (delta.rows() != a.dim() || delta.cols() != a.dim())
    throw Error(ErrorKind::DimensionMismatch, "perturbation does not match the Hessian");
  if (linalg::relative_asymmetry(delta) > 1e-12)
    throw Error(ErrorKind::InvalidArgument, "perturbation must be symmetric");
  const TriModel tm(a.matrix());
  const CMatrix dt = (tm.q.transpose() * delta * tm.q).cast<cplx>();
  const Contour c = make_contour(a.sigma(), sign);
  auto f = [&](cplx z) { return tm.sandwich(z, dt); };
  CMatrix jb = integrate_beta(f, max_abs_eigenvalue(a), quad, nullptr);
  if (sign == Sign::Minus) jb = -jb;
  CMatrix ja = CMatrix::Zero(a.dim(), a.dim());
  for (const auto& s : c.alpha) ja += integrate_fixed(f, s, quad, a.dim(), nullptr);
  DerivativeParts p;
  p.beta = finish(tm, jb);
  p.alpha = finish(tm, ja);
  p.total = p.beta + p.alpha;
  return p;
}

Matrix projection_derivative(const WeakHessian& a, const Matrix& delta, Sign sign,
                             const QuadratureConfig& quad) {
  return derivative_parts(a, delta, sign, quad).total;
}

// ------------------------------------------------------------------ Neumann

NeumannReport neumann_difference_check(const WeakHessian& a, const Matrix& delta, cplx zeta, int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "Neumann check needs K >= 1");
  const Eigen::Index n = a.dim();
  const CMatrix r = resolvent_factor(a, zeta);
  const CMatrix dc = delta.cast<cplx>();
  const CMatrix dr = dc * r;
  NeumannReport rep;
  rep.rho = linalg::spectral_norm(CMatrix(zeta * dr));
  if (!(rep.rho < 1.0))
    throw Error(ErrorKind::PreconditionViolation, "geometric-series condition fails: rho = " + std::to_string(rep.rho));
  const Matrix ab = a.matrix() + delta;
  const CMatrix big = CMatrix::Identity(n, n) - zeta * ab.cast<cplx>();
  const CMatrix k_ab = ab.cast<cplx>() * Eigen::PartialPivLU<CMatrix>(big).solve(CMatrix::Identity(n, n));
  const CMatrix diff = k_ab - k_factor(a, zeta);
  CMatrix partial = CMatrix::Zero(n, n);
  CMatrix term = r * dr;  // D_1 = R Δ R
  for (int j = 1; j <= k; ++j) {
    partial += term;
    rep.residual_by_k.push_back(linalg::spectral_norm(CMatrix(diff - partial)));
    term = zeta * term * dr;
  }
  rep.residual = rep.residual_by_k.back();
  rep.bound = linalg::spectral_norm(r) * linalg::spectral_norm(dr) * std::pow(rep.rho, k) / (1.0 - rep.rho);
  rep.pass = rep.residual <= rep.bound * (1.0 + 1e-9) + 1e-13 * std::max(1.0, linalg::spectral_norm(diff));
  return rep;
}

// ----------------------------------------------------------------- Hadamard

double hadamard_q(double a, double b) {
  if (a == b) return 1.0 / (1.0 + a * a);
  // arctan b − arctan a without cancellation.
  return std::atan2(b - a, 1.0 + a * b) / (b - a);
}

Matrix beta_block_hadamard(const WeakHessian& a, const Matrix& delta) {
  a.require_invertible("beta_block_hadamard");
  const Matrix d = a.basis().transpose() * delta * a.basis();
  const Eigen::Index n = a.dim();
  Matrix c(n, n);
  for (Eigen::Index l = 0; l < n; ++l)
    for (Eigen::Index m = 0; m < n; ++m) c(l, m) = d(l, m) * hadamard_q(a.values()(l), a.values()(m)) / pi;
  return c;
}

Matrix beta_segment_quadrature(const WeakHessian& a, const Matrix& delta, const QuadratureConfig& quad) {
  a.require_invertible("beta_segment_quadrature");
  const TriModel tm(a.matrix());
  const CMatrix dt = (tm.q.transpose() * delta * tm.q).cast<cplx>();
  auto f = [&](cplx z) { return tm.sandwich(z, dt); };
  const Matrix t = finish(tm, integrate_beta(f, max_abs_eigenvalue(a), quad, nullptr));
  return a.basis().transpose() * t * a.basis();
}

// ------------------------------------------------------------------- norms

double half_level_norm(const Matrix& op, const Vector& weights, double r) {
  if (op.rows() != weights.size() || op.cols() != weights.size())
    throw Error(ErrorKind::DimensionMismatch, "operator does not match weights");
  return linalg::scaled_spectral_norm(op, weights.array().pow(r / 2.0).matrix(),
                                      weights.array().pow(-r / 2.0).matrix());
}

double half_level_norm(const CMatrix& op, const Vector& weights, double r) {
  if (op.rows() != weights.size() || op.cols() != weights.size())
    throw Error(ErrorKind::DimensionMismatch, "operator does not match weights");
  return linalg::scaled_spectral_norm(op, weights.array().pow(r / 2.0).matrix(),
                                      weights.array().pow(-r / 2.0).matrix());
}

double level_norm(const Matrix& op, const WeakHessian& a, double r) {
  a.require_invertible("level_norm");
  return half_level_norm(Matrix(a.basis().transpose() * op * a.basis()), a.values().array().square().matrix(), r);
}

double level_norm(const CMatrix& op, const WeakHessian& a, double r) {
  a.require_invertible("level_norm");
  const CMatrix v = a.basis().cast<cplx>();
  return half_level_norm(CMatrix(v.adjoint() * op * v), a.values().array().square().matrix(), r);
}

double shifted_norm(const Matrix& delta, const WeakHessian& a, double r) {
  a.require_invertible("shifted_norm");
  const Vector abs = a.values().cwiseAbs();
  const Matrix d = a.basis().transpose() * delta * a.basis();
  return linalg::scaled_spectral_norm(d, abs.array().pow(r).matrix(), abs.array().pow(-(r + 1.0)).matrix());
}

// ------------------------------------------------------------------- blocks

Matrix BlockOperator::reassemble() const {
  const Eigen::Index p = pp.rows(), m = mm.rows();
  Matrix out(p + m, p + m);
  out.topLeftCorner(p, p) = pp;
  out.topRightCorner(p, m) = pm;
  out.bottomLeftCorner(m, p) = mp;
  out.bottomRightCorner(m, m) = mm;
  return out;
}

double BlockOperator::norm_sum() const {
  return linalg::spectral_norm(pp) + linalg::spectral_norm(pm) + linalg::spectral_norm(mp) +
         linalg::spectral_norm(mm);
}

BlockOperator block_decompose(const Matrix& op, const WeakHessian& a, double level) {
  a.require_invertible("block_decompose");
  const Vector abs = a.values().cwiseAbs();
  const Matrix e = abs.array().pow(level).matrix().asDiagonal() *
                   (a.basis().transpose() * op * a.basis()) *
                   abs.array().pow(-level).matrix().asDiagonal();
  const Eigen::Index p = a.n_pos(), m = a.n_neg();
  return {e.topLeftCorner(p, p), e.topRightCorner(p, m), e.bottomLeftCorner(m, p),
          e.bottomRightCorner(m, m)};
}

// ------------------------------------------------------------ bound checks

namespace {

Matrix alpha_part(const WeakHessian& a, const Matrix& delta, Sign sign, const QuadratureConfig& quad) {
  const TriModel tm(a.matrix());
  const CMatrix dt = (tm.q.transpose() * delta * tm.q).cast<cplx>();
  auto f = [&](cplx z) { return tm.sandwich(z, dt); };
  CMatrix ja = CMatrix::Zero(a.dim(), a.dim());
  for (const auto& s : make_contour(a.sigma(), sign).alpha) ja += integrate_fixed(f, s, quad, a.dim(), nullptr);
  return finish(tm, ja);
}

}  // namespace

AlphaBoundReport alpha_bound_check(const WeakHessian& a, const Matrix& delta, Sign sign,
                                   const QuadratureConfig& quad, double slack) {
  a.require_invertible("alpha_bound_check");
  quad.validate();
  AlphaBoundReport rep;
  rep.sigma = a.sigma();
  rep.delta_norm = shifted_norm(delta, a, 0.0);
  rep.measured = level_norm(alpha_part(a, delta, sign, quad), a, 0.5);
  rep.bound = (2.0 * rep.sigma + 1.0) / (pi * rep.sigma * rep.sigma) * rep.delta_norm;

  // Pointwise three-level estimate on a coarse node set of each α edge.
  const CMatrix v = a.basis().cast<cplx>();
  const CMatrix dc = delta.cast<cplx>();
  const Vector w = a.values().array().square();
  const interpolation::WeightedNormContext ctx{w, w};
  const double per_node_bound = rep.delta_norm / rep.sigma;
  const quad::GaussRule& rule = quad::gauss_legendre(4);
  for (const auto& s : make_contour(rep.sigma, sign).alpha) {
    const int panels = panel_count(s, quad);
    for (int p = 0; p < panels; ++p) {
      for (double x : rule.nodes) {
        const double t = (p + 0.5 + 0.5 * x) / panels;
        const cplx z = s.from + t * (s.to - s.from);
        const CMatrix r = resolvent_factor(a, z);
        const CMatrix e = v.adjoint() * (r * dc * r) * v;
        const interpolation::SteinReport st = interpolation::stein_check(e, ctx, 1e-9);
        rep.stein_consistent = rep.stein_consistent && st.pass;
        const double worst = std::max({st.m0, st.m_half, st.m1});
        const double ratio = per_node_bound > 0.0 ? worst / per_node_bound : (worst > 0.0 ? INFINITY : 0.0);
        if (ratio > rep.pointwise_max_ratio) {
          rep.pointwise_max_ratio = ratio;
          if (ratio > 1.0 + slack) rep.offending = z;
        }
      }
    }
  }
  rep.pass = rep.measured <= rep.bound * (1.0 + slack) + 1e-14 && rep.pointwise_max_ratio <= 1.0 + slack &&
             rep.stein_consistent;
  return rep;
}

DpiBoundReport dpi_half_bound_check(const WeakHessian& a, const Matrix& delta,
                                    const QuadratureConfig& quad, double slack) {
  a.require_invertible("dpi_half_bound_check");
  DpiBoundReport rep;
  rep.sigma = a.sigma();
  const double s = rep.sigma;
  rep.delta_norm = shifted_norm(delta, a, 0.0);
  const DerivativeParts parts = derivative_parts(a, delta, Sign::Plus, quad);
  rep.total = level_norm(parts.total, a, 0.5);
  rep.total_bound = (pi + (4.0 * s + 2.0) / (pi * s * s)) * rep.delta_norm;
  rep.alpha = level_norm(parts.alpha, a, 0.5);
  rep.alpha_bound = (2.0 * s + 1.0) / (pi * s * s) * rep.delta_norm;
  const BlockOperator beta = block_decompose(parts.beta, a, 0.5);
  rep.beta_pm = linalg::spectral_norm(beta.pm);
  rep.beta_mp = linalg::spectral_norm(beta.mp);
  rep.beta_block_bound = 0.5 * pi * rep.delta_norm;
  const BlockOperator total = block_decompose(parts.total, a, 0.5);
  rep.diagonal_blocks = std::max(linalg::spectral_norm(total.pp), linalg::spectral_norm(total.mm));
  const double f = 1.0 + slack;
  rep.pass = rep.total <= rep.total_bound * f + 1e-14 && rep.alpha <= rep.alpha_bound * f + 1e-14 &&
             rep.beta_pm <= rep.beta_block_bound * f + 1e-14 &&
             rep.beta_mp <= rep.beta_block_bound * f + 1e-14 &&
             rep.diagonal_blocks <= 1e-7 * std::max(1.0, rep.delta_norm);
  return rep;
}

ContinuityReport projection_continuity_check(const WeakHessian& a, const WeakHessian& b,
                                             const QuadratureConfig& quad, double slack, int sweep) {
  a.require_invertible("projection_continuity_check");
  b.require_invertible("projection_continuity_check");
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "Hessians differ in dimension");
  if (sweep < 1) throw Error(ErrorKind::InvalidArgument, "gap sweep needs at least one step");
  const Matrix ma = a.matrix(), mb = b.matrix(), diff = mb - ma;
  const double lip = linalg::spectral_norm(diff);
  ContinuityReport rep;
  double min_gap = INFINITY, at_t = 0.0, at_value = 0.0;
  for (int k = 0; k <= sweep; ++k) {
    const double t = static_cast<double>(k) / sweep;
    Eigen::SelfAdjointEigenSolver<Matrix> es(ma + t * diff, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const double v = es.eigenvalues()(i);
      if (std::abs(v) < min_gap) {
        min_gap = std::abs(v);
        at_t = t;
        at_value = v;
      }
    }
  }
  // Weyl: eigenvalues move at most ‖B−A‖·|Δt| between samples.
  rep.sigma0 = min_gap - lip / (2.0 * sweep);
  if (!(rep.sigma0 > 0.0))
    throw Error(ErrorKind::GapViolation, "segment loses its spectral gap: eigenvalue " + std::to_string(at_value) +
                                             " at t=" + std::to_string(at_t) + " comes within " +
                                             std::to_string(lip / (2.0 * sweep)) + " of zero");
  const double s = rep.sigma0;
  rep.constant = pi + (4.0 * s + 2.0) / (pi * s * s);
  rep.delta_h1_h0 = shifted_norm(diff, a, 0.0);
  rep.delta_h2_h1 = shifted_norm(diff, a, 1.0);
  const Matrix dp = contour_projection(b, Sign::Plus, quad) - contour_projection(a, Sign::Plus, quad);
  rep.diff_half = level_norm(dp, a, 0.5);
  rep.diff_three_half = level_norm(dp, a, 1.5);
  rep.bound_half = rep.constant * rep.delta_h1_h0;
  rep.bound_three_half = rep.constant * rep.delta_h1_h0;
  rep.bound_three_half_shifted = rep.constant * rep.delta_h2_h1;
  const double f = 1.0 + slack;
  rep.pass_half = rep.diff_half <= rep.bound_half * f + 1e-12;
  rep.pass_three_half = rep.diff_three_half <= rep.bound_three_half * f + 1e-12;
  rep.pass_three_half_shifted = rep.diff_three_half <= rep.bound_three_half_shifted * f + 1e-12;
  rep.pass = rep.pass_half && rep.pass_three_half;
  return rep;
}

// ------------------------------------------------------ restricted isomorphism

namespace {

Matrix image_basis(const Matrix& p) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (p + p.transpose()));
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < p.rows(); ++i)
    if (es.eigenvalues()(i) > 0.5) cols.push_back(i);
  Matrix q(p.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) q.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(cols[k]);
  return q;
}

Matrix inverse_sqrt_spd(const Matrix& g) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(g);
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
         es.eigenvectors().transpose();
}

// Singular values of x ↦ S M x on span(Q), with S the level-r weight operator.
Vector restricted_singular_values(const Matrix& s, const Matrix& m, const Matrix& q) {
  if (q.cols() == 0) return Vector();
  const Matrix c = s * q;
  const Matrix op = s * m * q * inverse_sqrt_spd(c.transpose() * c);
  return Eigen::BDCSVD<Matrix>(op).singularValues();
}

}  // namespace

RestrictedIsoReport restricted_projection_iso_check(const WeakHessian& a, const WeakHessian& b,
                                                    const QuadratureConfig& quad) {
  a.require_invertible("restricted_projection_iso_check");
  b.require_invertible("restricted_projection_iso_check");
  const Eigen::Index n = a.dim();
  if (b.dim() != n) throw Error(ErrorKind::DimensionMismatch, "Hessians differ in dimension");
  const Matrix pa = contour_projection(a, Sign::Plus, quad);
  const Matrix pb = contour_projection(b, Sign::Plus, quad);
  RestrictedIsoReport rep;
  const double na = std::max(level_norm(pa, a, 0.5), level_norm(pa, a, 1.5));
  rep.eps_plus = std::min(0.5, 1.0 / (4.0 * na));
  rep.pre_half = level_norm(Matrix(pb - pa), a, 0.5);
  rep.pre_three_half = level_norm(Matrix(pb - pa), a, 1.5);
  if (rep.pre_half > rep.eps_plus || rep.pre_three_half > rep.eps_plus)
    throw Error(ErrorKind::PreconditionViolation,
                "projection distance " + std::to_string(std::max(rep.pre_half, rep.pre_three_half)) +
                    " exceeds eps_plus " + std::to_string(rep.eps_plus));

  const Matrix qa = image_basis(pa), qb = image_basis(pb);
  rep.rank_a = qa.cols();
  rep.rank_b = qb.cols();
  const Matrix id = Matrix::Identity(n, n);
  const Vector absa = a.values().cwiseAbs();
  for (double r : {0.5, 1.5}) {
    const Matrix s = a.basis() * absa.array().pow(r).matrix().asDiagonal() * a.basis().transpose();
    const Vector da = restricted_singular_values(s, pa * pb - id, qa);
    const Vector db = restricted_singular_values(s, pb * pa - id, qb);
    const Vector map = restricted_singular_values(s, pb, qa);
    const double dev_a = da.size() ? da(0) : 0.0;
    const double dev_b = db.size() ? db(0) : 0.0;
    const double cond = map.size() ? map(0) / map(map.size() - 1) : 1.0;
    if (r == 0.5) {
      rep.dev_a_half = dev_a;
      rep.dev_b_half = dev_b;
      rep.cond_half = cond;
    } else {
      rep.dev_a_three_half = dev_a;
      rep.dev_b_three_half = dev_b;
      rep.cond_three_half = cond;
    }
  }
  rep.pass = rep.dev_a_half <= 0.25 && rep.dev_a_three_half <= 0.25 && rep.dev_b_half <= 0.5 &&
             rep.dev_b_three_half <= 0.5 && rep.rank_a == rep.rank_b && rep.cond_half <= 2.0 &&
             rep.cond_three_half <= 2.0;
  return rep;
}

}  // namespace scalebench::projection
