#include "scalebench/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <numbers>

#include "scalebench/error.hpp"
#include "scalebench/growth.hpp"
#include "scalebench/growth_spec.hpp"
#include "scalebench/hessian.hpp"
#include "scalebench/hilbert_pair.hpp"
#include "scalebench/interpolation.hpp"
#include "scalebench/projection.hpp"
#include "scalebench/schur.hpp"

namespace scalebench::acceptance {

using report::Certificate;
using report::Json;
using report::number;
using std::numbers::pi;

namespace {

int trials(const Config& cfg, int full) { return cfg.smoke ? std::min(full, std::max(1, *cfg.smoke)) : full; }

Rng rng_for(const Config& cfg, int id) { return Rng(cfg.seed + 7919ull * static_cast<std::uint64_t>(id)); }

std::string digest(const Config& cfg, int id, const std::string& inputs) {
  return report::fnv1a_hex("criterion=" + std::to_string(id) + ";seed=" + std::to_string(cfg.seed) +
                           ";smoke=" + (cfg.smoke ? std::to_string(*cfg.smoke) : "off") + ";" + inputs);
}

bool same_bits(const growth::Eval& x, const growth::Eval& y) {
  return std::memcmp(&x.log, &y.log, sizeof(double)) == 0 && std::memcmp(&x.value, &y.value, sizeof(double)) == 0;
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// ------------------------------------------------------------------ 1

Certificate kang_identities(const Config& cfg) {
  constexpr std::size_t n = 10'000;
  const std::vector<std::string> specs{"pow:1", "pow:2", "exp:e"};
  std::vector<growth::GrowthFunction> fs;
  for (const auto& s : specs) fs.push_back(growth::parse_spec(s));
  long doubling_mismatch = 0, square_mismatch = 0;
  for (const auto& f : fs) {
    const auto ff = growth::kang_product(f, f);
    for (std::size_t nu = 1; nu <= n; ++nu) {
      const auto v = f.eval(nu);
      if (!same_bits(ff.eval(2 * nu), v) || !same_bits(ff.eval(2 * nu - 1), v)) ++doubling_mismatch;
    }
  }
  for (const auto& f : fs)
    for (const auto& g : fs) {
      const auto fg = growth::kang_product(f, g);
      const auto lhs = growth::pointwise_product(fg, fg);
      const auto rhs = growth::kang_product(growth::pointwise_product(f, f), growth::pointwise_product(g, g));
      for (std::size_t nu = 1; nu <= n; ++nu)
        if (!same_bits(lhs.eval(nu), rhs.eval(nu))) ++square_mismatch;
    }
  Certificate c;
  c.check = "kang-identities";
  c.inputs_digest = digest(cfg, 1, "f=pow:1,pow:2,exp:e;N=10000");
  c.measured = static_cast<double>(doubling_mismatch + square_mismatch);
  c.bound = 0.0;
  c.pass = c.measured == 0.0;
  c.details["N"] = n;
  c.details["doubling_mismatches"] = doubling_mismatch;
  c.details["square_mismatches"] = square_mismatch;
  return c;
}

// ------------------------------------------------------------------ 2

Certificate kang_decomposition(const Config& cfg) {
  constexpr std::size_t n = 1'000;
  const auto f = growth::parse_spec("exp:e");
  Json per_k = Json::array();
  bool ok = true;
  long mismatches = 0;
  std::optional<growth::GrowthFunction> f2, f3;
  for (long k = 2; k <= 6; ++k) {
    const auto d = growth::kang_decompose(f, k);
    const auto back = growth::kang_product(d.f_k, d.g_k);
    long bad = 0;
    for (std::size_t nu = 1; nu <= n; ++nu)
      if (!same_bits(back.eval(nu), f.eval(nu))) ++bad;
    const auto sf = growth::is_shift_invariant(d.f_k, n);
    const auto sg = growth::is_shift_invariant(d.g_k, n);
    mismatches += bad;
    ok = ok && bad == 0 && sf.yes && sg.yes;
    per_k.push_back({{"k", k}, {"mismatches", bad}, {"f_k_shift_invariant", sf.yes}, {"f_k_c", number(sf.c_estimate)},
                     {"g_k_shift_invariant", sg.yes}, {"g_k_c", number(sg.c_estimate)}});
    if (k == 2) f2 = d.f_k;
    if (k == 3) f3 = d.f_k;
  }
  const auto eq = growth::equivalence_report(*f2, *f3, n);
  const double log_threshold = std::log(1e6);
  ok = ok && eq.verdict == growth::Verdict::RatioDiverging && eq.log_final_ratio > log_threshold;
  Certificate c;
  c.check = "kang-decomposition";
  c.inputs_digest = digest(cfg, 2, "f=exp:e;k=2..6;N=1000");
  c.measured = eq.log_final_ratio;
  c.bound = log_threshold;
  c.slack = eq.log_final_ratio - log_threshold;
  c.pass = ok;
  c.details["per_k"] = per_k;
  c.details["reconstruction_mismatches"] = mismatches;
  c.details["f2_vs_f3_verdict"] = growth::to_string(eq.verdict);
  c.details["log_final_ratio"] = number(eq.log_final_ratio);
  return c;
}

// ------------------------------------------------------------------ 3

Certificate pair_extraction(const Config& cfg) {
  Rng rng = rng_for(cfg, 3);
  const int count = trials(cfg, 50);
  double worst_recovery = 0.0, worst_conjugation = 0.0;
  for (int n : {5, 10, 20}) {
    for (int t = 0; t < count; ++t) {
      Vector h(n);
      double v = std::exp(uniform(rng, -1.0, 1.0));
      for (int k = 0; k < n; ++k) {
        h(k) = v;
        v += uniform(rng, 0.1, 2.0);
      }
      Vector scales(n);
      for (int k = 0; k < n; ++k) scales(k) = std::exp(uniform(rng, -1.0, 1.0));
      const Matrix s = linalg::random_orthogonal(n, rng) * scales.asDiagonal() * linalg::random_orthogonal(n, rng);
      const pair::GramPair gp{s.transpose() * s, s.transpose() * h.asDiagonal() * s};
      const auto got = pair::extract_pair_growth(gp);
      for (int k = 0; k < n; ++k) scales(k) = std::exp(uniform(rng, -1.0, 1.0));
      const Matrix p = linalg::random_orthogonal(n, rng) * scales.asDiagonal() * linalg::random_orthogonal(n, rng);
      const pair::GramPair conj{p.transpose() * gp.g0 * p, p.transpose() * gp.g1 * p};
      const auto got2 = pair::extract_pair_growth(conj);
      for (int k = 0; k < n; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        worst_recovery = std::max(worst_recovery, std::abs(got.h.values[idx] - h(k)) / h(k));
        worst_conjugation =
            std::max(worst_conjugation, std::abs(got2.h.values[idx] - got.h.values[idx]) / got.h.values[idx]);
      }
    }
  }
  Certificate c;
  c.check = "pair-growth-extraction";
  c.inputs_digest = digest(cfg, 3, "N=5,10,20;trials=" + std::to_string(count));
  c.measured = std::max(worst_recovery, worst_conjugation);
  c.bound = 1e-9;
  c.slack = c.bound - c.measured;
  c.pass = worst_recovery <= 1e-9 && worst_conjugation <= 1e-9;
  c.details["max_relative_recovery_error"] = number(worst_recovery);
  c.details["max_relative_conjugation_error"] = number(worst_conjugation);
  c.details["trials_per_N"] = count;
  return c;
}

// ------------------------------------------------------------------ 4

Certificate contour_projections(const Config& cfg) {
  using namespace projection;
  Rng rng = rng_for(cfg, 4);
  const int count = trials(cfg, 200);
  double oracle = 0.0, idem = 0.0, sum = 0.0;
  for (int t = 0; t < count; ++t) {
    const double sigma = uniform(rng, 0.1, 4.0);
    const auto a = hessian::random_hessian(rng, uniform_int(rng, 1, 20), uniform_int(rng, 1, 20), sigma);
    const Matrix pp = contour_projection(a, Sign::Plus);
    const Matrix pm = contour_projection(a, Sign::Minus);
    oracle = std::max(oracle, linalg::spectral_norm(Matrix(pp - eigenprojection_oracle(a, Sign::Plus))));
    idem = std::max(idem, linalg::spectral_norm(Matrix(pp * pp - pp)));
    sum = std::max(sum, linalg::spectral_norm(Matrix(pp + pm - Matrix::Identity(a.dim(), a.dim()))));
  }
  Certificate c;
  c.check = "contour-projections";
  c.inputs_digest = digest(cfg, 4, "trials=" + std::to_string(count) + ";N<=40;sigma=[0.1,4]");
  c.measured = std::max({oracle, idem, sum});
  c.bound = 1e-7;
  c.slack = c.bound - c.measured;
  c.pass = c.measured <= c.bound;
  c.details["max_oracle_error"] = number(oracle);
  c.details["max_idempotence_error"] = number(idem);
  c.details["max_completeness_error"] = number(sum);
  c.details["trials"] = count;
  return c;
}

// ------------------------------------------------------------------ 5

Certificate derivative_formula(const Config& cfg) {
  using namespace projection;
  Rng rng = rng_for(cfg, 5);
  const int count = trials(cfg, 50);
  double min_order = INFINITY;
  for (int t = 0; t < count; ++t) {
    const double sigma = uniform(rng, 0.25, 2.0);
    const auto a = hessian::random_hessian(rng, uniform_int(rng, 1, 10), uniform_int(rng, 1, 10), sigma);
    Matrix d = linalg::random_symmetric(a.dim(), rng);
    d /= linalg::spectral_norm(d);
    const Matrix exact = projection_derivative(a, d, Sign::Plus);
    std::vector<double> err;
    double eps = 0.05 * sigma;
    for (int j = 0; j < 5; ++j, eps /= 2.0) {
      const auto ap = hessian::WeakHessian::from_matrix(a.matrix() + eps * d);
      const auto am = hessian::WeakHessian::from_matrix(a.matrix() - eps * d);
      const Matrix fd = (contour_projection(ap, Sign::Plus) - contour_projection(am, Sign::Plus)) / (2.0 * eps);
      err.push_back(linalg::spectral_norm(Matrix(fd - exact)));
    }
    for (std::size_t j = 0; j + 1 < err.size(); ++j) min_order = std::min(min_order, std::log2(err[j] / err[j + 1]));
  }
  const auto a2 = hessian::WeakHessian::from_spectrum({-1.0}, {1.0});
  constexpr double delta = 0.75;
  Matrix d2(2, 2);
  d2 << 0.0, delta, delta, 0.0;
  Matrix want(2, 2);
  want << 0.0, delta / 2.0, delta / 2.0, 0.0;
  const double closed = (projection_derivative(a2, d2, Sign::Plus) - want).cwiseAbs().maxCoeff();
  Certificate c;
  c.check = "projection-derivative";
  c.inputs_digest = digest(cfg, 5, "trials=" + std::to_string(count) + ";octaves=4;closed=diag(1,-1)");
  c.measured = min_order;
  c.bound = 1.9;
  c.slack = min_order - 1.9;
  c.pass = min_order >= 1.9 && closed <= 1e-7;
  c.details["min_observed_order"] = number(min_order);
  c.details["closed_case_error"] = number(closed);
  c.details["trials"] = count;
  return c;
}

// ------------------------------------------------------------------ 6

Certificate hadamard_representation(const Config& cfg) {
  using namespace projection;
  Rng rng = rng_for(cfg, 6);
  const int count = trials(cfg, 50);
  double worst = 0.0;
  for (int t = 0; t < count; ++t) {
    const double sigma = uniform(rng, 0.25, 2.0);
    const auto a = hessian::random_hessian(rng, uniform_int(rng, 1, 12), uniform_int(rng, 1, 12), sigma);
    const Matrix d = linalg::random_symmetric(a.dim(), rng);
    worst = std::max(worst, (beta_block_hadamard(a, d) - beta_segment_quadrature(a, d)).cwiseAbs().maxCoeff());
  }
  const double q11 = std::abs(hadamard_q(1.0, 1.0) - 0.5);
  const double q1m1 = std::abs(hadamard_q(1.0, -1.0) - pi / 4.0);
  Certificate c;
  c.check = "hadamard-representation";
  c.inputs_digest = digest(cfg, 6, "trials=" + std::to_string(count));
  c.measured = worst;
  c.bound = 1e-7;
  c.slack = c.bound - worst;
  c.pass = worst <= 1e-7 && q11 <= 1e-15 && q1m1 <= 1e-15;
  c.details["max_entry_error"] = number(worst);
  c.details["q(1,1)"] = hadamard_q(1.0, 1.0);
  c.details["q(1,-1)"] = hadamard_q(1.0, -1.0);
  c.details["trials"] = count;
  return c;
}

// ------------------------------------------------------------------ 7

Certificate norm_bounds(const Config& cfg) {
  using namespace projection;
  Rng rng = rng_for(cfg, 7);
  const int count = trials(cfg, 50);
  long violations = 0;
  double worst_alpha = 0.0, worst_beta = 0.0, worst_total = 0.0;
  Json sweep = Json::array();
  for (double sigma : {0.25, 0.5, 1.0, 2.0}) {
    double sa = 0.0, sb = 0.0, st = 0.0;
    for (int t = 0; t < count; ++t) {
      const auto a = hessian::random_hessian(rng, uniform_int(rng, 1, 12), uniform_int(rng, 1, 12), sigma);
      Matrix d = linalg::random_symmetric(a.dim(), rng);
      d /= shifted_norm(d, a, 0.0);
      const auto ap = alpha_bound_check(a, d, Sign::Plus);
      const auto am = alpha_bound_check(a, d, Sign::Minus);
      const auto dp = dpi_half_bound_check(a, d);
      if (!ap.pass || !am.pass || !dp.pass) ++violations;
      sa = std::max({sa, ap.measured / ap.bound, am.measured / am.bound});
      sb = std::max(sb, std::max(dp.beta_pm, dp.beta_mp) / dp.beta_block_bound);
      st = std::max(st, dp.total / dp.total_bound);
    }
    sweep.push_back({{"sigma", sigma}, {"alpha_ratio", number(sa)}, {"beta_block_ratio", number(sb)},
                     {"total_ratio", number(st)}});
    worst_alpha = std::max(worst_alpha, sa);
    worst_beta = std::max(worst_beta, sb);
    worst_total = std::max(worst_total, st);
  }
  Certificate c;
  c.check = "norm-bounds";
  c.inputs_digest = digest(cfg, 7, "sigma=0.25,0.5,1,2;trials=" + std::to_string(count) + ";slack=1e-6");
  c.measured = std::max({worst_alpha, worst_beta, worst_total});
  c.bound = 1.0;
  c.slack = 1e-6;
  c.pass = violations == 0;
  c.details["violations"] = violations;
  c.details["max_alpha_ratio"] = number(worst_alpha);
  c.details["max_beta_block_ratio"] = number(worst_beta);
  c.details["max_total_ratio"] = number(worst_total);
  c.details["sweep"] = sweep;
  return c;
}

// ------------------------------------------------------------------ 8

Certificate continuity(const Config& cfg) {
  using namespace projection;
  Rng rng = rng_for(cfg, 8);
  const int count = trials(cfg, 50);
  long v_half = 0, v_three = 0, v_shifted = 0;
  double r_half = 0.0, r_three = 0.0, r_shifted = 0.0;
  for (int t = 0; t < count; ++t) {
    const double sigma = uniform(rng, 0.25, 2.0);
    const auto a = hessian::random_hessian(rng, uniform_int(rng, 1, 12), uniform_int(rng, 1, 12), sigma);
    Matrix p = linalg::random_symmetric(a.dim(), rng);
    p *= uniform(rng, 0.05, 0.3) * sigma / linalg::spectral_norm(p);
    const auto b = hessian::WeakHessian::from_matrix(a.matrix() + p);
    const auto r = projection_continuity_check(a, b);
    v_half += !r.pass_half;
    v_three += !r.pass_three_half;
    v_shifted += !r.pass_three_half_shifted;
    r_half = std::max(r_half, r.diff_half / r.bound_half);
    r_three = std::max(r_three, r.diff_three_half / r.bound_three_half);
    r_shifted = std::max(r_shifted, r.diff_three_half / r.bound_three_half_shifted);
  }
  Certificate c;
  c.check = "projection-continuity";
  c.inputs_digest = digest(cfg, 8, "trials=" + std::to_string(count) + ";perturbation=[0.05,0.3]sigma");
  c.measured = std::max(r_half, r_three);
  c.bound = 1.0;
  c.slack = 1e-6;
  c.pass = v_half == 0 && v_three == 0;
  c.details["violations_half"] = v_half;
  c.details["violations_three_half"] = v_three;
  c.details["violations_three_half_vs_h2_h1"] = v_shifted;
  c.details["max_ratio_half"] = number(r_half);
  c.details["max_ratio_three_half"] = number(r_three);
  c.details["max_ratio_three_half_vs_h2_h1"] = number(r_shifted);
  return c;
}

// ------------------------------------------------------------------ 9

Certificate restricted_iso(const Config& cfg) {
  using namespace projection;
  Rng rng = rng_for(cfg, 9);
  const int count = trials(cfg, 50);
  long failures = 0, shrinks = 0;
  double dev_a = 0.0, dev_b = 0.0, cond = 0.0;
  for (int t = 0; t < count; ++t) {
    const double sigma = uniform(rng, 0.5, 2.0);
    const auto a = hessian::random_hessian(rng, uniform_int(rng, 1, 10), uniform_int(rng, 1, 10), sigma);
    Matrix p = linalg::random_symmetric(a.dim(), rng);
    p /= linalg::spectral_norm(p);
    double scale = sigma;
    for (;;) {
      const auto b = hessian::WeakHessian::from_matrix(a.matrix() + scale * p);
      try {
        const auto r = restricted_projection_iso_check(a, b);
        failures += !r.pass;
        dev_a = std::max({dev_a, r.dev_a_half, r.dev_a_three_half});
        dev_b = std::max({dev_b, r.dev_b_half, r.dev_b_three_half});
        cond = std::max({cond, r.cond_half, r.cond_three_half});
        break;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::PreconditionViolation && e.kind() != ErrorKind::NotInvertible &&
            e.kind() != ErrorKind::ZeroEigenvalue)
          throw;
        scale /= 2.0;
        ++shrinks;
      }
    }
  }
  Certificate c;
  c.check = "restricted-projection-iso";
  c.inputs_digest = digest(cfg, 9, "trials=" + std::to_string(count));
  c.measured = std::max(dev_a / 0.25, dev_b / 0.5);
  c.bound = 1.0;
  c.pass = failures == 0;
  c.details["failures"] = failures;
  c.details["max_deviation_on_A"] = number(dev_a);
  c.details["max_deviation_on_B"] = number(dev_b);
  c.details["max_condition"] = number(cond);
  c.details["ball_shrinks"] = shrinks;
  return c;
}

// ----------------------------------------------------------------- 10

Certificate schur_certificates(const Config& cfg) {
  using namespace schur;
  Rng rng = rng_for(cfg, 10);
  const Eigen::Index cap = cfg.smoke ? 32 : 256;
  std::vector<Eigen::Index> schedule;
  for (Eigen::Index n = 1; n <= cap; n *= 2) schedule.push_back(n);
  Vector a(cap), b(cap);
  for (Eigen::Index k = 0; k < cap; ++k) a(k) = std::exp(uniform(rng, -3.0, 3.0));
  for (Eigen::Index k = 0; k < cap; ++k) b(k) = std::exp(uniform(rng, -3.0, 3.0));
  const ProbeConfig probes{};
  std::optional<LowerBound> prev_cor, prev_iii;
  double ratio_cor = 0.0, ratio_iii = 0.0, probe_ratio = 0.0;
  bool certificates_ok = true;
  Json rows = Json::array();
  for (Eigen::Index n : schedule) {
    const Vector an = a.head(n), bn = b.head(n);
    const auto cor = corollary_matrix(an, bn);
    const auto iii = example_iii_matrix(an, bn);
    const auto set = probe_set(n, probes);
    const auto gc = grothendieck_upper_bound(cor.certificate, cor.window, probes);
    const auto gi = grothendieck_upper_bound(iii.certificate, iii.window, probes);
    iii.certificate.verify(iii.window, 1e-12);
    certificates_ok = certificates_ok && gc.pass && gi.pass && gc.bound <= 0.5 * (1.0 + 1e-12) &&
                      gi.bound <= pi / 2.0 * (1.0 + 1e-12);
    LowerBound lc = schur_norm_lower_bound(cor.window, set, probes, prev_cor ? &*prev_cor : nullptr);
    LowerBound li = schur_norm_lower_bound(iii.window, set, probes, prev_iii ? &*prev_iii : nullptr);
    ratio_cor = std::max(ratio_cor, lc.value / 0.5);
    ratio_iii = std::max(ratio_iii, li.value / (pi / 2.0));
    probe_ratio = std::max({probe_ratio, gc.max_probe_ratio / gc.bound, gi.max_probe_ratio / gi.bound});
    rows.push_back({{"n", n}, {"corollary_lower", number(lc.value)}, {"corollary_cert", number(gc.bound)},
                    {"example_iii_lower", number(li.value)}, {"example_iii_cert", number(gi.bound)}});
    prev_cor = std::move(lc);
    prev_iii = std::move(li);
  }
  const auto ob = obstruction_demo(schedule, probes);
  bool gaps_ok = ob.limits.converged && std::abs(ob.limits.gap - 1.0) <= 1e-3;
  Json table = Json::array();
  for (const auto& r : ob.rows) {
    gaps_ok = gaps_ok && std::abs(r.gap_witness - 1.0) <= 1e-3;
    table.push_back({{"n", r.n}, {"lower_bound", number(r.lower_bound)}, {"gap_witness", number(r.gap_witness)}});
  }
  Certificate c;
  c.check = "schur-certificates";
  c.inputs_digest = digest(cfg, 10, "windows<=" + std::to_string(cap) + ";a,b=exp(U[-3,3])");
  c.measured = std::max(ratio_cor, ratio_iii);
  c.bound = 1.0;
  c.slack = 1e-9;
  c.pass = ratio_cor <= 1.0 + 1e-9 && ratio_iii <= 1.0 + 1e-9 && certificates_ok && gaps_ok && ob.non_decreasing;
  c.details["windows"] = rows;
  c.details["certificates_ok"] = certificates_ok;
  c.details["max_probe_to_certificate_ratio"] = number(probe_ratio);
  c.details["obstruction_limits"] = {{"L1", number(ob.limits.l1)}, {"L2", number(ob.limits.l2)},
                                     {"gap", number(ob.limits.gap)}, {"converged", ob.limits.converged}};
  c.details["obstruction_table"] = table;
  c.details["obstruction_non_decreasing"] = ob.non_decreasing;
  return c;
}

// ----------------------------------------------------------------- 11

Certificate stein(const Config& cfg) {
  constexpr int n = 30;
  const int count = trials(cfg, 1000);
  std::vector<double> f(n), g(n);
  for (int k = 1; k <= n; ++k) {
    f[k - 1] = static_cast<double>(k) * k;
    g[k - 1] = static_cast<double>(k) * k * k;
  }
  const auto ctx = interpolation::WeightedNormContext::from_samples(growth::GrowthSample::from_values(f, "nu^2"),
                                                                    growth::GrowthSample::from_values(g, "nu^3"));
  const auto rows = interpolation::stein_sweep(ctx, count, cfg.seed + 11);
  long violations = 0;
  double worst = -INFINITY;
  for (const auto& r : rows) {
    violations += !r.report.pass;
    worst = std::max(worst, r.report.slack);
  }
  // Constant weight ratio g = 4f: the identity attains equality.
  const Vector fw = ctx.f;
  const interpolation::WeightedNormContext eq{fw, Vector(4.0 * fw)};
  const auto diag = interpolation::stein_check(Matrix(Matrix::Identity(n, n)), eq);
  Certificate c;
  c.check = "stein-interpolation";
  c.inputs_digest = digest(cfg, 11, "N=30;f=nu^2;g=nu^3;trials=" + std::to_string(count));
  c.measured = worst;
  c.bound = 1e-10;
  c.slack = 1e-10 - worst;
  c.pass = violations == 0 && std::abs(diag.slack) <= 1e-12;
  c.details["violations"] = violations;
  c.details["max_relative_slack"] = number(worst);
  c.details["equality_case_slack"] = number(diag.slack);
  c.details["trials"] = count;
  return c;
}

// ----------------------------------------------------------------- 12

Certificate translation(const Config& cfg) {
  constexpr std::size_t n = 200;
  const hessian::HessianFamily family{growth::parse_spec("pow:1"), growth::parse_spec("pow:1"),
                                      hessian::HessianType::Floer};
  Json rows = Json::array();
  bool ok = true;
  double worst = 0.0;
  int cases_seen[4] = {0, 0, 0, 0};
  for (int k = 0; k < 20; ++k) {
    const double lambda = -9.3 + k;
    const auto r = hessian::verify_translation_growth_equivalence(family, lambda, n);
    ok = ok && r.pass;
    for (const auto* s : {&r.plus, &r.minus}) {
      worst = std::max(worst, s->report.c_estimate / s->proof_constant);
      ++cases_seen[s->proof_case];
    }
    rows.push_back({{"lambda", lambda},
                    {"plus_case", r.plus.proof_case},
                    {"plus_c", number(r.plus.report.c_estimate)},
                    {"plus_proof_constant", number(r.plus.proof_constant)},
                    {"minus_case", r.minus.proof_case},
                    {"minus_c", number(r.minus.report.c_estimate)},
                    {"minus_proof_constant", number(r.minus.proof_constant)},
                    {"pass", r.pass}});
  }
  const bool all_cases = cases_seen[1] > 0 && cases_seen[2] > 0 && cases_seen[3] > 0;
  Certificate c;
  c.check = "translation-equivalence";
  c.inputs_digest = digest(cfg, 12, "a=+-nu;lambda=-9.3..9.7 step 1;N=200");
  c.measured = worst;
  c.bound = 1.0;
  c.pass = ok && all_cases;
  c.details["all_three_cases_covered"] = all_cases;
  c.details["sweep"] = rows;
  return c;
}

}  // namespace

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {1, "kang-identities", 1.0, kang_identities},
      {2, "kang-decomposition", 1.0, kang_decomposition},
      {3, "pair-growth-extraction", 2.0, pair_extraction},
      {4, "contour-projections", 30.0, contour_projections},
      {5, "projection-derivative", 20.0, derivative_formula},
      {6, "hadamard-representation", 10.0, hadamard_representation},
      {7, "norm-bounds", 60.0, norm_bounds},
      {8, "projection-continuity", 30.0, continuity},
      {9, "restricted-projection-iso", 20.0, restricted_iso},
      {10, "schur-certificates", 30.0, schur_certificates},
      {11, "stein-interpolation", 10.0, stein},
      {12, "translation-equivalence", 5.0, translation},
  };
  return list;
}

Certificate run_criterion(const Criterion& crit, const Config& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  Certificate c = crit.run(cfg);
  c.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool within = cfg.smoke || c.runtime_seconds < crit.budget_seconds;
  c.details["criterion"] = crit.id;
  c.details["budget_seconds"] = crit.budget_seconds;
  c.details["within_budget"] = within;
  c.pass = c.pass && within;
  return c;
}

std::vector<Certificate> run_all(const Config& cfg) {
  std::vector<Certificate> out;
  for (const auto& c : criteria()) out.push_back(run_criterion(c, cfg));
  return out;
}

}  // namespace scalebench::acceptance
