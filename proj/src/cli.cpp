#include "scalebench/cli.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "scalebench/acceptance.hpp"
#include "scalebench/error.hpp"
#include "scalebench/growth.hpp"
#include "scalebench/growth_spec.hpp"
#include "scalebench/hessian.hpp"
#include "scalebench/hilbert_pair.hpp"
#include "scalebench/interpolation.hpp"
#include "scalebench/projection.hpp"
#include "scalebench/report.hpp"
#include "scalebench/schur.hpp"

namespace scalebench::cli {

using report::Json;
using report::number;

namespace {

// Every option any subcommand may register; each command binds only its own.
struct Options {
  // global
  int n = 0;  // 0: command default
  std::uint64_t seed = 20240601;
  double tol = 1e-12;
  std::string format = "table";
  std::string out;

  std::string f = "pow:1", g = "pow:2";
  long k = 2;
  std::string kind;
  std::string expect;
  double level = 0.5;
  double lambda = 0.5;
  std::string spectrum = R"({"neg":[-1],"pos":[1]})";
  std::string spectrum_b;
  double perturb = 0.1;
  bool rotate = false;
  std::string sign = "+";
  std::string delta;
  std::string op;
  std::string t;
  std::string g0, g1, h;
  std::string plus = "pow:1", minus = "pow:1";
  std::string from = "[[1,0],[0,2]]", to = "[[-1,0],[0,2]]";
  int steps = 20;
  std::vector<double> sigmas{0.25, 0.5, 1.0, 2.0};
  int trials = 0;
  bool fd = false;
  std::vector<double> zeta;
  int terms = 4;
  std::string a_list, b_list;
  double constant = 1.0;
  std::vector<long> schedule;
  long base = 1 << 10;
  long scale = 1 << 20;
};

struct Result {
  Json obj = Json::object();
  std::optional<report::Table> table;
  std::optional<std::vector<report::Certificate>> certificates;
  int exit = kExitPass;
};

using Setup = void (*)(CLI::App&, Options&);
using Handler = Result (*)(const Options&);

struct Command {
  CommandInfo info;
  Setup setup;
  Handler handler;
};

// ------------------------------------------------------------- input helpers

std::string read_source(const std::string& s) {
  if (!s.empty() && s.front() == '@') {
    std::ifstream in(s.substr(1));
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read file " + s.substr(1));
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  return s;
}

Json parse_json(const std::string& s, const char* what) {
  try {
    return Json::parse(read_source(s));
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("malformed ") + what + ": " + e.what());
  }
}

Matrix parse_matrix(const std::string& s, const char* what) {
  const Json j = parse_json(s, what);
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::InvalidArgument, std::string(what) + " must be a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& r = j[static_cast<std::size_t>(i)];
    if (!r.is_array() || static_cast<Eigen::Index>(r.size()) != cols)
      throw Error(ErrorKind::DimensionMismatch, std::string(what) + " rows differ in length");
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = r[static_cast<std::size_t>(c)].get<double>();
  }
  return m;
}

std::vector<double> parse_list(const std::string& s, const char* what) {
  const std::string text = read_source(s);
  if (!text.empty() && text.front() == '[') return parse_json(text, what).get<std::vector<double>>();
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument, std::string("malformed ") + what + " entry '" + item + "'");
    }
  }
  return out;
}

Vector to_vector(const std::vector<double>& v) { return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size())); }

hessian::WeakHessian parse_spectrum(const std::string& s, bool rotate, std::uint64_t seed) {
  const Json j = parse_json(s, "spectrum");
  if (!j.is_object()) throw Error(ErrorKind::InvalidArgument, R"(spectrum must look like {"neg":[...],"pos":[...]})");
  const auto neg = j.value("neg", std::vector<double>{});
  const auto pos = j.value("pos", std::vector<double>{});
  std::optional<Matrix> basis;
  if (j.contains("basis")) basis = parse_matrix(j["basis"].dump(), "basis");
  else if (rotate) {
    Rng rng(seed);
    basis = linalg::random_orthogonal(static_cast<Eigen::Index>(neg.size() + pos.size()), rng);
  }
  std::optional<hessian::HessianType> type;
  if (j.contains("type")) type = hessian::hessian_type_from_string(j["type"].get<std::string>());
  return hessian::WeakHessian::from_spectrum(neg, pos, basis, std::nullopt, type);
}

hessian::WeakHessian second_hessian(const Options& o, const hessian::WeakHessian& a) {
  if (!o.spectrum_b.empty()) return parse_spectrum(o.spectrum_b, o.rotate, o.seed + 1);
  Rng rng(o.seed + 17);
  Matrix p = linalg::random_symmetric(a.dim(), rng);
  p *= o.perturb * a.sigma() / linalg::spectral_norm(p);
  return hessian::WeakHessian::from_matrix(a.matrix() + p);
}

Matrix delta_or_random(const Options& o, const hessian::WeakHessian& a) {
  if (!o.delta.empty()) return parse_matrix(o.delta, "delta");
  Rng rng(o.seed + 29);
  Matrix d = linalg::random_symmetric(a.dim(), rng);
  return d / projection::shifted_norm(d, a, 0.0);
}

projection::Sign parse_sign(const std::string& s) {
  if (s == "+" || s == "plus") return projection::Sign::Plus;
  if (s == "-" || s == "minus") return projection::Sign::Minus;
  throw Error(ErrorKind::InvalidArgument, "sign must be + or -");
}

QuadratureConfig quad_config(const Options& o) {
  QuadratureConfig q;
  q.tolerance = o.tol;
  q.validate();
  return q;
}

int n_or(const Options& o, int fallback) { return o.n > 0 ? o.n : fallback; }

report::Table sample_table(const growth::GrowthSample& s) {
  report::Table t{{"nu", "value", "log_value"}, {}};
  for (std::size_t nu = 1; nu <= s.size(); ++nu)
    t.rows.push_back({static_cast<long>(nu), number(s.value(nu)), number(s.log_value(nu))});
  return t;
}

Json sample_json(const growth::GrowthSample& s) {
  Json v = Json::array();
  for (double x : s.values) v.push_back(number(x));
  return v;
}

Json equivalence_json(const growth::EquivalenceReport& r) {
  return {{"verdict", growth::to_string(r.verdict)}, {"c_estimate", number(r.c_estimate)},
          {"log_c", number(r.log_c)},              {"window", r.window},
          {"stable", r.stable},                    {"log_final_ratio", number(r.log_final_ratio)}};
}

int expect_exit(const Options& o, const std::string& actual) {
  return !o.expect.empty() && o.expect != actual ? kExitVerdict : kExitPass;
}

void add_f(CLI::App& c, Options& o) { c.add_option("--f", o.f, "growth spec")->capture_default_str(); }
void add_fg(CLI::App& c, Options& o) {
  add_f(c, o);
  c.add_option("--g", o.g, "growth spec")->capture_default_str();
}
void add_expect(CLI::App& c, Options& o, const std::string& values) {
  c.add_option("--expect", o.expect, "exit 2 unless the verdict equals this (" + values + ")");
}
void add_spectrum(CLI::App& c, Options& o) {
  c.add_option("--spectrum", o.spectrum, R"(JSON {"neg":[...],"pos":[...]} with optional "basis" and "type", or @file)")
      ->capture_default_str();
  c.add_flag("--rotate", o.rotate, "conjugate by a seeded random orthogonal basis");
}
void add_second(CLI::App& c, Options& o) {
  c.add_option("--spectrum-b", o.spectrum_b, "second Hessian (default: seeded perturbation of the first)");
  c.add_option("--perturb", o.perturb, "perturbation size relative to the gap")->capture_default_str();
}

// ------------------------------------------------------------------ growth

Result growth_unary(const Options& o, const growth::GrowthFunction& h) {
  const auto s = growth::sample(h, static_cast<std::size_t>(n_or(o, 20)));
  Result r;
  r.obj["spec"] = h.to_spec();
  r.obj["n"] = s.size();
  r.table = sample_table(s);
  return r;
}

Result growth_sample(const Options& o) { return growth_unary(o, growth::parse_spec(o.f)); }
Result growth_ptw(const Options& o) {
  return growth_unary(o, growth::pointwise_product(growth::parse_spec(o.f), growth::parse_spec(o.g)));
}
Result growth_kang(const Options& o) {
  return growth_unary(o, growth::kang_product(growth::parse_spec(o.f), growth::parse_spec(o.g)));
}
Result growth_shift(const Options& o) { return growth_unary(o, growth::shift(growth::parse_spec(o.f))); }

Result growth_equiv(const Options& o) {
  const auto rep = growth::equivalence_report(growth::parse_spec(o.f), growth::parse_spec(o.g),
                                              static_cast<std::size_t>(n_or(o, 1000)));
  Result r;
  r.obj = equivalence_json(rep);
  r.exit = expect_exit(o, growth::to_string(rep.verdict));
  return r;
}

Result growth_order(const Options& o) {
  const auto rep = growth::partial_order_leq(growth::parse_spec(o.f), growth::parse_spec(o.g),
                                             static_cast<std::size_t>(n_or(o, 1000)));
  Result r;
  const std::string verdict = rep.leq ? "leq" : "not-leq-on-window";
  r.obj = {{"verdict", verdict}, {"max_ratio", number(rep.max_ratio)}, {"stable", rep.stable}};
  r.exit = expect_exit(o, verdict);
  return r;
}

Result growth_invariance(const Options& o) {
  const auto f = growth::parse_spec(o.f);
  const auto n = static_cast<std::size_t>(n_or(o, 1000));
  const std::string kind = o.kind.empty() ? "shift" : o.kind;
  growth::InvarianceReport rep;
  if (kind == "shift") rep = growth::is_shift_invariant(f, n);
  else if (kind == "scale") rep = growth::is_scale_invariant(f, n);
  else throw Error(ErrorKind::InvalidArgument, "invariance kind must be shift or scale");
  Result r;
  const std::string verdict = rep.yes ? "yes-on-window" : "no-on-window";
  r.obj = {{"kind", kind},
           {"verdict", verdict},
           {"c_estimate", number(rep.c_estimate)},
           {"log_c", number(rep.log_c)},
           {"stable", rep.stable}};
  r.exit = expect_exit(o, verdict);
  return r;
}

Result growth_decompose(const Options& o) {
  const auto f = growth::parse_spec(o.f);
  const auto n = static_cast<std::size_t>(n_or(o, 1000));
  const auto d = growth::kang_decompose(f, o.k);
  const auto back = growth::kang_product(d.f_k, d.g_k);
  bool exact = true;
  for (std::size_t nu = 1; nu <= n && exact; ++nu) exact = back.log_at(nu) == f.log_at(nu);
  const auto sf = growth::is_shift_invariant(d.f_k, n);
  const auto sg = growth::is_shift_invariant(d.g_k, n);
  Result r;
  r.obj = {{"f", f.to_spec()},
           {"k", o.k},
           {"f_k", d.f_k.to_spec()},
           {"g_k", d.g_k.to_spec()},
           {"reconstruction_exact", exact},
           {"f_k_shift_invariant", sf.yes},
           {"g_k_shift_invariant", sg.yes},
           {"window", n}};
  r.exit = exact ? kExitPass : kExitVerdict;
  return r;
}

void setup_k(CLI::App& c, Options& o) {
  add_f(c, o);
  c.add_option("--k", o.k, "stride k >= 2")->capture_default_str();
}
void setup_invariance(CLI::App& c, Options& o) {
  add_f(c, o);
  c.add_option("--kind", o.kind, "shift or scale");
  add_expect(c, o, "yes-on-window, no-on-window");
}
void setup_equiv(CLI::App& c, Options& o) {
  add_fg(c, o);
  add_expect(c, o, "equivalent-on-window, ratio-diverging, inconclusive");
}
void setup_order(CLI::App& c, Options& o) {
  add_fg(c, o);
  add_expect(c, o, "leq, not-leq-on-window");
}

// -------------------------------------------------------------------- pair

Result pair_extract(const Options& o) {
  pair::GramPair gp;
  if (!o.g0.empty() || !o.g1.empty()) {
    gp.g0 = parse_matrix(o.g0, "g0");
    gp.g1 = parse_matrix(o.g1, "g1");
  } else {
    const std::string h = o.h.empty() ? "1,2,3,4,5" : o.h;
    gp = pair::GramPair::from_weights(to_vector(parse_list(h, "h")));
    if (o.rotate) {
      Rng rng(o.seed);
      const Matrix q = linalg::random_orthogonal(gp.n(), rng);
      gp = {q.transpose() * gp.g0 * q, q.transpose() * gp.g1 * q};
    }
  }
  const auto pg = pair::extract_pair_growth(gp);
  const Vector h = Eigen::Map<const Vector>(pg.h.values.data(), static_cast<Eigen::Index>(pg.h.size()));
  const auto defect = pair::isometry_defect(pg.basis.t, pair::GramPair::from_weights(h), gp);
  const pair::HilbertScale scale{h, o.level};
  const auto shift = pair::level_shift_isometry(scale, o.level);
  const pair::GramPair shifted{h.array().pow(o.level).matrix().asDiagonal(),
                               h.array().pow(o.level + 1.0).matrix().asDiagonal()};
  const auto shift_defect = pair::isometry_defect(shift.t, pair::GramPair::from_weights(h), shifted);
  Vector e1 = Vector::Zero(h.size());
  e1(0) = 1.0;
  Result r;
  r.obj = {{"h", sample_json(pg.h)},
           {"kappa", report::vector_json(pg.kappa)},
           {"degenerate", pg.degenerate},
           {"basis_isometry_defect", number(defect.max())},
           {"riesz_operator", report::matrix_json(pair::riesz_operator(gp))},
           {"level", o.level},
           {"level_shift_isometry_defect", number(shift_defect.max())},
           {"norm_e1_at_level", number(pair::norm(e1, scale))},
           {"inclusion_norm_level_to_0", number(pair::inclusion_norm(h, o.level, 0.0))}};
  r.table = sample_table(pg.h);
  return r;
}

Result pair_isocheck(const Options& o) {
  const auto n = static_cast<std::size_t>(n_or(o, 20));
  const auto fs = growth::sample(growth::parse_spec(o.f), n);
  const auto gs = growth::sample(growth::parse_spec(o.g), n);
  const Matrix t = o.t.empty() ? Matrix(Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)))
                               : parse_matrix(o.t, "t");
  const auto rep = pair::pair_isomorphism_equivalence_check(fs, gs, t, n);
  Result r;
  r.obj = {{"norm_t", number(rep.norm_t)},
           {"norm_t_inv", number(rep.norm_t_inv)},
           {"norm_t_fg", number(rep.norm_t_fg)},
           {"norm_t_inv_gf", number(rep.norm_t_inv_gf)},
           {"c0", number(rep.c0)},
           {"c", number(rep.c)},
           {"max_log_ratio", number(rep.max_log_ratio)},
           {"inequality_holds", rep.inequality_holds},
           {"c0_half", number(rep.c0_half)},
           {"c0_diverging", rep.c0_diverging},
           {"identity_constant", number(rep.identity_constant)},
           {"identity_certified", rep.identity_certified}};
  const std::string verdict = rep.identity_certified ? "isomorphic-on-window" : "not-certified";
  r.obj["verdict"] = verdict;
  r.exit = expect_exit(o, verdict);
  return r;
}

void setup_extract(CLI::App& c, Options& o) {
  c.add_option("--g0", o.g0, "Gram matrix of H0 (JSON rows or @file)");
  c.add_option("--g1", o.g1, "Gram matrix of H1 (JSON rows or @file)");
  c.add_option("--weights", o.h, "weights h, building G0 = I, G1 = diag(h)");
  c.add_flag("--rotate", o.rotate, "conjugate the weight pair by a seeded orthogonal matrix");
  c.add_option("--level", o.level, "level r for the shift isometry")->capture_default_str();
}
void setup_isocheck(CLI::App& c, Options& o) {
  add_fg(c, o);
  c.add_option("--t", o.t, "map T (JSON rows or @file); identity by default");
  add_expect(c, o, "isomorphic-on-window, not-certified");
}

// ----------------------------------------------------------------- hessian

Result hessian_growth(const Options& o) {
  const auto a = parse_spectrum(o.spectrum, o.rotate, o.seed);
  const auto sg = hessian::signed_growth(a);
  Result r;
  r.obj = {{"sigma", number(a.sigma())},
           {"total", sample_json(sg.total)},
           {"positive", sample_json(sg.positive)},
           {"negative", sample_json(sg.negative)},
           {"merge_identity_exact", sg.merge_identity_exact}};
  r.exit = sg.merge_identity_exact ? kExitPass : kExitVerdict;
  return r;
}

Json side_json(const hessian::TranslationSide& s) {
  return {{"case", s.proof_case},
          {"crossed", s.crossed},
          {"equivalence", equivalence_json(s.report)},
          {"shift_constant", number(s.shift_constant)},
          {"proof_constant", number(s.proof_constant)},
          {"within_constant", s.within_constant},
          {"pass", s.pass}};
}

Result hessian_translate(const Options& o) {
  const hessian::HessianFamily family{growth::parse_spec(o.plus), growth::parse_spec(o.minus),
                                      hessian::HessianType::Floer};
  const auto rep = hessian::verify_translation_growth_equivalence(family, o.lambda,
                                                                  static_cast<std::size_t>(n_or(o, 200)));
  Result r;
  r.obj = {{"lambda", o.lambda}, {"plus", side_json(rep.plus)}, {"minus", side_json(rep.minus)}, {"pass", rep.pass}};
  const auto a = parse_spectrum(o.spectrum, false, o.seed);
  r.obj["translated_spectrum"] = report::vector_json(hessian::translate(a, o.lambda).values());
  r.exit = rep.pass ? kExitPass : kExitVerdict;
  return r;
}

Result hessian_resolvent(const Options& o) {
  const auto a = parse_spectrum(o.spectrum, o.rotate, o.seed);
  const auto rep = hessian::resolvent_level_norms(a, o.lambda);
  Result r;
  r.obj = {{"lambda", o.lambda},
           {"norm_h1_to_h2", number(rep.norm_h1_to_h2)},
           {"diagonal_formula", rep.diagonal_formula ? number(*rep.diagonal_formula) : Json(nullptr)},
           {"eigenspace_defect", number(rep.eigenspace_defect)},
           {"eigenspaces_coincide", rep.eigenspaces_coincide},
           {"fredholm_index_zero", rep.fredholm_index_zero}};
  return r;
}

Result hessian_path(const Options& o) {
  const auto path = hessian::linear_path(parse_matrix(o.from, "from"), parse_matrix(o.to, "to"), o.steps);
  const auto rep = hessian::path_type_demo(path);
  Result r;
  report::Table t{{"t", "n_neg", "n_zero", "n_pos"}, {}};
  for (const auto& s : rep.samples) t.rows.push_back({number(s.t), s.n_neg, s.n_zero, s.n_pos});
  r.obj = {{"total_crossings", rep.total_crossings},
           {"net_crossings", rep.net_crossings},
           {"signature_change", rep.signature_change},
           {"parity_consistent", rep.parity_consistent},
           {"declared_type", hessian::to_string(rep.declared_type)}};
  r.table = std::move(t);
  r.exit = rep.parity_consistent ? kExitPass : kExitVerdict;
  return r;
}

void setup_translate(CLI::App& c, Options& o) {
  c.add_option("--plus", o.plus, "growth of the positive spectrum")->capture_default_str();
  c.add_option("--minus", o.minus, "growth of |negative spectrum|")->capture_default_str();
  c.add_option("--lambda", o.lambda, "translation")->capture_default_str();
  c.add_option("--spectrum", o.spectrum, "finite spectrum to translate alongside")->capture_default_str();
}
void setup_resolvent(CLI::App& c, Options& o) {
  add_spectrum(c, o);
  c.add_option("--lambda", o.lambda, "resolvent parameter")->capture_default_str();
}
void setup_path(CLI::App& c, Options& o) {
  c.add_option("--from", o.from, "start matrix")->capture_default_str();
  c.add_option("--to", o.to, "end matrix")->capture_default_str();
  c.add_option("--steps", o.steps, "segment subdivisions")->capture_default_str();
}

// -------------------------------------------------------------- projection

Result projection_compute(const Options& o) {
  const auto a = parse_spectrum(o.spectrum, o.rotate, o.seed);
  const auto sign = parse_sign(o.sign);
  projection::QuadratureStats stats;
  const Matrix p = projection::contour_projection(a, sign, quad_config(o), &stats);
  const Matrix oracle = projection::eigenprojection_oracle(a, sign);
  Result r;
  r.obj = {{"sign", projection::to_string(sign)},
           {"sigma", number(a.sigma())},
           {"projection", report::matrix_json(p)},
           {"oracle_error", number(linalg::spectral_norm(Matrix(p - oracle)))},
           {"idempotence_error", number(linalg::spectral_norm(Matrix(p * p - p)))},
           {"alpha_length", number(projection::make_contour(a.sigma(), sign).alpha_length())},
           {"evaluations", stats.evaluations},
           {"beta_panels", stats.beta_panels}};
  return r;
}

Result projection_derivative_cmd(const Options& o) {
  const auto a = parse_spectrum(o.spectrum, o.rotate, o.seed);
  const Matrix d = delta_or_random(o, a);
  const auto parts = projection::derivative_parts(a, d, parse_sign(o.sign), quad_config(o));
  Result r;
  r.obj = {{"delta", report::matrix_json(d)},
           {"derivative", report::matrix_json(parts.total)},
           {"beta_part", report::matrix_json(parts.beta)},
           {"alpha_part", report::matrix_json(parts.alpha)}};
  if (!o.zeta.empty()) {
    if (o.zeta.size() != 2) throw Error(ErrorKind::InvalidArgument, "--zeta takes re,im");
    const auto rep = projection::neumann_difference_check(a, d, cplx(o.zeta[0], o.zeta[1]), o.terms);
    r.obj["neumann"] = {{"rho", number(rep.rho)},
                        {"residual_by_k", rep.residual_by_k},
                        {"residual", number(rep.residual)},
                        {"bound", number(rep.bound)},
                        {"pass", rep.pass}};
    if (!rep.pass) r.exit = kExitVerdict;
  }
  return r;
}

Result projection_hadamard(const Options& o) {
  const auto a = parse_spectrum(o.spectrum, o.rotate, o.seed);
  const Matrix d = delta_or_random(o, a);
  const Matrix c = projection::beta_block_hadamard(a, d);
  const Matrix q = projection::beta_segment_quadrature(a, d, quad_config(o));
  const double err = (c - q).cwiseAbs().maxCoeff();
  Result r;
  r.obj = {{"hadamard", report::matrix_json(c)}, {"quadrature", report::matrix_json(q)}, {"max_entry_error", number(err)}};
  r.exit = err <= 1e-7 ? kExitPass : kExitVerdict;
  return r;
}

Result projection_blocks(const Options& o) {
  const auto a = parse_spectrum(o.spectrum, o.rotate, o.seed);
  const Matrix op = o.op.empty() ? projection::projection_derivative(a, delta_or_random(o, a), projection::Sign::Plus,
                                                                     quad_config(o))
                                 : parse_matrix(o.op, "op");
  const auto b = projection::block_decompose(op, a, o.level);
  Result r;
  r.obj = {{"level", o.level},
           {"norm", number(projection::level_norm(op, a, o.level))},
           {"pp", number(linalg::spectral_norm(b.pp))},
           {"pm", number(linalg::spectral_norm(b.pm))},
           {"mp", number(linalg::spectral_norm(b.mp))},
           {"mm", number(linalg::spectral_norm(b.mm))},
           {"reassembly_error",
            number((b.reassemble() - a.values().cwiseAbs().array().pow(o.level).matrix().asDiagonal() *
                                         (a.basis().transpose() * op * a.basis()) *
                                         a.values().cwiseAbs().array().pow(-o.level).matrix().asDiagonal())
                       .cwiseAbs()
                       .maxCoeff())}};
  return r;
}

Result projection_bounds(const Options& o) {
  using namespace projection;
  const int count = o.trials > 0 ? o.trials : 10;
  const int dim = n_or(o, 12);
  Rng rng(o.seed);
  std::uniform_int_distribution<int> size(1, dim);
  report::Table t{{"sigma", "check", "measured", "bound"}, {}};
  long violations = 0;
  const QuadratureConfig q = quad_config(o);
  for (double s : o.sigmas) {
    double worst[3] = {0, 0, 0}, bound[3] = {0, 0, 0};
    for (int k = 0; k < count; ++k) {
      const auto a = hessian::random_hessian(rng, size(rng), size(rng), s);
      Matrix d = linalg::random_symmetric(a.dim(), rng);
      d /= shifted_norm(d, a, 0.0);
      const auto al = alpha_bound_check(a, d, Sign::Plus, q);
      const auto dp = dpi_half_bound_check(a, d, q);
      violations += !al.pass || !dp.pass;
      worst[0] = std::max(worst[0], al.measured);
      bound[0] = al.bound;
      worst[1] = std::max({worst[1], dp.beta_pm, dp.beta_mp});
      bound[1] = dp.beta_block_bound;
      worst[2] = std::max(worst[2], dp.total);
      bound[2] = dp.total_bound;
    }
    const char* names[3] = {"alpha", "beta-block", "total"};
    for (int c = 0; c < 3; ++c) t.rows.push_back({s, names[c], number(worst[c]), number(bound[c])});
  }
  Result r;
  r.obj = {{"trials_per_sigma", count}, {"violations", violations}};
  if (o.fd) {
    const auto a = hessian::random_hessian(rng, size(rng), size(rng), 0.5);
    Matrix d = linalg::random_symmetric(a.dim(), rng);
    d /= linalg::spectral_norm(d);
    const Matrix exact = projection_derivative(a, d, Sign::Plus, q);
    report::Table fd{{"eps", "error", "order"}, {}};
    double eps = 0.025, prev = 0.0;
    for (int j = 0; j < 5; ++j, eps /= 2.0) {
      const auto ap = hessian::WeakHessian::from_matrix(a.matrix() + eps * d);
      const auto am = hessian::WeakHessian::from_matrix(a.matrix() - eps * d);
      const Matrix diff = (contour_projection(ap, Sign::Plus, q) - contour_projection(am, Sign::Plus, q)) / (2.0 * eps);
      const double err = linalg::spectral_norm(Matrix(diff - exact));
      fd.rows.push_back({eps, number(err), j ? number(std::log2(prev / err)) : Json("")});
      prev = err;
    }
    r.table = std::move(fd);
  } else {
    r.table = std::move(t);
  }
  r.exit = violations ? kExitVerdict : kExitPass;
  return r;
}

Result projection_continuity(const Options& o) {
  const auto a = parse_spectrum(o.spectrum, o.rotate, o.seed);
  const auto b = second_hessian(o, a);
  const auto rep = projection::projection_continuity_check(a, b, quad_config(o));
  Result r;
  r.obj = {{"sigma0", number(rep.sigma0)},
           {"delta_h1_h0", number(rep.delta_h1_h0)},
           {"delta_h2_h1", number(rep.delta_h2_h1)},
           {"constant", number(rep.constant)},
           {"diff_half", number(rep.diff_half)},
           {"bound_half", number(rep.bound_half)},
           {"diff_three_half", number(rep.diff_three_half)},
           {"bound_three_half", number(rep.bound_three_half)},
           {"bound_three_half_vs_h2_h1", number(rep.bound_three_half_shifted)},
           {"pass_half", rep.pass_half},
           {"pass_three_half", rep.pass_three_half},
           {"pass_three_half_vs_h2_h1", rep.pass_three_half_shifted},
           {"pass", rep.pass}};
  r.exit = rep.pass ? kExitPass : kExitVerdict;
  return r;
}

Result projection_restricted(const Options& o) {
  const auto a = parse_spectrum(o.spectrum, o.rotate, o.seed);
  const auto b = second_hessian(o, a);
  const auto rep = projection::restricted_projection_iso_check(a, b, quad_config(o));
  Result r;
  r.obj = {{"eps_plus", number(rep.eps_plus)},
           {"distance_half", number(rep.pre_half)},
           {"distance_three_half", number(rep.pre_three_half)},
           {"deviation_on_A_half", number(rep.dev_a_half)},
           {"deviation_on_A_three_half", number(rep.dev_a_three_half)},
           {"deviation_on_B_half", number(rep.dev_b_half)},
           {"deviation_on_B_three_half", number(rep.dev_b_three_half)},
           {"rank_A", rep.rank_a},
           {"rank_B", rep.rank_b},
           {"condition_half", number(rep.cond_half)},
           {"condition_three_half", number(rep.cond_three_half)},
           {"pass", rep.pass}};
  r.exit = rep.pass ? kExitPass : kExitVerdict;
  return r;
}

void setup_compute(CLI::App& c, Options& o) {
  add_spectrum(c, o);
  c.add_option("--sign", o.sign, "+ or -")->capture_default_str();
}
void setup_derivative(CLI::App& c, Options& o) {
  setup_compute(c, o);
  c.add_option("--delta", o.delta, "symmetric perturbation (default: seeded, unit H1->H0 norm)");
  c.add_option("--zeta", o.zeta, "re,im: also run the Neumann-series check at this point")->delimiter(',');
  c.add_option("--terms", o.terms, "Neumann terms K")->capture_default_str();
}
void setup_hadamard(CLI::App& c, Options& o) {
  add_spectrum(c, o);
  c.add_option("--delta", o.delta, "symmetric perturbation");
}
void setup_blocks(CLI::App& c, Options& o) {
  setup_hadamard(c, o);
  c.add_option("--op", o.op, "operator to split (default: derivative along delta)");
  c.add_option("--level", o.level, "level in the A-norm scale")->capture_default_str();
}
void setup_bounds(CLI::App& c, Options& o) {
  c.add_option("--sigma", o.sigmas, "gaps to sweep")->delimiter(',')->capture_default_str();
  c.add_option("--trials", o.trials, "seeded perturbations per gap (default 10)");
  c.add_flag("--fd", o.fd, "print the finite-difference order table instead");
}
void setup_pair_of_hessians(CLI::App& c, Options& o) {
  add_spectrum(c, o);
  add_second(c, o);
}

// ------------------------------------------------------------------- schur

Vector list_or_range(const std::string& s, int n) {
  if (!s.empty()) return to_vector(parse_list(s, "sequence"));
  return Vector::LinSpaced(n, 1.0, static_cast<double>(n));
}

Json certificate_json(const schur::FactorizationCertificate& c) {
  return {{"hilbert_dim", c.hilbert_dim()},
          {"kappa1", number(c.kappa1)},
          {"kappa2", number(c.kappa2)},
          {"bound", number(c.bound())},
          {"f", report::matrix_json(c.f)},
          {"g", report::matrix_json(c.g)}};
}

std::optional<schur::CertifiedMatrix> certified(const std::string& kind, const Vector& a, const Vector& b) {
  if (kind == "corollary") return schur::corollary_matrix(a, b);
  if (kind == "example-i") return schur::example_i_matrix(a, b);
  if (kind == "example-ii") return schur::example_ii_matrix(a, b);
  if (kind == "example-iii") return schur::example_iii_matrix(a, b);
  return std::nullopt;
}

schur::SchurMatrix generator(const std::string& kind, double c) {
  auto nu = [](std::int64_t k) { return static_cast<double>(k); };
  if (kind == "obstruction") return schur::SchurMatrix::obstruction();
  if (kind == "constant") return schur::SchurMatrix::constant(c);
  if (kind == "corollary") return schur::SchurMatrix::corollary(nu, nu);
  if (kind == "example-iii") return schur::SchurMatrix::example_iii(nu, nu);
  throw Error(ErrorKind::InvalidArgument,
              "unknown kind '" + kind + "' (corollary, example-i, example-ii, example-iii, obstruction, constant, l2-exponential)");
}

Result schur_build(const Options& o) {
  const int n = n_or(o, 4);
  const std::string kind = o.kind.empty() ? "corollary" : o.kind;
  const Vector a = list_or_range(o.a_list, n), b = list_or_range(o.b_list, n);
  Result r;
  r.obj["kind"] = kind;
  if (kind == "l2-exponential") {
    std::vector<schur::L2Function> fs, gs;
    for (Eigen::Index j = 0; j < b.size(); ++j) {
      const double x = b(j);
      fs.push_back([x](double s) { return std::sqrt(x) * std::exp(-x * s); });
    }
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      const double x = a(i);
      gs.push_back([x](double s) { return std::sqrt(x) * std::exp(-x * s); });
    }
    const auto res = schur::schur_from_l2(fs, gs, {}, 0.5);
    const auto closed = schur::corollary_matrix(a, b);
    r.obj["matrix"] = report::matrix_json(res.b);
    r.obj["kappa"] = res.kappa;
    r.obj["max_f_norm_sq"] = number(res.max_f_norm_sq);
    r.obj["max_g_norm_sq"] = number(res.max_g_norm_sq);
    r.obj["closed_form_error"] = number((res.b - closed.window).cwiseAbs().maxCoeff());
    return r;
  }
  if (auto cm = certified(kind, a, b)) {
    cm->certificate.verify(cm->window);
    r.obj["provenance"] = schur::to_string(cm->matrix.provenance());
    r.obj["matrix"] = report::matrix_json(cm->window);
    r.obj["nominal_bound"] = number(cm->nominal_bound);
    r.obj["certificate"] = certificate_json(cm->certificate);
    return r;
  }
  const auto g = generator(kind, o.constant);
  r.obj["provenance"] = schur::to_string(g.provenance());
  r.obj["matrix"] = report::matrix_json(g.window(n));
  return r;
}

Result schur_bounds(const Options& o) {
  const int n = n_or(o, 16);
  const std::string kind = o.kind.empty() ? "corollary" : o.kind;
  const Vector a = list_or_range(o.a_list, n), b = list_or_range(o.b_list, n);
  const auto cm = certified(kind, a, b);
  const Matrix w = cm ? cm->window : generator(kind, o.constant).window(n);
  schur::ProbeConfig pc;
  pc.seed = o.seed;
  const auto lb = schur::schur_norm_lower_bound(w, pc);
  const double achieved = linalg::spectral_norm(schur::hadamard(lb.witness, w)) / linalg::spectral_norm(lb.witness);
  Result r;
  r.obj = {{"kind", kind}, {"n", n}, {"lower_bound", number(lb.value)}, {"witness_probe", lb.probe},
           {"witness_ratio", number(achieved)}};
  if (cm) {
    const auto up = schur::grothendieck_upper_bound(cm->certificate, w, pc);
    r.obj["upper_bound"] = number(up.bound);
    r.obj["max_probe_ratio"] = number(up.max_probe_ratio);
    r.obj["consistent"] = lb.value <= up.bound * (1.0 + 1e-9) && up.pass;
    if (!r.obj["consistent"].get<bool>()) r.exit = kExitVerdict;
  }
  return r;
}

Result schur_limits(const Options& o) {
  const std::string kind = o.kind.empty() ? "obstruction" : o.kind;
  schur::LimitsConfig lc;
  lc.outer_base = o.base;
  lc.inner_scale = o.scale;
  const auto rep = schur::iterated_limits_check(generator(kind, o.constant), lc);
  Result r;
  r.obj = {{"kind", kind},
           {"L1", number(rep.l1)},
           {"L2", number(rep.l2)},
           {"gap", number(rep.gap)},
           {"L1_doubled_base", number(rep.l1_check)},
           {"L2_doubled_base", number(rep.l2_check)},
           {"converged", rep.converged},
           {"obstruction", rep.obstruction},
           {"inconclusive", rep.inconclusive}};
  const std::string verdict = rep.inconclusive ? "inconclusive" : rep.obstruction ? "obstruction" : "equal-limits";
  r.obj["verdict"] = verdict;
  r.exit = expect_exit(o, verdict);
  return r;
}

Result schur_obstruction(const Options& o) {
  std::vector<Eigen::Index> schedule;
  if (o.schedule.empty())
    for (Eigen::Index n = 1; n <= n_or(o, 64); n *= 2) schedule.push_back(n);
  else
    for (long n : o.schedule) schedule.push_back(n);
  schur::ProbeConfig pc;
  pc.seed = o.seed;
  const auto rep = schur::obstruction_demo(schedule, pc);
  report::Table t{{"n", "lower_bound", "gap_witness"}, {}};
  for (const auto& row : rep.rows) t.rows.push_back({static_cast<long>(row.n), number(row.lower_bound), number(row.gap_witness)});
  Result r;
  r.obj = {{"L1", number(rep.limits.l1)}, {"L2", number(rep.limits.l2)}, {"gap", number(rep.limits.gap)},
           {"non_decreasing", rep.non_decreasing}};
  r.table = std::move(t);
  r.exit = rep.non_decreasing ? kExitPass : kExitVerdict;
  return r;
}

void setup_schur_common(CLI::App& c, Options& o) {
  c.add_option("--kind", o.kind, "corollary, example-i, example-ii, example-iii, obstruction, constant, l2-exponential");
  c.add_option("--a", o.a_list, "row sequence (comma list or JSON); default 1..n");
  c.add_option("--b", o.b_list, "column sequence; default 1..n");
  c.add_option("--c", o.constant, "value for kind=constant")->capture_default_str();
}
void setup_limits(CLI::App& c, Options& o) {
  c.add_option("--kind", o.kind, "obstruction, corollary, example-iii, constant");
  c.add_option("--c", o.constant, "value for kind=constant")->capture_default_str();
  c.add_option("--base", o.base, "outer index base")->capture_default_str();
  c.add_option("--scale", o.scale, "inner index scale")->capture_default_str();
  add_expect(c, o, "obstruction, equal-limits, inconclusive");
}
void setup_obstruction(CLI::App& c, Options& o) {
  c.add_option("--schedule", o.schedule, "increasing windows (default powers of two up to --n, 64)")->delimiter(',');
}

// ------------------------------------------------------------------ interp

interpolation::WeightedNormContext context(const Options& o, int n) {
  return interpolation::WeightedNormContext::from_samples(
      growth::sample(growth::parse_spec(o.f), static_cast<std::size_t>(n)),
      growth::sample(growth::parse_spec(o.g), static_cast<std::size_t>(n)));
}

Result interp_norm(const Options& o) {
  const int n = n_or(o, 10);
  const auto ctx = context(o, n);
  Matrix t;
  if (o.t.empty()) {
    Rng rng(o.seed);
    t = linalg::random_gaussian(n, n, rng);
  } else {
    t = parse_matrix(o.t, "t");
  }
  const auto lvl = interpolation::level_from_double(o.level);
  const auto st = interpolation::stein_check(t, ctx);
  Result r;
  r.obj = {{"level", o.level},
           {"norm", number(interpolation::weighted_operator_norm(t, ctx, lvl))},
           {"M0", number(st.m0)},
           {"M1", number(st.m1)},
           {"Mhalf", number(st.m_half)},
           {"stein_bound", number(st.bound)}};
  return r;
}

Result interp_stein(const Options& o) {
  const int n = n_or(o, 30);
  const int count = o.trials > 0 ? o.trials : 100;
  const auto rows = interpolation::stein_sweep(context(o, n), count, o.seed);
  report::Table t{{"seed", "M0", "M1", "Mhalf", "bound", "slack"}, {}};
  long violations = 0;
  for (const auto& row : rows) {
    violations += !row.report.pass;
    t.rows.push_back({row.seed, number(row.report.m0), number(row.report.m1), number(row.report.m_half),
                      number(row.report.bound), number(row.report.slack)});
  }
  Result r;
  r.obj = {{"trials", count}, {"violations", violations}};
  r.table = std::move(t);
  r.exit = violations ? kExitVerdict : kExitPass;
  return r;
}

void setup_norm(CLI::App& c, Options& o) {
  add_fg(c, o);
  c.add_option("--level", o.level, "0, 0.5 or 1")->capture_default_str();
  c.add_option("--t", o.t, "operator (default: seeded Gaussian)");
}
void setup_stein(CLI::App& c, Options& o) {
  add_fg(c, o);
  c.add_option("--trials", o.trials, "seeded operators (default 100)");
}

// -------------------------------------------------------------- verify-all

Result verify_all(const Options& o) {
  acceptance::Config cfg;
  cfg.seed = o.seed;
  if (o.n > 0) cfg.smoke = o.n;
  Result r;
  r.certificates = acceptance::run_all(cfg);
  bool ok = true;
  for (const auto& c : *r.certificates) ok = ok && c.pass;
  r.exit = ok ? kExitPass : kExitVerdict;
  return r;
}

void setup_none(CLI::App&, Options&) {}

// ------------------------------------------------------------ the table

const std::vector<Command>& commands() {
  static const std::vector<Command> table{
      {{"growth", "sample", "sample a growth spec", {"cli.run_growth", "growth.parse_spec", "growth.sample", "growth.offset", "growth.lift",
                                                     "growth.subsample", "growth.remainder"}},
       add_f, growth_sample},
      {{"growth", "ptw", "pointwise product", {"growth.pointwise_product", "growth.sample"}}, add_fg, growth_ptw},
      {{"growth", "kang", "Kang product (merged sample)", {"growth.kang_product", "growth.sample"}}, add_fg, growth_kang},
      {{"growth", "shift", "shift nu -> f(nu+1)", {"growth.shift", "growth.sample"}}, add_f, growth_shift},
      {{"growth", "equiv", "equivalence report", {"growth.equivalence_report"}}, setup_equiv, growth_equiv},
      {{"growth", "order", "partial order f <= c g", {"growth.partial_order_leq"}}, setup_order, growth_order},
      {{"growth", "invariance", "shift or scale invariance", {"growth.is_shift_invariant", "growth.is_scale_invariant"}},
       setup_invariance, growth_invariance},
      {{"growth", "decompose", "f = f_k * g_k", {"growth.kang_decompose", "growth.kang_product", "growth.is_shift_invariant"}},
       setup_k, growth_decompose},
      {{"pair", "extract", "pair growth function of a Gram pair",
        {"hilbert_pair.extract_pair_growth", "hilbert_pair.riesz_operator", "hilbert_pair.level_shift_isometry",
         "hilbert_pair.isometry_defect", "hilbert_pair.inner_product", "hilbert_pair.inclusion_norm"}},
       setup_extract, pair_extract},
      {{"pair", "isocheck", "pair isomorphism vs growth equivalence", {"hilbert_pair.pair_isomorphism_equivalence_check"}},
       setup_isocheck, pair_isocheck},
      {{"hessian", "growth", "signed growth of a spectrum", {"hessian.from_spectrum", "hessian.signed_growth"}},
       add_spectrum, hessian_growth},
      {{"hessian", "translate", "translation growth equivalence",
        {"hessian.verify_translation_growth_equivalence", "hessian.translate"}},
       setup_translate, hessian_translate},
      {{"hessian", "resolvent", "resolvent level norms", {"hessian.resolvent_level_norms"}}, setup_resolvent,
       hessian_resolvent},
      {{"hessian", "path", "spectral crossings along a path", {"hessian.path_type_demo", "hessian.from_matrix"}},
       setup_path, hessian_path},
      {{"projection", "compute", "spectral projection by contour quadrature",
        {"projection.contour_projection", "projection.eigenprojection_oracle"}},
       setup_compute, projection_compute},
      {{"projection", "derivative", "derivative of the projection",
        {"projection.projection_derivative", "projection.neumann_difference_check", "projection.resolvent_factor"}},
       setup_derivative, projection_derivative_cmd},
      {{"projection", "hadamard", "beta block as a Hadamard product", {"projection.beta_block_hadamard"}}, setup_hadamard,
       projection_hadamard},
      {{"projection", "blocks", "block decomposition at a level", {"projection.block_decompose", "projection.half_level_norm"}},
       setup_blocks, projection_blocks},
      {{"projection", "bounds", "sigma sweep of the norm bounds",
        {"cli.run_projection_sweep", "projection.alpha_bound_check", "projection.dpi_half_bound_check"}},
       setup_bounds, projection_bounds},
      {{"projection", "continuity", "continuity of the projection", {"projection.projection_continuity_check"}},
       setup_pair_of_hessians, projection_continuity},
      {{"projection", "restricted-iso", "restricted projection isomorphism",
        {"projection.restricted_projection_iso_check"}},
       setup_pair_of_hessians, projection_restricted},
      {{"schur", "build", "closed forms and certificates",
        {"schur.corollary_matrix", "schur.example_III_matrix", "schur.schur_from_l2"}},
       setup_schur_common, schur_build},
      {{"schur", "bounds", "lower and certified upper bounds",
        {"schur.schur_norm_lower_bound", "schur.grothendieck_upper_bound", "schur.hadamard"}},
       setup_schur_common, schur_bounds},
      {{"schur", "limits", "iterated limits", {"schur.iterated_limits_check"}}, setup_limits, schur_limits},
      {{"schur", "obstruction", "growth table of mu/(mu+nu)", {"schur.obstruction_demo"}}, setup_obstruction,
       schur_obstruction},
      {{"interp", "norm", "weighted operator norm", {"interpolation.weighted_operator_norm"}}, setup_norm, interp_norm},
      {{"interp", "stein", "Stein interpolation sweep", {"interpolation.stein_check"}}, setup_stein, interp_stein},
      {{"", "verify-all", "run the acceptance suite", {"cli.run_verify_all"}}, setup_none, verify_all},
  };
  return table;
}

// --------------------------------------------------------------- rendering

std::string render_object(const Json& obj, report::Format f) {
  if (f == report::Format::Json) return obj.dump(2) + "\n";
  report::Table t{{"key", "value"}, {}};
  for (auto it = obj.begin(); it != obj.end(); ++it) t.rows.push_back({it.key(), report::cell_text(it.value())});
  return report::render(t, f);
}

std::string render(const Result& r, report::Format f) {
  if (r.certificates) return report::render(*r.certificates, f);
  if (!r.table) return render_object(r.obj, f);
  if (f == report::Format::Json) {
    Json obj = r.obj;
    obj["rows"] = Json::parse(report::render(*r.table, f));
    return obj.dump(2) + "\n";
  }
  std::string out = report::render(*r.table, f);
  if (f == report::Format::Table && !r.obj.empty()) out += "\n" + render_object(r.obj, f);
  return out;
}

struct Parsed {
  std::unique_ptr<CLI::App> app;
  std::unique_ptr<Options> opts;
  std::vector<std::pair<CLI::App*, const Command*>> leaves;
};

Parsed build_app() {
  Parsed p;
  p.opts = std::make_unique<Options>();
  p.app = std::make_unique<CLI::App>("Numerical workbench for growth functions, Hilbert pairs, weak Hessians, "
                                     "spectral projections, Schur multipliers and interpolation.",
                                     "scalebench");
  CLI::App& app = *p.app;
  Options& o = *p.opts;
  app.set_config("--config", "", "read key=value options from a file");
  app.add_option("--n", o.n, "window / truncation size (verify-all: smoke-mode trial cap)");
  app.add_option("--seed", o.seed, "random seed")->capture_default_str();
  app.add_option("--tol", o.tol, "quadrature tolerance")->capture_default_str();
  app.add_option("--format", o.format, "table, json or csv")->capture_default_str()->check(
      CLI::IsMember({"table", "json", "csv"}));
  app.add_option("--out", o.out, "write output to this file");
  app.require_subcommand(1);
  app.fallthrough();
  std::map<std::string, CLI::App*> groups;
  for (const auto& cmd : commands()) {
    CLI::App* parent = &app;
    if (!cmd.info.group.empty()) {
      auto it = groups.find(cmd.info.group);
      if (it == groups.end()) {
        CLI::App* g = app.add_subcommand(cmd.info.group, cmd.info.group + " commands");
        g->require_subcommand(1);
        g->fallthrough();
        it = groups.emplace(cmd.info.group, g).first;
      }
      parent = it->second;
    }
    CLI::App* leaf = parent->add_subcommand(cmd.info.name, cmd.info.summary);
    leaf->fallthrough();
    cmd.setup(*leaf, o);
    p.leaves.emplace_back(leaf, &cmd);
  }
  return p;
}

int run(Parsed& p, std::ostream& out, std::ostream& err) {
  const Options& o = *p.opts;
  for (const auto& [leaf, cmd] : p.leaves) {
    if (!leaf->parsed()) continue;
    const report::Format f = report::parse_format(o.format);
    const Result r = cmd->handler(o);
    const std::string text = render(r, f);
    if (o.out.empty()) {
      out << text;
    } else {
      std::ofstream file(o.out, std::ios::binary);
      if (!file) throw Error(ErrorKind::InvalidArgument, "cannot write " + o.out);
      file << text;
    }
    return r.exit;
  }
  err << p.app->help();
  return kExitError;
}

}  // namespace

const std::vector<CommandInfo>& dispatch_table() {
  static const std::vector<CommandInfo> infos = [] {
    std::vector<CommandInfo> v;
    for (const auto& c : commands()) v.push_back(c.info);
    return v;
  }();
  return infos;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Parsed p = build_app();
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    p.app->parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = p.app->exit(e, out, err);
    return code == 0 ? kExitPass : kExitError;
  }
  try {
    return run(p, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n" << e.caret() << "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitError;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

std::string serialize_config(const std::vector<std::string>& args) {
  Parsed p = build_app();
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  p.app->parse(reversed);
  return p.app->config_to_str(false, false);
}

}  // namespace scalebench::cli
