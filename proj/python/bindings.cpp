#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "scalebench/acceptance.hpp"
#include "scalebench/cli.hpp"
#include "scalebench/error.hpp"
#include "scalebench/growth.hpp"
#include "scalebench/growth_spec.hpp"
#include "scalebench/hessian.hpp"
#include "scalebench/hilbert_pair.hpp"
#include "scalebench/interpolation.hpp"
#include "scalebench/projection.hpp"
#include "scalebench/report.hpp"
#include "scalebench/schur.hpp"

namespace py = pybind11;
using namespace scalebench;

namespace {

projection::Sign sign_of(const std::string& s) {
  if (s == "+" || s == "plus") return projection::Sign::Plus;
  if (s == "-" || s == "minus") return projection::Sign::Minus;
  throw Error(ErrorKind::InvalidArgument, "sign must be '+' or '-'");
}

QuadratureConfig quad_config(double tol) {
  QuadratureConfig q;
  q.tolerance = tol;
  q.validate();
  return q;
}

py::dict sample_dict(const growth::GrowthSample& s) {
  py::dict d;
  d["values"] = s.values;
  d["logs"] = s.logs;
  return d;
}

py::dict equivalence_dict(const growth::EquivalenceReport& r) {
  py::dict d;
  d["verdict"] = growth::to_string(r.verdict);
  d["c_estimate"] = r.c_estimate;
  d["log_c"] = r.log_c;
  d["stable"] = r.stable;
  d["log_final_ratio"] = r.log_final_ratio;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Core numerics: growth functions, Hilbert pairs, weak Hessians, spectral projections, Schur multipliers.";

  static py::exception<Error> base(m, "ScalebenchError", PyExc_ValueError);
  static py::exception<ParseError> parse(m, "SpecParseError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::set_error(parse, (std::string(e.what()) + "\n" + e.caret()).c_str());
    } catch (const Error& e) {
      py::set_error(base, e.what());
    }
  });

  // growth
  m.def("sample", [](const std::string& spec, std::size_t n) { return sample_dict(growth::sample(growth::parse_spec(spec), n)); },
        py::arg("spec"), py::arg("n"), "Values and logs of a growth spec on 1..n.");
  m.def("canonical_spec", [](const std::string& spec) { return growth::parse_spec(spec).to_spec(); }, py::arg("spec"));
  m.def("kang", [](const std::string& f, const std::string& g) {
        return growth::kang_product(growth::parse_spec(f), growth::parse_spec(g)).to_spec();
      }, py::arg("f"), py::arg("g"));
  m.def("equivalence_report", [](const std::string& f, const std::string& g, std::size_t n) {
        return equivalence_dict(growth::equivalence_report(growth::parse_spec(f), growth::parse_spec(g), n));
      }, py::arg("f"), py::arg("g"), py::arg("n"));
  m.def("is_shift_invariant", [](const std::string& f, std::size_t n) {
        return growth::is_shift_invariant(growth::parse_spec(f), n).yes;
      }, py::arg("f"), py::arg("n"));
  m.def("is_scale_invariant", [](const std::string& f, std::size_t n) {
        return growth::is_scale_invariant(growth::parse_spec(f), n).yes;
      }, py::arg("f"), py::arg("n"));
  m.def("kang_decompose", [](const std::string& f, long k) {
        const auto d = growth::kang_decompose(growth::parse_spec(f), k);
        return std::make_pair(d.f_k.to_spec(), d.g_k.to_spec());
      }, py::arg("f"), py::arg("k"));

  // hilbert pairs
  m.def("extract_pair_growth", [](const Matrix& g0, const Matrix& g1) {
        const auto pg = pair::extract_pair_growth({g0, g1});
        py::dict d;
        d["h"] = pg.h.values;
        d["kappa"] = pg.kappa;
        d["basis"] = pg.basis.t;
        d["degenerate"] = pg.degenerate;
        return d;
      }, py::arg("g0"), py::arg("g1"));
  m.def("riesz_operator", [](const Matrix& g0, const Matrix& g1) { return pair::riesz_operator({g0, g1}); },
        py::arg("g0"), py::arg("g1"));

  // weak Hessians
  py::class_<hessian::WeakHessian>(m, "WeakHessian")
      .def_static("from_spectrum",
                  [](std::vector<double> neg, std::vector<double> pos, std::optional<Matrix> basis) {
                    return hessian::WeakHessian::from_spectrum(std::move(neg), std::move(pos), std::move(basis));
                  },
                  py::arg("negatives"), py::arg("positives"), py::arg("basis") = py::none())
      .def_static("from_matrix", [](const Matrix& a) { return hessian::WeakHessian::from_matrix(a); }, py::arg("a"))
      .def_static("random", [](std::uint64_t seed, Eigen::Index n_neg, Eigen::Index n_pos, double sigma) {
            Rng rng(seed);
            return hessian::random_hessian(rng, n_neg, n_pos, sigma);
          }, py::arg("seed"), py::arg("n_neg"), py::arg("n_pos"), py::arg("sigma"))
      .def_property_readonly("values", &hessian::WeakHessian::values)
      .def_property_readonly("basis", &hessian::WeakHessian::basis)
      .def_property_readonly("sigma", &hessian::WeakHessian::sigma)
      .def_property_readonly("dim", &hessian::WeakHessian::dim)
      .def("matrix", &hessian::WeakHessian::matrix);
  m.def("signed_growth", [](const hessian::WeakHessian& a) {
        const auto sg = hessian::signed_growth(a);
        py::dict d;
        d["total"] = sg.total.values;
        d["positive"] = sg.positive.values;
        d["negative"] = sg.negative.values;
        d["merge_identity_exact"] = sg.merge_identity_exact;
        return d;
      });

  // projections
  m.def("contour_projection", [](const hessian::WeakHessian& a, const std::string& sign, double tol) {
        return projection::contour_projection(a, sign_of(sign), quad_config(tol));
      }, py::arg("a"), py::arg("sign") = "+", py::arg("tol") = 1e-12);
  m.def("eigenprojection_oracle", [](const hessian::WeakHessian& a, const std::string& sign) {
        return projection::eigenprojection_oracle(a, sign_of(sign));
      }, py::arg("a"), py::arg("sign") = "+");
  m.def("projection_derivative", [](const hessian::WeakHessian& a, const Matrix& delta, const std::string& sign, double tol) {
        return projection::projection_derivative(a, delta, sign_of(sign), quad_config(tol));
      }, py::arg("a"), py::arg("delta"), py::arg("sign") = "+", py::arg("tol") = 1e-12);
  m.def("beta_block_hadamard", &projection::beta_block_hadamard, py::arg("a"), py::arg("delta"));
  m.def("hadamard_q", &projection::hadamard_q, py::arg("a"), py::arg("b"));
  m.def("level_norm", py::overload_cast<const Matrix&, const hessian::WeakHessian&, double>(&projection::level_norm),
        py::arg("op"), py::arg("a"), py::arg("r"));
  m.def("projection_continuity_check", [](const hessian::WeakHessian& a, const hessian::WeakHessian& b) {
        const auto r = projection::projection_continuity_check(a, b);
        py::dict d;
        d["sigma0"] = r.sigma0;
        d["diff_half"] = r.diff_half;
        d["bound_half"] = r.bound_half;
        d["diff_three_half"] = r.diff_three_half;
        d["bound_three_half"] = r.bound_three_half;
        d["pass"] = r.pass;
        return d;
      }, py::arg("a"), py::arg("b"));

  // Schur multipliers
  m.def("corollary_matrix", [](const Vector& a, const Vector& b) {
        const auto cm = schur::corollary_matrix(a, b);
        return std::make_pair(cm.window, cm.certificate.bound());
      }, py::arg("a"), py::arg("b"), "Window and certified Schur-norm upper bound.");
  m.def("example_iii_matrix", [](const Vector& a, const Vector& b) {
        const auto cm = schur::example_iii_matrix(a, b);
        return std::make_pair(cm.window, cm.certificate.bound());
      }, py::arg("a"), py::arg("b"));
  m.def("schur_norm_lower_bound", [](const Matrix& b, std::uint64_t seed) {
        schur::ProbeConfig cfg;
        cfg.seed = seed;
        return schur::schur_norm_lower_bound(b, cfg).value;
      }, py::arg("b"), py::arg("seed") = 0x5c4u);
  m.def("obstruction_window", [](Eigen::Index n) { return schur::SchurMatrix::obstruction().window(n); }, py::arg("n"));
  m.def("obstruction_limits", [] {
        const auto r = schur::iterated_limits_check(schur::SchurMatrix::obstruction());
        return py::make_tuple(r.l1, r.l2, r.gap);
      }, "(lim_mu lim_nu, lim_nu lim_mu, gap) for mu/(mu+nu).");

  // interpolation
  m.def("stein_check", [](const Matrix& t, const Vector& f, const Vector& g) {
        const auto r = interpolation::stein_check(t, {f, g});
        py::dict d;
        d["m0"] = r.m0;
        d["m1"] = r.m1;
        d["m_half"] = r.m_half;
        d["bound"] = r.bound;
        d["pass"] = r.pass;
        return d;
      }, py::arg("t"), py::arg("f"), py::arg("g"));

  // suite and CLI
  m.def("verify_all_json", [](std::uint64_t seed, std::optional<int> smoke) {
        acceptance::Config cfg;
        cfg.seed = seed;
        cfg.smoke = smoke;
        std::vector<report::Certificate> certs;
        {
          py::gil_scoped_release release;
          certs = acceptance::run_all(cfg);
        }
        return report::render(certs, report::Format::Json);
      }, py::arg("seed") = 20240601, py::arg("smoke") = py::none());
  m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      }, py::arg("args"), "Runs the command-line tool in-process; returns (exit_code, stdout, stderr).");
}
