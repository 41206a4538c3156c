#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "scalebench/cli.hpp"

using namespace scalebench::cli;
using Json = nlohmann::ordered_json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const char* env = std::getenv("SCALEBENCH_TMP");
  const std::filesystem::path dir = env ? env : std::filesystem::temp_directory_path();
  return dir / name;
}

}  // namespace

TEST_CASE("every listed subcommand is dispatched") {
  const std::set<std::string> expected{
      "growth sample",      "growth ptw",         "growth kang",           "growth shift",
      "growth equiv",       "growth order",       "growth invariance",     "growth decompose",
      "pair extract",       "pair isocheck",      "hessian growth",        "hessian translate",
      "hessian resolvent",  "hessian path",       "projection compute",    "projection derivative",
      "projection hadamard", "projection blocks", "projection bounds",     "projection continuity",
      "projection restricted-iso", "schur build", "schur bounds",          "schur limits",
      "schur obstruction",  "interp norm",        "interp stein",          " verify-all"};
  std::set<std::string> found;
  for (const auto& c : dispatch_table()) found.insert(c.group + " " + c.name);
  CHECK(found == expected);
}

TEST_CASE("every module operation is reachable from a subcommand") {
  const std::vector<std::string> ops{
      "growth.sample", "growth.pointwise_product", "growth.kang_product", "growth.shift",
      "growth.equivalence_report", "growth.partial_order_leq", "growth.is_shift_invariant",
      "growth.is_scale_invariant", "growth.kang_decompose",
      "hilbert_pair.inner_product", "hilbert_pair.level_shift_isometry", "hilbert_pair.riesz_operator",
      "hilbert_pair.extract_pair_growth", "hilbert_pair.pair_isomorphism_equivalence_check",
      "hessian.from_spectrum", "hessian.signed_growth", "hessian.translate",
      "hessian.verify_translation_growth_equivalence", "hessian.resolvent_level_norms", "hessian.path_type_demo",
      "projection.resolvent_factor", "projection.contour_projection", "projection.eigenprojection_oracle",
      "projection.projection_derivative", "projection.neumann_difference_check", "projection.beta_block_hadamard",
      "projection.block_decompose", "projection.half_level_norm", "projection.alpha_bound_check",
      "projection.dpi_half_bound_check", "projection.projection_continuity_check",
      "projection.restricted_projection_iso_check",
      "schur.hadamard", "schur.schur_from_l2", "schur.corollary_matrix", "schur.example_III_matrix",
      "schur.grothendieck_upper_bound", "schur.schur_norm_lower_bound", "schur.iterated_limits_check",
      "schur.obstruction_demo",
      "interpolation.weighted_operator_norm", "interpolation.stein_check",
      "cli.run_growth", "cli.run_verify_all", "cli.run_projection_sweep"};
  std::set<std::string> reached;
  for (const auto& c : dispatch_table()) reached.insert(c.operations.begin(), c.operations.end());
  for (const auto& op : ops) {
    CAPTURE(op);
    CHECK(reached.count(op) == 1);
  }
}

TEST_CASE("every subcommand runs with defaults") {
  for (const auto& c : dispatch_table()) {
    if (c.name == "verify-all") continue;
    std::vector<std::string> args{"--n", "8"};
    if (!c.group.empty()) args.push_back(c.group);
    args.push_back(c.name);
    if (c.group == "projection" && c.name == "bounds") args.insert(args.end(), {"--trials", "2"});
    if (c.group == "interp" && c.name == "stein") args.insert(args.end(), {"--trials", "5"});
    const Run r = run(args);
    CAPTURE(c.group);
    CAPTURE(c.name);
    CAPTURE(r.err);
    CHECK(r.code == kExitPass);
    CHECK_FALSE(r.out.empty());
  }
}

TEST_CASE("identical arguments give byte-identical output") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"--format", "json", "projection", "bounds", "--trials", "3"},
           {"--format", "csv", "interp", "stein", "--trials", "20"},
           {"--format", "json", "--seed", "5", "projection", "continuity", "--rotate",
            "--spectrum", R"({"neg":[-1,-2],"pos":[1,3]})"}}) {
    const Run a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("diag(1,-1) demo prints diag(1,0)") {
  const Run r = run({"--format", "json", "projection", "compute"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["projection"][0][0].get<double>() == doctest::Approx(1.0));
  CHECK(std::abs(j["projection"][0][1].get<double>()) < 1e-12);
  CHECK(std::abs(j["projection"][1][1].get<double>()) < 1e-12);
}

TEST_CASE("growth examples") {
  const Run kang = run({"--format", "csv", "growth", "kang", "--f", "pow:1", "--g", "pow:2", "--n", "20"});
  CHECK(kang.code == 0);
  CHECK(kang.out.rfind("nu,value,log_value\n1,1,0\n2,1,0\n", 0) == 0);
  const Run dec = run({"--format", "json", "growth", "decompose", "--f", "exp:2.718", "--k", "3", "--n", "50"});
  CHECK(dec.code == 0);
  CHECK(Json::parse(dec.out)["reconstruction_exact"] == true);
}

TEST_CASE("exit codes") {
  const Run bad = run({"growth", "sample", "--f", "kang(pow:1,,exp:2)"});
  CHECK(bad.code == kExitError);
  CHECK(bad.err.find("^") != std::string::npos);
  CHECK(bad.err.find("position 11") != std::string::npos);

  const Run unknown = run({"growth", "sample", "--nonsense"});
  CHECK(unknown.code == kExitError);
  CHECK(unknown.err.find("--nonsense") != std::string::npos);

  CHECK(run({}).code == kExitError);
  CHECK(run({"--format", "yaml", "growth", "sample"}).code == kExitError);
  CHECK(run({"--help"}).code == kExitPass);

  CHECK(run({"growth", "equiv", "--f", "pow:1", "--g", "exp:e", "--expect", "ratio-diverging"}).code == kExitPass);
  CHECK(run({"growth", "equiv", "--f", "pow:1", "--g", "exp:e", "--expect", "equivalent-on-window"}).code ==
        kExitVerdict);
  CHECK(run({"schur", "limits", "--expect", "obstruction"}).code == kExitPass);
  CHECK(run({"schur", "limits", "--kind", "constant", "--expect", "obstruction"}).code == kExitVerdict);
}

TEST_CASE("gap violations name the eigenvalue") {
  const Run r = run({"projection", "continuity", "--spectrum", R"({"neg":[-1],"pos":[1]})", "--spectrum-b",
                     R"({"neg":[-1,-1],"type":"CoMorse"})"});
  CHECK(r.code == kExitError);
  CHECK(r.err.find("gap-violation") != std::string::npos);
  CHECK(r.err.find("eigenvalue") != std::string::npos);
}

TEST_CASE("config files round-trip and flags override them") {
  const std::vector<std::string> args{"--seed", "99", "--n", "6", "--format", "csv",
                                      "interp", "stein", "--f", "pow:1", "--g", "pow:3", "--trials", "4"};
  const std::string cfg = serialize_config(args);
  const auto path = scratch("scalebench_roundtrip.ini");
  std::ofstream(path) << cfg;
  const Run direct = run(args);
  const Run via = run({"--config", path.string(), "interp", "stein"});
  CHECK(direct.code == 0);
  CHECK(via.out == direct.out);
  // A flag given on the command line wins over the file.
  const Run over = run({"--config", path.string(), "--seed", "100", "interp", "stein"});
  CHECK(over.out != direct.out);
  CHECK(serialize_config({"--config", path.string(), "interp", "stein"}) == cfg);
}

TEST_CASE("--out writes the report to a file") {
  const auto path = scratch("scalebench_out.json");
  const Run r = run({"--format", "json", "--out", path.string(), "hessian", "growth"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  CHECK(Json::parse(in)["merge_identity_exact"] == true);
}

TEST_CASE("verify-all smoke mode") {
  const auto t0 = std::chrono::steady_clock::now();
  const Run r = run({"--format", "json", "--n", "5", "verify-all"});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(r.code == kExitPass);
  CHECK(secs < 5.0);
  const Json j = Json::parse(r.out);
  REQUIRE(j.size() == 12);
  for (const auto& c : j) {
    CHECK(c["pass"] == true);
    CHECK(c.contains("inputs-digest"));
  }
  CHECK(run({"--format", "json", "--n", "5", "verify-all"}).out == r.out);
}
