// One line per acceptance criterion; exit status is nonzero iff any fails.
#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "scalebench/acceptance.hpp"
#include "scalebench/cli.hpp"
#include "scalebench/report.hpp"

namespace {

using scalebench::report::Json;

void line(bool pass, int id, const std::string& name, const std::string& detail, double secs) {
  std::printf("[%s] criterion %2d %-26s %s (%.2f s)\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str(),
              secs);
  std::fflush(stdout);
}

std::string numbers(const scalebench::report::Certificate& c) {
  std::ostringstream os;
  os << "measured=" << scalebench::report::cell_text(c.measured) << " bound=" << scalebench::report::cell_text(c.bound);
  return os.str();
}

}  // namespace

int main() {
  namespace acc = scalebench::acceptance;
  const acc::Config cfg;
  bool all = true;
  Json direct = Json::array();
  for (const auto& crit : acc::criteria()) {
    const auto cert = acc::run_criterion(crit, cfg);
    line(cert.pass, crit.id, crit.name, numbers(cert), cert.runtime_seconds);
    all = all && cert.pass;
    direct.push_back(scalebench::report::to_json(cert));
  }

  // Criterion 13: the full suite through the CLI, under five minutes, same certificates.
  std::ostringstream out, err;
  const auto t0 = std::chrono::steady_clock::now();
  const int code = scalebench::cli::run_cli({"--format", "json", "verify-all"}, out, err);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool same = false;
  std::size_t count = 0;
  try {
    const Json via_cli = Json::parse(out.str());
    count = via_cli.size();
    same = via_cli == direct;
  } catch (const std::exception&) {
  }
  const bool pass13 = code == scalebench::cli::kExitPass && count == 12 && same && secs < 300.0;
  std::ostringstream d;
  d << "exit=" << code << " certificates=" << count << " identical=" << (same ? "yes" : "no");
  line(pass13, 13, "verify-all", d.str(), secs);
  all = all && pass13;
  if (!err.str().empty()) std::fprintf(stderr, "%s", err.str().c_str());
  return all ? 0 : 1;
}
