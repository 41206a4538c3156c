#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "scalebench/error.hpp"
#include "scalebench/linalg.hpp"

namespace scalebench {

struct QuadratureConfig {
  int panels_per_segment = 2;    // minimum fixed panels on each rectangular edge
  int nodes_per_panel = 15;      // Gauss-Legendre nodes on fixed panels
  double tolerance = 1e-12;      // absolute, on the max-entry error estimate
  int max_subdivisions = 4000;   // adaptive bisections before giving up
  double max_panel_length = 1.0; // fixed panels never exceed this length

  void validate() const;
};

namespace quad {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1] (nonnegative half).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double max_abs(double v) { return std::abs(v); }
inline double max_abs(cplx v) { return std::abs(v); }
template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

template <class V>
V zero_like(const V& v) {
  if constexpr (std::is_arithmetic_v<V> || std::is_same_v<V, cplx>) {
    (void)v;
    return V(0);
  } else {
    return V::Zero(v.rows(), v.cols());
  }
}

// One G7/K15 panel on [a,b]; returns Kronrod value, writes |K15 − G7| estimate.
template <class V, class F>
V gk15_panel(F& f, double a, double b, double* err, int* evals) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  V fc = f(c);
  V resk = fc * kWgk[7];
  V resg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    V f1 = f(c - h * kXgk[j]);
    V f2 = f(c + h * kXgk[j]);
    V s = f1 + f2;
    resk = resk + s * kWgk[j];
    if (j % 2 == 1) resg = resg + s * kWg[j / 2];
  }
  if (evals) *evals += 15;
  resk = resk * h;
  resg = resg * h;
  *err = max_abs(resk - resg);
  return resk;
}

struct AdaptiveStats {
  int evaluations = 0;
  int panels = 0;
  double error_estimate = 0.0;
};

// Globally adaptive G7/K15 on [a,b] starting from the given interior breaks.
// Panels are bisected largest-error-first (ties: leftmost); the final sum runs
// left to right so the result does not depend on refinement history.
template <class F>
auto adaptive_gk15(F f, double a, double b, std::vector<double> breaks, double abs_tol,
                   int max_subdivisions, AdaptiveStats* stats = nullptr)
    -> decltype(f(a)) {
  using V = decltype(f(a));
  struct Panel {
    double a, b, err;
    V val;
  };
  std::vector<double> pts;
  pts.push_back(a);
  for (double x : breaks)
    if (x > std::min(a, b) && x < std::max(a, b)) pts.push_back(x);
  pts.push_back(b);
  if (b < a) std::sort(pts.begin() + 1, pts.end() - 1, std::greater<>());
  else std::sort(pts.begin() + 1, pts.end() - 1);
  int evals = 0;
  std::vector<Panel> panels;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double e = 0;
    V v = gk15_panel<V>(f, pts[i], pts[i + 1], &e, &evals);
    panels.push_back({pts[i], pts[i + 1], e, v});
  }
  int subdivisions = 0;
  for (;;) {
    double total = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      total += panels[i].err;
      if (panels[i].err > panels[worst].err) worst = i;
    }
    if (total <= abs_tol) break;
    // Roundoff floor: a panel narrower than ~1e-13 of the range cannot improve.
    const double width = std::abs(panels[worst].b - panels[worst].a);
    if (subdivisions >= max_subdivisions || width < 1e-13 * std::abs(b - a)) {
      throw Error(ErrorKind::QuadratureNonConvergence,
                  "error estimate " + std::to_string(total) + " above tolerance " +
                      std::to_string(abs_tol) + " after " + std::to_string(subdivisions) +
                      " subdivisions");
    }
    Panel p = panels[worst];
    const double m = 0.5 * (p.a + p.b);
    double e1 = 0, e2 = 0;
    V v1 = gk15_panel<V>(f, p.a, m, &e1, &evals);
    V v2 = gk15_panel<V>(f, m, p.b, &e2, &evals);
    panels[worst] = {p.a, m, e1, v1};
    panels.insert(panels.begin() + static_cast<std::ptrdiff_t>(worst) + 1, Panel{m, p.b, e2, v2});
    ++subdivisions;
  }
  V sum = zero_like(panels.front().val);
  double err = 0.0;
  for (const auto& p : panels) {
    sum = sum + p.val;
    err += p.err;
  }
  if (stats) {
    stats->evaluations += evals;
    stats->panels += static_cast<int>(panels.size());
    stats->error_estimate += err;
  }
  return sum;
}

// Gauss-Legendre nodes/weights on [-1,1] via the Golub-Welsch eigenproblem.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n);

// Fixed composite Gauss-Legendre over [a,b] with `panels` equal panels.
template <class F, class V>
V fixed_gauss(F f, double a, double b, int panels, int nodes, V zero, int* evals = nullptr) {
  const GaussRule& rule = gauss_legendre(nodes);
  const double len = (b - a) / panels;
  V sum = zero;
  for (int p = 0; p < panels; ++p) {
    const double c = a + (p + 0.5) * len;
    const double h = 0.5 * len;
    V part = zero;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) part = part + f(c + h * rule.nodes[k]) * rule.weights[k];
    sum = sum + part * h;
  }
  if (evals) *evals += panels * nodes;
  return sum;
}

}  // namespace quad
}  // namespace scalebench
