#include "mirrordip/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "mirrordip/errors.hpp"

namespace mirrordip {

namespace {

constexpr int kPanelOrder = 12;
// Always split down to 2^kMinDepth panels before trusting the embedded
// estimate; protects against aliasing on strongly oscillatory integrands.
constexpr int kMinDepth = 3;
constexpr int kMaxDepth = 48;

struct PanelRule {
  std::array<double, kPanelOrder> node;    // on [-1, 1]
  std::array<double, kPanelOrder> weight;
};

// Gauss-Legendre nodes as roots of P_n found by Newton iteration from the
// Chebyshev initial guess; weights w = 2 / ((1 - x^2) P_n'(x)^2).
PanelRule make_panel_rule() {
  PanelRule rule{};
  const int n = kPanelOrder;
  for (int k = 0; k < n; ++k) {
    double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    rule.node[k] = x;
    rule.weight[k] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

const PanelRule& panel_rule() {
  static const PanelRule rule = make_panel_rule();
  return rule;
}

using Cx = std::complex<double>;
using Fn = std::function<Cx(double)>;

struct Workspace {
  const Fn& f;
  long evals = 0;
  long max_evals;
  bool budget_hit = false;
};

Cx panel_estimate(Workspace& ws, double a, double b) {
  const PanelRule& rule = panel_rule();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Cx sum = 0.0;
  for (int i = 0; i < kPanelOrder; ++i) {
    sum += rule.weight[i] * ws.f(mid + half * rule.node[i]);
  }
  ws.evals += kPanelOrder;
  return half * sum;
}

struct PanelOutcome {
  Cx value;
  double err_re;
  double err_im;
};

PanelOutcome refine(Workspace& ws, double a, double b, Cx whole, double tol_re,
                    double tol_im, int depth) {
  const double mid = 0.5 * (a + b);
  if (!(a < mid && mid < b)) {
    // Interval too narrow to split further; no estimate improvement possible.
    return {whole, 0.0, 0.0};
  }
  const Cx left = panel_estimate(ws, a, mid);
  const Cx right = panel_estimate(ws, mid, b);
  const Cx better = left + right;
  const double err_re = std::abs(whole.real() - better.real());
  const double err_im = std::abs(whole.imag() - better.imag());

  const bool converged = depth >= kMinDepth && err_re <= tol_re && err_im <= tol_im;
  if (ws.evals >= ws.max_evals && !converged) ws.budget_hit = true;
  if (converged || depth >= kMaxDepth || ws.evals >= ws.max_evals) {
    return {better, err_re, err_im};
  }
  const PanelOutcome l = refine(ws, a, mid, left, 0.5 * tol_re, 0.5 * tol_im, depth + 1);
  const PanelOutcome r = refine(ws, mid, b, right, 0.5 * tol_re, 0.5 * tol_im, depth + 1);
  return {l.value + r.value, l.err_re + r.err_re, l.err_im + r.err_im};
}

}  // namespace

QuadratureResult integrate_adaptive(const Fn& f, double a, double b,
                                    const QuadratureOptions& opt) {
  if (!(opt.tol > 0.0)) {
    throw ConstraintViolation("integrate_adaptive: tol > 0 violated");
  }
  Workspace ws{f, 0, opt.max_evals, false};
  const Cx whole = panel_estimate(ws, a, b);
  const double tol_re = opt.tol * std::max(1.0, std::abs(whole.real()));
  const double tol_im = opt.tol * std::max(1.0, std::abs(whole.imag()));
  const PanelOutcome out = refine(ws, a, b, whole, tol_re, tol_im, 0);

  // Re-derive the acceptance thresholds from the refined value: the initial
  // panel estimate can be badly aliased for oscillatory integrands.
  const double final_tol_re = opt.tol * std::max(1.0, std::abs(out.value.real()));
  const double final_tol_im = opt.tol * std::max(1.0, std::abs(out.value.imag()));
  if (out.err_re > final_tol_re || out.err_im > final_tol_im) {
    throw ConvergenceError("integrate_adaptive: tolerance not reached within budget",
                           opt.tol, std::max(out.err_re, out.err_im));
  }
  return {out.value, out.err_re, out.err_im, ws.evals};
}

}  // namespace mirrordip
