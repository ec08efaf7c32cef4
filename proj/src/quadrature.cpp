#include "casimir/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "casimir/errors.hpp"

namespace casimir {
namespace {

// Kronrod abscissae (positive half) and weights; odd indices are the Gauss points.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {0.129484966168869693270611432679082,
                                                 0.279705391489276667901467771423780,
                                                 0.381830050505118944950369775488975,
                                                 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();
// Absolute errors below this sit at the subnormal range and cannot be refined further.
constexpr double kResolutionFloor = kTiny / kEps;

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double abs_value = 0.0;
  double error = 0.0;        // G7/K15 discrepancy
  double inner_error = 0.0;  // weighted inner error estimates
  bool inner_converged = true;
  bool refinable = true;
};

struct PanelOrder {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  }
};

/// Sample at one node: value plus the inner error attached to it.
struct Sample {
  double value;
  double error;
  std::size_t evaluations;
  bool converged;
};

template <class Eval>
Panel evaluate_panel(const Eval& eval, double a, double b, std::size_t& evaluations) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<Sample, 15> s{};
  s[7] = eval(center);
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kNodes[j];
    s[j] = eval(center - dx);
    s[14 - j] = eval(center + dx);
  }

  double kronrod = kKronrodWeights[7] * s[7].value;
  double gauss = kGaussWeights[3] * s[7].value;
  double abs_sum = kKronrodWeights[7] * std::abs(s[7].value);
  double inner_error = kKronrodWeights[7] * s[7].error;
  bool inner_converged = s[7].converged;
  evaluations += s[7].evaluations;
  for (std::size_t j = 0; j < 7; ++j) {
    const double pair = s[j].value + s[14 - j].value;
    kronrod += kKronrodWeights[j] * pair;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
    abs_sum += kKronrodWeights[j] * (std::abs(s[j].value) + std::abs(s[14 - j].value));
    inner_error += kKronrodWeights[j] * (s[j].error + s[14 - j].error);
    inner_converged = inner_converged && s[j].converged && s[14 - j].converged;
    evaluations += s[j].evaluations + s[14 - j].evaluations;
  }
  const double mean = 0.5 * kronrod;
  double asc = kKronrodWeights[7] * std::abs(s[7].value - mean);
  for (std::size_t j = 0; j < 7; ++j)
    asc += kKronrodWeights[j] * (std::abs(s[j].value - mean) + std::abs(s[14 - j].value - mean));

  Panel p;
  p.a = a;
  p.b = b;
  p.value = kronrod * half;
  p.abs_value = abs_sum * std::abs(half);
  asc *= std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  if (p.abs_value > kTiny / (50.0 * kEps)) err = std::max(50.0 * kEps * p.abs_value, err);
  p.error = err;
  p.inner_error = inner_error * std::abs(half);
  p.inner_converged = inner_converged;
  // Panels at the resolution limit of doubles cannot be split further.
  p.refinable = std::abs(half) > 64.0 * kEps * std::max(std::abs(a), std::abs(b)) && std::abs(half) > kTiny;
  return p;
}

template <class Eval>
IntegralResult adaptive(const Eval& eval, double a, double b, const QuadratureSettings& settings) {
  settings.validate();
  std::size_t evaluations = 0;
  std::size_t calls = 0;
  auto counted = [&](double x) {
    ++calls;
    Sample s = eval(x);
    if (!std::isfinite(s.value))
      throw NumericalDomainError("integrand returned a non-finite value at x = " + std::to_string(x));
    return s;
  };

  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> active;
  std::vector<Panel> frozen;
  double value = 0.0;
  double abs_value = 0.0;
  double error = 0.0;

  Panel first = evaluate_panel(counted, a, b, evaluations);
  value = first.value;
  abs_value = first.abs_value;
  error = first.error;
  active.push(first);

  bool converged = false;
  while (true) {
    const double tolerance = std::max({settings.rel_tol * abs_value, settings.abs_tol, kResolutionFloor});
    if (error <= tolerance) {
      converged = true;
      break;
    }
    if (active.empty() || calls + 30 > settings.max_evaluations) break;
    Panel worst = active.top();
    active.pop();
    if (!worst.refinable) {
      frozen.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = evaluate_panel(counted, worst.a, mid, evaluations);
    Panel right = evaluate_panel(counted, mid, worst.b, evaluations);
    value += left.value + right.value - worst.value;
    abs_value += left.abs_value + right.abs_value - worst.abs_value;
    error += left.error + right.error - worst.error;
    active.push(left);
    active.push(right);
  }

  std::vector<Panel> panels = std::move(frozen);
  while (!active.empty()) {
    panels.push_back(active.top());
    active.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });

  IntegralResult result;
  bool inner_converged = true;
  double gk_error = 0.0;
  double inner_error = 0.0;
  result.value = 0.0;
  for (const auto& p : panels) {
    result.value += p.value;
    gk_error += p.error;
    inner_error += p.inner_error;
    inner_converged = inner_converged && p.inner_converged;
  }
  result.error_estimate = gk_error + inner_error;
  result.evaluations = evaluations;
  result.converged = converged && inner_converged;
  return result;
}

Sample leaf(const Integrand& f, double x) { return {f(x), 0.0, 1, true}; }
Sample node(const NestedIntegrand& f, double x) {
  const IntegralResult r = f(x);
  return {r.value, r.error_estimate, r.evaluations, r.converged};
}

// Map t in (0, 1) -> x = lambda t / (1 - t); returns the scaled sample.
template <class F>
Sample semi_infinite_sample(const F& sample, double lambda, double t) {
  const double one_minus = 1.0 - t;
  const double x = lambda * t / one_minus;
  const double jacobian = lambda / (one_minus * one_minus);
  Sample s = sample(x);
  if (s.value == 0.0 && s.error == 0.0) return s;
  s.value *= jacobian;
  s.error *= jacobian;
  return s;
}

}  // namespace

void QuadratureSettings::validate() const {
  if (!(rel_tol > 0.0) && !(abs_tol > 0.0)) throw std::invalid_argument("quadrature: rel_tol or abs_tol must be > 0");
  if (rel_tol < 0.0 || abs_tol < 0.0) throw std::invalid_argument("quadrature: tolerances must be >= 0");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw std::invalid_argument("quadrature: scale must be > 0");
  if (max_evaluations < 15) throw std::invalid_argument("quadrature: max_evaluations must be >= 15");
}

IntegralResult integrate_interval(const Integrand& f, double a, double b, const QuadratureSettings& settings) {
  return adaptive([&](double x) { return leaf(f, x); }, a, b, settings);
}

IntegralResult integrate_semi_infinite(const Integrand& f, const QuadratureSettings& settings) {
  const double lambda = settings.scale;
  return adaptive(
      [&](double t) { return semi_infinite_sample([&](double x) { return leaf(f, x); }, lambda, t); }, 0.0, 1.0,
      settings);
}

IntegralResult integrate_tail_interval(const Integrand& f, double a, const QuadratureSettings& settings) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("tail integral: lower limit must be > 0");
  return adaptive(
      [&](double u) {
        const double p = a / u;
        return Sample{f(p) * a / (u * u), 0.0, 1, true};
      },
      0.0, 1.0, settings);
}

IntegralResult integrate_nested_interval(const NestedIntegrand& f, double a, double b,
                                         const QuadratureSettings& settings) {
  return adaptive([&](double x) { return node(f, x); }, a, b, settings);
}

IntegralResult integrate_nested_semi_infinite(const NestedIntegrand& f, const QuadratureSettings& settings) {
  const double lambda = settings.scale;
  return adaptive(
      [&](double t) { return semi_infinite_sample([&](double x) { return node(f, x); }, lambda, t); }, 0.0, 1.0,
      settings);
}

QuadratureSettings tightened_inner(const QuadratureSettings& outer, const QuadratureSettings& inner) {
  QuadratureSettings s = inner;
  s.rel_tol = std::min(inner.rel_tol, outer.rel_tol / 10.0);
  s.abs_tol = inner.abs_tol;
  return s;
}

IntegralResult integrate_double(const std::function<double(double, double)>& g, const QuadratureSettings& outer,
                                const QuadratureSettings& inner) {
  const QuadratureSettings inner_settings = tightened_inner(outer, inner);
  return integrate_nested_semi_infinite(
      [&](double x) { return integrate_semi_infinite([&](double y) { return g(x, y); }, inner_settings); }, outer);
}

}  // namespace casimir
