#include "bathsense/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "bathsense/errors.hpp"

namespace bathsense {

namespace {

// Abscissae of the 21-point Kronrod rule on [-1, 1]; xgk[1], xgk[3], ... are
// the 10-point Gauss nodes.
constexpr std::array<double, 11> xgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 11> wgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077715871243027, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

constexpr std::array<double, 5> wg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
  const KronrodPair r = gauss_kronrod_21(f, a, b);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  // Roundoff floor: no estimate below what the summation itself can resolve.
  const double error = std::max(std::abs(r.kronrod - r.gauss), 50.0 * eps * r.abs_kronrod);
  return {a, b, r.kronrod, error};
}

bool less_error(const Panel& x, const Panel& y) {
  if (x.error != y.error) return x.error < y.error;
  return x.a > y.a;  // equal errors: refine the leftmost panel first
}

}  // namespace

KronrodPair gauss_kronrod_21(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double fc = f(center);
  double kronrod = wgk[10] * fc;
  double abs_kronrod = wgk[10] * std::abs(fc);
  double gauss = 0.0;
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * xgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += wgk[j] * (f1 + f2);
    abs_kronrod += wgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += wg[j / 2] * (f1 + f2);
  }
  return {kronrod * half, gauss * half, abs_kronrod * std::abs(half)};
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const double> breakpoints,
                                    const AdaptiveOptions& options) {
  std::vector<Interval> panels;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    panels.push_back({breakpoints[i], breakpoints[i + 1]});
  return integrate_adaptive(f, panels, options);
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const Interval> panels,
                                    const AdaptiveOptions& options) {
  if (panels.empty()) return {};

  std::vector<Panel> heap;
  heap.reserve(std::min<std::size_t>(options.max_panels, 4 * panels.size() + 64));
  long double total = 0.0L;
  long double total_error = 0.0L;
  for (const Interval& iv : panels) {
    if (!(iv.lo < iv.hi))
      throw std::invalid_argument("integrate_adaptive: panels must have lo < hi");
    Panel p = evaluate_panel(f, iv.lo, iv.hi);
    total += p.value;
    total_error += p.error;
    heap.push_back(p);
  }
  std::make_heap(heap.begin(), heap.end(), less_error);

  auto fail = [&](const char* reason) {
    std::ostringstream msg;
    msg << "adaptive quadrature did not converge: " << reason << " (value " << static_cast<double>(total)
        << ", error estimate " << static_cast<double>(total_error) << ", panels " << heap.size()
        << ")";
    throw NumericalFailure(msg.str(), static_cast<double>(total_error));
  };

  std::size_t since_resum = 0;
  for (;;) {
    const double tol = std::max(options.abs_tol, options.rel_tol * std::abs(static_cast<double>(total)));
    if (static_cast<double>(total_error) <= tol) break;
    if (heap.size() >= options.max_panels) fail("panel budget exhausted");

    std::pop_heap(heap.begin(), heap.end(), less_error);
    const Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) fail("panel width below floating resolution");

    const Panel left = evaluate_panel(f, worst.a, mid);
    const Panel right = evaluate_panel(f, mid, worst.b);
    total += (left.value + right.value) - worst.value;
    total_error += (left.error + right.error) - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), less_error);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), less_error);

    if (++since_resum == 4096) {
      since_resum = 0;
      total = 0.0L;
      total_error = 0.0L;
      for (const Panel& p : heap) {
        total += p.value;
        total_error += p.error;
      }
    }
  }

  // Final sums in panel order so the result does not depend on heap layout.
  std::sort(heap.begin(), heap.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  long double value = 0.0L;
  long double error = 0.0L;
  for (const Panel& p : heap) {
    value += p.value;
    error += p.error;
  }
  return {static_cast<double>(value), static_cast<double>(error), heap.size()};
}

}  // namespace bathsense
