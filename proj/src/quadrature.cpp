#include "fordsph/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "fordsph/errors.hpp"
#include "fordsph/numeric.hpp"

namespace fordsph {

namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double x = h * kXgk[j];
    const double s = f(c - x) + f(c + x);
    kronrod += kWgk[j] * s;
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  const double value = kronrod * h;
  if (!std::isfinite(value)) throw NumericalError("integrate: non-finite integrand value");
  return Panel{a, b, value, std::fabs((kronrod - gauss) * h)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options) {
  if (!(a < b)) {
    if (a == b) return {};
    QuadratureResult r = integrate(f, b, a, options);
    r.value = -r.value;
    return r;
  }
  std::priority_queue<Panel> queue;
  queue.push(gk15(f, a, b));
  double error = queue.top().error;
  double value = queue.top().value;
  int panels = 1;
  auto target = [&] { return std::max(options.abs_tol, options.rel_tol * std::fabs(value)); };
  while (error > target()) {
    if (panels >= options.max_panels) throw NumericalError("integrate: no convergence within panel budget");
    const Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) throw NumericalError("integrate: interval underflow");
    const Panel left = gk15(f, worst.a, mid), right = gk15(f, mid, worst.b);
    queue.push(left);
    queue.push(right);
    ++panels;
    error += left.error + right.error - worst.error;
    value += left.value + right.value - worst.value;
  }
  // Re-add from the panels so the running update's rounding does not leak out.
  std::vector<Panel> all;
  while (!queue.empty()) {
    all.push_back(queue.top());
    queue.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  CompensatedSum v, e;
  for (const Panel& p : all) {
    v += p.value;
    e += p.error;
  }
  return QuadratureResult{v.value(), e.value(), panels};
}

}  // namespace fordsph
