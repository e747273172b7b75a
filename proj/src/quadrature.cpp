#include "gravidec/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace gravidec::quad {

namespace {

constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd Kronrod abscissae kXgk[1], [3], [5] and the centre.
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

}  // namespace

QuadResult gauss_kronrod15(const Integrand& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double abs_half = std::abs(half);

  const double fc = f(centre);
  double gauss = fc * kWg[3];
  double kronrod = fc * kWgk[7];
  double resabs = std::abs(kronrod);
  double fv1[7], fv2[7];

  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(centre - dx);
    const double f2 = f(centre + dx);
    fv1[j] = f1;
    fv2[j] = f2;
    kronrod += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }

  const double mean = 0.5 * kronrod;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));

  QuadResult r;
  r.value = kronrod * half;
  resabs *= abs_half;
  resasc *= abs_half;
  double err = std::abs((kronrod - gauss) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
  r.error = err;
  r.evaluations = 15;
  r.converged = true;
  return r;
}

QuadResult integrate_adaptive(const Integrand& f, double a, double b, double abs_tol, double rel_tol,
                              std::size_t max_intervals) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument("integration limits must be finite");
  if (a == b) return {0.0, 0.0, 0, true};

  std::priority_queue<Segment> heap;
  QuadResult first = gauss_kronrod15(f, a, b);
  heap.push({a, b, first.value, first.error});
  double total = first.value;
  double total_err = first.error;
  std::size_t evaluations = first.evaluations;

  while (total_err > std::max(abs_tol, rel_tol * std::abs(total)) && heap.size() < max_intervals) {
    Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    // Interval can no longer be split in floating point.
    if (mid <= std::min(worst.a, worst.b) || mid >= std::max(worst.a, worst.b)) break;
    heap.pop();
    const QuadResult left = gauss_kronrod15(f, worst.a, mid);
    const QuadResult right = gauss_kronrod15(f, mid, worst.b);
    evaluations += 30;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push({worst.a, mid, left.value, left.error});
    heap.push({mid, worst.b, right.value, right.error});
  }

  // Re-sum to drop the drift accumulated by incremental updates.
  total = 0.0;
  total_err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    heap.pop();
  }
  QuadResult r;
  r.value = total;
  r.error = total_err;
  r.evaluations = evaluations;
  r.converged = total_err <= std::max(abs_tol, rel_tol * std::abs(total));
  return r;
}

WynnEpsilon::Estimate WynnEpsilon::push(double partial_sum) {
  // diagonal_[k] holds eps_k on the previous antidiagonal.
  std::vector<double> next(diagonal_.size() + 1);
  next[0] = partial_sum;
  for (std::size_t k = 0; k < diagonal_.size(); ++k) {
    const double below = (k == 0) ? 0.0 : diagonal_[k - 1];
    const double diff = next[k] - diagonal_[k];
    if (diff == 0.0 || !std::isfinite(diff)) {
      next.resize(k + 1);
      break;
    }
    next[k + 1] = below + 1.0 / diff;
  }
  // Bound the table; older columns stop carrying information.
  if (next.size() > 40) next.resize(40);
  diagonal_ = std::move(next);
  ++count_;

  std::size_t best = (diagonal_.size() - 1) & ~std::size_t{1};
  const double value = diagonal_[best];
  double error = std::numeric_limits<double>::infinity();
  if (!history_.empty()) {
    error = std::abs(value - history_.back());
    if (history_.size() >= 2) error += std::abs(value - history_[history_.size() - 2]);
  }
  history_.push_back(value);
  if (history_.size() > 3) history_.erase(history_.begin());
  return {value, error};
}

QuadResult integrate_oscillatory_tail(const Integrand& f, Oscillation kind, double a, double abs_tol,
                                      std::size_t max_half_periods) {
  const double pi = std::numbers::pi;
  // First zero of the trigonometric factor strictly above a.
  const double offset = (kind == Oscillation::cosine) ? 0.5 : 0.0;
  double k = std::floor(a / pi - offset) + 1.0;
  double lo = a;
  double hi = (k + offset) * pi;

  const auto weighted = [&](double x) {
    return f(x) * (kind == Oscillation::cosine ? std::cos(x) : std::sin(x));
  };

  WynnEpsilon wynn;
  double partial = 0.0;
  double piece_err = 0.0;
  std::size_t evaluations = 0;
  int settled = 0;
  double last_estimate = 0.0;
  double last_error = std::numeric_limits<double>::infinity();

  for (std::size_t i = 0; i < max_half_periods; ++i) {
    const QuadResult piece = integrate_adaptive(weighted, lo, hi, 0.01 * abs_tol, 1e-13, 200);
    partial += piece.value;
    piece_err += piece.error;
    evaluations += piece.evaluations;

    const auto est = wynn.push(partial);
    last_estimate = est.value;
    last_error = est.error;

    // Plain convergence: the remaining half-periods are negligible.
    if (i >= 4 && std::abs(piece.value) < 0.01 * abs_tol) {
      return {partial, piece_err + std::abs(piece.value), evaluations, true};
    }
    if (i >= 8 && est.error < abs_tol) {
      if (++settled >= 3) return {est.value, est.error + piece_err, evaluations, true};
    } else {
      settled = 0;
    }
    lo = hi;
    hi += pi;
  }
  return {last_estimate, last_error + piece_err, evaluations, false};
}

}  // namespace gravidec::quad
