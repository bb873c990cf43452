#include "qdm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "qdm/constants.hpp"

namespace qdm {

namespace {

double trace_step(const PulseTrace& trace) {
  if (trace.dt_ps.size() < 2)
    throw std::invalid_argument("analysis: trace needs at least 2 samples");
  return trace.dt_ps[1] - trace.dt_ps[0];
}

// Least-squares quadratic over samples x in [-1, 1]; normal equations of a
// 3x3 symmetric system, solved directly.
std::array<double, 3> quadratic_fit(const std::vector<double>& u,
                                    const std::vector<double>& y) {
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0, s4 = 0;
  double b0 = 0, b1 = 0, b2 = 0;
  for (size_t i = 0; i < u.size(); ++i) {
    const double x = u[i], x2 = x * x;
    s0 += 1; s1 += x; s2 += x2; s3 += x2 * x; s4 += x2 * x2;
    b0 += y[i]; b1 += x * y[i]; b2 += x2 * y[i];
  }
  double a[3][4] = {{s0, s1, s2, b0}, {s1, s2, s3, b1}, {s2, s3, s4, b2}};
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    std::swap(a[col], a[pivot]);
    for (int r = 0; r < 3; ++r) {
      if (r == col || a[col][col] == 0.0) continue;
      const double f = a[r][col] / a[col][col];
      for (int c = col; c < 4; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::array<double, 3> coef{};
  for (int i = 0; i < 3; ++i)
    coef[i] = a[i][i] != 0.0 ? a[i][3] / a[i][i] : 0.0;
  return coef;
}

} // namespace

std::vector<double> window_values(const PulseTrace& trace, const Window& window) {
  const double step = trace_step(trace);
  if (window.dt_hi - window.dt_lo < 10 * step - 1e-9)
    throw std::invalid_argument("window: must span at least 10 grid steps");
  if (window.dt_lo < trace.dt_ps.front() - step ||
      window.dt_hi > trace.dt_ps.back() + step)
    throw std::invalid_argument("window: outside trace bounds");
  std::vector<double> values;
  for (size_t i = 0; i < trace.dt_ps.size(); ++i)
    if (trace.dt_ps[i] > window.dt_lo && trace.dt_ps[i] < window.dt_hi)
      values.push_back(trace.i_sub_pa[i]);
  if (values.empty())
    throw std::invalid_argument("window: no samples strictly inside");
  return values;
}

std::vector<double> detrend(const PulseTrace& trace, const Window& window) {
  const std::vector<double> y = window_values(trace, window);
  const size_t n = y.size();
  std::vector<double> u(n);
  for (size_t i = 0; i < n; ++i)
    u[i] = n > 1 ? -1.0 + 2.0 * static_cast<double>(i) / (n - 1) : 0.0;
  const std::array<double, 3> c = quadratic_fit(u, y);
  double scale = 0.0;
  for (double v : y) scale = std::max(scale, std::abs(v));
  std::vector<double> r(n);
  for (size_t i = 0; i < n; ++i)
    r[i] = y[i] - (c[0] + c[1] * u[i] + c[2] * u[i] * u[i]);
  // flush rounding residue: anything this far below the raw signal scale
  // carries no information and would otherwise be scored by the detector
  const double floor = 1e-9 * scale;
  for (double& v : r)
    if (std::abs(v) < floor) v = 0.0;
  return r;
}

Spectrum periodogram(const std::vector<double>& series, double grid_step) {
  const size_t n = series.size();
  if (n < 16) throw std::invalid_argument("periodogram: series too short (< 16)");
  if (grid_step <= 0) throw std::invalid_argument("periodogram: grid_step <= 0");

  const double mean = std::accumulate(series.begin(), series.end(), 0.0) / n;
  std::vector<double> x(n);
  for (size_t i = 0; i < n; ++i) x[i] = series[i] - mean;

  // zero-padding to 16x the length refines the period axis; bins below the
  // window length (k < 16) are excluded so periods stay within
  // [2 * grid_step, n * grid_step]
  const size_t m = 16 * n;
  const size_t k_lo = 16;
  const size_t k_hi = m / 2;
  Spectrum spec;
  spec.periods.reserve(k_hi - k_lo + 1);
  spec.magnitudes.reserve(k_hi - k_lo + 1);
  const double w = 2.0 * M_PI / static_cast<double>(m);
  for (size_t k = k_lo; k <= k_hi; ++k) {
    double re = 0.0, im = 0.0;
    const double wk = w * static_cast<double>(k);
    for (size_t j = 0; j < n; ++j) {
      re += x[j] * std::cos(wk * j);
      im -= x[j] * std::sin(wk * j);
    }
    spec.periods.push_back(static_cast<double>(m) * grid_step / k);
    spec.magnitudes.push_back(std::hypot(re, im));
  }

  std::vector<double> sorted = spec.magnitudes;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.size() > 3) sorted.resize(sorted.size() - 3);
  spec.noise_floor = sorted.empty() ? 0.0 : sorted[sorted.size() / 2];
  return spec;
}

PeriodEstimate dominant_period(const Spectrum& spec, double threshold) {
  PeriodEstimate est;
  if (spec.periods.empty()) return est;
  const double window_length = spec.periods.front();
  const double period_min = spec.periods.back(); // two grid steps
  const double period_max = window_length / 3.0;

  double best_mag = 0.0;
  double best_period = 0.0;
  for (size_t i = 0; i < spec.periods.size(); ++i) {
    const double p = spec.periods[i];
    if (p < period_min - 1e-12 || p > period_max + 1e-12) continue;
    if (spec.magnitudes[i] > best_mag) {
      best_mag = spec.magnitudes[i];
      best_period = p;
    }
  }
  if (best_mag <= 0.0) return est; // nothing in band, including all-zero input

  est.significance =
      spec.noise_floor > 0.0 ? best_mag / spec.noise_floor
                             : std::numeric_limits<double>::infinity();
  if (est.significance >= threshold) {
    est.ok = true;
    est.period = best_period;
    est.energy = constants::h / best_period;
  }
  return est;
}

std::vector<WindowResult> analyze_windows(const PulseTrace& trace,
                                          const std::vector<Window>& windows,
                                          double threshold) {
  std::vector<WindowResult> results;
  results.reserve(windows.size());
  for (const Window& w : windows) {
    WindowResult r;
    r.window = w;
    try {
      const std::vector<double> residual = detrend(trace, w);
      const Spectrum spec = periodogram(residual, trace_step(trace));
      r.estimate = dominant_period(spec, threshold);
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    results.push_back(std::move(r));
  }
  return results;
}

} // namespace qdm
