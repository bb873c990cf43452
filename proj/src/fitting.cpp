#include "qdm/fitting.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>

#include "qdm/analysis.hpp"
#include "qdm/constants.hpp"

namespace qdm {

double damped_cosine_eval(const DampedCosineModel& m, double t) {
  return m.baseline + m.amplitude * std::exp(-t / m.t2) *
                          std::cos(2.0 * M_PI * t / m.period + m.phase);
}

namespace {

// internal optimization coordinates: amplitude, log period, phase, log t2,
// baseline; the logs keep period and t2 positive without constraints
using Theta = std::array<double, 5>;

Theta to_theta(const DampedCosineModel& m) {
  return {m.amplitude, std::log(m.period), m.phase, std::log(m.t2), m.baseline};
}

DampedCosineModel from_theta(const Theta& t) {
  DampedCosineModel m;
  m.amplitude = t[0];
  m.period = std::exp(t[1]);
  m.phase = t[2];
  m.t2 = std::exp(t[3]);
  m.baseline = t[4];
  return m;
}

double cost_theta(const std::vector<double>& y, double step, const Theta& t) {
  const DampedCosineModel m = from_theta(t);
  double c = 0.0;
  for (size_t i = 0; i < y.size(); ++i) {
    const double r = damped_cosine_eval(m, i * step) - y[i];
    c += r * r;
  }
  return c;
}

void residuals_theta(const std::vector<double>& y, double step, const Theta& t,
                     std::vector<double>& r) {
  const DampedCosineModel m = from_theta(t);
  r.resize(y.size());
  for (size_t i = 0; i < y.size(); ++i)
    r[i] = damped_cosine_eval(m, i * step) - y[i];
}

// central differences in theta space; the amplitude/baseline steps follow
// the series scale so the whole fit commutes with rescaling the data
void jacobian_theta(const std::vector<double>& y, double step, const Theta& t,
                    double amp_scale, std::vector<Theta>& jac) {
  const size_t n = y.size();
  jac.assign(n, Theta{});
  std::vector<double> rp, rm;
  for (int j = 0; j < 5; ++j) {
    double h;
    if (j == 0 || j == 4)
      h = 1e-6 * std::max(std::abs(t[j]), amp_scale);
    else
      h = 1e-6 * std::max(std::abs(t[j]), 1.0);
    Theta tp = t, tm = t;
    tp[j] += h;
    tm[j] -= h;
    residuals_theta(y, step, tp, rp);
    residuals_theta(y, step, tm, rm);
    const double inv = 1.0 / (2.0 * h);
    for (size_t i = 0; i < n; ++i) jac[i][j] = (rp[i] - rm[i]) * inv;
  }
}

// Gaussian elimination with partial pivoting; returns false when singular.
bool solve5(double a[5][5], double b[5], double x[5]) {
  int idx[5] = {0, 1, 2, 3, 4};
  for (int col = 0; col < 5; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 5; ++r)
      if (std::abs(a[idx[r]][col]) > std::abs(a[idx[pivot]][col])) pivot = r;
    std::swap(idx[col], idx[pivot]);
    const double p = a[idx[col]][col];
    if (p == 0.0) return false;
    for (int r = col + 1; r < 5; ++r) {
      const double f = a[idx[r]][col] / p;
      for (int c = col; c < 5; ++c) a[idx[r]][c] -= f * a[idx[col]][c];
      b[idx[r]] -= f * b[idx[col]];
    }
  }
  for (int i = 4; i >= 0; --i) {
    double s = b[idx[i]];
    for (int c = i + 1; c < 5; ++c) s -= a[idx[i]][c] * x[c];
    if (a[idx[i]][i] == 0.0) return false;
    x[i] = s / a[idx[i]][i];
  }
  return true;
}

struct LmOutcome {
  Theta theta;
  double cost;
  int iterations;
};

LmOutcome levenberg_marquardt(const std::vector<double>& y, double step,
                              Theta theta, double amp_scale, int max_iter) {
  double cost = cost_theta(y, step, theta);
  double lambda = 1e-3;
  int accepted = 0;
  std::vector<double> r;
  std::vector<Theta> jac;
  for (int iter = 0; iter < max_iter; ++iter) {
    residuals_theta(y, step, theta, r);
    jacobian_theta(y, step, theta, amp_scale, jac);
    double h[5][5] = {};
    double g[5] = {};
    for (size_t i = 0; i < r.size(); ++i)
      for (int a = 0; a < 5; ++a) {
        g[a] += jac[i][a] * r[i];
        for (int b = a; b < 5; ++b) h[a][b] += jac[i][a] * jac[i][b];
      }
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < a; ++b) h[a][b] = h[b][a];

    bool stepped = false;
    for (int attempt = 0; attempt < 25; ++attempt) {
      double aug[5][5];
      double rhs[5];
      double delta[5];
      for (int a = 0; a < 5; ++a) {
        for (int b = 0; b < 5; ++b) aug[a][b] = h[a][b];
        aug[a][a] += lambda * std::max(h[a][a], 1e-30);
        rhs[a] = -g[a];
      }
      if (!solve5(aug, rhs, delta)) {
        lambda *= 10.0;
        continue;
      }
      Theta trial = theta;
      for (int a = 0; a < 5; ++a) trial[a] += delta[a];
      const double trial_cost = cost_theta(y, step, trial);
      if (trial_cost < cost) {
        const double rel = (cost - trial_cost) / std::max(cost, DBL_MIN);
        theta = trial;
        cost = trial_cost;
        ++accepted;
        lambda = std::max(lambda * 0.3, 1e-12);
        stepped = true;
        if (rel < 1e-10) return {theta, cost, accepted};
        break;
      }
      lambda *= 10.0;
      if (lambda > 1e14) return {theta, cost, accepted};
    }
    if (!stepped) return {theta, cost, accepted};
  }
  return {theta, cost, accepted};
}

// Nelder-Mead on O(1)-scaled coordinates with an optional clamp; all
// termination tests are relative, so the search path is invariant under a
// uniform rescaling of the objective.
std::pair<std::vector<double>, double> nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x0, double initial_step, int budget,
    const std::function<void(std::vector<double>&)>& clamp) {
  const size_t d = x0.size();
  clamp(x0);
  std::vector<std::vector<double>> pts(d + 1, x0);
  for (size_t j = 0; j < d; ++j) {
    pts[j + 1][j] += initial_step;
    clamp(pts[j + 1]);
    if (pts[j + 1] == pts[0]) pts[j + 1][j] -= 2.0 * initial_step;
    clamp(pts[j + 1]);
  }
  std::vector<double> fv(d + 1);
  int evals = 0;
  for (size_t i = 0; i <= d; ++i) {
    fv[i] = f(pts[i]);
    ++evals;
  }
  auto order = [&] {
    std::vector<size_t> idx(d + 1);
    for (size_t i = 0; i <= d; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](size_t a, size_t b) { return fv[a] < fv[b]; });
    std::vector<std::vector<double>> p2;
    std::vector<double> f2;
    for (size_t i : idx) {
      p2.push_back(pts[i]);
      f2.push_back(fv[i]);
    }
    pts.swap(p2);
    fv.swap(f2);
  };
  order();
  while (evals < budget) {
    const double spread = fv[d] - fv[0];
    if (spread <= 1e-12 * std::max(std::abs(fv[0]), DBL_MIN)) break;
    double xspread = 0.0;
    for (size_t j = 0; j < d; ++j) {
      double lo = pts[0][j], hi = pts[0][j];
      for (size_t i = 1; i <= d; ++i) {
        lo = std::min(lo, pts[i][j]);
        hi = std::max(hi, pts[i][j]);
      }
      xspread = std::max(xspread, hi - lo);
    }
    if (xspread < 1e-8) break;

    std::vector<double> centroid(d, 0.0);
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j) centroid[j] += pts[i][j] / d;
    auto blend = [&](double coef) {
      std::vector<double> p(d);
      for (size_t j = 0; j < d; ++j)
        p[j] = centroid[j] + coef * (pts[d][j] - centroid[j]);
      clamp(p);
      return p;
    };
    std::vector<double> xr = blend(-1.0);
    const double fr = f(xr);
    ++evals;
    if (fr < fv[0]) {
      std::vector<double> xe = blend(-2.0);
      const double fe = f(xe);
      ++evals;
      if (fe < fr) {
        pts[d] = xe;
        fv[d] = fe;
      } else {
        pts[d] = xr;
        fv[d] = fr;
      }
    } else if (fr < fv[d - 1]) {
      pts[d] = xr;
      fv[d] = fr;
    } else {
      std::vector<double> xc = blend(fr < fv[d] ? -0.5 : 0.5);
      const double fc = f(xc);
      ++evals;
      if (fc < std::min(fr, fv[d])) {
        pts[d] = xc;
        fv[d] = fc;
      } else {
        for (size_t i = 1; i <= d; ++i) {
          for (size_t j = 0; j < d; ++j)
            pts[i][j] = pts[0][j] + 0.5 * (pts[i][j] - pts[0][j]);
          clamp(pts[i]);
          fv[i] = f(pts[i]);
          ++evals;
        }
      }
    }
    order();
  }
  return {pts[0], fv[0]};
}

double wrap_phase(double phi) {
  while (phi > M_PI) phi -= 2.0 * M_PI;
  while (phi <= -M_PI) phi += 2.0 * M_PI;
  return phi;
}

} // namespace

std::vector<std::array<double, 5>> damped_cosine_jacobian(
    const std::vector<double>& series, double grid_step,
    const DampedCosineModel& m, double rel_step) {
  double rms = 0.0;
  for (double v : series) rms += v * v;
  rms = std::sqrt(rms / std::max<size_t>(series.size(), 1));
  const double floors[5] = {std::max(std::abs(m.amplitude), rms), m.period, 1.0,
                            m.t2, std::max(std::abs(m.baseline), rms)};
  std::vector<std::array<double, 5>> jac(series.size());
  for (int j = 0; j < 5; ++j) {
    const double h = rel_step * std::max(floors[j], DBL_MIN);
    DampedCosineModel mp = m, mm = m;
    double* fields_p[5] = {&mp.amplitude, &mp.period, &mp.phase, &mp.t2, &mp.baseline};
    double* fields_m[5] = {&mm.amplitude, &mm.period, &mm.phase, &mm.t2, &mm.baseline};
    *fields_p[j] += h;
    *fields_m[j] -= h;
    for (size_t i = 0; i < series.size(); ++i) {
      const double t = i * grid_step;
      jac[i][j] = (damped_cosine_eval(mp, t) - damped_cosine_eval(mm, t)) / (2.0 * h);
    }
  }
  return jac;
}

FitResult fit_damped_cosine(const std::vector<double>& series, double grid_step,
                            const DampedCosineModel* init) {
  const size_t n = series.size();
  if (n < 16) throw std::invalid_argument("fit_damped_cosine: series too short (< 16)");
  if (grid_step <= 0) throw std::invalid_argument("fit_damped_cosine: grid_step <= 0");

  FitResult result;
  double rms = 0.0;
  for (double v : series) rms += v * v;
  rms = std::sqrt(rms / n);
  if (rms == 0.0) {
    result.model.period = n * grid_step;
    result.model.t2 = n * grid_step;
    result.converged = true;
    return result;
  }

  DampedCosineModel start;
  if (init) {
    if (init->period <= 0 || init->t2 <= 0)
      throw std::invalid_argument("fit_damped_cosine: init needs period > 0 and t2 > 0");
    start = *init;
    if (start.amplitude == 0.0) start.amplitude = rms * std::sqrt(2.0);
  } else {
    const Spectrum spec = periodogram(series, grid_step);
    size_t best = 0;
    for (size_t i = 1; i < spec.magnitudes.size(); ++i)
      if (spec.magnitudes[i] > spec.magnitudes[best]) best = i;
    start.period = spec.periods[best];
    start.amplitude = rms * std::sqrt(2.0);
    start.phase = 0.0;
    start.t2 = n * grid_step;
    start.baseline = 0.0;
  }

  const double amp_scale = rms * std::sqrt(2.0);
  LmOutcome best = levenberg_marquardt(series, grid_step, to_theta(start),
                                       amp_scale, 200);
  int iterations = best.iterations;

  // deterministic fallback restarts: the cosine cost surface is multimodal
  // in phase, so probe shifted phases with a simplex pass then polish
  const double phase_shifts[3] = {0.5 * M_PI, -0.5 * M_PI, M_PI};
  for (double shift : phase_shifts) {
    Theta t0 = best.theta;
    t0[2] = wrap_phase(t0[2] + shift);
    auto scaled = [&](const Theta& th) {
      std::vector<double> z(5);
      z[0] = th[0] / amp_scale;
      z[1] = th[1];
      z[2] = th[2];
      z[3] = th[3];
      z[4] = th[4] / amp_scale;
      return z;
    };
    auto unscaled = [&](const std::vector<double>& z) {
      Theta th;
      th[0] = z[0] * amp_scale;
      th[1] = z[1];
      th[2] = z[2];
      th[3] = z[3];
      th[4] = z[4] * amp_scale;
      return th;
    };
    auto objective = [&](const std::vector<double>& z) {
      return cost_theta(series, grid_step, unscaled(z));
    };
    auto no_clamp = [](std::vector<double>&) {};
    auto [z_best, z_cost] =
        nelder_mead(objective, scaled(t0), 0.25, 400, no_clamp);
    (void)z_cost;
    LmOutcome polished = levenberg_marquardt(series, grid_step, unscaled(z_best),
                                             amp_scale, 100);
    iterations += polished.iterations;
    if (polished.cost < best.cost) best = polished;
  }

  DampedCosineModel m = from_theta(best.theta);
  // a period below two grid steps is an exact alias on the sample grid:
  // cos(2 pi (k/step +- 1/p) t + phi) matches cos(2 pi t/p' +- phi) at
  // every t = i*step. Fold it onto the fundamental band so equal-cost
  // minima report one canonical period.
  if (m.period < 2.0 * grid_step) {
    double f = std::fmod(1.0 / m.period, 1.0 / grid_step);
    if (f > 0.5 / grid_step) {
      f = 1.0 / grid_step - f;
      m.phase = -m.phase;
    }
    if (f > 0.0) m.period = 1.0 / f;
  }
  if (m.amplitude < 0) {
    m.amplitude = -m.amplitude;
    m.phase += M_PI;
  }
  m.phase = wrap_phase(m.phase);

  result.model = m;
  result.iterations = iterations;
  result.residual_rms = std::sqrt(best.cost / n);

  // convergence verdict: the residual must be orthogonal to every jacobian
  // column (no single coordinate can still reduce the cost). The angle is
  // dimensionless, so the verdict survives rescaled data; a residual below
  // rounding level is accepted outright since its direction is arbitrary.
  if (best.cost <= 1e-20 * (rms * rms) * static_cast<double>(n)) {
    result.converged = true;
  } else {
    std::vector<double> r;
    residuals_theta(series, grid_step, to_theta(m), r);
    std::vector<Theta> jac;
    jacobian_theta(series, grid_step, to_theta(m), amp_scale, jac);
    double worst = 0.0;
    for (int a = 0; a < 5; ++a) {
      double g = 0.0, jj = 0.0;
      for (size_t i = 0; i < n; ++i) {
        g += jac[i][a] * r[i];
        jj += jac[i][a] * jac[i][a];
      }
      if (jj > 0.0)
        worst = std::max(worst, std::abs(g) / std::sqrt(jj * best.cost));
    }
    result.converged = worst < 1e-4;
  }

  const auto joriginal = damped_cosine_jacobian(series, grid_step, m, 1e-6);
  double hmat[5][5] = {};
  for (size_t i = 0; i < n; ++i)
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b) hmat[a][b] += joriginal[i][a] * joriginal[i][b];
  double inv[5][5];
  bool invertible = true;
  {
    double aug[5][10];
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b) {
        aug[a][b] = hmat[a][b];
        aug[a][b + 5] = a == b ? 1.0 : 0.0;
      }
    for (int col = 0; col < 5 && invertible; ++col) {
      int pivot = col;
      for (int rr = col + 1; rr < 5; ++rr)
        if (std::abs(aug[rr][col]) > std::abs(aug[pivot][col])) pivot = rr;
      if (aug[pivot][col] == 0.0) {
        invertible = false;
        break;
      }
      for (int c = 0; c < 10; ++c) std::swap(aug[col][c], aug[pivot][c]);
      const double p = aug[col][col];
      for (int c = 0; c < 10; ++c) aug[col][c] /= p;
      for (int rr = 0; rr < 5; ++rr) {
        if (rr == col) continue;
        const double f = aug[rr][col];
        for (int c = 0; c < 10; ++c) aug[rr][c] -= f * aug[col][c];
      }
    }
    if (invertible)
      for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) inv[a][b] = aug[a][b + 5];
  }
  if (invertible && n > 5) {
    const double sigma2 = best.cost / (n - 5);
    for (int a = 0; a < 5; ++a)
      result.covariance_diag[a] = std::max(inv[a][a] * sigma2, 0.0);
  }
  return result;
}

namespace {

double uniform01(std::mt19937& eng) {
  const double a = eng() >> 5;
  const double b = eng() >> 6;
  return (a * 67108864.0 + b) / 9007199254740992.0;
}

double* device_field(DeviceParams& p, const std::string& name) {
  if (name == "delta_e") return &p.delta_e;
  if (name == "gamma_s") return &p.gamma_s;
  if (name == "gamma_as") return &p.gamma_as;
  if (name == "gamma_phi0") return &p.gamma_phi0;
  if (name == "eta_inject") return &p.eta_inject;
  if (name == "leak_slope") return &p.leak_slope;
  return nullptr;
}

} // namespace

std::pair<DeviceParams, double> fit_device_params(
    const PulseTrace& trace, const std::set<std::string>& free,
    const std::map<std::string, std::pair<double, double>>& bounds,
    const DeviceParams& init, unsigned seed) {
  if (trace.dt_ps.size() < 2)
    throw std::invalid_argument("fit_device_params: trace too short");
  std::vector<std::string> names(free.begin(), free.end());
  std::vector<std::pair<double, double>> box;
  for (const auto& name : names) {
    DeviceParams probe;
    if (!device_field(probe, name))
      throw std::invalid_argument("fit_device_params: '" + name +
                                  "' is not a fittable parameter");
    auto it = bounds.find(name);
    if (it == bounds.end())
      throw std::invalid_argument("fit_device_params: missing bounds for '" + name + "'");
    const auto [lo, hi] = it->second;
    if (!(std::isfinite(lo) && std::isfinite(hi)) || lo <= 0 || hi <= lo)
      throw std::invalid_argument("fit_device_params: bounds for '" + name +
                                  "' must be finite, positive and ordered");
    DeviceParams chk = init;
    const double v = *device_field(chk, name);
    if (v < lo || v > hi)
      throw std::invalid_argument("fit_device_params: init value for '" + name +
                                  "' violates its bounds");
    box.emplace_back(lo, hi);
  }

  SweepSpec spec;
  spec.dt_min = trace.dt_ps.front();
  spec.dt_max = trace.dt_ps.back();
  spec.dt_step = trace.dt_ps.size() > 1 ? trace.dt_ps[1] - trace.dt_ps[0] : 1.0;

  auto rms_against_trace = [&](const DeviceParams& p) {
    const PulseTrace sim = sweep(p, spec);
    double c = 0.0;
    for (size_t i = 0; i < sim.i_sub_pa.size(); ++i) {
      const double d = sim.i_sub_pa[i] - trace.i_sub_pa[i];
      c += d * d;
    }
    return std::sqrt(c / sim.i_sub_pa.size());
  };

  if (names.empty()) return {init, rms_against_trace(init)};

  const size_t d = names.size();
  auto params_at = [&](const std::vector<double>& z) {
    DeviceParams p = init;
    for (size_t j = 0; j < d; ++j)
      *device_field(p, names[j]) = box[j].first + z[j] * (box[j].second - box[j].first);
    return p;
  };
  auto objective = [&](const std::vector<double>& z) {
    const DeviceParams p = params_at(z);
    if (!validate(p).ok()) return 1e100;
    return rms_against_trace(p);
  };
  auto clamp01 = [](std::vector<double>& z) {
    for (double& v : z) v = std::clamp(v, 0.0, 1.0);
  };

  std::vector<double> z_init(d);
  {
    DeviceParams chk = init;
    for (size_t j = 0; j < d; ++j)
      z_init[j] = (*device_field(chk, names[j]) - box[j].first) /
                  (box[j].second - box[j].first);
  }

  std::mt19937 eng(seed);
  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<double> best_z = z_init;
  for (int start = 0; start < 5; ++start) {
    std::vector<double> z0(d);
    if (start == 0) {
      z0 = z_init;
    } else {
      for (size_t j = 0; j < d; ++j) z0[j] = uniform01(eng);
    }
    auto [z, cost] = nelder_mead(objective, z0, 0.15,
                                 60 * static_cast<int>(d) + 40, clamp01);
    if (cost < best_cost) { // strict: ties keep the earlier start
      best_cost = cost;
      best_z = z;
    }
  }
  return {params_at(best_z), best_cost};
}

} // namespace qdm
