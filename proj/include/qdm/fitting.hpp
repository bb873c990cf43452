#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qdm/protocol.hpp"

namespace qdm {

// y(t) = baseline + amplitude * exp(-t/t2) * cos(2 pi t / period + phase)
struct DampedCosineModel {
  double amplitude = 0.0; // pA, >= 0 in results
  double period = 1.0;    // ps
  double phase = 0.0;     // rad
  double t2 = 1.0;        // ps
  double baseline = 0.0;  // pA
};

struct FitResult {
  DampedCosineModel model;
  double residual_rms = 0.0;
  int iterations = 0;
  bool converged = false;
  std::array<double, 5> covariance_diag{}; // amplitude, period, phase, t2, baseline
};

double damped_cosine_eval(const DampedCosineModel& m, double t);

// Central-difference Jacobian of the residual vector with respect to
// (amplitude, period, phase, t2, baseline) at relative step `rel_step`.
std::vector<std::array<double, 5>> damped_cosine_jacobian(
    const std::vector<double>& series, double grid_step,
    const DampedCosineModel& m, double rel_step);

// Levenberg-Marquardt on the damped cosine (period and t2 in log space),
// followed by three deterministic simplex restarts with perturbed phase.
// Self-initializes from the periodogram when `init` is null. The period is
// reported in the fundamental band (>= 2 * grid_step); anything faster is
// indistinguishable on the grid and folds onto its alias there. Requires
// length >= 16. Non-convergence is reported, never thrown.
FitResult fit_damped_cosine(const std::vector<double>& series, double grid_step,
                            const DampedCosineModel* init = nullptr);

// Simulation-in-the-loop parameter recovery: minimizes the RMS difference
// between `trace` and sweep(params) over the free parameters with a bounded
// Nelder-Mead search, 5 deterministic multi-starts. Free names must be a
// subset of {delta_e, gamma_s, gamma_as, gamma_phi0, eta_inject, leak_slope}
// and init must respect the bounds.
std::pair<DeviceParams, double> fit_device_params(
    const PulseTrace& trace, const std::set<std::string>& free,
    const std::map<std::string, std::pair<double, double>>& bounds,
    const DeviceParams& init, unsigned seed = 42);

} // namespace qdm
