#pragma once

#include <string>
#include <vector>

#include "qdm/protocol.hpp"

namespace qdm {

// Open interval of pulse widths: samples with dt_lo < dt < dt_hi are
// analyzed. Bounds sit on staircase steps in the traces of interest, so
// keeping them exclusive keeps step discontinuities out of the window.
struct Window {
  double dt_lo = 0.0; // ps
  double dt_hi = 0.0;
};

// One-sided zero-padded magnitude spectrum on a period axis. periods run
// from the window length down to two grid steps (Nyquist), decreasing.
struct Spectrum {
  std::vector<double> periods;    // ps
  std::vector<double> magnitudes; // arbitrary units
  double noise_floor = 0.0;       // median magnitude, 3 largest bins excluded
};

struct PeriodEstimate {
  double period = 0.0;      // ps, valid only when ok
  double energy = 0.0;      // meV, h / period when ok
  double significance = 0.0; // peak magnitude / noise floor
  bool ok = false;
};

struct WindowResult {
  Window window;
  PeriodEstimate estimate;
  std::string error; // empty on success
};

// Samples of the trace strictly inside the window. Throws
// std::invalid_argument when the window leaves the trace bounds or spans
// fewer than 10 grid steps.
std::vector<double> window_values(const PulseTrace& trace, const Window& window);

// Subtracts the least-squares quadratic over the window. Residuals below
// 1e-9 of the window's signal scale are flushed to zero: they are numeric
// rounding residue, and keeping them would let the peak detector score
// pure float noise.
std::vector<double> detrend(const PulseTrace& trace, const Window& window);

// Mean-removed DFT magnitude, zero-padded 16x, on a period axis from the
// series length down to 2 grid steps. Requires length >= 16.
Spectrum periodogram(const std::vector<double>& series, double grid_step);

// Largest magnitude with period in [2 * grid step, window length / 3];
// ok when it clears `threshold` times the noise floor. A spectrum with no
// power in band reports ok = false rather than an error.
PeriodEstimate dominant_period(const Spectrum& spec, double threshold = 4.0);

// detrend -> periodogram -> dominant_period per window; windows that fail
// their own validation yield an error entry while the rest still run.
std::vector<WindowResult> analyze_windows(const PulseTrace& trace,
                                          const std::vector<Window>& windows,
                                          double threshold = 4.0);

} // namespace qdm
