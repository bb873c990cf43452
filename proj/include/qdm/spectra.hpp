#pragma once

#include <utility>
#include <vector>

#include "qdm/params.hpp"

namespace qdm {

// Resonant-tunneling peaks on an energy axis relative to the S level.
// One Lorentzian HWHM is shared by all peaks.
struct PeakSet {
  std::vector<double> centers;    // meV, ascending
  double width = 0.15;            // meV
  std::vector<double> amplitudes; // one per center
  double lever_arm = 20.0;        // meV / V
  double v_offset = 0.0;          // V
};

// S/AS doublet at {0, delta_e} with unit amplitudes.
PeakSet default_peaks(const DeviceParams& params);

// Conductance curve over the bias grid: each zero-field peak splits into
// two at center +- g * mu_B * B / 2 with half the amplitude. Lorentzians
// are evaluated at energy (V - v_offset) * lever_arm. Requires a sorted,
// non-empty grid and b_field >= 0.
std::vector<std::pair<double, double>> didv_curve(const PeakSet& peaks,
                                                  double b_field,
                                                  double g_factor,
                                                  const std::vector<double>& v_grid);

// Energy splitting implied by a bias spacing: v_spacing * lever_arm.
double peak_spacing_to_delta_e(double v_spacing, double lever_arm);

// Strict interior local maxima of a sampled curve.
int count_local_maxima(const std::vector<std::pair<double, double>>& curve);

} // namespace qdm
