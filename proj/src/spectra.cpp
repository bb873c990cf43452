#include "qdm/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qdm/constants.hpp"

namespace qdm {

PeakSet default_peaks(const DeviceParams& params) {
  PeakSet p;
  p.centers = {0.0, params.delta_e};
  p.amplitudes = {1.0, 1.0};
  p.width = 0.15;
  p.lever_arm = params.lever_arm;
  p.v_offset = 0.0;
  return p;
}

std::vector<std::pair<double, double>> didv_curve(const PeakSet& peaks,
                                                  double b_field,
                                                  double g_factor,
                                                  const std::vector<double>& v_grid) {
  if (v_grid.empty()) throw std::invalid_argument("didv_curve: empty bias grid");
  if (!std::is_sorted(v_grid.begin(), v_grid.end()))
    throw std::domain_error("didv_curve: bias grid must be sorted");
  if (b_field < 0) throw std::domain_error("didv_curve: b_field < 0");
  if (peaks.width <= 0) throw std::domain_error("didv_curve: width <= 0");
  if (peaks.centers.size() != peaks.amplitudes.size())
    throw std::invalid_argument("didv_curve: centers/amplitudes size mismatch");

  // each orbital peak splits into a spin doublet at +- g mu_B B / 2,
  // carrying half the zero-field weight each
  const double zeeman = 0.5 * g_factor * constants::mu_b * b_field;
  std::vector<std::pair<double, double>> components; // (energy, amplitude)
  for (size_t i = 0; i < peaks.centers.size(); ++i) {
    if (zeeman == 0.0) {
      components.emplace_back(peaks.centers[i], peaks.amplitudes[i]);
    } else {
      components.emplace_back(peaks.centers[i] - zeeman, 0.5 * peaks.amplitudes[i]);
      components.emplace_back(peaks.centers[i] + zeeman, 0.5 * peaks.amplitudes[i]);
    }
  }

  const double w2 = peaks.width * peaks.width;
  std::vector<std::pair<double, double>> curve;
  curve.reserve(v_grid.size());
  for (double v : v_grid) {
    const double energy = (v - peaks.v_offset) * peaks.lever_arm;
    double y = 0.0;
    for (const auto& [e0, amp] : components) {
      const double x = energy - e0;
      y += amp * w2 / (x * x + w2);
    }
    curve.emplace_back(v, y);
  }
  return curve;
}

double peak_spacing_to_delta_e(double v_spacing, double lever_arm) {
  if (v_spacing < 0 || lever_arm <= 0)
    throw std::domain_error("peak_spacing_to_delta_e: inputs must be positive");
  return v_spacing * lever_arm;
}

int count_local_maxima(const std::vector<std::pair<double, double>>& curve) {
  int count = 0;
  for (size_t i = 1; i + 1 < curve.size(); ++i)
    if (curve[i].second > curve[i - 1].second &&
        curve[i].second > curve[i + 1].second)
      ++count;
  return count;
}

} // namespace qdm
