#pragma once

#include <string>
#include <vector>

namespace qdm {

// Device and protocol parameters for the two-dot charge qubit.
// All defaults are overridable from a parameter file or CLI flags.
struct DeviceParams {
  double delta_e = 1.0;      // meV, S/AS splitting
  double gamma_s = 6.75e-7;  // 1/ps, S-state decay into the substrate
  double gamma_as = 1.325e-6; // 1/ps, AS-state decay into the substrate
  double gamma_ph = 4.0e-5;  // 1/ps, AS -> S phonon relaxation (1/25000 ps)
  double gamma_phi0 = 0.01;  // 1/ps, dephasing prefactor
  double dephasing_exponent = 2.0;
  double temperature = 4.0;  // K
  double n_dot = 5e10;       // molecules / cm^2
  double a_dot = 2500.0;     // um^2, active device area
  double s_a = 1e-5;         // amplifier broadband sensitivity
  double t_rep = 10000.0;    // ps, pulse repetition period
  double tau_step = 100.0;   // ps, charging staircase step
  double eta_inject = 0.7;   // injection probability per empty channel
  int k_max = 3;             // maximum number of injection channels
  double leak_threshold = 400.0; // ps, onset of the leak ramp
  double leak_slope = 0.5;   // pA / ps
  double lever_arm = 20.0;   // meV / V, bias-to-energy conversion
  double g_factor = 2.0;     // Zeeman g-factor (free parameter)
  double e_charging = 9.0;   // meV, recorded only; not used in dynamics
  bool suppress_channel_2_oscillation = false;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Report-style check of every DeviceParams invariant; never throws, so a
// caller can print all problems at once.
ValidationReport validate(const DeviceParams& params);

// Phenomenological dephasing model gamma_phi0 * (k_B*T / delta_e)^p.
// Throws std::domain_error for negative temperature.
double dephasing_rate(const DeviceParams& params, double temperature);

struct SweepSpec {
  double dt_min = 0.0;  // ps
  double dt_max = 450.0;
  double dt_step = 1.0;
};

// Expands a SweepSpec into its grid; throws std::invalid_argument when the
// spec violates its invariants (dt_min >= 0, dt_max > dt_min, dt_step > 0,
// integral point count).
std::vector<double> sweep_grid(const SweepSpec& spec);

// Parameter-file error carrying the 1-based line it occurred on.
struct ParamParseError {
  int line = 0;
  std::string message;
};

// Applies "key = value" to params; key names match the struct fields.
// Returns false with an explanation for unknown keys or unparsable values.
bool apply_param(DeviceParams& params, const std::string& key,
                 const std::string& value, std::string& error);

// Parses a UTF-8 parameter file: one `key = value` per line, `#` comments,
// blank lines allowed, unknown keys are an error. On failure fills `err`
// and returns false.
bool load_param_file(const std::string& path, DeviceParams& params,
                     ParamParseError& err);

// Same grammar applied to an in-memory string (used for trace snapshots
// and CLI --set handling).
bool parse_param_line(DeviceParams& params, const std::string& line, std::string& error);

// Serializes params as `key = value` lines in a fixed order, suitable for
// both parameter files and CSV comment headers.
std::vector<std::string> param_lines(const DeviceParams& params);

} // namespace qdm
