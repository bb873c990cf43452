#pragma once

namespace qdm {

// Inputs of the per-pulse charge bookkeeping. a_dot is in um^2 and is
// converted to cm^2 internally (n_dot is per cm^2).
struct AccountingInputs {
  double i_sub = 0.0;          // pA
  double dt = 0.0;             // ps
  double t_rep = 10000.0;      // ps
  double tau_decay_min = 1e6;  // ps
  double n_dot = 5e10;         // 1 / cm^2
  double a_dot = 2500.0;       // um^2
  double s_a = 1e-5;
};

// Current injected into one molecule per single pulse:
//   i_sub / (dt/t_rep) / (t_rep/tau_decay_min) / (n_dot * a_dot * s_a).
// Throws std::domain_error when any divisor is zero or an input is
// non-positive.
double i_pulse_qd(const AccountingInputs& in);

// Electrons delivered per pulse: i_pulse * dt / e_charge.
double electrons_per_pulse(double i_pulse, double dt);

// DC current per molecule for a device of n_dot * a_dot molecules.
double per_molecule_current(double i_dc, double n_dot, double a_dot);

// Lower bound on the dot-to-substrate decay time implied by a measured DC
// current: e_charge / per-molecule current.
double tau_decay_min(double i_dc, double n_dot, double a_dot);

} // namespace qdm
