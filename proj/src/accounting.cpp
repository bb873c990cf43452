#include "qdm/accounting.hpp"

#include <stdexcept>

#include "qdm/constants.hpp"

namespace qdm {

double i_pulse_qd(const AccountingInputs& in) {
  if (in.i_sub <= 0 || in.dt <= 0 || in.t_rep <= 0 || in.tau_decay_min <= 0 ||
      in.n_dot <= 0 || in.a_dot <= 0 || in.s_a <= 0)
    throw std::domain_error("i_pulse_qd: all inputs must be positive");
  if (in.dt >= in.t_rep)
    throw std::domain_error("i_pulse_qd: dt must be below t_rep");
  const double duty = in.dt / in.t_rep;
  const double decay_ratio = in.t_rep / in.tau_decay_min;
  const double molecules_sensed =
      in.n_dot * (in.a_dot * constants::um2_to_cm2) * in.s_a;
  return in.i_sub / duty / decay_ratio / molecules_sensed;
}

double electrons_per_pulse(double i_pulse, double dt) {
  if (i_pulse <= 0 || dt <= 0)
    throw std::domain_error("electrons_per_pulse: inputs must be positive");
  return i_pulse * dt / constants::e_charge;
}

double per_molecule_current(double i_dc, double n_dot, double a_dot) {
  if (i_dc <= 0 || n_dot <= 0 || a_dot <= 0)
    throw std::domain_error("per_molecule_current: inputs must be positive");
  return i_dc / (n_dot * a_dot * constants::um2_to_cm2);
}

double tau_decay_min(double i_dc, double n_dot, double a_dot) {
  return constants::e_charge / per_molecule_current(i_dc, n_dot, a_dot);
}

} // namespace qdm
