#pragma once

#include <array>
#include <complex>
#include <vector>

namespace qdm {

using cplx = std::complex<double>;
using Mat2 = std::array<std::array<cplx, 2>, 2>;

// 2x2 density matrix in the {S, AS} energy eigenbasis plus the probability
// already delivered to the substrate through each decay channel.
struct QubitState {
  Mat2 rho{};
  double collected_s = 0.0;
  double collected_as = 0.0;
};

struct EvolutionSpec {
  double delta_e = 1.0;      // meV
  double gamma_phi = 0.0;    // 1/ps
  double dt_integrator = 0.01; // ps; must resolve >= 20 steps per period
};

struct Trajectory {
  std::vector<double> times;
  std::vector<QubitState> states;
};

// Localized single-dot state: equal superposition of S and AS, fully
// coherent, nothing collected yet.
QubitState injected_state();

// Fixed-step RK4 integration of
//   drho/dt = -(i/hbar)[H, rho] + gamma_phi (sz rho sz - rho),
// H = diag(-delta_e/2, +delta_e/2), sz = diag(1, -1), over `duration`.
// Decay into the substrate is off during the pulse. Throws std::domain_error
// for negative duration and std::invalid_argument for an invalid spec.
QubitState evolve_pulse(const QubitState& state, const EvolutionSpec& spec,
                        double duration);

// Same integration recording every integrator sample, starting from
// injected_state.
Trajectory evolve_trajectory(const EvolutionSpec& spec, double duration);

// <L_i|rho|L_i> with |L_1> = (|S>+|AS>)/sqrt(2), |L_2> = (|S>-|AS>)/sqrt(2).
// which_dot must be 1 or 2; otherwise throws std::out_of_range.
double localized_population(const QubitState& state, int which_dot);

// Closed-form solution for the localized dot-1 population starting from
// injected_state: (1 + exp(-2 gamma_phi t) cos(delta_e t / hbar)) / 2.
// Serves as the exact oracle for evolve_pulse. Throws std::domain_error
// for t < 0.
double analytic_localized_population(double t, double delta_e, double gamma_phi);

// Eigenvalues of a Hermitian 2x2 matrix, ascending. Used by invariant checks.
std::array<double, 2> hermitian_eigenvalues(const Mat2& m);

double trace_real(const Mat2& m);

} // namespace qdm
