#include "qdm/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "qdm/constants.hpp"

namespace qdm {

namespace {

// Right-hand side of the master equation. H is diagonal in the S/AS basis,
// so the commutator and the dephasing term both leave populations exactly
// in place; only the coherences move.
Mat2 master_rhs(const Mat2& rho, double delta_e, double gamma_phi) {
  const double h00 = -0.5 * delta_e;
  const double h11 = +0.5 * delta_e;
  const cplx minus_i_over_hbar(0.0, -1.0 / constants::hbar);
  Mat2 d{};
  d[0][0] = minus_i_over_hbar * (h00 * rho[0][0] - rho[0][0] * h00);
  d[1][1] = minus_i_over_hbar * (h11 * rho[1][1] - rho[1][1] * h11);
  d[0][1] = minus_i_over_hbar * (h00 - h11) * rho[0][1] - 2.0 * gamma_phi * rho[0][1];
  d[1][0] = minus_i_over_hbar * (h11 - h00) * rho[1][0] - 2.0 * gamma_phi * rho[1][0];
  return d;
}

Mat2 axpy(const Mat2& a, double s, const Mat2& b) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][j] + s * b[i][j];
  return r;
}

void rk4_step(Mat2& rho, double h, double delta_e, double gamma_phi) {
  const Mat2 k1 = master_rhs(rho, delta_e, gamma_phi);
  const Mat2 k2 = master_rhs(axpy(rho, 0.5 * h, k1), delta_e, gamma_phi);
  const Mat2 k3 = master_rhs(axpy(rho, 0.5 * h, k2), delta_e, gamma_phi);
  const Mat2 k4 = master_rhs(axpy(rho, h, k3), delta_e, gamma_phi);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      rho[i][j] += (h / 6.0) * (k1[i][j] + 2.0 * k2[i][j] + 2.0 * k3[i][j] + k4[i][j]);
}

void check_spec(const EvolutionSpec& spec) {
  if (spec.delta_e <= 0)
    throw std::invalid_argument("evolution: delta_e must be positive");
  if (spec.gamma_phi < 0)
    throw std::invalid_argument("evolution: gamma_phi must be non-negative");
  const double period = constants::h / spec.delta_e;
  if (spec.dt_integrator <= 0 || spec.dt_integrator > 0.05 * period)
    throw std::invalid_argument(
        "evolution: dt_integrator must resolve at least 20 steps per period");
}

int step_count(double duration, double dt) {
  return static_cast<int>(std::ceil(duration / dt - 1e-12));
}

} // namespace

QubitState injected_state() {
  QubitState s;
  s.rho[0][0] = 0.5;
  s.rho[0][1] = 0.5;
  s.rho[1][0] = 0.5;
  s.rho[1][1] = 0.5;
  return s;
}

QubitState evolve_pulse(const QubitState& state, const EvolutionSpec& spec,
                        double duration) {
  if (duration < 0) throw std::domain_error("evolve_pulse: duration < 0");
  check_spec(spec);
  QubitState out = state;
  if (duration == 0.0) return out;
  const int n = step_count(duration, spec.dt_integrator);
  const double h = duration / n;
  for (int i = 0; i < n; ++i)
    rk4_step(out.rho, h, spec.delta_e, spec.gamma_phi);
  return out;
}

Trajectory evolve_trajectory(const EvolutionSpec& spec, double duration) {
  if (duration < 0) throw std::domain_error("evolve_trajectory: duration < 0");
  check_spec(spec);
  Trajectory traj;
  QubitState s = injected_state();
  traj.times.push_back(0.0);
  traj.states.push_back(s);
  if (duration == 0.0) return traj;
  const int n = step_count(duration, spec.dt_integrator);
  const double h = duration / n;
  for (int i = 1; i <= n; ++i) {
    rk4_step(s.rho, h, spec.delta_e, spec.gamma_phi);
    traj.times.push_back(i * h);
    traj.states.push_back(s);
  }
  return traj;
}

double localized_population(const QubitState& state, int which_dot) {
  if (which_dot != 1 && which_dot != 2)
    throw std::out_of_range("localized_population: dot index must be 1 or 2");
  const double diag = 0.5 * (state.rho[0][0].real() + state.rho[1][1].real());
  const double cross = state.rho[0][1].real();
  return which_dot == 1 ? diag + cross : diag - cross;
}

double analytic_localized_population(double t, double delta_e, double gamma_phi) {
  if (t < 0) throw std::domain_error("analytic_localized_population: t < 0");
  return 0.5 * (1.0 + std::exp(-2.0 * gamma_phi * t) *
                          std::cos(delta_e * t / constants::hbar));
}

std::array<double, 2> hermitian_eigenvalues(const Mat2& m) {
  const double a = m[0][0].real();
  const double d = m[1][1].real();
  const double off = std::abs(m[0][1]);
  const double mean = 0.5 * (a + d);
  const double r = std::sqrt(0.25 * (a - d) * (a - d) + off * off);
  return {mean - r, mean + r};
}

double trace_real(const Mat2& m) { return m[0][0].real() + m[1][1].real(); }

} // namespace qdm
