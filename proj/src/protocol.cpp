#include "qdm/protocol.hpp"

#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "qdm/constants.hpp"
#include "qdm/dynamics.hpp"

namespace qdm {

namespace {

// Survival/transfer factors of the triangular rate system over a window D:
// alpha = S survival, beta = AS survival, trans = fraction of initial AS
// sitting in S (undecayed) at the end, having relaxed via the phonon path.
struct DecayMap {
  double alpha;
  double beta;
  double trans;
};

DecayMap decay_map(const DeviceParams& p, double duration) {
  const double lam = p.gamma_as + p.gamma_ph;
  DecayMap m;
  m.alpha = std::exp(-p.gamma_s * duration);
  m.beta = std::exp(-lam * duration);
  const double gap = lam - p.gamma_s;
  if (std::abs(gap) > 1e-18)
    m.trans = p.gamma_ph * m.alpha * (-std::expm1(-gap * duration)) / gap;
  else
    m.trans = p.gamma_ph * duration * m.alpha;
  return m;
}

ChannelOccupancy apply_decay(const ChannelOccupancy& occ, const DecayMap& m,
                             double& collected) {
  ChannelOccupancy out;
  out.p_s = m.alpha * occ.p_s + m.trans * occ.p_as;
  out.p_as = m.beta * occ.p_as;
  collected = (occ.p_s + occ.p_as) - (out.p_s + out.p_as);
  out.p_empty = occ.p_empty + collected;
  return out;
}

// Fixed point of one channel's cycle map for a given slow-channel split.
CycleResult steady_cycle_split(const DeviceParams& params, double p_slow,
                               double decay_duration, ChannelOccupancy occ) {
  const DecayMap m = decay_map(params, decay_duration);
  const double eta = params.eta_inject;
  for (int it = 0; it < 1000000; ++it) {
    ChannelOccupancy filled;
    const double injected = occ.p_empty * eta;
    filled.p_s = occ.p_s + injected * p_slow;
    filled.p_as = occ.p_as + injected * (1.0 - p_slow);
    filled.p_empty = occ.p_empty * (1.0 - eta);
    double collected = 0.0;
    const ChannelOccupancy next = apply_decay(filled, m, collected);
    const double move = std::max({std::abs(next.p_empty - occ.p_empty),
                                  std::abs(next.p_s - occ.p_s),
                                  std::abs(next.p_as - occ.p_as)});
    occ = next;
    if (move < 1e-12) return {collected, occ};
  }
  throw std::runtime_error("steady_cycle: no fixed point after 1e6 iterations");
}

double slow_channel_weight(const DeviceParams& params, double duration) {
  return intra_pulse(params, duration).first;
}

double channel_current_scale(const DeviceParams& params) {
  return constants::e_charge / params.t_rep *
         (params.n_dot * params.a_dot * constants::um2_to_cm2) * params.s_a;
}

} // namespace

std::pair<double, double> intra_pulse(const DeviceParams& params, double duration) {
  if (duration == 0.0) return {1.0, 0.0};
  EvolutionSpec spec;
  spec.delta_e = params.delta_e;
  spec.gamma_phi = dephasing_rate(params, params.temperature);
  const QubitState end = evolve_pulse(injected_state(), spec, duration);
  const double p1 = localized_population(end, 1);
  return {p1, 1.0 - p1};
}

CycleResult inter_pulse(const ChannelOccupancy& occ, const DeviceParams& params,
                        double duration) {
  if (duration < 0) throw std::domain_error("inter_pulse: duration < 0");
  const DecayMap m = decay_map(params, duration);
  double collected = 0.0;
  const ChannelOccupancy end = apply_decay(occ, m, collected);
  return {collected, end};
}

CycleResult steady_cycle(const DeviceParams& params, double dt,
                         const ChannelOccupancy& start) {
  if (dt < 0 || dt >= params.t_rep)
    throw std::domain_error("steady_cycle: need 0 <= dt < t_rep");
  const double p_slow = slow_channel_weight(params, dt);
  return steady_cycle_split(params, p_slow, params.t_rep - dt, start);
}

std::vector<std::pair<int, double>> staircase_channels(double dt,
                                                       const DeviceParams& params) {
  if (dt < 0) throw std::domain_error("staircase_channels: dt < 0");
  std::vector<std::pair<int, double>> channels;
  if (dt == 0.0) return channels;
  const double raw = std::ceil(dt / params.tau_step - 1e-12);
  const int k = std::min(static_cast<int>(raw), params.k_max);
  channels.reserve(k);
  for (int j = 1; j <= k; ++j)
    channels.emplace_back(j, dt - (j - 1) * params.tau_step);
  return channels;
}

double i_sub_point(const DeviceParams& params, double dt) {
  if (dt < 0 || dt >= params.t_rep)
    throw std::domain_error("i_sub_point: need 0 <= dt < t_rep");
  const bool leaking = dt > params.leak_threshold;
  const double scale = channel_current_scale(params);
  double current = 0.0;
  for (const auto& [idx, duration] : staircase_channels(dt, params)) {
    double p_slow;
    if (leaking || (idx == 2 && params.suppress_channel_2_oscillation)) {
      // no coherent signature from this channel: even split over the
      // decay channels
      p_slow = 0.5;
    } else {
      p_slow = slow_channel_weight(params, duration);
    }
    const CycleResult cycle =
        steady_cycle_split(params, p_slow, params.t_rep - duration, {});
    current += cycle.collected_charge * scale;
  }
  if (leaking) current += (dt - params.leak_threshold) * params.leak_slope;
  return current;
}

PulseTrace sweep(const DeviceParams& params, const SweepSpec& spec) {
  const ValidationReport report = validate(params);
  if (!report.ok())
    throw std::invalid_argument("sweep: invalid params: " + report.violations.front());
  const std::vector<double> grid = sweep_grid(spec);
  if (spec.dt_max >= params.t_rep)
    throw std::invalid_argument("sweep: dt_max must stay below t_rep");

  PulseTrace trace;
  trace.dt_ps = grid;
  trace.i_sub_pa.assign(grid.size(), 0.0);
  trace.params_snapshot = params;

  unsigned n_threads = std::thread::hardware_concurrency();
  if (n_threads == 0) n_threads = 1;
  n_threads = std::min<unsigned>(n_threads, 8);
  n_threads = std::min<unsigned>(n_threads, grid.size());

  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&](unsigned offset) {
    try {
      for (size_t i = offset; i < grid.size(); i += n_threads)
        trace.i_sub_pa[i] = i_sub_point(params, grid[i]);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };

  if (n_threads <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return trace;
}

} // namespace qdm
