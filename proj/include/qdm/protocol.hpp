#pragma once

#include <utility>
#include <vector>

#include "qdm/params.hpp"

namespace qdm {

// Classical occupancy of one injection channel between pulses.
struct ChannelOccupancy {
  double p_empty = 1.0;
  double p_s = 0.0;
  double p_as = 0.0;
};

struct CycleResult {
  double collected_charge = 0.0; // expected electrons this cycle
  ChannelOccupancy end_occupancy;
};

// Uniformly sampled substrate-current trace.
struct PulseTrace {
  std::vector<double> dt_ps;
  std::vector<double> i_sub_pa;
  DeviceParams params_snapshot;
};

// Coherent intra-pulse evolution from the injected localized state, then
// projection onto the slow/fast decay channels: p_s follows the localized
// dot-1 population at pulse end, p_as = 1 - p_s. duration = 0 returns
// (1, 0): a fresh localized electron sits entirely in the slow channel.
std::pair<double, double> intra_pulse(const DeviceParams& params, double duration);

// Classical three-state decay between pulses: S -> substrate at gamma_s,
// AS -> substrate at gamma_as, AS -> S at gamma_ph. Closed-form matrix
// exponential of the triangular rate system; collected probability moves
// the channel back to empty. Throws std::domain_error on negative duration.
CycleResult inter_pulse(const ChannelOccupancy& occ, const DeviceParams& params,
                        double duration);

// Steady state of the per-cycle map: refill the empty fraction with
// probability eta_inject split by intra_pulse (occupied channels are
// blocked), then decay over t_rep - dt. Iterates to a fixed point within
// 1e-12 max-norm; throws std::runtime_error after 1e6 iterations and
// std::domain_error unless 0 <= dt < t_rep. `start` selects the initial
// occupancy (the fixed point does not depend on it).
CycleResult steady_cycle(const DeviceParams& params, double dt,
                         const ChannelOccupancy& start = ChannelOccupancy{});

// Staircase injection channels for pulse width dt: channel j (1-based)
// has evolution duration dt - (j-1)*tau_step; count = ceil(dt/tau_step)
// capped at k_max, empty at dt = 0.
std::vector<std::pair<int, double>> staircase_channels(double dt,
                                                       const DeviceParams& params);

// DC substrate current at one pulse width: per-channel steady collected
// charge scaled to current over the active area, plus the linear leak ramp
// beyond leak_threshold. Past the threshold the injection loses coherence
// and every channel splits evenly between S and AS.
double i_sub_point(const DeviceParams& params, double dt);

// i_sub_point over the grid of `spec`. Grid points are evaluated
// independently (concurrently) and assembled by index, so the trace is
// bit-identical regardless of thread count.
PulseTrace sweep(const DeviceParams& params, const SweepSpec& spec);

} // namespace qdm
