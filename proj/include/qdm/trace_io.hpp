#pragma once

#include <string>
#include <vector>

#include "qdm/protocol.hpp"

namespace qdm {

// Writes `content` to `path` atomically (temp file + rename).
void atomic_write(const std::string& path, const std::string& content);

// Trace CSV: `# key = value` parameter snapshot, then a header row
// `delta_t_ps,i_sub_pA` and one row per grid point with >= 9 significant
// digits. with_derivative appends a central-difference `didt_pA_per_ps`
// column.
std::string format_trace_csv(const PulseTrace& trace, bool with_derivative);
void write_trace_csv(const std::string& path, const PulseTrace& trace,
                     bool with_derivative = false);

// Reads a trace CSV written by write_trace_csv. Snapshot comment lines with
// known parameter keys repopulate params_snapshot; other comments are
// ignored. Throws std::runtime_error on malformed rows.
PulseTrace read_trace_csv(const std::string& path);

std::string format_double(double v); // fixed-point, 9 decimal places

} // namespace qdm
