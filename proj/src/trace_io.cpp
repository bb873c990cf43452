#include "qdm/trace_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qdm {

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp + "'");
    out << content;
    if (!out) throw std::runtime_error("short write to '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path);
}

std::string format_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

std::string format_trace_csv(const PulseTrace& trace, bool with_derivative) {
  std::ostringstream out;
  for (const std::string& line : param_lines(trace.params_snapshot))
    out << "# " << line << "\n";
  out << "delta_t_ps,i_sub_pA";
  if (with_derivative) out << ",didt_pA_per_ps";
  out << "\n";
  const size_t n = trace.dt_ps.size();
  for (size_t i = 0; i < n; ++i) {
    out << format_double(trace.dt_ps[i]) << "," << format_double(trace.i_sub_pa[i]);
    if (with_derivative) {
      double d;
      const double step = n > 1 ? trace.dt_ps[1] - trace.dt_ps[0] : 1.0;
      if (i == 0)
        d = n > 1 ? (trace.i_sub_pa[1] - trace.i_sub_pa[0]) / step : 0.0;
      else if (i + 1 == n)
        d = (trace.i_sub_pa[i] - trace.i_sub_pa[i - 1]) / step;
      else
        d = (trace.i_sub_pa[i + 1] - trace.i_sub_pa[i - 1]) / (2.0 * step);
      out << "," << format_double(d);
    }
    out << "\n";
  }
  return out.str();
}

void write_trace_csv(const std::string& path, const PulseTrace& trace,
                     bool with_derivative) {
  atomic_write(path, format_trace_csv(trace, with_derivative));
}

PulseTrace read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace '" + path + "'");
  PulseTrace trace;
  std::string line;
  bool header_seen = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      // snapshot comments carry `key = value`; anything unknown is textual
      std::string err;
      parse_param_line(trace.params_snapshot, line.substr(1), err);
      continue;
    }
    if (!header_seen) {
      if (line.rfind("delta_t_ps,", 0) != 0)
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": expected trace header");
      header_seen = true;
      continue;
    }
    std::istringstream row(line);
    std::string cell;
    double values[2];
    for (int c = 0; c < 2; ++c) {
      if (!std::getline(row, cell, ','))
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": expected at least 2 columns");
      try {
        values[c] = std::stod(cell);
      } catch (...) {
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": bad number '" + cell + "'");
      }
    }
    trace.dt_ps.push_back(values[0]);
    trace.i_sub_pa.push_back(values[1]);
  }
  if (trace.dt_ps.empty())
    throw std::runtime_error(path + ": no data rows");
  return trace;
}

} // namespace qdm
