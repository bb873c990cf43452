#include "qdm/params.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qdm/constants.hpp"

namespace qdm {

ValidationReport validate(const DeviceParams& p) {
  ValidationReport r;
  auto need = [&r](bool cond, const char* what) {
    if (!cond) r.violations.push_back(what);
  };
  need(p.delta_e > 0, "delta_e > 0");
  need(p.gamma_s >= 0, "gamma_s >= 0");
  need(p.gamma_as >= 0, "gamma_as >= 0");
  need(p.gamma_ph >= 0, "gamma_ph >= 0");
  need(p.gamma_phi0 >= 0, "gamma_phi0 >= 0");
  need(p.gamma_as >= p.gamma_s, "gamma_as >= gamma_s (AS decays faster)");
  need(p.dephasing_exponent >= 0, "dephasing_exponent >= 0");
  need(p.temperature >= 0, "temperature >= 0");
  need(p.eta_inject > 0 && p.eta_inject <= 1, "0 < eta_inject <= 1");
  need(p.tau_step > 0, "tau_step > 0");
  need(p.t_rep > 0, "t_rep > 0");
  need(p.k_max >= 1, "k_max >= 1");
  need(p.n_dot > 0, "n_dot > 0");
  need(p.a_dot > 0, "a_dot > 0");
  need(p.n_dot * p.a_dot * constants::um2_to_cm2 >= 1.0,
       "n_dot * a_dot >= 1 molecule in the active area");
  need(p.s_a > 0, "s_a > 0");
  need(p.leak_threshold >= 0, "leak_threshold >= 0");
  need(p.leak_slope >= 0, "leak_slope >= 0");
  need(p.lever_arm > 0, "lever_arm > 0");
  return r;
}

double dephasing_rate(const DeviceParams& params, double temperature) {
  if (temperature < 0)
    throw std::domain_error("dephasing_rate: temperature < 0");
  if (params.delta_e <= 0)
    throw std::domain_error("dephasing_rate: delta_e <= 0");
  if (temperature == 0.0 && params.dephasing_exponent > 0) return 0.0;
  const double x = constants::k_b * temperature / params.delta_e;
  return params.gamma_phi0 * std::pow(x, params.dephasing_exponent);
}

std::vector<double> sweep_grid(const SweepSpec& spec) {
  if (spec.dt_min < 0) throw std::invalid_argument("sweep: dt_min >= 0");
  if (spec.dt_max <= spec.dt_min)
    throw std::invalid_argument("sweep: dt_max > dt_min");
  if (spec.dt_step <= 0) throw std::invalid_argument("sweep: dt_step > 0");
  const double count = (spec.dt_max - spec.dt_min) / spec.dt_step;
  const double rounded = std::round(count);
  if (std::abs(count - rounded) > 1e-9 * std::max(1.0, count))
    throw std::invalid_argument("sweep: (dt_max - dt_min) / dt_step must be integral");
  const int n = static_cast<int>(rounded);
  std::vector<double> grid(n + 1);
  for (int i = 0; i <= n; ++i) grid[i] = spec.dt_min + i * spec.dt_step;
  return grid;
}

namespace {

bool parse_double(const std::string& s, double& out) {
  try {
    size_t pos = 0;
    out = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    return pos == s.size();
  } catch (...) {
    return false;
  }
}

bool parse_bool(const std::string& s, bool& out) {
  if (s == "true" || s == "1") { out = true; return true; }
  if (s == "false" || s == "0") { out = false; return true; }
  return false;
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

} // namespace

bool apply_param(DeviceParams& p, const std::string& key,
                 const std::string& value, std::string& error) {
  double d = 0.0;
  auto set_d = [&](double& field) {
    if (!parse_double(value, d)) {
      error = "invalid numeric value '" + value + "' for key '" + key + "'";
      return false;
    }
    field = d;
    return true;
  };
  if (key == "delta_e") return set_d(p.delta_e);
  if (key == "gamma_s") return set_d(p.gamma_s);
  if (key == "gamma_as") return set_d(p.gamma_as);
  if (key == "gamma_ph") return set_d(p.gamma_ph);
  if (key == "gamma_phi0") return set_d(p.gamma_phi0);
  if (key == "dephasing_exponent") return set_d(p.dephasing_exponent);
  if (key == "temperature") return set_d(p.temperature);
  if (key == "n_dot") return set_d(p.n_dot);
  if (key == "a_dot") return set_d(p.a_dot);
  if (key == "s_a") return set_d(p.s_a);
  if (key == "t_rep") return set_d(p.t_rep);
  if (key == "tau_step") return set_d(p.tau_step);
  if (key == "eta_inject") return set_d(p.eta_inject);
  if (key == "k_max") {
    if (!parse_double(value, d) || d != std::floor(d)) {
      error = "k_max expects an integer, got '" + value + "'";
      return false;
    }
    p.k_max = static_cast<int>(d);
    return true;
  }
  if (key == "leak_threshold") return set_d(p.leak_threshold);
  if (key == "leak_slope") return set_d(p.leak_slope);
  if (key == "lever_arm") return set_d(p.lever_arm);
  if (key == "g_factor") return set_d(p.g_factor);
  if (key == "e_charging") return set_d(p.e_charging);
  if (key == "suppress_channel_2_oscillation") {
    bool b = false;
    if (!parse_bool(value, b)) {
      error = "expected true/false/0/1 for key '" + key + "'";
      return false;
    }
    p.suppress_channel_2_oscillation = b;
    return true;
  }
  error = "unknown key '" + key + "'";
  return false;
}

bool parse_param_line(DeviceParams& params, const std::string& raw, std::string& error) {
  std::string line = raw;
  const size_t hash = line.find('#');
  if (hash != std::string::npos) line.erase(hash);
  line = trim(line);
  if (line.empty()) return true;
  const size_t eq = line.find('=');
  if (eq == std::string::npos) {
    error = "expected 'key = value', got '" + line + "'";
    return false;
  }
  const std::string key = trim(line.substr(0, eq));
  const std::string value = trim(line.substr(eq + 1));
  if (key.empty() || value.empty()) {
    error = "expected 'key = value', got '" + line + "'";
    return false;
  }
  return apply_param(params, key, value, error);
}

bool load_param_file(const std::string& path, DeviceParams& params,
                     ParamParseError& err) {
  std::ifstream in(path);
  if (!in) {
    err.line = 0;
    err.message = "cannot open parameter file '" + path + "'";
    return false;
  }
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string error;
    if (!parse_param_line(params, line, error)) {
      err.line = lineno;
      err.message = error;
      return false;
    }
  }
  return true;
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace

std::vector<std::string> param_lines(const DeviceParams& p) {
  std::vector<std::string> out;
  auto add = [&out](const char* k, const std::string& v) {
    out.push_back(std::string(k) + " = " + v);
  };
  add("delta_e", num(p.delta_e));
  add("gamma_s", num(p.gamma_s));
  add("gamma_as", num(p.gamma_as));
  add("gamma_ph", num(p.gamma_ph));
  add("gamma_phi0", num(p.gamma_phi0));
  add("dephasing_exponent", num(p.dephasing_exponent));
  add("temperature", num(p.temperature));
  add("n_dot", num(p.n_dot));
  add("a_dot", num(p.a_dot));
  add("s_a", num(p.s_a));
  add("t_rep", num(p.t_rep));
  add("tau_step", num(p.tau_step));
  add("eta_inject", num(p.eta_inject));
  add("k_max", std::to_string(p.k_max));
  add("leak_threshold", num(p.leak_threshold));
  add("leak_slope", num(p.leak_slope));
  add("lever_arm", num(p.lever_arm));
  add("g_factor", num(p.g_factor));
  add("e_charging", num(p.e_charging));
  add("suppress_channel_2_oscillation",
      p.suppress_channel_2_oscillation ? "true" : "false");
  return out;
}

} // namespace qdm
