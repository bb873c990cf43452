// qdm: command line front end for the two-dot charge qubit toolkit.
// Exit codes: 0 ok, 2 config error, 3 validation error, 4 runtime error.
#include "CLI11.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdm/accounting.hpp"
#include "qdm/analysis.hpp"
#include "qdm/dynamics.hpp"
#include "qdm/fitting.hpp"
#include "qdm/params.hpp"
#include "qdm/protocol.hpp"
#include "qdm/spectra.hpp"
#include "qdm/trace_io.hpp"

namespace fs = std::filesystem;

namespace {

// flag or file syntax problem; reported with exit code 2
struct ConfigError {
  std::string message;
};

struct CommonOpts {
  std::string params_file;
  std::string out_dir = ".";
  unsigned seed = 42;
  std::vector<std::string> sets;
  double temperature = 0.0;
  bool temperature_set = false;
};

struct SweepOpts {
  std::string dt_spec = "0:450:1";
  bool derivative = false;
  bool gnuplot = false;
  double trajectory_dt = 0.0;
  bool trajectory_set = false;
};

struct AnalyzeOpts {
  std::string input;
  std::vector<std::string> windows;
  double threshold = 4.0;
  bool spectra = false;
};

struct FitOpts {
  std::string input;
  std::string model = "cosine";
  std::string free_list;
  std::vector<std::string> bounds;
  std::string window_spec;
};

struct AccountOpts {
  double isub = 0.0;
  double dt = 0.0;
  double tau = 1e6;
  bool csv = false;
};

struct SpectrumOpts {
  double b_field = 0.0;
  double g_factor = 0.0;
  bool g_set = false;
  double width = 0.0;
  bool width_set = false;
  double v_min = -0.1;
  double v_max = 0.15;
  int v_points = 2001;
  bool gnuplot = false;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string num_label(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string trimmed(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<double> split_numbers(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ':')) {
    cell = trimmed(cell);
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(cell, &used);
    } catch (...) {
      used = std::string::npos;
    }
    if (used != cell.size() || cell.empty())
      throw ConfigError{what + ": bad number '" + cell + "' in '" + text + "'"};
    out.push_back(v);
  }
  return out;
}

qdm::SweepSpec parse_dt_spec(const std::string& text) {
  const std::vector<double> parts = split_numbers(text, "--dt");
  if (parts.size() != 3)
    throw ConfigError{"--dt expects lo:hi:step, got '" + text + "'"};
  return {parts[0], parts[1], parts[2]};
}

qdm::Window parse_window(const std::string& text) {
  const std::vector<double> parts = split_numbers(text, "--window");
  if (parts.size() != 2)
    throw ConfigError{"--window expects lo:hi, got '" + text + "'"};
  return {parts[0], parts[1]};
}

std::pair<std::string, std::pair<double, double>> parse_bound(const std::string& text) {
  const size_t eq = text.find('=');
  if (eq == std::string::npos)
    throw ConfigError{"--bounds expects name=lo:hi, got '" + text + "'"};
  const std::string name = trimmed(text.substr(0, eq));
  const std::vector<double> parts = split_numbers(text.substr(eq + 1), "--bounds");
  if (name.empty() || parts.size() != 2)
    throw ConfigError{"--bounds expects name=lo:hi, got '" + text + "'"};
  return {name, {parts[0], parts[1]}};
}

qdm::DeviceParams load_params(const CommonOpts& c) {
  qdm::DeviceParams params;
  if (!c.params_file.empty()) {
    qdm::ParamParseError err;
    if (!qdm::load_param_file(c.params_file, params, err))
      throw ConfigError{c.params_file + ":" + std::to_string(err.line) + ": " +
                        err.message};
  }
  for (const std::string& kv : c.sets) {
    std::string err;
    if (!qdm::parse_param_line(params, kv, err))
      throw ConfigError{"--set " + kv + ": " + err};
  }
  if (c.temperature_set) params.temperature = c.temperature;
  return params;
}

bool report_invalid(const qdm::DeviceParams& params) {
  const qdm::ValidationReport rep = qdm::validate(params);
  for (const std::string& v : rep.violations)
    std::cerr << "invalid parameters: " << v << "\n";
  return !rep.ok();
}

fs::path ensure_out_dir(const CommonOpts& c) {
  fs::path dir(c.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir))
    throw std::invalid_argument("output directory '" + c.out_dir + "' is not usable");
  return dir;
}

void write_gnuplot(const fs::path& csv,
                   const std::vector<std::pair<int, std::string>>& columns,
                   const std::string& xlabel, const std::string& ylabel) {
  std::ostringstream gp;
  gp << "set datafile separator ','\n";
  gp << "set xlabel '" << xlabel << "'\n";
  gp << "set ylabel '" << ylabel << "'\n";
  gp << "plot ";
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i) gp << ", \\\n     ";
    gp << "'" << csv.filename().string() << "' skip 1 using 1:" << columns[i].first
       << " with lines title '" << columns[i].second << "'";
  }
  gp << "\n";
  qdm::atomic_write(csv.string() + ".gp", gp.str());
}

std::string format_windows_csv(const std::vector<qdm::WindowResult>& results) {
  std::ostringstream out;
  out << "window_lo,window_hi,period_ps,energy_meV,significance,ok\n";
  for (const qdm::WindowResult& r : results) {
    out << qdm::format_double(r.window.dt_lo) << ','
        << qdm::format_double(r.window.dt_hi) << ',';
    if (r.estimate.ok)
      out << qdm::format_double(r.estimate.period) << ','
          << qdm::format_double(r.estimate.energy);
    else
      out << ',';
    out << ',';
    if (r.error.empty()) out << qdm::format_double(r.estimate.significance);
    out << ',' << (r.estimate.ok ? "true" : "false") << "\n";
  }
  return out.str();
}

std::string format_spectrum_csv(const qdm::Spectrum& s) {
  std::ostringstream out;
  out << "period_ps,magnitude\n";
  for (size_t i = 0; i < s.periods.size(); ++i)
    out << qdm::format_double(s.periods[i]) << ','
        << qdm::format_double(s.magnitudes[i]) << "\n";
  return out.str();
}

double trace_grid_step(const qdm::PulseTrace& trace) {
  return trace.dt_ps.size() > 1 ? trace.dt_ps[1] - trace.dt_ps[0] : 1.0;
}

int run_sweep(const CommonOpts& common, const SweepOpts& o) {
  const qdm::DeviceParams params = load_params(common);
  if (report_invalid(params)) return 3;
  const fs::path dir = ensure_out_dir(common);
  const qdm::SweepSpec spec = parse_dt_spec(o.dt_spec);
  const qdm::PulseTrace trace = qdm::sweep(params, spec);
  const fs::path out = dir / "trace.csv";
  qdm::write_trace_csv(out.string(), trace, o.derivative);
  if (o.gnuplot) {
    std::vector<std::pair<int, std::string>> cols = {{2, "i_sub [pA]"}};
    if (o.derivative) cols.push_back({3, "di_sub/d(dt) [pA/ps]"});
    write_gnuplot(out, cols, "pulse width [ps]", "current");
  }
  if (o.trajectory_set) {
    qdm::EvolutionSpec espec;
    espec.delta_e = params.delta_e;
    espec.gamma_phi = qdm::dephasing_rate(params, params.temperature);
    const qdm::Trajectory traj = qdm::evolve_trajectory(espec, o.trajectory_dt);
    std::ostringstream body;
    body << "t_ps,p_s,p_as,re_coh,im_coh\n";
    for (size_t i = 0; i < traj.times.size(); ++i) {
      const qdm::Mat2& rho = traj.states[i].rho;
      body << qdm::format_double(traj.times[i]) << ','
           << qdm::format_double(rho[0][0].real()) << ','
           << qdm::format_double(rho[1][1].real()) << ','
           << qdm::format_double(rho[0][1].real()) << ','
           << qdm::format_double(rho[0][1].imag()) << "\n";
    }
    qdm::atomic_write((dir / "trajectory.csv").string(), body.str());
  }
  return 0;
}

int run_analyze(const CommonOpts& common, const AnalyzeOpts& o) {
  const fs::path dir = ensure_out_dir(common);
  const qdm::PulseTrace trace = qdm::read_trace_csv(o.input);
  std::vector<qdm::Window> windows;
  for (const std::string& spec : o.windows) windows.push_back(parse_window(spec));
  const std::vector<qdm::WindowResult> results =
      qdm::analyze_windows(trace, windows, o.threshold);
  const std::string csv = format_windows_csv(results);
  qdm::atomic_write((dir / "windows.csv").string(), csv);
  std::cout << csv;
  for (const qdm::WindowResult& r : results)
    if (!r.error.empty())
      std::cerr << "window " << num_label(r.window.dt_lo) << ":"
                << num_label(r.window.dt_hi) << ": " << r.error << "\n";
  if (o.spectra) {
    const double step = trace_grid_step(trace);
    for (const qdm::Window& w : windows) {
      try {
        const qdm::Spectrum s = qdm::periodogram(qdm::detrend(trace, w), step);
        const std::string name = "spectrum_" + num_label(w.dt_lo) + "_" +
                                 num_label(w.dt_hi) + ".csv";
        qdm::atomic_write((dir / name).string(), format_spectrum_csv(s));
      } catch (const std::exception&) {
        // the window table already carries the error
      }
    }
  }
  return 0;
}

int run_fit(const CommonOpts& common, const FitOpts& o) {
  const fs::path dir = ensure_out_dir(common);
  const qdm::PulseTrace trace = qdm::read_trace_csv(o.input);
  std::ostringstream out;
  if (o.model == "cosine") {
    const double step = trace_grid_step(trace);
    qdm::Window w{trace.dt_ps.front() - step, trace.dt_ps.back() + step};
    if (!o.window_spec.empty()) w = parse_window(o.window_spec);
    const std::vector<double> series = qdm::detrend(trace, w);
    const qdm::FitResult fr = qdm::fit_damped_cosine(series, step);
    out << "amplitude = " << num(fr.model.amplitude) << "\n";
    out << "period = " << num(fr.model.period) << "\n";
    out << "phase = " << num(fr.model.phase) << "\n";
    out << "t2 = " << num(fr.model.t2) << "\n";
    out << "baseline = " << num(fr.model.baseline) << "\n";
    out << "residual_rms = " << num(fr.residual_rms) << "\n";
    out << "iterations = " << fr.iterations << "\n";
    out << "converged = " << (fr.converged ? "true" : "false") << "\n";

    std::ostringstream curve;
    curve << "t_ps,delta_i_pA,model_pA\n";
    for (size_t i = 0; i < series.size(); ++i) {
      const double t = static_cast<double>(i) * step;
      curve << qdm::format_double(t) << ',' << qdm::format_double(series[i])
            << ',' << qdm::format_double(qdm::damped_cosine_eval(fr.model, t))
            << "\n";
    }
    qdm::atomic_write((dir / "fit_curve.csv").string(), curve.str());
  } else {
    const qdm::DeviceParams init = load_params(common);
    if (report_invalid(init)) return 3;
    std::set<std::string> free;
    std::stringstream names(o.free_list);
    std::string name;
    while (std::getline(names, name, ',')) {
      name = trimmed(name);
      if (!name.empty()) free.insert(name);
    }
    std::map<std::string, std::pair<double, double>> bounds;
    for (const std::string& spec : o.bounds) bounds.insert(parse_bound(spec));
    const auto [fitted, rms] =
        qdm::fit_device_params(trace, free, bounds, init, common.seed);
    for (const std::string& line : qdm::param_lines(fitted)) out << line << "\n";
    out << "# residual_rms = " << num(rms) << "\n";
  }
  const std::string text = out.str();
  qdm::atomic_write((dir / "fit.params").string(), text);
  std::cout << text;
  return 0;
}

int run_account(const CommonOpts& common, const AccountOpts& o) {
  const qdm::DeviceParams params = load_params(common);
  if (report_invalid(params)) return 3;
  qdm::AccountingInputs in;
  in.i_sub = o.isub;
  in.dt = o.dt;
  in.t_rep = params.t_rep;
  in.tau_decay_min = o.tau;
  in.n_dot = params.n_dot;
  in.a_dot = params.a_dot;
  in.s_a = params.s_a;
  const double i_pulse = qdm::i_pulse_qd(in);
  const double electrons = qdm::electrons_per_pulse(i_pulse, o.dt);
  const long nearest = std::lround(o.dt / params.tau_step);
  const double fraction = nearest > 0 ? electrons / static_cast<double>(nearest)
                                      : electrons;
  char buf[256];
  if (o.csv) {
    std::printf("i_pulse_nA,electrons,nearest_integer,fraction_of_integer\n");
    std::snprintf(buf, sizeof buf, "%.9f,%.9f,%ld,%.9f\n", i_pulse * 1e-3,
                  electrons, nearest, fraction);
    std::fputs(buf, stdout);
  } else {
    std::printf("i_pulse_qd [nA]      %.3f\n", i_pulse * 1e-3);
    std::printf("electrons            %.2f\n", electrons);
    std::printf("nearest integer      %ld\n", nearest);
    std::printf("fraction of integer  %.2f\n", fraction);
  }
  return 0;
}

int run_spectrum(const CommonOpts& common, const SpectrumOpts& o) {
  const qdm::DeviceParams params = load_params(common);
  if (report_invalid(params)) return 3;
  const fs::path dir = ensure_out_dir(common);
  qdm::PeakSet peaks = qdm::default_peaks(params);
  if (o.width_set) peaks.width = o.width;
  const double g = o.g_set ? o.g_factor : params.g_factor;
  std::vector<double> grid(static_cast<size_t>(o.v_points));
  for (int i = 0; i < o.v_points; ++i)
    grid[static_cast<size_t>(i)] =
        o.v_min + (o.v_max - o.v_min) * i / (o.v_points - 1);
  const auto curve = qdm::didv_curve(peaks, o.b_field, g, grid);
  std::ostringstream out;
  out << "bias_V,didv_au\n";
  for (const auto& [v, y] : curve)
    out << qdm::format_double(v) << ',' << qdm::format_double(y) << "\n";
  const fs::path path = dir / "spectrum.csv";
  qdm::atomic_write(path.string(), out.str());
  if (o.gnuplot)
    write_gnuplot(path, {{2, "dI/dV [a.u.]"}}, "bias [V]", "conductance");
  return 0;
}

int run_reproduce(const CommonOpts& common) {
  const qdm::DeviceParams base = load_params(common);
  if (report_invalid(base)) return 3;
  const fs::path dir = ensure_out_dir(common);
  const qdm::SweepSpec spec{0.0, 450.0, 1.0};
  const qdm::PulseTrace trace_base = qdm::sweep(base, spec);
  qdm::DeviceParams hot = base;
  hot.temperature = 88.0;
  const qdm::PulseTrace trace_hot = qdm::sweep(hot, spec);
  qdm::write_trace_csv((dir / "trace_4k.csv").string(), trace_base, true);
  qdm::write_trace_csv((dir / "trace_88k.csv").string(), trace_hot, true);

  const std::vector<qdm::Window> windows = {
      {100.0, 150.0}, {290.0, 340.0}, {350.0, 400.0}, {400.0, 450.0}};
  const auto res_base = qdm::analyze_windows(trace_base, windows);
  const auto res_hot = qdm::analyze_windows(trace_hot, windows);
  qdm::atomic_write((dir / "windows_4k.csv").string(), format_windows_csv(res_base));
  qdm::atomic_write((dir / "windows_88k.csv").string(), format_windows_csv(res_hot));

  const auto dump_spectra = [&](const qdm::PulseTrace& trace, const std::string& tag) {
    for (const qdm::Window& w : windows) {
      const qdm::Spectrum s = qdm::periodogram(qdm::detrend(trace, w), 1.0);
      const std::string name = "spectrum_" + tag + "_" + num_label(w.dt_lo) +
                               "_" + num_label(w.dt_hi) + ".csv";
      qdm::atomic_write((dir / name).string(), format_spectrum_csv(s));
    }
  };
  dump_spectra(trace_base, "4k");
  dump_spectra(trace_hot, "88k");

  std::ostringstream sum;
  sum << "item,value,unit,ok\n";
  const auto window_rows = [&](const std::vector<qdm::WindowResult>& results,
                               const std::string& tag) {
    for (const qdm::WindowResult& r : results) {
      sum << "window_" << tag << "_" << num_label(r.window.dt_lo) << "_"
          << num_label(r.window.dt_hi) << ",";
      if (r.estimate.ok) sum << qdm::format_double(r.estimate.energy);
      sum << ",meV," << (r.estimate.ok ? "true" : "false") << "\n";
    }
  };
  window_rows(res_base, "4k");
  window_rows(res_hot, "88k");

  // plateau levels from trailing 10-sample means ending on each staircase edge
  for (int k = 1; k <= 3; ++k) {
    const double dt = 100.0 * k;
    size_t idx = trace_base.dt_ps.size();
    for (size_t i = 0; i < trace_base.dt_ps.size(); ++i)
      if (std::abs(trace_base.dt_ps[i] - dt) < 1e-9) idx = i;
    if (idx == trace_base.dt_ps.size() || idx < 9)
      throw std::runtime_error("staircase edge missing from the sweep grid");
    double level = 0.0;
    for (size_t i = idx - 9; i <= idx; ++i) level += trace_base.i_sub_pa[i];
    level /= 10.0;
    qdm::AccountingInputs in;
    in.i_sub = level;
    in.dt = dt;
    in.t_rep = base.t_rep;
    in.tau_decay_min = 1e6;
    in.n_dot = base.n_dot;
    in.a_dot = base.a_dot;
    in.s_a = base.s_a;
    const double electrons = qdm::electrons_per_pulse(qdm::i_pulse_qd(in), dt);
    sum << "staircase_" << k << "," << qdm::format_double(electrons) << ",e,\n";
  }

  const double i_dc = 2e5; // pA, DC operating point behind the decay bound
  sum << "per_molecule_current,"
      << qdm::format_double(qdm::per_molecule_current(i_dc, base.n_dot, base.a_dot))
      << ",pA,\n";
  sum << "tau_decay_min,"
      << qdm::format_double(qdm::tau_decay_min(i_dc, base.n_dot, base.a_dot))
      << ",ps,\n";
  qdm::atomic_write((dir / "summary.csv").string(), sum.str());
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"pulsed two-dot charge qubit simulator and analysis toolkit"};
  app.require_subcommand(1);

  CommonOpts common;
  app.add_option("--params", common.params_file,
                 "parameter file, one `key = value` per line")
      ->check(CLI::ExistingFile);
  app.add_option("--out", common.out_dir, "output directory (created if missing)")
      ->capture_default_str();
  app.add_option("--seed", common.seed, "seed for randomized fit restarts")
      ->capture_default_str();
  app.add_option("--set", common.sets,
                 "override one parameter, e.g. --set delta_e=1.2 (repeatable)");
  auto* temp_opt = app.add_option("--temperature", common.temperature,
                                  "shortcut for --set temperature=VALUE");

  SweepOpts so;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "simulate i_sub versus pulse width and write trace.csv");
  sweep->fallthrough();
  sweep->add_option("--dt", so.dt_spec, "pulse-width grid as lo:hi:step in ps")
      ->capture_default_str();
  sweep->add_flag("--derivative", so.derivative,
                  "append a central-difference didt_pA_per_ps column");
  sweep->add_flag("--gnuplot", so.gnuplot, "write a companion gnuplot script");
  auto* traj_opt = sweep->add_option(
      "--trajectory", so.trajectory_dt,
      "also dump the intra-pulse density matrix at this pulse width (ps)");

  AnalyzeOpts ao;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "detrend trace windows and detect the dominant period");
  analyze->fallthrough();
  analyze->add_option("input", ao.input, "trace CSV to analyze")
      ->required()
      ->check(CLI::ExistingFile);
  analyze->add_option("--window", ao.windows, "window as lo:hi in ps (repeatable)");
  analyze->add_option("--threshold", ao.threshold,
                      "peak-over-noise-floor ratio required for ok")
      ->capture_default_str();
  analyze->add_flag("--spectra", ao.spectra,
                    "write spectrum_<lo>_<hi>.csv for every window");

  FitOpts fo;
  CLI::App* fit = app.add_subcommand(
      "fit", "fit a damped cosine or recover device parameters from a trace");
  fit->fallthrough();
  fit->add_option("input", fo.input, "trace CSV")->required()->check(CLI::ExistingFile);
  fit->add_option("--model", fo.model, "cosine | device")
      ->check(CLI::IsMember({"cosine", "device"}))
      ->capture_default_str();
  fit->add_option("--free", fo.free_list,
                  "comma-separated free parameter names (device model)");
  fit->add_option("--bounds", fo.bounds,
                  "bounds for one free parameter as name=lo:hi (repeatable)");
  fit->add_option("--window", fo.window_spec,
                  "restrict the cosine fit to this window (lo:hi in ps)");

  AccountOpts co;
  CLI::App* account = app.add_subcommand(
      "account", "per-pulse charge arithmetic from a measured substrate current");
  account->fallthrough();
  account->add_option("--isub", co.isub, "substrate current in pA")->required();
  account->add_option("--dt", co.dt, "pulse width in ps")->required();
  account->add_option("--tau", co.tau, "decay-time lower bound in ps")
      ->capture_default_str();
  account->add_flag("--csv", co.csv, "machine-readable one-row CSV output");

  SpectrumOpts po;
  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "synthesize a dI/dV curve with optional Zeeman splitting");
  spectrum->fallthrough();
  spectrum->add_option("--b-field", po.b_field, "magnetic field in T")
      ->capture_default_str();
  auto* g_opt = spectrum->add_option("--g-factor", po.g_factor,
                                     "Zeeman g-factor (default: device parameter)");
  auto* w_opt = spectrum->add_option("--width", po.width,
                                     "Lorentzian half width in meV (default 0.15)");
  spectrum->add_option("--v-min", po.v_min, "bias grid start in V")
      ->capture_default_str();
  spectrum->add_option("--v-max", po.v_max, "bias grid end in V")
      ->capture_default_str();
  spectrum->add_option("--v-points", po.v_points, "bias grid point count")
      ->check(CLI::Range(2, 10000000))
      ->capture_default_str();
  spectrum->add_flag("--gnuplot", po.gnuplot, "write a companion gnuplot script");

  CLI::App* reproduce = app.add_subcommand(
      "reproduce-paper",
      "regenerate the reference dataset: both temperature sweeps, window "
      "analysis, spectra, charge accounting, summary.csv");
  reproduce->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  common.temperature_set = temp_opt->count() > 0;
  so.trajectory_set = traj_opt->count() > 0;
  po.g_set = g_opt->count() > 0;
  po.width_set = w_opt->count() > 0;

  try {
    if (*sweep) return run_sweep(common, so);
    if (*analyze) return run_analyze(common, ao);
    if (*fit) return run_fit(common, fo);
    if (*account) return run_account(common, co);
    if (*spectrum) return run_spectrum(common, po);
    if (*reproduce) return run_reproduce(common);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.message << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
