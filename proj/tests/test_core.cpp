#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "qdm/constants.hpp"
#include "qdm/params.hpp"

namespace qc = qdm::constants;

namespace {

// portable 53-bit uniform in [0, 1); mt19937's output sequence is pinned by
// the standard, so tests built on this draw identical numbers everywhere
double uniform01(std::mt19937& rng) {
  const std::uint64_t a = rng() >> 5, b = rng() >> 6;
  return (static_cast<double>(a) * 67108864.0 + static_cast<double>(b)) /
         9007199254740992.0;
}

std::string write_temp(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << content;
  return path.string();
}

} // namespace

TEST_CASE("constants are consistent") {
  CHECK(std::abs(qc::h - 2.0 * 3.14159265358979323846 * qc::hbar) / qc::h < 1e-9);
  CHECK(qc::hbar == 0.6582119569);
  CHECK(qc::h == 4.135667696);
  CHECK(qc::k_b == 0.0861733);
  CHECK(qc::mu_b == 0.0578838);
  CHECK(qc::e_charge == 1.602176634e5);
}

TEST_CASE("energy to period round trip is identity") {
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    const double energy = 0.1 + 5.0 * uniform01(rng);
    const double period = qc::h / energy;
    CHECK(std::abs(qc::h / period - energy) / energy < 1e-12);
  }
}

TEST_CASE("default parameters validate cleanly") {
  const qdm::DeviceParams params;
  const qdm::ValidationReport rep = qdm::validate(params);
  CHECK(rep.ok());
  CHECK(rep.violations.empty());
}

TEST_CASE("validation names each violated invariant") {
  qdm::DeviceParams params;
  params.gamma_s = 2e-6;
  params.gamma_as = 1e-6;
  auto rep = qdm::validate(params);
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].find("gamma_as") != std::string::npos);
  CHECK(rep.violations[0].find("gamma_s") != std::string::npos);

  params = qdm::DeviceParams{};
  params.delta_e = 0.0;
  rep = qdm::validate(params);
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].find("delta_e > 0") != std::string::npos);

  // report style: all problems listed at once
  params.eta_inject = 1.5;
  params.tau_step = 0.0;
  rep = qdm::validate(params);
  CHECK(rep.violations.size() == 3);

  params = qdm::DeviceParams{};
  params.n_dot = 1e3;
  params.a_dot = 1.0; // far below one molecule in the active area
  rep = qdm::validate(params);
  CHECK_FALSE(rep.ok());
}

TEST_CASE("dephasing rate follows the power law") {
  qdm::DeviceParams params; // gamma_phi0 = 0.01, exponent 2, delta_e = 1

  CHECK(qdm::dephasing_rate(params, 0.0) == 0.0);
  // k_B * 88 = 7.5832504 meV, squared and scaled by gamma_phi0
  CHECK(qdm::dephasing_rate(params, 88.0) ==
        doctest::Approx(0.5750568663).epsilon(1e-9));
  // k_B * 4 = 0.3446932 meV
  CHECK(qdm::dephasing_rate(params, 4.0) ==
        doctest::Approx(1.1881340213e-3).epsilon(1e-9));

  CHECK_THROWS_AS(qdm::dephasing_rate(params, -1.0), std::domain_error);
}

TEST_CASE("dephasing rate is monotone in temperature") {
  std::mt19937 rng(17);
  for (int i = 0; i < 100; ++i) {
    qdm::DeviceParams params;
    params.delta_e = 0.2 + 2.8 * uniform01(rng);
    params.dephasing_exponent = 3.0 * uniform01(rng);
    params.gamma_phi0 = 0.001 + 0.02 * uniform01(rng);
    double t1 = 100.0 * uniform01(rng);
    double t2 = 100.0 * uniform01(rng);
    if (t1 > t2) std::swap(t1, t2);
    CHECK(qdm::dephasing_rate(params, t2) >= qdm::dephasing_rate(params, t1));
  }
}

TEST_CASE("sweep grid expansion") {
  const std::vector<double> grid = qdm::sweep_grid({0.0, 450.0, 1.0});
  REQUIRE(grid.size() == 451);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == doctest::Approx(450.0).epsilon(1e-12));
  CHECK(grid[100] == doctest::Approx(100.0).epsilon(1e-12));

  CHECK(qdm::sweep_grid({100.0, 150.0, 0.5}).size() == 101);

  CHECK_THROWS_AS(qdm::sweep_grid({-1.0, 10.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(qdm::sweep_grid({10.0, 10.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(qdm::sweep_grid({0.0, 10.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(qdm::sweep_grid({0.0, 10.0, 3.0}), std::invalid_argument);
}

TEST_CASE("parameter file grammar") {
  const std::string path = write_temp(
      "qdm_core_params_ok.txt",
      "# device under test\n"
      "delta_e = 1.2\n"
      "\n"
      "temperature = 88   # hot run\n"
      "eta_inject=0.5\n"
      "suppress_channel_2_oscillation = true\n"
      "k_max = 2\n");
  qdm::DeviceParams params;
  qdm::ParamParseError err;
  REQUIRE(qdm::load_param_file(path, params, err));
  CHECK(params.delta_e == 1.2);
  CHECK(params.temperature == 88.0);
  CHECK(params.eta_inject == 0.5);
  CHECK(params.suppress_channel_2_oscillation);
  CHECK(params.k_max == 2);
  // untouched keys keep their defaults
  CHECK(params.t_rep == 10000.0);
}

TEST_CASE("parameter file errors carry the line number") {
  qdm::DeviceParams params;
  qdm::ParamParseError err;

  std::string path = write_temp("qdm_core_params_unknown.txt",
                                "delta_e = 1.0\nno_such_key = 3\n");
  CHECK_FALSE(qdm::load_param_file(path, params, err));
  CHECK(err.line == 2);
  CHECK(err.message.find("no_such_key") != std::string::npos);

  path = write_temp("qdm_core_params_badnum.txt", "gamma_s = fast\n");
  CHECK_FALSE(qdm::load_param_file(path, params, err));
  CHECK(err.line == 1);

  path = write_temp("qdm_core_params_noeq.txt", "# fine\njust words\n");
  CHECK_FALSE(qdm::load_param_file(path, params, err));
  CHECK(err.line == 2);

  CHECK_FALSE(qdm::load_param_file("/no/such/dir/params.txt", params, err));
}

TEST_CASE("apply_param rejects bad values") {
  qdm::DeviceParams params;
  std::string error;
  CHECK_FALSE(qdm::apply_param(params, "k_max", "2.5", error));
  CHECK_FALSE(qdm::apply_param(params, "delta_e", "", error));
  CHECK_FALSE(qdm::apply_param(params, "suppress_channel_2_oscillation", "maybe", error));
  CHECK(qdm::apply_param(params, "delta_e", "2.0e0", error));
  CHECK(params.delta_e == 2.0);
}

TEST_CASE("param_lines round trip exactly") {
  qdm::DeviceParams params;
  params.delta_e = 1.0 / 3.0;
  params.gamma_s = 6.75e-7;
  params.gamma_as = 1.0 / 7.0e5;
  params.temperature = 88.0;
  params.k_max = 2;
  params.suppress_channel_2_oscillation = true;

  qdm::DeviceParams copy;
  for (const std::string& line : qdm::param_lines(params)) {
    std::string error;
    REQUIRE_MESSAGE(qdm::parse_param_line(copy, line, error), error);
  }
  CHECK(copy.delta_e == params.delta_e);
  CHECK(copy.gamma_s == params.gamma_s);
  CHECK(copy.gamma_as == params.gamma_as);
  CHECK(copy.gamma_ph == params.gamma_ph);
  CHECK(copy.gamma_phi0 == params.gamma_phi0);
  CHECK(copy.dephasing_exponent == params.dephasing_exponent);
  CHECK(copy.temperature == params.temperature);
  CHECK(copy.n_dot == params.n_dot);
  CHECK(copy.a_dot == params.a_dot);
  CHECK(copy.s_a == params.s_a);
  CHECK(copy.t_rep == params.t_rep);
  CHECK(copy.tau_step == params.tau_step);
  CHECK(copy.eta_inject == params.eta_inject);
  CHECK(copy.k_max == params.k_max);
  CHECK(copy.leak_threshold == params.leak_threshold);
  CHECK(copy.leak_slope == params.leak_slope);
  CHECK(copy.lever_arm == params.lever_arm);
  CHECK(copy.g_factor == params.g_factor);
  CHECK(copy.e_charging == params.e_charging);
  CHECK(copy.suppress_channel_2_oscillation == params.suppress_channel_2_oscillation);
}

TEST_CASE("parse_param_line handles comments and blanks") {
  qdm::DeviceParams params;
  std::string error;
  CHECK(qdm::parse_param_line(params, "  # nothing here", error));
  CHECK(qdm::parse_param_line(params, "", error));
  CHECK(qdm::parse_param_line(params, "delta_e = 2.5 # inline note", error));
  CHECK(params.delta_e == 2.5);
  CHECK_FALSE(qdm::parse_param_line(params, "delta_e 2.5", error));
  CHECK_FALSE(error.empty());
}
