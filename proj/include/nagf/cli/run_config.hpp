#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nagf::cli {

// Resolved settings for one run. Angles are in units of π.
struct RunConfig {
  std::string command;

  // common
  double omega0_khz = 50.0;   // Ω0 / 2π
  double period_us = 0.0;     // ≤ 0: per-command default
  int steps = 0;              // per loop; ≤ 0: default from Ω0T
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
  std::string config_file;

  // loop geometry
  double theta0 = 0.5;
  double delta_varphi = 0.1;
  double delta_theta = 0.05;
  double phi = 0.125;
  double varphi0 = 0.0;
  double ramp = 0.2;
  int loops = 5;
  int initial = 4;
  int samples = 100;

  // sweeps: "start:stop:count" or "a,b,c"
  std::string theta_grid = "0:1:9";
  std::string phi_grid = "0:0.5:5";
  std::string varphi_grid = "0:1.75:8";
  std::string theta0_grid = "0.1:0.85:16";
  std::string gamma_prime_grid = "0:1:11";
  std::string loop_counts = "1,3,5";
  std::string r_grid = "0.9:1.1:9";
  std::string r_prime_grid = "0.9:1.1:9";
  std::string eta_grid = "0:0.2:5";
  std::string averages = "1,2,5,10,20,40";

  // composite loops
  double theta1 = 0.4;
  double theta2 = 0.415;
  double gamma = 0.0625;

  // minimal area
  double threshold = 0.011;
  double max_delta_varphi = 0.5;

  // noise and statistics
  int trials = 30;
  int shots = 1000;            // per basis for tomo; 0 = exact expectations
  int shots_per_average = 0;   // errorbars; 0 = calibrate to target_std
  bool superposition = false;
  double target_std = 0.011;
  int repetitions = 2000;
};

std::vector<double> parse_grid(const std::string& spec);
std::vector<int> parse_int_list(const std::string& spec);

// key=value pairs from a config file. Plain files use every non-comment line;
// files carrying "#!" lines (earlier outputs) use only those; JSON outputs use
// their "config" object.
std::vector<std::pair<std::string, std::string>> load_config_file(const std::string& path);

}  // namespace nagf::cli
