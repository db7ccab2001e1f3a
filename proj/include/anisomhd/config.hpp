#pragma once

#include "anisomhd/bound_audit.hpp"
#include "anisomhd/json_io.hpp"
#include "anisomhd/propagator.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace anisomhd {

// Full run configuration. Every tool reads the same document; unknown keys are
// rejected with their dotted path, and the effective (merged) configuration is
// echoed into each tool's meta file so outputs are attributable.
struct RunConfig {
  int format_version = 1;
  std::uint64_t seed = 1;
  int threads = 1;  // FFT threads; 0 = auto

  PhysParams physics;

  struct Grid {
    int n1 = 48, n2 = 48, n3 = 48;
    double L = 1.0;
  } grid;

  struct Quadrature {
    double extent = 8.0;
    int m = 1024;
  } quadrature;

  InitialDataSpec initial_data;

  struct Solver {
    double dt = 1e-2, T = 50.0;
    std::string integrator = "etdrk2";   // etdrk2 | ifrk4
    std::string dealias = "two_thirds";  // two_thirds | none
    int output_cadence = 10, checkpoint_cadence = 0;
    double blowup_factor = 10.0, divergence_tol = 1e-12;
    double band = 4.0;    // spectral band of the random initial pair
    double delta = 1e-3;  // H^3 amplitude of the initial pair
  } solver;

  struct Energy {
    double epsilon = 1.0 / 36.0;
    double lyapunov_weight = 1e-2;
  } energy;

  struct Propagate {
    double t_min = 10.0, t_max = 1000.0;
    int n_times = 25;
  } propagate;

  struct Fit {
    double t_lo = 10.0, t_hi = 1000.0;
  } fit;

  AuditOptions audit;  // audit.seed follows the top-level seed

  struct Kernels {
    int extent = 4;  // tabulate xi_h in [-extent, extent]^2
    std::vector<double> times{0.5, 1.0, 5.0};
  } kernels;

  struct Inequality {
    int n_samples = 1000;
    int grid_n = 32;
    double band = 8.0;
  } inequality;

  struct HeatCase {
    double alpha = 0, beta = 2, p = 2, q = 2;
    int d = 2;
    std::string profile = "lowpass";
    double param = 5e-3;
    double tol = 0.03;
  };
  struct Heat {
    std::vector<HeatCase> cases;  // default: the three reference cases
  } heat;

  struct ConvCase {
    double s1 = 0, s2 = 0;
  };
  struct Convolution {
    std::vector<ConvCase> cases;  // default: one case per branch
    double t_min = 10.0, t_max = 1000.0;
    int n_times = 25;
  } convolution;
};

RunConfig default_config();

// Full effective document (all keys present, defaults filled in).
Json config_to_json(const RunConfig& cfg);

// Parse with recursive unknown-key rejection; missing keys fall back to
// defaults. Throws std::invalid_argument naming the offending dotted path.
RunConfig config_from_json(const Json& j);

// "a.b.c=value" applied onto a config document; the value is parsed as JSON
// when possible and treated as a string otherwise.
void apply_override(Json& doc, const std::string& assignment);

// defaults <- optional file <- --set overrides, then validated.
RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides);

}  // namespace anisomhd
