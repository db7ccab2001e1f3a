#pragma once

#include "anisomhd/operators.hpp"
#include "anisomhd/transform.hpp"

#include <string>
#include <utility>
#include <vector>

namespace anisomhd {

enum class Integrator { ETDRK2, IFRK4 };

struct SolverConfig {
  int n1 = 48, n2 = 48, n3 = 48;
  double L = 1.0;
  PhysParams params;
  double dt = 1e-2;
  double T = 50.0;
  std::string dealias = "two_thirds";  // or "none"
  Integrator integrator = Integrator::ETDRK2;
  int output_cadence = 10;      // steps between diagnostic records
  int checkpoint_cadence = 0;   // steps between checkpoints, 0 = off
  std::string checkpoint_dir = ".";
  double blowup_factor = 10.0;
  double divergence_tol = 1e-12;
};

struct StepDiag {
  double t = 0;
  double energy = 0;  // (1/2) ||(u,b)||_{L2}^2
  double diss = 0;    // mu ||d1 u||^2 + eta ||grad_h b||^2, pointwise in t
  // Exact linear-flow dissipation integral over the step ending at t,
  // (1/2)(||v||^2 - ||K(dt) v||^2) from the previous state; zero at t = 0.
  double diss_interval_exact = 0;
};

struct OutputRecord {
  double t = 0;
  SeminormSet sem;
  double div_u = 0, div_b = 0;
  double lyap_ip_h2 = 0;  // (d2 u, b)_{H2}
  double lyap_ip_l2 = 0;  // (d2 grad_h u, grad_h b)_{L2}
};

struct Trajectory {
  std::vector<OutputRecord> records;
  std::vector<StepDiag> steps;
  FieldPair final_spectral;
  double initial_pair_h3 = 0;
  long n_steps = 0;
};

// Two-thirds rule: zero every mode with any |integer k_axis| > n_axis/3.
void apply_dealias_twothirds(VectorField& f);

// Divergence-form nonlinear terms of the coupled system, evaluated
// pseudo-spectrally on dealiased input:
//   N1_i = d_j (b_i b_j - u_i u_j)  (Leray-projected),
//   N2_i = d_j (u_i b_j - b_i u_j).
// Both are returned masked when mask_two_thirds is set. N2 is discretely
// divergence-free by antisymmetry without projection.
std::pair<VectorField, VectorField> nonlinear_terms(const FieldPair& spectral,
                                                    const FourierTransformer& ft,
                                                    bool mask_two_thirds = true);

// Integrates the initial pair (either representation) to T. Throws
// std::runtime_error on NaN/Inf (with the offending mode index), on the
// H^3 blow-up guard, or on invalid initial data.
Trajectory run_solver(const SolverConfig& cfg, const FieldPair& initial);

}  // namespace anisomhd
