#pragma once

#include "anisomhd/types.hpp"

#include <functional>
#include <string>

namespace anisomhd {

// Fill a physical-representation scalar field from a pointwise function of
// the box coordinates x_l = 2*pi*L*i_l/n_l.
ScalarField sample_physical(const SpectralGrid& g,
                            const std::function<double(double, double, double)>& f);

// Spectral derivative of the given order along axis in {1,2,3}; odd orders
// zero the Nyquist plane of that axis so real fields stay real.
ScalarField derivative(const ScalarField& f, int axis, int order = 1);
VectorField derivative(const VectorField& f, int axis, int order = 1);

// Leray-Helmholtz projection onto divergence-free fields; the xi = 0 mode
// passes through unchanged.
VectorField leray_project(const VectorField& f);

double l2_norm_sq(const ScalarField& f);
double l2_norm_sq(const VectorField& f);
double l2_norm_sq(const FieldPair& p);
double l2_norm(const ScalarField& f);
double l2_norm(const VectorField& f);
double l2_norm(const FieldPair& p);

enum class SobolevVariant { Full, Homogeneous };

// H^s norm, s in {0,1,2,3}; the pair norm stacks u and b.
double sobolev_norm(const FieldPair& p, int s, SobolevVariant variant = SobolevVariant::Full);
double sobolev_norm(const VectorField& f, int s, SobolevVariant variant = SobolevVariant::Full);
double sobolev_norm(const ScalarField& f, int s, SobolevVariant variant = SobolevVariant::Full);

// L^2_{x3} L^1_{x1 x2} nested norm on physical fields; vector and pair
// arguments take the pointwise Euclidean magnitude of the stacked components.
double mixed_norm_L2L1(const ScalarField& f);
double mixed_norm_L2L1(const VectorField& f);
double mixed_norm_L2L1(const FieldPair& p);

// Max over modes of |xi . vhat| and of the coefficient magnitude.
struct DivergenceStats {
  double max_div = 0.0;
  double max_amp = 0.0;
};
DivergenceStats divergence_stats(const VectorField& f);

// Throws std::runtime_error when the divergence-free or zero-mean invariants
// are violated beyond tol * max coefficient amplitude.
void check_field_pair(const FieldPair& p, double tol = 1e-12);

// Every weighted L^2 quantity (squared) used by the energy functionals,
// computed in one pass over the spectral coefficients.
struct SeminormSet {
  double pair_h3_sq = 0, d1u_h3_sq = 0, d2u_h2_sq = 0, gradh_b_h3_sq = 0;
  double gradh_pair_h1_sq = 0, d1_gradh_u_h1_sq = 0, d2_gradh_u_l2_sq = 0, gradh2_b_h1_sq = 0;
  double pair_l2_sq = 0, gradh_pair_l2_sq = 0, d3_pair_l2_sq = 0;
  double d1d1_pair_l2_sq = 0, d1d2_pair_l2_sq = 0, d1d3_pair_l2_sq = 0;
  double d2d2_pair_l2_sq = 0, d2d3_pair_l2_sq = 0, d3d3_pair_l2_sq = 0;
  double d1u_l2_sq = 0, gradh_b_l2_sq = 0;
  double u_h3_sq = 0, b_h3_sq = 0;
};
SeminormSet anisotropic_seminorms(const FieldPair& p);

}  // namespace anisomhd
