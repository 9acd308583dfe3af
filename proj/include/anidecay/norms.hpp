#pragma once

#include "anidecay/field.hpp"
#include "anidecay/filter_bank.hpp"

namespace anidecay {

/// Norm value plus the L2 mass found on singular lattice planes and excluded
/// from the sum (k_h = 0 plane for s_h < 0, k_3 = 0 plane for s_v < 0).
struct NormValue {
  double value = 0.0;
  double excluded_mass = 0.0;
};

/// Anisotropic Sobolev norm: sqrt( volume * sum |k_h|^{2 s_h} |k_3|^{2 s_v}
/// |ahat|^2 ), the lattice analogue of the |xi_h|^{2s}|xi_3|^{2s'} weight.
/// (s_h, s_v) = (0, 0) reproduces the L2 norm exactly.
NormValue aniso_sobolev_norm(const SpectralScalarField& a, double s_h, double s_v);
NormValue aniso_sobolev_norm(const SpectralVectorField& v, double s_h, double s_v);

double l2_norm(const SpectralScalarField& a);
double l2_norm(const SpectralVectorField& v);

/// Energy (squared L2 mass) sitting on the undamped k_h = 0 plane.
double khzero_plane_energy(const SpectralVectorField& v);

/// Vertical Besov norm sum_l 2^{l/2} ||Delta_l^v a||_{L2} over the bank's
/// retained blocks, with the low block counted at index j_min. The bank must
/// be vertical.
double b0half_norm(const SpectralScalarField& a, const DyadicFilterBank& vbank);
double b0half_norm(const SpectralVectorField& v, const DyadicFilterBank& vbank);

/// Mixed Lebesgue norm L^p_h(L^q_v): inner q-norm along x3 per horizontal
/// point, outer p-norm over (x1,x2); p,q in {2,4,inf} (inf = grid max).
double mixed_lebesgue_norm(const RealField& a, double p_h, double q_v);

/// Lower end of the admissible s-interval ((1+3 s1)/(10 (s1-1)), 1).
double s_gate_lower(double s1);
/// Throws ParameterError (citing the interval) unless s1 > 2 and s is inside.
void check_parameter_gate(double s, double s1);

/// The data functionals of the decay theorem.
struct InitialDataReport {
  double s = 0.0, s1 = 0.0;
  double a_s = 0.0;            ///< ||v0||_{L2}^2 + ||v0||_{H^{-s,0}}^2
  double b_s = 0.0;            ///< ||v0^3||_{L2}^2 + ||v0||_{H^{-s,-s/2-1/4}}^2 + a_s^{3/2}
  double e0 = 0.0;             ///< ||d3 v0||_{H^{-1/2,0}}^2 + ||v0||_{H^{0,s1}}^2 (a_s b_s)^{(s1-1)/(3s1-2)}
  double c0_norm = 0.0;        ///< ||v0||_{B^{0,1/2}}
  double l2_sq = 0.0;
  double v3_l2_sq = 0.0;
  double hneg_s_sq = 0.0;      ///< ||v0||_{H^{-s,0}}^2
  double hneg_mixed_sq = 0.0;  ///< ||v0||_{H^{-s,-s/2-1/4}}^2
  double d3_hneg_half_sq = 0.0;///< ||d3 v0||_{H^{-1/2,0}}^2
  double h0s1_sq = 0.0;        ///< ||v0||_{H^{0,s1}}^2
  double excluded_mass = 0.0;  ///< total excluded singular-plane mass
};

/// Evaluates every functional; enforces the parameter gate and div-freeness.
InitialDataReport data_functionals(const SpectralVectorField& v0, double s, double s1);

} // namespace anidecay
