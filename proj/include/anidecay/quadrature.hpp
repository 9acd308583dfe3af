#pragma once

#include <vector>

namespace anidecay {

/// Analytic spectral profile for the linear-decay quadrature tier. Lives on
/// R^3, axisymmetric in xi_h; independent of any torus grid.
///
/// With m^2(r,z) = r^{2 a_h} z^{2 b_v} e^{-r^2 - z^2} (r = |xi_h|, z = |xi_3|):
///   div_free = false:  |v0^3|^2 = m^2                     (free third component)
///   div_free = true :  v0^h = (xi_h/|xi_h|) m, v0^3 = -|xi_h| m / xi_3,
///                      so |v0^3|^2 = r^{2 a_h + 2} z^{2 b_v - 2} e^{-r^2-z^2}.
struct QuadratureProfile {
  double a_h = 0.0;
  double b_v = 0.0;
  bool div_free = false;
};

/// |v0^3|^2 at (r, z).
double profile_v3_sq(const QuadratureProfile& p, double r, double z);

/// Throws ParameterError naming the violated exponent condition unless the
/// profile is integrable and (for div_free) lies in H^{-s, -s/2 - 1/4}.
void check_profile_membership(const QuadratureProfile& p, double s);

/// ||v3_L(t)||^2_{L2(R^3)} = int e^{-2 t |xi_h|^2} |v0^3|^2 dxi, split over
/// the regions |xi_h| <= |xi_3| (a1) and |xi_h| >= |xi_3| (a2).
struct DecaySeries {
  std::vector<double> t;
  std::vector<double> total_sq;
  std::vector<double> a1_sq;
  std::vector<double> a2_sq;
};

/// Adaptive tensor quadrature (nested Gauss-Kronrod) to relative rel_tol.
DecaySeries linear_decay_quadrature(const QuadratureProfile& p, const std::vector<double>& times,
                                    double rel_tol = 1e-8);

/// Single time evaluation (total only).
double linear_decay_value(const QuadratureProfile& p, double t, double rel_tol = 1e-8);

} // namespace anidecay
