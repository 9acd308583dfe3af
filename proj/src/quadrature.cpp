#include "anidecay/quadrature.hpp"

#include "anidecay/errors.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <string>

namespace anidecay {

namespace {

struct GslWorkspace {
  gsl_integration_workspace* w;
  explicit GslWorkspace(std::size_t n) : w(gsl_integration_workspace_alloc(n)) {}
  ~GslWorkspace() { gsl_integration_workspace_free(w); }
  GslWorkspace(const GslWorkspace&) = delete;
  GslWorkspace& operator=(const GslWorkspace&) = delete;
};

struct Fn {
  const std::function<double(double)>* f;
};
double fn_tramp(double x, void* params) { return (*static_cast<Fn*>(params)->f)(x); }

struct GslQuiet {
  gsl_error_handler_t* old;
  GslQuiet() : old(gsl_set_error_handler_off()) {}
  ~GslQuiet() { gsl_set_error_handler(old); }
};

double integrate_finite(const std::function<double(double)>& f, double a, double b, double tol,
                        GslWorkspace& ws) {
  Fn p{&f};
  gsl_function F{fn_tramp, &p};
  double result = 0.0, abserr = 0.0;
  const int status = gsl_integration_qag(&F, a, b, 0.0, tol, 4096, GSL_INTEG_GAUSS31, ws.w,
                                         &result, &abserr);
  if (status != GSL_SUCCESS && status != GSL_EROUND)
    throw Error("quadrature: gsl_integration_qag failed with status " + std::to_string(status));
  return result;
}

double integrate_upper_infinite(const std::function<double(double)>& f, double a, double tol,
                                GslWorkspace& ws) {
  Fn p{&f};
  gsl_function F{fn_tramp, &p};
  double result = 0.0, abserr = 0.0;
  const int status = gsl_integration_qagiu(&F, a, 0.0, tol, 4096, ws.w, &result, &abserr);
  if (status != GSL_SUCCESS && status != GSL_EROUND)
    throw Error("quadrature: gsl_integration_qagiu failed with status " + std::to_string(status));
  return result;
}

struct ProfileExponents {
  double ar; // r exponent of |v0^3|^2
  double bz; // z exponent of |v0^3|^2
};

ProfileExponents v3_exponents(const QuadratureProfile& p) {
  if (p.div_free) return {2.0 * p.a_h + 2.0, 2.0 * p.b_v - 2.0};
  return {2.0 * p.a_h, 2.0 * p.b_v};
}

} // namespace

double profile_v3_sq(const QuadratureProfile& p, double r, double z) {
  const ProfileExponents e = v3_exponents(p);
  if (r == 0.0 && e.ar < 0.0) return 0.0;
  if (z == 0.0 && e.bz < 0.0) return 0.0;
  const double pr = e.ar == 0.0 ? 1.0 : std::pow(r, e.ar);
  const double pz = e.bz == 0.0 ? 1.0 : std::pow(z, e.bz);
  return pr * pz * std::exp(-r * r - z * z);
}

namespace {
// L2 integrability of v0^3 near the singular sets: r^{ar} r dr and z^{bz} dz
void check_profile_integrable(const QuadratureProfile& p) {
  const ProfileExponents e = v3_exponents(p);
  if (!(e.ar > -2.0))
    throw ParameterError("quadrature profile: |v0^3|^2 ~ r^{" + std::to_string(e.ar) +
                         "} violates r-integrability (needs exponent > -2)");
  if (!(e.bz > -1.0))
    throw ParameterError("quadrature profile: |v0^3|^2 ~ z^{" + std::to_string(e.bz) +
                         "} violates z-integrability (needs exponent > -1)");
}
} // namespace

void check_profile_membership(const QuadratureProfile& p, double s) {
  const ProfileExponents e = v3_exponents(p);
  check_profile_integrable(p);
  if (p.div_free) {
    // membership v0 in H^{-s,-s/2-1/4}: both the horizontal part m and the
    // constructed v0^3 must carry the weight r^{-2s} z^{-(s+1/2)}
    const double mh = 2.0 * p.a_h - 2.0 * s;
    if (!(mh > -2.0))
      throw ParameterError("quadrature profile: horizontal part fails H^{-s,.}: "
                           "2 a_h - 2 s = " + std::to_string(mh) + " must be > -2");
    const double mv = 2.0 * p.b_v - (s + 0.5);
    if (!(mv > -1.0))
      throw ParameterError("quadrature profile: horizontal part fails H^{.,-s/2-1/4}: "
                           "2 b_v - s - 1/2 = " + std::to_string(mv) + " must be > -1");
    const double v3h = e.ar - 2.0 * s;
    if (!(v3h > -2.0))
      throw ParameterError("quadrature profile: v0^3 fails H^{-s,.}: exponent " +
                           std::to_string(v3h) + " must be > -2");
    const double v3v = e.bz - (s + 0.5);
    if (!(v3v > -1.0))
      throw ParameterError("quadrature profile: v0^3 fails H^{.,-s/2-1/4}: exponent " +
                           std::to_string(v3v) + " must be > -1");
  }
}

DecaySeries linear_decay_quadrature(const QuadratureProfile& p, const std::vector<double>& times,
                                    double rel_tol) {
  check_profile_integrable(p);

  GslQuiet quiet;
  const double inner_tol = rel_tol * 0.01;
  const double outer_tol = rel_tol * 0.1;

  DecaySeries out;
  out.t = times;
  out.total_sq.resize(times.size());
  out.a1_sq.resize(times.size());
  out.a2_sq.resize(times.size());

  GslWorkspace ws_outer(4096), ws_inner(4096);

  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    // region |xi_h| <= |xi_3| : inner r on [0, z]
    const std::function<double(double)> outer1 = [&](double z) {
      const std::function<double(double)> inner = [&](double r) {
        return r * std::exp(-2.0 * t * r * r) * profile_v3_sq(p, r, z);
      };
      if (z == 0.0) return 0.0;
      return integrate_finite(inner, 0.0, z, inner_tol, ws_inner);
    };
    // region |xi_h| >= |xi_3| : inner r on [z, inf)
    const std::function<double(double)> outer2 = [&](double z) {
      const std::function<double(double)> inner = [&](double r) {
        return r * std::exp(-2.0 * t * r * r) * profile_v3_sq(p, r, z);
      };
      return integrate_upper_infinite(inner, z, inner_tol, ws_inner);
    };
    // dxi = 2 pi r dr (horizontal polar) x 2 dz (z-parity)
    const double c = 4.0 * std::numbers::pi;
    out.a1_sq[i] = c * integrate_upper_infinite(outer1, 0.0, outer_tol, ws_outer);
    out.a2_sq[i] = c * integrate_upper_infinite(outer2, 0.0, outer_tol, ws_outer);
    out.total_sq[i] = out.a1_sq[i] + out.a2_sq[i];
  }
  return out;
}

double linear_decay_value(const QuadratureProfile& p, double t, double rel_tol) {
  return linear_decay_quadrature(p, {t}, rel_tol).total_sq.front();
}

} // namespace anidecay
