#pragma once
// Toroidal-poloidal and Moon-Spencer toroidal coordinates: transforms,
// double covering, metric data, and integration elements.
//
// Toroidal-poloidal (w, u, v):
//   x = (R + w cos u) cos v,  y = s_y (R + w cos u) sin v,  z = s_z w sin u
// w >= 0 is the distance from the focal ring of radius R, u the poloidal
// angle around the tube, v the toroidal (azimuthal) angle.
//
// Moon-Spencer (tau, theta, phi):
//   x = R sinh(tau) cos(phi) / (cosh(tau) - cos(theta)), etc.
// tau -> infinity is the focal ring, tau -> 0 the z-axis.

#include <cmath>

#include "torusqm/common.hpp"
#include "torusqm/errors.hpp"

namespace torusqm::coords {

struct TorusGeometry {
  double R = 1.0;    // focal-ring (major) radius
  int s_y = +1;      // sign convention for y
  int s_z = -1;      // sign convention for z
  double hbar = 1.0;
  double mass = 0.5;
};

inline void validate(const TorusGeometry& g) {
  if (!(g.R > 0.0)) throw ParameterError("TorusGeometry: R must be > 0");
  if (g.s_y * g.s_y != 1 || g.s_z * g.s_z != 1)
    throw ParameterError("TorusGeometry: signs must be +1 or -1");
  if (!(g.hbar > 0.0) || !(g.mass > 0.0))
    throw ParameterError("TorusGeometry: hbar and mass must be > 0");
}

struct ToroidalPoint {
  double w = 0.0;  // >= 0
  double u = 0.0;  // reduced to [0, 2pi) on construction
  double v = 0.0;  // kept unreduced: wavefunctions are 4pi-periodic in v

  ToroidalPoint() = default;
  ToroidalPoint(double w_, double u_, double v_)
      : w(w_), u(reduce_angle_2pi(u_)), v(v_) {
    if (!(w_ >= 0.0)) throw DomainError("ToroidalPoint: w must be >= 0");
  }
};

struct MoonSpencerPoint {
  double tau = 1.0;   // > 0
  double theta = 0.0;
  double phi = 0.0;   // kept unreduced

  MoonSpencerPoint() = default;
  MoonSpencerPoint(double tau_, double theta_, double phi_)
      : tau(tau_), theta(theta_), phi(phi_) {
    if (!(tau_ > 0.0)) throw DomainError("MoonSpencerPoint: tau must be > 0");
  }
};

struct CartesianPoint {
  double x = 0.0, y = 0.0, z = 0.0;
};

struct ScaleFactors {
  double h_w;     // 1
  double h_u;     // w
  double h_v;     // R + w cos u
  double sqrt_g;  // h_w h_u h_v
};

inline CartesianPoint to_cartesian(const TorusGeometry& g,
                                   const ToroidalPoint& p) {
  const double t = g.R + p.w * std::cos(p.u);
  return {t * std::cos(p.v), g.s_y * t * std::sin(p.v),
          g.s_z * p.w * std::sin(p.u)};
}

// The principal chart intends R + w cos u > 0 (w < R suffices); points
// beyond the axis on the inner side are representable but flagged here.
inline bool in_principal_chart(const TorusGeometry& g, const ToroidalPoint& p) {
  return g.R + p.w * std::cos(p.u) > 0.0;
}

// Principal-branch inverse: w measured from the focal ring, quadrant-correct
// two-argument arctangents. The z-axis (x = y = 0) is excised.
inline ToroidalPoint from_cartesian(const TorusGeometry& g,
                                    const CartesianPoint& c) {
  const double rho = std::hypot(c.x, c.y);
  if (rho == 0.0)
    throw DegenerateAxisError("from_cartesian: v undefined on the z-axis");
  const double w = std::hypot(rho - g.R, c.z);
  const double u = (w > 0.0) ? std::atan2(g.s_z * c.z, rho - g.R) : 0.0;
  const double v = std::atan2(g.s_y * c.y, c.x);
  return ToroidalPoint(w, u, v);
}

// Second representation of the same Cartesian point on the double cover of
// the torus: w~ is the law-of-cosines distance from the antipodal ring point
// and the poloidal angle is measured in the v+pi half-plane, where the ring
// offset enters with the opposite sign (R + w~ cos u~ = -(R + w cos u)).
// The map is an involution up to 2pi in v.
inline ToroidalPoint antipodal(const TorusGeometry& g, const ToroidalPoint& p) {
  const double cu = std::cos(p.u), su = std::sin(p.u);
  const double wt =
      std::sqrt(p.w * p.w + 4.0 * g.R * g.R + 4.0 * g.R * p.w * cu);
  // wt = 0 only when p already sits on the opposite ring point
  const double ut =
      (wt > 0.0) ? std::atan2(p.w * su, -(2.0 * g.R + p.w * cu)) : 0.0;
  return ToroidalPoint(wt, ut, p.v + pi);
}

inline ScaleFactors scale_factors(const TorusGeometry& g,
                                  const ToroidalPoint& p) {
  const double hv = g.R + p.w * std::cos(p.u);
  return {1.0, p.w, hv, p.w * hv};
}

// dV = w (R + w cos u) dw du dv
inline double volume_element_weight(const TorusGeometry& g,
                                    const ToroidalPoint& p) {
  return scale_factors(g, p).sqrt_g;
}

// dS = w (R + w cos u) du dv on a surface of constant w
inline double surface_element_weight(const TorusGeometry& g,
                                     const ToroidalPoint& p) {
  return scale_factors(g, p).sqrt_g;
}

inline CartesianPoint moon_spencer_to_cartesian(const TorusGeometry& g,
                                                const MoonSpencerPoint& p) {
  const double denom = std::cosh(p.tau) - std::cos(p.theta);
  const double srad = g.R * std::sinh(p.tau) / denom;
  return {srad * std::cos(p.phi), srad * std::sin(p.phi),
          g.R * std::sin(p.theta) / denom};
}

}  // namespace torusqm::coords
