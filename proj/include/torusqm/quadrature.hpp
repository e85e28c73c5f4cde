#pragma once
// Tensor-product integration over the torus volume: Gauss-Legendre in the
// radial direction, trapezoid (rectangle) rule in the two periodic angles,
// where it converges spectrally for smooth integrands.

#include <cmath>
#include <utility>
#include <vector>

#include "torusqm/common.hpp"
#include "torusqm/coords.hpp"
#include "torusqm/errors.hpp"

namespace torusqm::verify {

struct QuadratureSpec {
  int n_w = 64;       // Gauss-Legendre nodes, >= 2
  int n_u = 32;       // trapezoid nodes over [0, 2pi), >= 4
  int n_v = 32;       // trapezoid nodes over [0, 2pi), >= 4
  double w_lo = 0.0;
  double w_hi = 1.0;
};

struct QuadNode {
  double x, weight;
};

// Gauss-Legendre nodes and weights on [a, b] by Newton iteration on the
// Legendre recurrence.
inline std::vector<QuadNode> gauss_legendre(int n, double a, double b) {
  if (n < 1) throw ParameterError("gauss_legendre: n must be >= 1");
  std::vector<QuadNode> out(n);
  const int half = (n + 1) / 2;
  for (int i = 1; i <= half; ++i) {
    double x = std::cos(pi * (i - 0.25) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * x * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (x * p1 - p2) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    const double xm = 0.5 * (b + a);
    const double xl = 0.5 * (b - a);
    const double wgt = 2.0 * xl / ((1.0 - x * x) * pp * pp);
    out[i - 1] = {xm - xl * x, wgt};
    out[n - i] = {xm + xl * x, wgt};
  }
  return out;
}

// Integral of f(p) dV over w in [w_lo, w_hi], u and v over a full period,
// with dV = sqrt(g) dw du dv supplied by the coordinate module.
template <class F>
inline double quadrature(const coords::TorusGeometry& g, F&& f,
                         const QuadratureSpec& spec) {
  if (spec.n_w < 2 || spec.n_u < 4 || spec.n_v < 4)
    throw ParameterError("quadrature: need n_w >= 2 and n_u, n_v >= 4");
  const auto wq = gauss_legendre(spec.n_w, spec.w_lo, spec.w_hi);
  const double du = two_pi / spec.n_u;
  const double dv = two_pi / spec.n_v;
  double total = 0.0;
  for (const auto& [w, wgt_w] : wq) {
    double slice = 0.0;
    for (int ju = 0; ju < spec.n_u; ++ju) {
      const double u = du * ju;
      double line = 0.0;
      for (int jv = 0; jv < spec.n_v; ++jv) {
        const coords::ToroidalPoint p(w, u, dv * jv);
        line += f(p) * coords::volume_element_weight(g, p);
      }
      slice += line;
    }
    total += wgt_w * slice;
  }
  return total * du * dv;
}

}  // namespace torusqm::verify
