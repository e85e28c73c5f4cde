#pragma once
// Eigenfunction families on the torus: free and well states, the
// Moon-Spencer half-order solution, the uniform-magnetic-field state, and
// the two external-potential families built from Heun functions. Every
// toroidal-poloidal state carries the modulation factor
//   (R + w cos u)^(-1/2) e^(-i mu v)
// whose half-frequency in v produces the sign flip under v -> v + 2pi.

#include <cmath>
#include <complex>
#include <cstdint>
#include <thread>
#include <variant>
#include <vector>

#include "torusqm/common.hpp"
#include "torusqm/coords.hpp"
#include "torusqm/errors.hpp"
#include "torusqm/specfun.hpp"

namespace torusqm::wavefn {

using coords::CartesianPoint;
using coords::MoonSpencerPoint;
using coords::ToroidalPoint;
using coords::TorusGeometry;

// Separation constants of the radial/angular ansatz
//   psi = w^A (R + w cos u)^B f(w) e^(i alpha u) e^(C v).
// B = -1/2 is forced (it removes the mixed angular terms), C = -i|B|,
// alpha must be an integer by periodicity in u, and A is pure gauge
// (it cancels in the assembled solution), fixed to 0.
struct SeparationConstants {
  double A = 0.0;
  double B = -0.5;
  Complex C{0.0, -0.5};
  int alpha_m = 0;
};

// ---------------------------------------------------------------------
// State families
// ---------------------------------------------------------------------

struct FreeToroidal {
  int m = 0;
  double k = 1.0;  // > 0, continuous for the free particle
  Complex amplitude{1.0, 0.0};
};

// Infinite toroidal well of minor radius a < R; k is quantized to
// j_{m,n}/a so the state vanishes on the shell w = a. The formula value is
// defined on the well interior; callers restrict the domain.
struct WellEigenstate {
  int m = 0;
  int n = 1;
  double a = 0.5;
};

// Half-order solution in Moon-Spencer coordinates:
//   e^(i phi/2) [c1 J_{1/2}(z~) + c2 H1_{1/2}(z~)],
//   z~ = k R sinh(tau) / (cosh(tau) - cos(theta)).
struct MoonSpencerState {
  double k = 1.0;
  Complex c1{1.0, 0.0};
  Complex c2{0.0, 0.0};
};

// Weak uniform magnetic field B0 along z: the free state with the shifted
// wavenumber kappa^2 = k^2 + q B0 / (2 hbar), implemented verbatim.
struct MagneticState {
  int m = 0;
  double k = 1.0;
  double charge = 1.0;
  double B0 = 0.0;
  Complex amplitude{1.0, 0.0};
};

struct PotentialCase1Params {
  double U1 = 0.0;
  double U2 = -1.0;  // must be < 0
  double V1 = 0.0;
  double V2 = 0.0;
  double T2 = 0.0;   // >= -1 so the v-frequency sqrt(1+T2)/2 is real
};

struct PotentialCase2Params {
  double V0 = 0.0;
  double V1 = 0.0;
  double V2 = 0.0;
  double V3 = 0.0;
  double V4 = 1.0;   // must be > 0
};

struct PotentialCase1State {
  int m = 0;
  double k = 1.0;
  PotentialCase1Params params;
  int branch = 1;  // 1 or 2
  Complex coeff{1.0, 0.0};
};

struct PotentialCase2State {
  int m = 0;
  double k = 1.0;
  PotentialCase2Params params;
  int branch = 1;
  Complex coeff{1.0, 0.0};
  double heun_anchor = 1.0;  // normalization point of the HeunD factor
};

using QuantumState =
    std::variant<FreeToroidal, WellEigenstate, MoonSpencerState, MagneticState,
                 PotentialCase1State, PotentialCase2State>;

// ---------------------------------------------------------------------
// Shared pieces
// ---------------------------------------------------------------------

// (R + w cos u)^(-1/2) e^(-i v/2). The v branch is fixed globally by
// sqrt(e^(iv)) := e^(iv/2) with v unreduced, which realizes the
// double-valued structure deterministically.
inline Complex r_factor(const TorusGeometry& g, const ToroidalPoint& p) {
  const double t = g.R + p.w * std::cos(p.u);
  if (!(t > 0.0)) throw ChartError("r_factor: R + w cos u must be > 0");
  return std::exp(Complex(0.0, -0.5 * p.v)) / std::sqrt(t);
}

// Radial prefactor w^power exp(lin w + quad w^2 + inv / w).
struct RadialPrefactor {
  Complex power{};
  Complex lin{};
  Complex quad{};
  Complex inv{};
};

inline Complex eval_prefactor(const RadialPrefactor& f, double w) {
  Complex e = f.lin * w + f.quad * w * w;
  if (f.inv != Complex{}) e += f.inv / w;
  return std::pow(Complex(w), f.power) * std::exp(e);
}

// ---------------------------------------------------------------------
// Quantization and normalization for the infinite well
// ---------------------------------------------------------------------

struct WellEigenvalue {
  double k;  // j_{m,n} / a
  double E;  // hbar^2 k^2 / (2 m*)
};

inline WellEigenvalue well_eigenvalue(const TorusGeometry& g, int m, int n,
                                      double a) {
  if (!(a > 0.0) || !(a < g.R))
    throw DomainError("well_eigenvalue: need 0 < a < R");
  const double k = specfun::bessel_j_zero(m, n) / a;
  const double E = g.hbar * g.hbar * k * k / (2.0 * g.mass);
  return {k, E};
}

// Amplitude making the well state unit-normalized over the well volume.
// |psi|^2 = A^2 J_m(kw)^2 / (R + w cos u) cancels the (R + w cos u) factor
// of dV, leaving A = 1 / (pi a sqrt(2) |J_{m+1}(j_{m,n})|).
inline double normalization_constant(const TorusGeometry& g, int m, int n,
                                     double a) {
  if (!(a > 0.0) || !(a < g.R))
    throw DomainError("normalization_constant: need 0 < a < R");
  const double jmn = specfun::bessel_j_zero(m, n);
  const double jnext = specfun::bessel_j(m + 1, jmn);
  return 1.0 / (pi * a * std::sqrt(2.0) * std::fabs(jnext));
}

// ---------------------------------------------------------------------
// Heun parameter assembly for the external potentials
// ---------------------------------------------------------------------

// Potential family 1,
//   V1(w,u) = 4 U1 w + 4 U2 w^2 + V1/w + V2/w^2 + T2 / (4 (R + w cos u)^2),
// radial factor w^(+-sigma) exp(-(U1/s) w + s w^2) HeunB({branch}; w) with
// s = sqrt(-U2), sigma = sqrt(m^2 - V2). The branch-2 parameter set is the
// printed one (delta = 0, no U1^2/U2 term in alpha).
inline std::pair<specfun::HeunParams, RadialPrefactor> heun_params_case1(
    int m, double k, const PotentialCase1Params& P, int branch) {
  if (!(P.U2 < 0.0)) throw ParameterError("case 1: U2 must be < 0");
  if (branch != 1 && branch != 2)
    throw ParameterError("case 1: branch must be 1 or 2");
  const double s = std::sqrt(-P.U2);
  const Complex sigma = std::sqrt(Complex(m * m - P.V2, 0.0));
  specfun::HeunParams h;
  h.epsilon = 4.0 * s;
  if (branch == 1) {
    h.q = -P.V1 + (1.0 + 2.0 * sigma) * P.U1 / s;
    h.alpha = k * k - P.U1 * P.U1 / P.U2 + 4.0 * s * (1.0 + sigma);
    h.gamma = 1.0 + 2.0 * sigma;
    h.delta = -2.0 * P.U1 / s;
  } else {
    h.q = -P.V1 + (1.0 - 2.0 * sigma) * P.U1 / s;
    h.alpha = k * k + 4.0 * s * (1.0 - sigma);
    h.gamma = 1.0 - 2.0 * sigma;
    h.delta = 0.0;
  }
  if (specfun::detail::is_nonpositive_integer(h.gamma))
    throw ParameterError(
        "case 1: gamma is zero or a negative integer; only the other branch "
        "exists");
  RadialPrefactor pre;
  pre.power = (branch == 1) ? sigma : -sigma;
  pre.lin = -P.U1 / s;
  pre.quad = s;
  return {h, pre};
}

// True when the radial exponents of case 1 are imaginary (m^2 < V2); the
// state is evaluated in complex arithmetic and tagged rather than rejected.
inline bool oscillatory_singular(const PotentialCase1State& s) {
  return s.m * s.m < s.params.V2;
}

// Potential family 2,
//   V2(w) = V0 + V1/w + V2/w^2 + V3/w^3 + V4/(4 w^4),
// radial factor w^(1/2 -+ ip) exp(-+ i kappa w +- i sqrt(V4)/(2w))
// HeunD({branch}; w) with p = V3/sqrt(V4), kappa = sqrt(k^2 + V0).
// Branch 1 carries no V1 term in alpha while branch 2 does; the printed
// asymmetry is preserved exactly.
inline std::pair<specfun::HeunParams, RadialPrefactor> heun_params_case2(
    int m, double k, const PotentialCase2Params& P, int branch) {
  if (!(P.V4 > 0.0)) throw ParameterError("case 2: V4 must be > 0");
  if (!(k * k + P.V0 >= 0.0))
    throw ParameterError("case 2: k^2 + V0 must be >= 0");
  if (branch != 1 && branch != 2)
    throw ParameterError("case 2: branch must be 1 or 2");
  const double p = P.V3 / std::sqrt(P.V4);
  const double kappa = std::sqrt(k * k + P.V0);
  const double rv4 = std::sqrt(P.V4);
  const double m2v2 = m * m - P.V2;
  specfun::HeunParams h;
  RadialPrefactor pre;
  if (branch == 1) {
    h.q = Complex(-0.25 + m2v2 + p * p + kappa * rv4, p);
    h.alpha = -2.0 * kappa * Complex(p, 1.0);
    h.gamma = Complex(0.0, -rv4);
    h.delta = 2.0 * Complex(1.0, -p);
    h.epsilon = Complex(0.0, -2.0 * kappa);
    pre.power = Complex(0.5, -p);
    pre.lin = Complex(0.0, -kappa);
    pre.inv = Complex(0.0, 0.5 * rv4);
  } else {
    h.q = Complex(-0.25 + m2v2 + p * p + kappa * rv4, -p);
    h.alpha = P.V1 - 2.0 * kappa * Complex(p, -1.0);
    h.gamma = Complex(0.0, rv4);
    h.delta = 2.0 * Complex(1.0, p);
    h.epsilon = Complex(0.0, 2.0 * kappa);
    pre.power = Complex(0.5, p);
    pre.lin = Complex(0.0, kappa);
    pre.inv = Complex(0.0, -0.5 * rv4);
  }
  return {h, pre};
}

// ---------------------------------------------------------------------
// Point evaluation
// ---------------------------------------------------------------------

inline Complex eval(const TorusGeometry& g, const FreeToroidal& s,
                    const ToroidalPoint& p) {
  return s.amplitude * specfun::bessel_j(s.m, s.k * p.w) *
         std::exp(Complex(0.0, s.m * p.u)) * r_factor(g, p);
}

inline Complex eval(const TorusGeometry& g, const WellEigenstate& s,
                    const ToroidalPoint& p) {
  const auto [k, E] = well_eigenvalue(g, s.m, s.n, s.a);
  const double A = normalization_constant(g, s.m, s.n, s.a);
  return A * specfun::bessel_j(s.m, k * p.w) *
         std::exp(Complex(0.0, s.m * p.u)) * r_factor(g, p);
}

inline Complex eval(const TorusGeometry& g, const MoonSpencerState& s,
                    const MoonSpencerPoint& p) {
  const double denom = std::cosh(p.tau) - std::cos(p.theta);
  const double zt = s.k * g.R * std::sinh(p.tau) / denom;
  Complex radial{0.0, 0.0};
  if (s.c1 != Complex{}) radial += s.c1 * specfun::bessel_j(0.5, zt);
  if (s.c2 != Complex{}) radial += s.c2 * specfun::hankel1(0.5, zt);
  return std::exp(Complex(0.0, 0.5 * p.phi)) * radial;
}

inline double magnetic_kappa(const TorusGeometry& g, const MagneticState& s) {
  const double k2 = s.k * s.k + s.charge * s.B0 / (2.0 * g.hbar);
  if (!(k2 >= 0.0))
    throw DomainError("magnetic state: shifted k^2 is negative");
  return std::sqrt(k2);
}

inline Complex eval(const TorusGeometry& g, const MagneticState& s,
                    const ToroidalPoint& p) {
  return s.amplitude * specfun::bessel_j(s.m, magnetic_kappa(g, s) * p.w) *
         std::exp(Complex(0.0, s.m * p.u)) * r_factor(g, p);
}

// v-frequency mu of a family's e^(-i mu v) factor; the monodromy under
// v -> v + 2pi is e^(-2 pi i mu).
inline double v_frequency(const PotentialCase1Params& P) {
  if (!(1.0 + P.T2 >= 0.0)) throw DomainError("case 1: need T2 >= -1");
  return 0.5 * std::sqrt(1.0 + P.T2);
}

inline Complex eval(const TorusGeometry& g, const PotentialCase1State& s,
                    const ToroidalPoint& p) {
  const double t = g.R + p.w * std::cos(p.u);
  if (!(t > 0.0)) throw ChartError("eval: R + w cos u must be > 0");
  const auto [hp, pre] = heun_params_case1(s.m, s.k, s.params, s.branch);
  const double mu = v_frequency(s.params);
  const Complex heun = specfun::heun_b(hp, Complex(p.w)).value;
  return s.coeff * eval_prefactor(pre, p.w) * heun *
         std::exp(Complex(0.0, s.m * p.u - mu * p.v)) / std::sqrt(t);
}

inline Complex eval(const TorusGeometry& g, const PotentialCase2State& s,
                    const ToroidalPoint& p) {
  const double t = g.R + p.w * std::cos(p.u);
  if (!(t > 0.0)) throw ChartError("eval: R + w cos u must be > 0");
  const auto [hp, pre] = heun_params_case2(s.m, s.k, s.params, s.branch);
  const Complex heun = specfun::heun_d(hp, s.heun_anchor, p.w).value;
  return s.coeff * eval_prefactor(pre, p.w) * heun *
         std::exp(Complex(0.0, s.m * p.u - 0.5 * p.v)) / std::sqrt(t);
}

// Variant dispatch for the toroidal-poloidal families. Moon-Spencer states
// live on Moon-Spencer points and are rejected here.
inline Complex eval(const TorusGeometry& g, const QuantumState& s,
                    const ToroidalPoint& p) {
  return std::visit(
      [&](const auto& st) -> Complex {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, MoonSpencerState>) {
          throw DomainError(
              "eval: Moon-Spencer states take a MoonSpencerPoint");
        } else {
          return eval(g, st, p);
        }
      },
      s);
}

inline double v_frequency(const QuantumState& s) {
  if (const auto* c1 = std::get_if<PotentialCase1State>(&s))
    return v_frequency(c1->params);
  return 0.5;
}

// ---------------------------------------------------------------------
// Bessel special case of potential family 2 (V1 = V3 = V4 = 0):
//   [c J_l(kappa w) + d J_{-l}(kappa w)] e^(imu - iv/2) / sqrt(R + w cos u)
// with l = sqrt(m^2 - V2), kappa = sqrt(k^2 + V0).
// ---------------------------------------------------------------------

inline double bessel_case2_order(int m, double V2) {
  if (!(m * m - V2 >= 0.0))
    throw DomainError("bessel special case: need m^2 >= V2 for a real order");
  return std::sqrt(m * m - V2);
}

// J_{-l} is linearly dependent on J_l at integer l; flag so callers can
// warn that the printed pair spans only one dimension there.
inline bool bessel_case2_order_degenerate(int m, double V2) {
  const double l = bessel_case2_order(m, V2);
  return std::fabs(l - std::round(l)) < 1e-12;
}

inline Complex bessel_special_case2(const TorusGeometry& g, int m, double k,
                                    double V0, double V2,
                                    const ToroidalPoint& p,
                                    Complex c = Complex{1.0, 0.0},
                                    Complex d = Complex{0.0, 0.0}) {
  const double t = g.R + p.w * std::cos(p.u);
  if (!(t > 0.0)) throw ChartError("eval: R + w cos u must be > 0");
  const double l = bessel_case2_order(m, V2);
  if (!(k * k + V0 >= 0.0))
    throw DomainError("bessel special case: k^2 + V0 must be >= 0");
  const double kappa = std::sqrt(k * k + V0);
  Complex radial = c * specfun::bessel_j(l, kappa * p.w);
  if (d != Complex{}) radial += d * specfun::bessel_j(-l, kappa * p.w);
  return radial * std::exp(Complex(0.0, m * p.u - 0.5 * p.v)) / std::sqrt(t);
}

// ---------------------------------------------------------------------
// Moon-Spencer infinite well: the boundary condition on the shell can only
// hold on the theta-locus cos(theta) = cosh(a) - (kR/(n pi)) sinh(a), so
// the well never traps the particle.
// ---------------------------------------------------------------------

struct WellFeasibilityReport {
  double cos_theta;          // required value of cos(theta)
  bool locus_nonempty;       // |cos_theta| <= 1
  double theta_lo, theta_hi; // the isolated solutions in [0, 2pi), if any
  bool traps_particle;       // always false for finite parameters
};

inline WellFeasibilityReport moon_spencer_well_feasibility(double k, double R,
                                                           double a, int n) {
  if (!(a > 0.0) || n < 1)
    throw DomainError("feasibility: need a > 0 and n >= 1");
  const double c = std::cosh(a) - (k * R / (n * pi)) * std::sinh(a);
  WellFeasibilityReport rep;
  rep.cos_theta = c;
  rep.locus_nonempty = std::fabs(c) <= 1.0;
  if (rep.locus_nonempty) {
    rep.theta_lo = std::acos(c);
    rep.theta_hi = two_pi - rep.theta_lo;
  } else {
    rep.theta_lo = rep.theta_hi = std::numeric_limits<double>::quiet_NaN();
  }
  rep.traps_particle = false;
  return rep;
}

// ---------------------------------------------------------------------
// Density grids (figure reproduction)
// ---------------------------------------------------------------------

struct AxisSpec {
  double lo = 0.0;
  double hi = 0.0;
  int count = 1;  // count == 1 fixes the coordinate at lo
};

struct GridSpec {
  AxisSpec w{0.0, 1.0, 33};
  AxisSpec u{0.0, two_pi, 64};
  AxisSpec v{0.0, two_pi, 64};
};

struct GridRow {
  double w, u, v;
  double x, y, z;
  Complex psi;
  double density;  // sigma |psi|^2 with sigma = w (R + w cos u)
  bool masked;     // point outside the principal chart
};

inline double axis_value(const AxisSpec& a, int i) {
  if (a.count <= 1) return a.lo;
  return a.lo + (a.hi - a.lo) * static_cast<double>(i) / (a.count - 1);
}

inline unsigned grid_thread_count(std::size_t rows) {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("TORUSQM_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && cap < static_cast<long>(n)) n = static_cast<unsigned>(cap);
  }
  if (rows < 256) n = 1;
  return std::min<unsigned>(n, static_cast<unsigned>(std::max<std::size_t>(rows, 1)));
}

// Tabulates (w,u,v,x,y,z, psi, sigma|psi|^2) over the grid, rows in
// deterministic (w outer, u, v inner) order regardless of the parallel
// evaluation schedule. Chart-invalid points are emitted masked with zeroed
// field values.
inline std::vector<GridRow> density_grid(const TorusGeometry& g,
                                         const QuantumState& s,
                                         const GridSpec& spec) {
  const std::size_t nw = std::max(spec.w.count, 1);
  const std::size_t nu = std::max(spec.u.count, 1);
  const std::size_t nv = std::max(spec.v.count, 1);
  const std::size_t rows = nw * nu * nv;
  std::vector<GridRow> out(rows);

  auto fill = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t idx = lo; idx < hi; ++idx) {
      const std::size_t iw = idx / (nu * nv);
      const std::size_t iu = (idx / nv) % nu;
      const std::size_t iv = idx % nv;
      const ToroidalPoint p(axis_value(spec.w, static_cast<int>(iw)),
                            axis_value(spec.u, static_cast<int>(iu)),
                            axis_value(spec.v, static_cast<int>(iv)));
      GridRow& r = out[idx];
      r.w = p.w;
      r.u = p.u;
      r.v = p.v;
      const CartesianPoint c = coords::to_cartesian(g, p);
      r.x = c.x;
      r.y = c.y;
      r.z = c.z;
      if (!coords::in_principal_chart(g, p)) {
        r.psi = Complex{};
        r.density = 0.0;
        r.masked = true;
        continue;
      }
      r.psi = eval(g, s, p);
      r.density = coords::surface_element_weight(g, p) * std::norm(r.psi);
      r.masked = false;
    }
  };

  const unsigned nthreads = grid_thread_count(rows);
  if (nthreads <= 1) {
    fill(0, rows);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (rows + nthreads - 1) / nthreads;
    for (unsigned t = 0; t < nthreads; ++t) {
      const std::size_t lo = t * chunk;
      const std::size_t hi = std::min(rows, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(fill, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

}  // namespace torusqm::wavefn
