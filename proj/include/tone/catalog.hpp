#pragma once

// Built-in model geometries: totally geodesic subspaces, the Euclidean
// catenoid, the spherical catenoid in hyperbolic 3-space (constructed by
// integrating its profile ODE), and an intrinsic warped surface whose
// curvature is pinched below the comparison curvature. Each entry carries
// closed-form derivatives, distances, and area densities where available,
// plus the 1-D rotationally symmetric reduction used by the spectral oracle.

#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "tone/geometry.hpp"
#include "tone/numerics.hpp"
#include "tone/spaceform.hpp"

namespace tone {

namespace detail {

// Direction vector on the unit sphere and its angle derivatives.
// n = 2: u[1] = theta. n = 3: u[1] = theta, u[2] = phi (polar).
struct SphereFrame {
    double d[3]{}, dth[3]{}, dph[3]{}, dthth[3]{}, dthph[3]{}, dphph[3]{};
};

inline SphereFrame sphere_frame(int n, const double* u) {
    SphereFrame f;
    if (n == 2) {
        const double c = std::cos(u[1]), s = std::sin(u[1]);
        f.d[0] = c;
        f.d[1] = s;
        f.dth[0] = -s;
        f.dth[1] = c;
        f.dthth[0] = -c;
        f.dthth[1] = -s;
    } else {
        const double ct = std::cos(u[1]), st = std::sin(u[1]);
        const double cp = std::cos(u[2]), sp = std::sin(u[2]);
        f.d[0] = sp * ct;
        f.d[1] = sp * st;
        f.d[2] = cp;
        f.dth[0] = -sp * st;
        f.dth[1] = sp * ct;
        f.dph[0] = cp * ct;
        f.dph[1] = cp * st;
        f.dph[2] = -sp;
        f.dthth[0] = -sp * ct;
        f.dthth[1] = -sp * st;
        f.dthph[0] = -cp * st;
        f.dthph[1] = cp * ct;
        f.dphph[0] = -f.d[0];
        f.dphph[1] = -f.d[1];
        f.dphph[2] = -f.d[2];
    }
    return f;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Totally geodesic R^n (resp. H^n) inside R^m (resp. H^m), in polar chart
// coordinates (r[, theta[, phi]]) around the base point r = 0.

inline ImmersedGeometry totally_geodesic(int n, int m, double kappa) {
    require_admissible_curvature(kappa);
    if (n < 2 || n > 3)
        throw std::invalid_argument("catalog: totally geodesic charts support n in {2, 3}");
    if (m < n || m > 5)
        throw std::invalid_argument("catalog: ambient dimension must satisfy n <= m <= 5");

    ImmersedGeometry g;
    g.name = "totally-geodesic";
    g.n = n;
    g.base.assign(static_cast<std::size_t>(n), 0.0);
    g.radial_axis0 = true;
    g.topology.euler_char = 1;
    g.topology.ends = 1;

    const SpaceForm sf{kappa, n};
    const bool flat = sf.flat();
    const double alpha = flat ? 0.0 : std::sqrt(-kappa);
    g.ambient = flat ? Ambient::euclidean(m) : Ambient::hyperbolic(m, kappa);
    const int nc = g.ambient.coords();

    g.chart = [n, nc, flat, alpha](const double* u) {
        const auto f = detail::sphere_frame(n, u);
        Vec x = Vec::zero(nc);
        if (flat) {
            for (int i = 0; i < n; ++i) x[i] = u[0] * f.d[i];
        } else {
            x[0] = std::cosh(alpha * u[0]) / alpha;
            const double s = std::sinh(alpha * u[0]) / alpha;
            for (int i = 0; i < n; ++i) x[i + 1] = s * f.d[i];
        }
        return x;
    };
    g.jacobian = [n, nc, flat, alpha](const double* u, Vec* J) {
        const auto f = detail::sphere_frame(n, u);
        for (int k = 0; k < n; ++k) J[k] = Vec::zero(nc);
        if (flat) {
            for (int i = 0; i < n; ++i) {
                J[0][i] = f.d[i];
                J[1][i] = u[0] * f.dth[i];
                if (n == 3) J[2][i] = u[0] * f.dph[i];
            }
        } else {
            const double ch = std::cosh(alpha * u[0]);
            const double sh = std::sinh(alpha * u[0]);
            J[0][0] = sh;
            for (int i = 0; i < n; ++i) {
                J[0][i + 1] = ch * f.d[i];
                J[1][i + 1] = (sh / alpha) * f.dth[i];
                if (n == 3) J[2][i + 1] = (sh / alpha) * f.dph[i];
            }
        }
    };
    g.hessian = [n, nc, flat, alpha](const double* u, Vec* H) {
        const auto f = detail::sphere_frame(n, u);
        const int nsym = n * (n + 1) / 2;
        for (int k = 0; k < nsym; ++k) H[k] = Vec::zero(nc);
        if (flat) {
            for (int i = 0; i < n; ++i) {
                H[sym_index(0, 1, n)][i] = f.dth[i];
                H[sym_index(1, 1, n)][i] = u[0] * f.dthth[i];
                if (n == 3) {
                    H[sym_index(0, 2, n)][i] = f.dph[i];
                    H[sym_index(1, 2, n)][i] = u[0] * f.dthph[i];
                    H[sym_index(2, 2, n)][i] = u[0] * f.dphph[i];
                }
            }
        } else {
            const double ch = std::cosh(alpha * u[0]);
            const double sh = std::sinh(alpha * u[0]);
            H[sym_index(0, 0, n)][0] = alpha * ch;
            for (int i = 0; i < n; ++i) {
                H[sym_index(0, 0, n)][i + 1] = alpha * sh * f.d[i];
                H[sym_index(0, 1, n)][i + 1] = ch * f.dth[i];
                H[sym_index(1, 1, n)][i + 1] = (sh / alpha) * f.dthth[i];
                if (n == 3) {
                    H[sym_index(0, 2, n)][i + 1] = ch * f.dph[i];
                    H[sym_index(1, 2, n)][i + 1] = (sh / alpha) * f.dthph[i];
                    H[sym_index(2, 2, n)][i + 1] = (sh / alpha) * f.dphph[i];
                }
            }
        }
    };
    g.distance_fn = [](const double* u) { return u[0]; };
    g.area_fn = [n, sf](const double* u) {
        const double radial = std::pow(sf.s(u[0]), n - 1);
        return n == 3 ? radial * std::sin(u[2]) : radial;
    };
    if (n == 2)
        g.gauss_fn = [kappa](const double*) { return kappa; };
    g.domain_fn = [n](double s_max) {
        DomainRect d;
        d.dims = n;
        d.range[0] = {0.0, s_max};
        d.range[1] = {0.0, 2.0 * kPi};
        if (n == 3) d.range[2] = {0.0, kPi};
        return d;
    };
    if (n == 2) {
        SurfaceOfRevolution rev;
        rev.name = g.name;
        rev.circle_radius = [sf](double s) { return sf.s(std::abs(s)); };
        rev.s_limit = std::numeric_limits<double>::infinity();
        rev.axis_at_zero = true;
        g.revolution = rev;
    }
    return g;
}

// ---------------------------------------------------------------------------
// The catenoid x(t, theta) = c0 (cosh t cos theta, cosh t sin theta, t)
// in R^3, based at the waist point (c0, 0, 0).

inline ImmersedGeometry euclidean_catenoid(double c0 = 1.0) {
    if (!(c0 > 0.0) || !std::isfinite(c0))
        throw std::invalid_argument("catalog: catenoid scale must be positive");

    ImmersedGeometry g;
    g.name = "euclidean-catenoid";
    g.ambient = Ambient::euclidean(3);
    g.n = 2;
    g.base = {0.0, 0.0};
    g.topology.euler_char = 0;
    g.topology.ends = 2;

    g.chart = [c0](const double* u) {
        Vec x = Vec::zero(3);
        const double ch = std::cosh(u[0]);
        x[0] = c0 * ch * std::cos(u[1]);
        x[1] = c0 * ch * std::sin(u[1]);
        x[2] = c0 * u[0];
        return x;
    };
    g.jacobian = [c0](const double* u, Vec* J) {
        const double ch = std::cosh(u[0]), sh = std::sinh(u[0]);
        const double ct = std::cos(u[1]), st = std::sin(u[1]);
        J[0] = Vec::zero(3);
        J[1] = Vec::zero(3);
        J[0][0] = c0 * sh * ct;
        J[0][1] = c0 * sh * st;
        J[0][2] = c0;
        J[1][0] = -c0 * ch * st;
        J[1][1] = c0 * ch * ct;
    };
    g.hessian = [c0](const double* u, Vec* H) {
        const double ch = std::cosh(u[0]), sh = std::sinh(u[0]);
        const double ct = std::cos(u[1]), st = std::sin(u[1]);
        for (int k = 0; k < 3; ++k) H[k] = Vec::zero(3);
        H[0][0] = c0 * ch * ct;
        H[0][1] = c0 * ch * st;
        H[1][0] = -c0 * sh * st;
        H[1][1] = c0 * sh * ct;
        H[2][0] = -c0 * ch * ct;
        H[2][1] = -c0 * ch * st;
    };
    g.distance_fn = [c0](const double* u) {
        const double ch = std::cosh(u[0]);
        const double q = ch * ch - 2.0 * ch * std::cos(u[1]) + 1.0 + u[0] * u[0];
        return c0 * std::sqrt(std::max(q, 0.0));
    };
    g.area_fn = [c0](const double* u) {
        const double ch = std::cosh(u[0]);
        return c0 * c0 * ch * ch;
    };
    g.gauss_fn = [c0](const double* u) {
        const double ch = std::cosh(u[0]);
        return -1.0 / (c0 * c0 * ch * ch * ch * ch);
    };
    // |x - p| >= |x| - |p| >= c0 cosh t - c0, so the ball of radius s_max
    // lies inside |t| <= arccosh(1 + s_max/c0) (plus margin).
    g.domain_fn = [c0](double s_max) {
        DomainRect d;
        d.dims = 2;
        const double t_hi = std::acosh(1.0 + s_max / c0) + 0.25;
        d.range[0] = {-t_hi, t_hi};
        d.range[1] = {0.0, 2.0 * kPi};
        return d;
    };
    // Arc length from the waist is s = c0 sinh t, and the circle radius is
    // c0 cosh t = sqrt(c0^2 + s^2).
    SurfaceOfRevolution rev;
    rev.name = g.name;
    rev.circle_radius = [c0](double s) { return std::sqrt(c0 * c0 + s * s); };
    rev.s_limit = std::numeric_limits<double>::infinity();
    rev.axis_at_zero = false;
    g.revolution = rev;
    return g;
}

// ---------------------------------------------------------------------------
// Spherical catenoid in hyperbolic 3-space. In Fermi coordinates around a
// geodesic axis the ambient metric is
//   d rho^2 + cosh^2(alpha rho) dt^2 + (sinh^2(alpha rho)/alpha^2) d theta^2,
// and a rotationally invariant minimal surface is a profile curve
// (rho(s), t(s)) in arc length obeying the first integral
//   S(rho) cosh^2(alpha rho) / sqrt(rho'^2 + cosh^2(alpha rho)) * t'... =>
//   V(rho) cosh(alpha rho) t'(s) = a with V(rho) = S(rho) cosh(alpha rho),
// which closes to the autonomous system
//   rho'' = a^2 V'(rho) / V(rho)^3,   t' = a / (V(rho) cosh(alpha rho)),
// with energy rho'^2 + a^2/V^2 = 1. The waist rho_0 solves V(rho_0) = a,
// i.e. sinh(2 alpha rho_0) = 2 alpha a.

namespace detail {

struct HypCatenoidTable {
    double kappa = -1.0, alpha = 1.0, a = 1.0;
    double rho0 = 0.0;     // waist distance from the axis
    double s_table = 0.0;  // arc-length range covered (one side)
    double t_limit = 0.0;  // t(s_table); t has a finite limit at infinity
    UniformHermite rho, tau;

    double log_v(double r) const {
        // V = sinh(2 alpha r) / (2 alpha)
        const double x = 2.0 * alpha * r;
        return x >= 350.0 ? x - std::log(2.0) + std::log1p(-std::exp(-2.0 * x)) -
                                std::log(2.0 * alpha)
                          : std::log(std::sinh(x) / (2.0 * alpha));
    }
    // a^2 V'(r)/V(r)^3, evaluated in logs when the hyperbolic factors are huge.
    double accel(double r) const {
        const double x = 2.0 * alpha * r;
        if (x < 300.0) {
            const double v = std::sinh(x) / (2.0 * alpha);
            return a * a * std::cosh(x) / (v * v * v);
        }
        const double lnvp = x - std::log(2.0) + std::log1p(std::exp(-2.0 * x));
        const double e = 2.0 * std::log(a) + lnvp - 3.0 * log_v(r);
        return e < -745.0 ? 0.0 : std::exp(e);
    }
    // t'(s) = a / (V(rho) cosh(alpha rho))
    double t_prime(double r) const {
        const double x = alpha * r;
        if (2.0 * x < 300.0)
            return a / (std::sinh(2.0 * x) / (2.0 * alpha) * std::cosh(x));
        const double lnch = x - std::log(2.0) + std::log1p(std::exp(-2.0 * x));
        const double e = std::log(a) - log_v(r) - lnch;
        return e < -745.0 ? 0.0 : std::exp(e);
    }
    // Radial speed from the energy integral, for s >= 0.
    double rho_prime(double r) const {
        const double e = std::log(a) - log_v(r);
        const double ratio = e < -30.0 ? 0.0 : std::exp(2.0 * e);
        return std::sqrt(std::max(0.0, 1.0 - ratio));
    }
};

inline std::shared_ptr<const HypCatenoidTable> build_hyp_catenoid(double a, double kappa,
                                                                  double s_range) {
    require_admissible_curvature(kappa);
    if (!(kappa < 0.0))
        throw std::invalid_argument("catalog: hyperbolic catenoid needs kappa < 0");
    if (!(a > 0.0) || !std::isfinite(a))
        throw std::invalid_argument("catalog: hyperbolic catenoid needs a > 0");
    const double alpha = std::sqrt(-kappa);
    const double x0 = 0.5 * std::asinh(2.0 * alpha * a); // alpha * rho0
    // Empirical existence window for the tabulated construction: outside it
    // the waist is too close to the axis (stiff) or the profile too steep.
    const double x_lo = 0.05, x_hi = 4.0;
    if (x0 < x_lo || x0 > x_hi) {
        std::ostringstream os;
        os << "catalog: hyperbolic catenoid parameter a = " << a
           << " outside the supported window [" << std::sinh(2.0 * x_lo) / (2.0 * alpha)
           << ", " << std::sinh(2.0 * x_hi) / (2.0 * alpha) << "] for kappa = " << kappa;
        throw std::invalid_argument(os.str());
    }

    auto tab = std::make_shared<HypCatenoidTable>();
    tab->kappa = kappa;
    tab->alpha = alpha;
    tab->a = a;
    tab->rho0 = x0 / alpha;
    if (!(s_range > 1.0)) throw std::invalid_argument("catalog: catenoid range too small");
    if (!(alpha * (tab->rho0 + s_range) < 300.0))
        throw std::invalid_argument(
            "catalog: s_range too large; hyperbolic factors would overflow");

    // RK4 on (rho, v, t) with fixed step; store every `keep`-th point.
    const double h = 1e-4 / std::max(1.0, alpha);
    const int keep = 10;
    const long steps = static_cast<long>(std::ceil(s_range / (h * keep))) * keep;
    std::vector<double> r_vals, r_slopes, t_vals, t_slopes;
    r_vals.reserve(static_cast<std::size_t>(steps / keep) + 1);

    double rho = tab->rho0, v = 0.0, t = 0.0;
    const auto& T = *tab;
    auto fv = [&T](double r) { return T.accel(r); };
    auto ft = [&T](double r) { return T.t_prime(r); };

    double worst_energy = 0.0;
    for (long k = 0; k <= steps; ++k) {
        if (k % keep == 0) {
            r_vals.push_back(rho);
            r_slopes.push_back(v);
            t_vals.push_back(t);
            t_slopes.push_back(ft(rho));
            const double lv = T.log_v(rho);
            const double ratio = std::exp(2.0 * (std::log(a) - lv));
            worst_energy = std::max(worst_energy, std::abs(v * v + ratio - 1.0));
        }
        if (k == steps) break;
        const double k1r = v, k1v = fv(rho), k1t = ft(rho);
        const double k2r = v + 0.5 * h * k1v, k2v = fv(rho + 0.5 * h * k1r),
                     k2t = ft(rho + 0.5 * h * k1r);
        const double k3r = v + 0.5 * h * k2v, k3v = fv(rho + 0.5 * h * k2r),
                     k3t = ft(rho + 0.5 * h * k2r);
        const double k4r = v + h * k3v, k4v = fv(rho + h * k3r), k4t = ft(rho + h * k3r);
        rho += h / 6.0 * (k1r + 2.0 * k2r + 2.0 * k3r + k4r);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        t += h / 6.0 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t);
    }
    if (worst_energy > 1e-8)
        throw std::runtime_error("catalog: catenoid profile integration lost its first integral");

    tab->s_table = static_cast<double>(steps) * h;
    tab->t_limit = t;
    tab->rho = UniformHermite(0.0, h * keep, std::move(r_vals), std::move(r_slopes));
    tab->tau = UniformHermite(0.0, h * keep, std::move(t_vals), std::move(t_slopes));
    return tab;
}

} // namespace detail

inline ImmersedGeometry hyperbolic_catenoid(double a, double kappa = -1.0,
                                            double s_range = 64.0) {
    auto tab = detail::build_hyp_catenoid(a, kappa, s_range);
    const double alpha = tab->alpha;

    ImmersedGeometry g;
    g.name = "hyperbolic-catenoid";
    g.ambient = Ambient::hyperbolic(3, kappa);
    g.n = 2;
    g.base = {0.0, 0.0};
    g.topology.euler_char = 0;
    g.topology.ends = 2;

    // Hyperboloid chart: x = (cosh(ar) Gamma(at) + sinh(ar) N(theta)) / a
    // with Gamma(u) = (cosh u, sinh u, 0, 0), N = (0, 0, cos th, sin th).
    g.chart = [tab, alpha](const double* u) {
        const double s = std::abs(u[0]);
        const double sg = u[0] < 0.0 ? -1.0 : 1.0;
        const double r = tab->rho.value(s), t = sg * tab->tau.value(s);
        const double ch = std::cosh(alpha * r), sh = std::sinh(alpha * r);
        Vec x = Vec::zero(4);
        x[0] = ch * std::cosh(alpha * t) / alpha;
        x[1] = ch * std::sinh(alpha * t) / alpha;
        x[2] = sh * std::cos(u[1]) / alpha;
        x[3] = sh * std::sin(u[1]) / alpha;
        return x;
    };

    struct ProfilePoint {
        double r, rp, rpp, t, tp, tpp;
    };
    auto profile = [tab, alpha](double s_signed) {
        ProfilePoint p;
        const double s = std::abs(s_signed);
        const double sg = s_signed < 0.0 ? -1.0 : 1.0;
        p.r = tab->rho.value(s);
        const double v = tab->rho_prime(p.r);
        p.rp = sg * v;
        p.rpp = tab->accel(p.r);
        p.t = sg * tab->tau.value(s);
        p.tp = tab->t_prime(p.r);
        // t'' = -a rho' (V' h + V alpha sinh(alpha rho)) / (V h)^2
        const double x = alpha * p.r;
        if (2.0 * x >= 300.0) {
            p.tpp = 0.0; // decays like exp(-2 alpha rho); below double range here
        } else {
            const double V = std::sinh(2.0 * x) / (2.0 * alpha), Vp = std::cosh(2.0 * x);
            const double hcos = std::cosh(x), hsin = std::sinh(x);
            p.tpp = -tab->a * p.rp * (Vp * hcos + V * alpha * hsin) / (V * hcos * V * hcos);
        }
        return p;
    };

    g.jacobian = [profile, alpha](const double* u, Vec* J) {
        const ProfilePoint p = profile(u[0]);
        const double ch = std::cosh(alpha * p.r), sh = std::sinh(alpha * p.r);
        const double cT = std::cosh(alpha * p.t), sT = std::sinh(alpha * p.t);
        const double cth = std::cos(u[1]), sth = std::sin(u[1]);
        J[0] = Vec::zero(4);
        J[1] = Vec::zero(4);
        // x_s = rho' (sinh Gamma + cosh N) + t' cosh dGamma
        J[0][0] = p.rp * sh * cT + p.tp * ch * sT;
        J[0][1] = p.rp * sh * sT + p.tp * ch * cT;
        J[0][2] = p.rp * ch * cth;
        J[0][3] = p.rp * ch * sth;
        J[1][2] = -(sh / alpha) * sth;
        J[1][3] = (sh / alpha) * cth;
    };
    g.hessian = [profile, alpha](const double* u, Vec* H) {
        const ProfilePoint p = profile(u[0]);
        const double ch = std::cosh(alpha * p.r), sh = std::sinh(alpha * p.r);
        const double cT = std::cosh(alpha * p.t), sT = std::sinh(alpha * p.t);
        const double cth = std::cos(u[1]), sth = std::sin(u[1]);
        for (int k = 0; k < 3; ++k) H[k] = Vec::zero(4);
        // x_ss = (rho'' sh + a rho'^2 ch + a t'^2 ch) G
        //      + (t'' ch + 2 a rho' t' sh) dG + (rho'' ch + a rho'^2 sh) N
        const double gG = p.rpp * sh + alpha * p.rp * p.rp * ch + alpha * p.tp * p.tp * ch;
        const double gN = p.rpp * ch + alpha * p.rp * p.rp * sh;
        const double gdG = p.tpp * ch + 2.0 * alpha * p.rp * sh * p.tp;
        H[0][0] = gG * cT + gdG * sT;
        H[0][1] = gG * sT + gdG * cT;
        H[0][2] = gN * cth;
        H[0][3] = gN * sth;
        // x_{s theta} = rho' cosh N'
        H[1][2] = -p.rp * ch * sth;
        H[1][3] = p.rp * ch * cth;
        // x_{theta theta} = -(sinh / alpha) N
        H[2][2] = -(sh / alpha) * cth;
        H[2][3] = -(sh / alpha) * sth;
    };

    const double rho0 = tab->rho0;
    g.distance_fn = [tab, alpha, rho0](const double* u) {
        const double s = std::abs(u[0]);
        const double r = tab->rho.value(s), t = tab->tau.value(s);
        const double xr = alpha * r, x0 = alpha * rho0;
        const double arg = std::cosh(xr) * std::cosh(x0) * std::cosh(alpha * t) -
                           std::sinh(xr) * std::sinh(x0) * std::cos(u[1]);
        return std::acosh(std::max(arg, 1.0)) / alpha;
    };
    g.area_fn = [tab, alpha](const double* u) {
        return std::sinh(alpha * tab->rho.value(std::abs(u[0]))) / alpha;
    };
    // K = -g''/g for g(s) = S(rho(s)).
    g.gauss_fn = [tab, alpha](const double* u) {
        const double r = tab->rho.value(std::abs(u[0]));
        const double v = tab->rho_prime(r);
        const double gpp = alpha * std::sinh(alpha * r) * v * v +
                           std::cosh(alpha * r) * tab->accel(r);
        return -gpp / (std::sinh(alpha * r) / alpha);
    };
    // The distance to the axis is 1-Lipschitz, so r_p >= rho(s) - rho0 and
    // the extrinsic ball of radius s_max sits inside rho <= rho0 + s_max.
    g.domain_fn = [tab, rho0](double s_max) {
        const double target = rho0 + s_max + 0.5;
        if (tab->rho.value(tab->s_table) < target)
            throw std::invalid_argument(
                "catalog: truncation exceeds the tabulated catenoid range; rebuild with "
                "larger s_range");
        const double s_hi = bisect(
            [&](double s) { return tab->rho.value(s) - target; }, 0.0, tab->s_table, 1e-12);
        DomainRect d;
        d.dims = 2;
        d.range[0] = {-s_hi, s_hi};
        d.range[1] = {0.0, 2.0 * kPi};
        return d;
    };

    SurfaceOfRevolution rev;
    rev.name = g.name;
    rev.circle_radius = [tab, alpha](double s) {
        return std::sinh(alpha * tab->rho.value(std::abs(s))) / alpha;
    };
    rev.s_limit = tab->s_table;
    rev.axis_at_zero = false;
    g.revolution = rev;

    // Minimality self-check: the mean curvature of the constructed chart
    // must vanish to numerical precision.
    {
        const double smax_chk = std::min(6.0 / std::max(1.0, alpha), 0.9 * tab->s_table);
        for (double s : {0.0, 0.17 * smax_chk, 0.5 * smax_chk, smax_chk})
            for (double th : {0.4, 2.3}) {
                const double u[2] = {s, th};
                const double H = second_fundamental_form(g, u).mean_h;
                if (!(H <= 1e-6 * std::max(1.0, alpha)))
                    throw std::runtime_error(
                        "catalog: hyperbolic catenoid failed its minimality check");
            }
    }
    return g;
}

// ---------------------------------------------------------------------------
// Intrinsic rotationally symmetric surface d r^2 + f(r)^2 d theta^2 with
//   f(r) = S_kappa(r) (1 + eps tanh^2(alpha r)),
// which keeps K = -f''/f <= kappa (the perturbation decays like
// exp(-2 alpha r)) while inflating the volume ratio toward 1 + eps.
// Profiles with eps < 0 violate the comparison and are rejected by the
// curvature check, which makes them a convenient negative control.

inline ImmersedGeometry warped_intrinsic_surface(double eps, double kappa) {
    require_admissible_curvature(kappa);
    if (!(kappa < 0.0))
        throw std::invalid_argument("catalog: warped profile needs kappa < 0");
    if (!(std::abs(eps) > 0.0) || !(std::abs(eps) <= 10.0))
        throw std::invalid_argument("catalog: warped amplitude must satisfy 0 < |eps| <= 10");
    const double alpha = std::sqrt(-kappa);

    struct Profile {
        double alpha, eps;
        // f, f' and f'' from closed forms (tanh/sech identities).
        double f(double r) const {
            const double t = std::tanh(alpha * r);
            return std::sinh(alpha * r) / alpha * (1.0 + eps * t * t);
        }
        double fpp(double r) const {
            const double t = std::tanh(alpha * r), h = 1.0 / std::cosh(alpha * r);
            const double S = std::sinh(alpha * r) / alpha, c = std::cosh(alpha * r);
            const double phi = t * t;
            const double phip = 2.0 * alpha * t * h * h;
            const double phipp = 2.0 * alpha * alpha * h * h * (h * h - 2.0 * t * t);
            return alpha * alpha * S * (1.0 + eps * phi) + 2.0 * c * eps * phip +
                   S * eps * phipp;
        }
    };
    const Profile pr{alpha, eps};

    // Verify the curvature comparison K <= kappa, i.e. f'' - alpha^2 f >= 0,
    // on a geometric grid; also confirm f/S stays bounded by 1 + eps.
    for (int k = 0; k <= 600; ++k) {
        const double r = (1e-3 + (40.0 - 1e-3) * k / 600.0) / alpha;
        const double excess = pr.fpp(r) - alpha * alpha * pr.f(r);
        if (!(excess >= -1e-12 * std::max(1.0, alpha * alpha * pr.f(r)))) {
            std::ostringstream os;
            os << "catalog: warped profile violates the curvature comparison at r = " << r;
            throw std::invalid_argument(os.str());
        }
        const double ratio = pr.f(r) / (std::sinh(alpha * r) / alpha);
        if (!(ratio <= 1.0 + eps + 1e-9))
            throw std::runtime_error("catalog: warped profile volume ratio unbounded");
    }

    ImmersedGeometry g;
    g.name = "warped-intrinsic";
    g.ambient = Ambient::intrinsic(kappa);
    g.n = 2;
    g.base = {0.0, 0.0};
    g.radial_axis0 = true;
    g.topology.euler_char = 1;
    g.topology.ends = 1;
    g.distance_fn = [](const double* u) { return std::abs(u[0]); };
    g.area_fn = [pr](const double* u) { return pr.f(std::abs(u[0])); };
    g.gauss_fn = [pr](const double* u) {
        const double r = std::max(std::abs(u[0]), 1e-7 / pr.alpha);
        return -pr.fpp(r) / pr.f(r);
    };
    g.domain_fn = [](double s_max) {
        DomainRect d;
        d.dims = 2;
        d.range[0] = {0.0, s_max};
        d.range[1] = {0.0, 2.0 * kPi};
        return d;
    };
    SurfaceOfRevolution rev;
    rev.name = g.name;
    rev.circle_radius = [pr](double s) { return pr.f(std::abs(s)); };
    rev.s_limit = std::numeric_limits<double>::infinity();
    rev.axis_at_zero = true;
    g.revolution = rev;
    return g;
}

// ---------------------------------------------------------------------------
// Catalog listing.

struct CatalogTarget {
    std::string quantity;
    double value = 0.0;
    std::string basis; // "closed form", "classical", or "computed"
};

struct CatalogEntry {
    std::string name;
    std::string summary;
    std::string parameters;
    std::vector<CatalogTarget> targets;
};

inline std::vector<CatalogEntry> catalog_entries() {
    std::vector<CatalogEntry> out;
    out.push_back(
        {"totally-geodesic",
         "totally geodesic H^n (or R^n) inside H^m (or R^m), polar chart",
         "n in {2,3}, m in [n,5], kappa <= 0",
         {{"volume_ratio_Q", 1.0, "closed form"},
          {"doubling_constant", 1.0, "closed form"},
          {"fundamental_tone (n=2, kappa=-1)", 0.25, "classical"}}});
    out.push_back(
        {"euclidean-catenoid",
         "catenoid of waist scale c0 in R^3, chart (t, theta)",
         "scale c0 > 0",
         {{"fundamental_tone", 0.0, "classical"},
          {"total_squared_second_form", 8.0 * kPi, "closed form"},
          {"sup_volume_ratio_Q", 2.0, "closed form"},
          {"ends", 2.0, "closed form"}}});
    out.push_back(
        {"hyperbolic-catenoid",
         "spherical catenoid about a geodesic axis in H^3, arc-length chart",
         "a > 0 within the reported window, kappa < 0, optional s_range",
         {{"fundamental_tone (a=1, kappa=-1)", 0.25, "computed"},
          {"sup_volume_ratio_Q", 2.0, "computed"},
          {"ends", 2.0, "closed form"}}});
    out.push_back(
        {"warped-intrinsic",
         "intrinsic metric dr^2 + f(r)^2 dtheta^2, f = S_kappa(r)(1 + eps tanh^2(alpha r))",
         "0 < eps <= 10, kappa < 0",
         {{"fundamental_tone (kappa=-1)", 0.25, "classical"},
          {"sup_volume_ratio_Q - 1 (units of eps)", 1.0, "closed form"}}});
    return out;
}

// ---------------------------------------------------------------------------
// Strict JSON loader for geometry descriptions. Only built-in geometries can
// be instantiated from files; unknown keys are rejected.

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& j,
                                std::initializer_list<const char*> allowed,
                                const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed) ok = ok || it.key() == k;
        if (!ok)
            throw std::invalid_argument("config: unknown key '" + it.key() + "' in " + where);
    }
}

inline double json_number(const nlohmann::json& j, const char* key, double fallback,
                          bool required = false) {
    if (!j.contains(key)) {
        if (required) throw std::invalid_argument(std::string("config: missing key '") + key + "'");
        return fallback;
    }
    if (!j.at(key).is_number())
        throw std::invalid_argument(std::string("config: key '") + key + "' must be a number");
    return j.at(key).get<double>();
}

} // namespace detail

inline ImmersedGeometry geometry_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("config: geometry must be a JSON object");
    detail::reject_unknown_keys(j, {"ambient", "builtin", "base_point", "topology"},
                                "geometry");
    if (!j.contains("ambient") || !j.contains("builtin"))
        throw std::invalid_argument("config: geometry needs 'ambient' and 'builtin'");

    const auto& amb = j.at("ambient");
    detail::reject_unknown_keys(amb, {"kind", "m", "kappa"}, "ambient");
    const std::string kind = amb.value("kind", "");
    const double kappa = detail::json_number(amb, "kappa", 0.0);
    const int m = static_cast<int>(detail::json_number(amb, "m", 3.0));

    const auto& b = j.at("builtin");
    detail::reject_unknown_keys(b, {"name", "params"}, "builtin");
    const std::string name = b.value("name", "");
    const nlohmann::json params = b.contains("params") ? b.at("params") : nlohmann::json::object();

    ImmersedGeometry g;
    if (name == "totally-geodesic") {
        detail::reject_unknown_keys(params, {"n"}, "params");
        const int n = static_cast<int>(detail::json_number(params, "n", 2.0));
        if (kind == "euclidean" && kappa != 0.0)
            throw std::invalid_argument("config: euclidean ambient requires kappa = 0");
        if (kind == "hyperbolic" && !(kappa < 0.0))
            throw std::invalid_argument("config: hyperbolic ambient requires kappa < 0");
        if (kind != "euclidean" && kind != "hyperbolic")
            throw std::invalid_argument("config: ambient kind must be euclidean or hyperbolic");
        g = totally_geodesic(n, m, kappa);
    } else if (name == "euclidean-catenoid") {
        detail::reject_unknown_keys(params, {"scale"}, "params");
        if (kind != "euclidean" || m != 3)
            throw std::invalid_argument("config: euclidean-catenoid needs euclidean ambient, m = 3");
        g = euclidean_catenoid(detail::json_number(params, "scale", 1.0));
    } else if (name == "hyperbolic-catenoid") {
        detail::reject_unknown_keys(params, {"a", "s_range"}, "params");
        if (kind != "hyperbolic" || m != 3)
            throw std::invalid_argument(
                "config: hyperbolic-catenoid needs hyperbolic ambient, m = 3");
        g = hyperbolic_catenoid(detail::json_number(params, "a", 1.0, true), kappa,
                                detail::json_number(params, "s_range", 64.0));
    } else if (name == "warped-intrinsic") {
        detail::reject_unknown_keys(params, {"epsilon"}, "params");
        if (kind != "intrinsic")
            throw std::invalid_argument("config: warped-intrinsic needs intrinsic ambient");
        g = warped_intrinsic_surface(detail::json_number(params, "epsilon", 0.0, true), kappa);
    } else {
        throw std::invalid_argument("config: unknown builtin geometry '" + name + "'");
    }

    if (j.contains("base_point")) {
        const auto& bp = j.at("base_point");
        if (!bp.is_array() || bp.size() != g.base.size())
            throw std::invalid_argument("config: base_point must list all chart parameters");
        for (std::size_t i = 0; i < g.base.size(); ++i)
            if (std::abs(bp.at(i).get<double>() - g.base[i]) > 1e-12)
                throw std::invalid_argument(
                    "config: custom base points are not supported for built-ins");
    }
    if (j.contains("topology")) {
        const auto& t = j.at("topology");
        detail::reject_unknown_keys(t, {"euler_char", "ends"}, "topology");
        if (t.contains("euler_char") &&
            t.at("euler_char").get<int>() != g.topology.euler_char.value_or(0))
            throw std::invalid_argument("config: topology.euler_char contradicts the builtin");
        if (t.contains("ends") && t.at("ends").get<int>() != g.topology.ends.value_or(0))
            throw std::invalid_argument("config: topology.ends contradicts the builtin");
    }
    return g;
}

inline ImmersedGeometry load_geometry(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open geometry file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("config: geometry file is not valid JSON: ") +
                                    e.what());
    }
    return geometry_from_json(j);
}

} // namespace tone
