#pragma once

// Immersed submanifold geometry: ambient spaces (Euclidean, hyperbolic via
// the hyperboloid model, or a purely intrinsic rotationally symmetric mode),
// charts with analytic or finite-difference derivatives, extrinsic
// distances, induced area elements, and the second fundamental form.

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tone/numerics.hpp"
#include "tone/spaceform.hpp"

namespace tone {

// ---------------------------------------------------------------------------
// Small fixed-capacity vector for ambient points/tangents (no allocation).

struct Vec {
    int n = 0;
    std::array<double, 8> a{};

    double& operator[](int i) { return a[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return a[static_cast<std::size_t>(i)]; }

    static Vec zero(int n) {
        Vec v;
        v.n = n;
        return v;
    }
};

inline Vec operator+(const Vec& x, const Vec& y) {
    Vec r = x;
    for (int i = 0; i < x.n; ++i) r[i] += y[i];
    return r;
}
inline Vec operator-(const Vec& x, const Vec& y) {
    Vec r = x;
    for (int i = 0; i < x.n; ++i) r[i] -= y[i];
    return r;
}
inline Vec operator*(double s, const Vec& x) {
    Vec r = x;
    for (int i = 0; i < x.n; ++i) r[i] *= s;
    return r;
}

inline double euclid_dot(const Vec& x, const Vec& y) {
    double s = 0.0;
    for (int i = 0; i < x.n; ++i) s += x[i] * y[i];
    return s;
}

// Minkowski form of signature (-, +, ..., +) on R^{1,m}.
inline double mink_dot(const Vec& x, const Vec& y) {
    double s = -x[0] * y[0];
    for (int i = 1; i < x.n; ++i) s += x[i] * y[i];
    return s;
}

// ---------------------------------------------------------------------------
// Ambient space.

enum class AmbientKind { Euclidean, Hyperbolic, Intrinsic };

struct Ambient {
    AmbientKind kind = AmbientKind::Euclidean;
    int m = 3;           // ambient dimension (ignored in intrinsic mode)
    double kappa = 0.0;  // sectional curvature; < 0 for hyperbolic

    static Ambient euclidean(int m) {
        if (m < 2) throw std::invalid_argument("geometry: ambient dimension must be >= 2");
        return {AmbientKind::Euclidean, m, 0.0};
    }
    static Ambient hyperbolic(int m, double kappa) {
        if (m < 2) throw std::invalid_argument("geometry: ambient dimension must be >= 2");
        if (!(kappa < 0.0)) throw std::invalid_argument("geometry: hyperbolic ambient needs kappa < 0");
        return {AmbientKind::Hyperbolic, m, kappa};
    }
    static Ambient intrinsic(double kappa) {
        require_admissible_curvature(kappa);
        return {AmbientKind::Intrinsic, 0, kappa};
    }

    // Number of coordinates of an ambient point (hyperboloid lives in R^{1,m}).
    int coords() const { return kind == AmbientKind::Hyperbolic ? m + 1 : m; }

    double dot(const Vec& x, const Vec& y) const {
        return kind == AmbientKind::Hyperbolic ? mink_dot(x, y) : euclid_dot(x, y);
    }
};

// Checks the hyperboloid constraint kappa<x,x> = 1 and renormalizes small
// drift; violations beyond 1e-6 indicate a broken chart and are fatal.
inline Vec project_to_hyperboloid(const Vec& x, double kappa) {
    const double c = kappa * mink_dot(x, x);
    if (!(std::abs(c - 1.0) < 1e-6) || !(x[0] > 0.0))
        throw std::runtime_error("geometry: point violates the hyperboloid constraint");
    if (std::abs(c - 1.0) <= 1e-10) return x;
    return (1.0 / std::sqrt(c)) * x;
}

// ---------------------------------------------------------------------------
// Rotationally symmetric 1-D reduction used by the spectral oracle:
// metric ds^2 + g(s)^2 dtheta^2. If axis_at_zero, s ranges over [0, s_limit]
// with a rotation axis at s = 0; otherwise over [-s_limit, s_limit].

struct SurfaceOfRevolution {
    std::string name;
    std::function<double(double)> circle_radius; // g(s) > 0 away from an axis
    double s_limit = 0.0;
    bool axis_at_zero = true;
};

// ---------------------------------------------------------------------------
// Immersed geometry. Charts map n parameters to ambient coordinates; the
// catalog supplies analytic jacobians/hessians and closed-form distances and
// area elements, with finite differences as the generic fallback.

struct TopologyMeta {
    std::optional<int> euler_char;
    std::optional<int> ends;
};

struct DomainRect {
    int dims = 2;
    std::array<std::pair<double, double>, 3> range{};
};

struct ImmersedGeometry {
    std::string name;
    Ambient ambient;
    int n = 2;
    std::vector<double> base; // chart parameters of the base point

    std::function<Vec(const double*)> chart;
    // Analytic first derivatives: writes n tangent vectors.
    std::function<void(const double*, Vec*)> jacobian;
    // Analytic second derivatives: writes n(n+1)/2 vectors, packed (i<=j)
    // as (0,0),(0,1),...,(0,n-1),(1,1),...
    std::function<void(const double*, Vec*)> hessian;

    std::function<double(const double*)> distance_fn; // closed-form r_p
    std::function<double(const double*)> area_fn;     // closed-form area element
    std::function<double(const double*)> gauss_fn;    // intrinsic K (n = 2)

    // Parameter rectangle guaranteed to contain the extrinsic ball of radius
    // s_max around the base point.
    std::function<DomainRect(double)> domain_fn;

    // True when the first chart parameter *is* the extrinsic distance; lets
    // the growth quadrature align its panels with the radius bins.
    bool radial_axis0 = false;

    TopologyMeta topology;
    std::optional<SurfaceOfRevolution> revolution;

    bool intrinsic() const { return ambient.kind == AmbientKind::Intrinsic; }
};

inline int sym_index(int i, int j, int n) {
    if (i > j) std::swap(i, j);
    int idx = 0;
    for (int r = 0; r < i; ++r) idx += n - r;
    return idx + (j - i);
}

// ---------------------------------------------------------------------------
// Chart derivative access (analytic when supplied, finite differences else).

namespace detail {

inline Vec chart_point(const ImmersedGeometry& g, const double* u) {
    Vec x = g.chart(u);
    if (g.ambient.kind == AmbientKind::Hyperbolic)
        x = project_to_hyperboloid(x, g.ambient.kappa);
    return x;
}

inline void fd_jacobian(const ImmersedGeometry& g, const double* u, Vec* out) {
    const double h0 = std::cbrt(std::numeric_limits<double>::epsilon());
    std::array<double, 3> up{}, um{};
    for (int i = 0; i < g.n; ++i) {
        const double h = h0 * std::max(1.0, std::abs(u[i]));
        for (int k = 0; k < g.n; ++k) up[k] = um[k] = u[k];
        up[i] += h;
        um[i] -= h;
        out[i] = (1.0 / (2.0 * h)) * (g.chart(up.data()) - g.chart(um.data()));
    }
}

inline void fd_hessian(const ImmersedGeometry& g, const double* u, Vec* out) {
    const double h0 = std::pow(std::numeric_limits<double>::epsilon(), 0.25);
    std::array<double, 3> v{};
    const Vec x0 = g.chart(u);
    for (int i = 0; i < g.n; ++i) {
        const double hi = h0 * std::max(1.0, std::abs(u[i]));
        for (int j = i; j < g.n; ++j) {
            const double hj = h0 * std::max(1.0, std::abs(u[j]));
            Vec d;
            if (i == j) {
                for (int k = 0; k < g.n; ++k) v[k] = u[k];
                v[i] += hi;
                const Vec xp = g.chart(v.data());
                v[i] = u[i] - hi;
                const Vec xm = g.chart(v.data());
                d = (1.0 / (hi * hi)) * (xp + xm - 2.0 * x0);
            } else {
                auto at = [&](double si, double sj) {
                    for (int k = 0; k < g.n; ++k) v[k] = u[k];
                    v[i] += si;
                    v[j] += sj;
                    return g.chart(v.data());
                };
                d = (1.0 / (4.0 * hi * hj)) *
                    ((at(hi, hj) - at(hi, -hj)) - (at(-hi, hj) - at(-hi, -hj)));
            }
            out[sym_index(i, j, g.n)] = d;
        }
    }
}

inline void eval_jacobian(const ImmersedGeometry& g, const double* u, Vec* out) {
    if (g.jacobian)
        g.jacobian(u, out);
    else
        fd_jacobian(g, u, out);
}

inline void eval_hessian(const ImmersedGeometry& g, const double* u, Vec* out) {
    if (g.hessian)
        g.hessian(u, out);
    else
        fd_hessian(g, u, out);
}

// Inverse of a symmetric positive n x n matrix, n <= 3.
inline void invert_metric(const double* G, int n, double* Ginv, double* det_out) {
    double det = 0.0;
    if (n == 1) {
        det = G[0];
        Ginv[0] = 1.0 / det;
    } else if (n == 2) {
        det = G[0] * G[3] - G[1] * G[2];
        Ginv[0] = G[3] / det;
        Ginv[1] = -G[1] / det;
        Ginv[2] = -G[2] / det;
        Ginv[3] = G[0] / det;
    } else if (n == 3) {
        const double c00 = G[4] * G[8] - G[5] * G[7];
        const double c01 = G[5] * G[6] - G[3] * G[8];
        const double c02 = G[3] * G[7] - G[4] * G[6];
        det = G[0] * c00 + G[1] * c01 + G[2] * c02;
        Ginv[0] = c00 / det;
        Ginv[1] = (G[2] * G[7] - G[1] * G[8]) / det;
        Ginv[2] = (G[1] * G[5] - G[2] * G[4]) / det;
        Ginv[4] = (G[0] * G[8] - G[2] * G[6]) / det;
        Ginv[5] = (G[2] * G[3] - G[0] * G[5]) / det;
        Ginv[8] = (G[0] * G[4] - G[1] * G[3]) / det;
        Ginv[3] = Ginv[1];
        Ginv[6] = Ginv[2];
        Ginv[7] = Ginv[5];
    } else {
        throw std::invalid_argument("geometry: metric inversion supports n <= 3");
    }
    if (!(det > 0.0) || !std::isfinite(det))
        throw std::runtime_error("geometry: induced metric is degenerate at a node");
    *det_out = det;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Extrinsic distance r_p from the base point.

inline double extrinsic_distance(const ImmersedGeometry& g, const double* u) {
    if (g.distance_fn) return g.distance_fn(u);
    if (g.intrinsic()) return std::abs(u[0] - g.base[0]);
    const Vec x = detail::chart_point(g, u);
    const Vec p = detail::chart_point(g, g.base.data());
    if (g.ambient.kind == AmbientKind::Euclidean) {
        const Vec d = x - p;
        return std::sqrt(euclid_dot(d, d));
    }
    // Hyperbolic: dist = arccosh(kappa <x,p>)/sqrt(-kappa).
    const double ch = g.ambient.kappa * mink_dot(x, p);
    if (ch < 1.0 - 1e-12)
        throw std::domain_error("geometry: invalid hyperbolic distance argument");
    return std::acosh(std::max(ch, 1.0)) / std::sqrt(-g.ambient.kappa);
}

// Induced Riemannian volume density sqrt(det g_ij) at chart parameters u.
inline double area_element(const ImmersedGeometry& g, const double* u) {
    if (g.area_fn) return g.area_fn(u);
    if (g.intrinsic())
        throw std::invalid_argument("geometry: intrinsic geometry needs an explicit area density");
    Vec J[3];
    detail::eval_jacobian(g, u, J);
    double G[9], Ginv[9], det = 0.0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) G[i * g.n + j] = g.ambient.dot(J[i], J[j]);
    detail::invert_metric(G, g.n, Ginv, &det);
    return std::sqrt(det);
}

// ---------------------------------------------------------------------------
// Second fundamental form. Euclidean ambients project the chart hessian onto
// the normal bundle; the hyperboloid model adds the Gauss-formula position
// term kappa g_ij x before projecting (with the Minkowski form throughout).

struct SecondFormReport {
    double norm_a = 0.0; // Frobenius norm |A|
    double mean_h = 0.0; // norm of the (unnormalized) mean curvature vector
};

inline SecondFormReport second_fundamental_form(const ImmersedGeometry& g,
                                                const double* u) {
    if (g.intrinsic())
        throw std::invalid_argument(
            "geometry: second fundamental form undefined for intrinsic geometries");
    const int n = g.n;
    const Vec x = detail::chart_point(g, u);
    Vec J[3], H[6];
    detail::eval_jacobian(g, u, J);
    detail::eval_hessian(g, u, H);

    double G[9], Ginv[9], det = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G[i * n + j] = g.ambient.dot(J[i], J[j]);
    detail::invert_metric(G, n, Ginv, &det);

    const bool hyperbolic = g.ambient.kind == AmbientKind::Hyperbolic;
    const int nsym = n * (n + 1) / 2;
    Vec II[6];
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            Vec B = H[sym_index(i, j, n)];
            if (hyperbolic) B = B + (g.ambient.kappa * G[i * n + j]) * x;
            // Remove the component tangent to M.
            for (int k = 0; k < n; ++k) {
                double coeff = 0.0;
                for (int l = 0; l < n; ++l)
                    coeff += Ginv[k * n + l] * g.ambient.dot(B, J[l]);
                B = B - coeff * J[k];
            }
            II[sym_index(i, j, n)] = B;
        }
    }
    (void)nsym;

    // |A|^2 = g^{ik} g^{jl} <II_ij, II_kl>;  H = g^{ij} II_ij.
    double a2 = 0.0;
    Vec mean = Vec::zero(x.n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            mean = mean + Ginv[i * n + j] * II[sym_index(i, j, n)];
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    a2 += Ginv[i * n + k] * Ginv[j * n + l] *
                          g.ambient.dot(II[sym_index(i, j, n)], II[sym_index(k, l, n)]);
        }
    // Normal directions are spacelike, so both norms are nonnegative up to
    // roundoff; clamp tiny negatives.
    const double h2 = g.ambient.dot(mean, mean);
    SecondFormReport rep;
    rep.norm_a = std::sqrt(std::max(a2, 0.0));
    rep.mean_h = std::sqrt(std::max(h2, 0.0));
    return rep;
}

inline double second_fundamental_form_norm(const ImmersedGeometry& g, const double* u) {
    return second_fundamental_form(g, u).norm_a;
}

// Pointwise |A| preferring the catalog's Gauss-equation shortcut
// (|A|^2 = 2 (kappa - K) for minimal surfaces) when a curvature callback
// is available; falls back to the projection path.
inline double norm_a_fast(const ImmersedGeometry& g, const double* u) {
    if (g.n == 2 && g.gauss_fn && !g.intrinsic())
        return std::sqrt(std::max(0.0, 2.0 * (g.ambient.kappa - g.gauss_fn(u))));
    return second_fundamental_form_norm(g, u);
}

// Intrinsic Gauss curvature (n = 2). Catalog geometries supply closed forms.
inline double gauss_curvature(const ImmersedGeometry& g, const double* u) {
    if (g.n != 2)
        throw std::invalid_argument("geometry: Gauss curvature requires n = 2");
    if (g.gauss_fn) return g.gauss_fn(u);
    if (g.intrinsic())
        throw std::invalid_argument("geometry: intrinsic geometry needs a curvature callback");
    // Generic fallback: the full Gauss equation
    // K = kappa + (<II_11, II_22> - |II_12|^2) / det g.
    Vec J[3], H[6];
    detail::eval_jacobian(g, u, J);
    detail::eval_hessian(g, u, H);
    double G[4], Ginv[4], det = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) G[i * 2 + j] = g.ambient.dot(J[i], J[j]);
    detail::invert_metric(G, 2, Ginv, &det);
    const bool hyperbolic = g.ambient.kind == AmbientKind::Hyperbolic;
    Vec II[3];
    const Vec xp = detail::chart_point(g, u);
    for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j) {
            Vec B = H[sym_index(i, j, 2)];
            if (hyperbolic) B = B + (g.ambient.kappa * G[i * 2 + j]) * xp;
            for (int k = 0; k < 2; ++k) {
                double coeff = 0.0;
                for (int l = 0; l < 2; ++l)
                    coeff += Ginv[k * 2 + l] * g.ambient.dot(B, J[l]);
                B = B - coeff * J[k];
            }
            II[sym_index(i, j, 2)] = B;
        }
    const double num = g.ambient.dot(II[0], II[2]) - g.ambient.dot(II[1], II[1]);
    return g.ambient.kappa + num / det;
}

// ---------------------------------------------------------------------------
// Integral of the curvature defect (kappa - K_M) over the extrinsic ball of
// radius s_max; for minimal surfaces this is half the total squared second
// fundamental form. Plain tensor Gauss-Legendre quadrature with an
// indicator on r_p <= s_max.

inline double curvature_defect_integral(const ImmersedGeometry& g, double s_max,
                                        long nodes = 4096) {
    if (g.n != 2)
        throw std::invalid_argument("geometry: defect integral implemented for n = 2");
    const DomainRect dom = g.domain_fn(s_max);
    const PanelRule r0 = gauss_panels(dom.range[0].first, dom.range[0].second,
                                      std::max<long>(nodes / 8, 8));
    const PanelRule r1 = gauss_panels(dom.range[1].first, dom.range[1].second,
                                      std::max<long>(nodes / 64, 8));
    const double kap = g.ambient.kappa;
    double acc = 0.0;
    for (std::size_t i = 0; i < r0.x.size(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < r1.x.size(); ++j) {
            const double u[2] = {r0.x[i], r1.x[j]};
            if (extrinsic_distance(g, u) >= s_max) continue;
            row += r1.w[j] * (kap - gauss_curvature(g, u)) * area_element(g, u);
        }
        acc += r0.w[i] * row;
    }
    return acc;
}

} // namespace tone
