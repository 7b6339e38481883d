#pragma once

// Independent 1-D spectral oracle. Rotationally symmetric surfaces reduce the
// bottom of the spectrum to a singular Sturm-Liouville problem
//   -(g u')' = lambda g u   on [0, T],
// with a regularity (Neumann) condition at s = 0 — either a true rotation
// axis where g(0) = 0, or the even-symmetry midline of a two-ended surface —
// and a Dirichlet condition at the truncation radius T. Discretization is a
// symmetric second-order finite-difference pencil; eigenvalues come from
// Sturm-sequence bisection, meshes are Richardson-extrapolated, and the
// domain truncation is extrapolated in 1/T^2.

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tone/geometry.hpp"
#include "tone/numerics.hpp"

namespace tone {

struct SturmLiouvilleProblem {
    std::function<double(double)> p; // stiffness coefficient
    std::function<double(double)> w; // mass density
    double a = 0.0, b = 1.0;
    bool neumann_left = false; // zero-flux row at s = a (axis or mirror line)
};

namespace detail {

struct Pencil {
    std::vector<double> kd, ke, md; // stiffness tridiagonal + lumped mass
};

// Node-centered uniform mesh. Face coefficients are evaluated at the face
// midpoints, which keeps the pencil symmetric and behaves correctly when the
// coefficient degenerates at a rotation axis.
inline Pencil assemble(const SturmLiouvilleProblem& pr, long mesh) {
    if (mesh < 16) throw std::invalid_argument("spectrum: mesh too coarse");
    if (!(pr.b > pr.a)) throw std::invalid_argument("spectrum: empty interval");
    const double h = (pr.b - pr.a) / static_cast<double>(mesh);
    const long n = pr.neumann_left ? mesh : mesh - 1;
    const double x0 = pr.neumann_left ? pr.a : pr.a + h;

    Pencil pc;
    pc.kd.resize(static_cast<std::size_t>(n));
    pc.ke.resize(static_cast<std::size_t>(n - 1));
    pc.md.resize(static_cast<std::size_t>(n));
    const double inv_h2 = 1.0 / (h * h);
    for (long i = 0; i < n; ++i) {
        const double x = x0 + h * static_cast<double>(i);
        const double p_right = pr.p(x + 0.5 * h);
        const double p_left = (i == 0 && pr.neumann_left) ? 0.0 : pr.p(x - 0.5 * h);
        pc.kd[static_cast<std::size_t>(i)] = (p_left + p_right) * inv_h2;
        if (i + 1 < n) pc.ke[static_cast<std::size_t>(i)] = -p_right * inv_h2;
        pc.md[static_cast<std::size_t>(i)] =
            (i == 0 && pr.neumann_left) ? 0.5 * pr.w(pr.a + 0.25 * h) : pr.w(x);
        if (!std::isfinite(pc.kd[static_cast<std::size_t>(i)]) ||
            !std::isfinite(pc.md[static_cast<std::size_t>(i)]) ||
            !(pc.md[static_cast<std::size_t>(i)] > 0.0))
            throw std::runtime_error("spectrum: coefficient overflow on the mesh");
    }
    return pc;
}

// Number of eigenvalues of (K, M) strictly below sigma, by counting negative
// pivots of the LDL^T factorization of K - sigma M.
inline long count_below(const Pencil& pc, double sigma) {
    long cnt = 0;
    double prev = 0.0;
    for (std::size_t i = 0; i < pc.kd.size(); ++i) {
        double d = pc.kd[i] - sigma * pc.md[i];
        if (i > 0) {
            const double denom = prev == 0.0 ? 1e-300 : prev;
            d -= pc.ke[i - 1] * pc.ke[i - 1] / denom;
        }
        if (d < 0.0) ++cnt;
        prev = d;
    }
    return cnt;
}

} // namespace detail

// Smallest generalized eigenvalue of the discretized problem.
inline double bottom_eigenvalue(const SturmLiouvilleProblem& pr, long mesh) {
    const detail::Pencil pc = detail::assemble(pr, mesh);
    // Gershgorin-type upper bound for the whole spectrum.
    double hi = 0.0;
    for (std::size_t i = 0; i < pc.kd.size(); ++i) {
        double row = pc.kd[i];
        if (i > 0) row += std::abs(pc.ke[i - 1]);
        if (i + 1 < pc.kd.size()) row += std::abs(pc.ke[i]);
        hi = std::max(hi, row / pc.md[i]);
    }
    hi = hi * 1.001 + 1.0;
    double lo = 0.0;
    if (detail::count_below(pc, lo) != 0)
        throw std::runtime_error("spectrum: discrete operator is not positive");
    for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (detail::count_below(pc, mid) >= 1)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

struct Extrapolated {
    double value = 0.0;
    double error = 0.0;
};

// Second-order scheme: combine lambda(h) and lambda(h/2).
inline Extrapolated richardson_extrapolate(double coarse, double fine) {
    Extrapolated e;
    e.value = (4.0 * fine - coarse) / 3.0;
    e.error = std::abs(fine - coarse) / 3.0;
    return e;
}

struct SpectrumResult {
    std::string geometry;
    std::vector<double> truncations;
    std::vector<double> lambda1;    // per-truncation, mesh-extrapolated
    std::vector<double> mesh_error; // per-truncation Richardson estimates
    double extrapolated = 0.0;      // truncation limit (1/T^2 model)
    double error = 0.0;
    long mesh = 0;
};

inline SpectrumResult tone_of_revolution_surface(const SurfaceOfRevolution& rev,
                                                 std::vector<double> truncations,
                                                 long mesh = 4096) {
    if (truncations.empty())
        throw std::invalid_argument("spectrum: need at least one truncation radius");
    for (std::size_t i = 0; i < truncations.size(); ++i) {
        if (!(truncations[i] > 0.0) || !std::isfinite(truncations[i]))
            throw std::invalid_argument("spectrum: truncation radii must be positive");
        if (i > 0 && !(truncations[i] > truncations[i - 1]))
            throw std::invalid_argument("spectrum: truncation radii must increase");
        if (truncations[i] > rev.s_limit * (1.0 + 1e-9))
            throw std::invalid_argument(
                "spectrum: truncation exceeds the surface's tabulated range");
    }

    SpectrumResult res;
    res.geometry = rev.name;
    res.truncations = truncations;
    res.mesh = mesh;
    for (const double T : truncations) {
        if (!std::isfinite(rev.circle_radius(T)))
            throw std::runtime_error("spectrum: circle radius overflows at the truncation");
        SturmLiouvilleProblem pr;
        pr.p = rev.circle_radius;
        pr.w = rev.circle_radius;
        if (rev.axis_at_zero) {
            // Rotation axis at s = 0: zero-flux row there by regularity.
            pr.a = 0.0;
            pr.b = T;
            pr.neumann_left = true;
        } else {
            // Two-ended surface: solve on [-T, T] outright, with no
            // symmetry assumption about the ground state.
            pr.a = -T;
            pr.b = T;
            pr.neumann_left = false;
        }
        const double c = bottom_eigenvalue(pr, mesh);
        const double f = bottom_eigenvalue(pr, 2 * mesh);
        const Extrapolated e = richardson_extrapolate(c, f);
        res.lambda1.push_back(e.value);
        res.mesh_error.push_back(e.error);
    }

    const std::size_t k = res.lambda1.size();
    auto t_extrap = [&](std::size_t i, std::size_t j) {
        const double xi = 1.0 / (truncations[i] * truncations[i]);
        const double xj = 1.0 / (truncations[j] * truncations[j]);
        return res.lambda1[j] - (res.lambda1[i] - res.lambda1[j]) * xj / (xi - xj);
    };
    if (k == 1) {
        res.extrapolated = res.lambda1[0];
        res.error = res.mesh_error[0];
    } else {
        res.extrapolated = t_extrap(k - 2, k - 1);
        const double tail = k >= 3 ? std::abs(res.extrapolated - t_extrap(k - 3, k - 2))
                                   : std::abs(res.lambda1[k - 1] - res.extrapolated);
        res.error = tail + res.mesh_error[k - 1];
    }
    return res;
}

} // namespace tone
