#pragma once

// Two-sided eigenvalue bounds. Lower bounds are the classical curvature
// comparisons; upper bounds test the Rayleigh quotient with a compactly
// supported radial function against a growth profile, either directly
// (bin-wise quadrature in log space) or through the assembled closed-form
// majorant Lambda(R)/F(R) weighted by the growth ratio. A doubling constant
// turns the profile into a two-sided bracket.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "tone/growth.hpp"
#include "tone/numerics.hpp"
#include "tone/spaceform.hpp"

namespace tone {

// lambda^* >= (n-1)^2 (-kappa) / 4 for Cartan-Hadamard targets.
inline double mckean_lower(int n, double kappa) {
    if (n < 2) throw std::invalid_argument("bounds: dimension must be >= 2");
    require_admissible_curvature(kappa);
    return 0.25 * (n - 1.0) * (n - 1.0) * (-kappa) + 0.0; // +0.0 avoids -0 when kappa == 0
}

// Via the isoperimetric constant h >= (n-1) sqrt(-kappa) and lambda >= h^2/4;
// numerically identical to the McKean constant.
inline double cheeger_lower(int n, double kappa) {
    if (n < 2) throw std::invalid_argument("bounds: dimension must be >= 2");
    require_admissible_curvature(kappa);
    const double h = (n - 1.0) * std::sqrt(-kappa);
    return 0.25 * h * h;
}

// Closed-form majorant of the space-form Rayleigh quotient of the radial
// test function supported on [R/2, R].
inline double lambda_R(int m, double kappa, double R) {
    if (!(R > 0.0)) throw std::invalid_argument("bounds: radius must be positive");
    const double c = c_kappa(kappa, R / 2.0);
    const double mm = m - 1.0;
    return 0.25 * mm * mm * c * c + 8.0 * kPi * kPi / (R * R) + 4.0 * kPi * mm / R * c;
}

// Companion factor appearing in the assembled upper bound.
inline double f_R(int m, double kappa, double R) {
    if (!(R > 0.0)) throw std::invalid_argument("bounds: radius must be positive");
    const double c = c_kappa(kappa, R / 2.0);
    const double mm = m - 1.0;
    return 0.25 * mm * mm * c * c + 4.0 * kPi * kPi / (R * R) + 2.0 * kPi * mm / R * c;
}

// Radial test function phi(t) = sin(2 pi (t - R/2)/R) / S_kappa(t)^{(m-1)/2},
// supported on [R/2, R].
struct TestFunction {
    double R = 1.0;
    double kappa = 0.0;
    int m = 2;

    double phase(double t) const { return 2.0 * kPi * (t - R / 2.0) / R; }
    bool supported(double t) const { return t > R / 2.0 && t < R; }

    double phi(double t) const {
        if (!supported(t)) return 0.0;
        return std::sin(phase(t)) *
               std::exp(-0.5 * (m - 1.0) * log_s_kappa(kappa, t));
    }
    double dphi(double t) const {
        if (!supported(t)) return 0.0;
        const double th = phase(t);
        const double a = (2.0 * kPi / R) * std::cos(th) -
                         0.5 * (m - 1.0) * c_kappa(kappa, t) * std::sin(th);
        return a * std::exp(-0.5 * (m - 1.0) * log_s_kappa(kappa, t));
    }
};

// ---------------------------------------------------------------------------
// Direct Rayleigh quotient of the test function against the profile density,
// one midpoint term per bin, summed in log space so that model volumes with
// huge exponents cannot overflow.

inline double rayleigh_upper(const GrowthProfile& p, int m, double kappa, double R) {
    if (!(R > 0.0)) throw std::invalid_argument("bounds: radius must be positive");
    if (R / 2.0 >= p.s_max() * (1.0 + 1e-12))
        throw std::invalid_argument("bounds: test support lies outside the profile");
    if (R > p.s_max() * (1.0 + 1e-12))
        throw std::invalid_argument("bounds: radius exceeds the profile range");

    const double ds = p.ds();
    const double log_ds = std::log(ds);
    std::vector<double> lnum, lden;
    for (std::size_t k = 1; k < p.radii.size(); ++k) {
        const double mid = 0.5 * (p.radii[k - 1] + p.radii[k]);
        if (!(mid > R / 2.0) || !(mid < R)) continue;
        const double th = 2.0 * kPi * (mid - R / 2.0) / R;
        const double sn = std::sin(th), cs = std::cos(th);
        const double a = (2.0 * kPi / R) * cs - 0.5 * (m - 1.0) * c_kappa(kappa, mid) * sn;
        const double base =
            p.log_density[k] + log_ds - (m - 1.0) * log_s_kappa(kappa, mid);
        if (a != 0.0) lnum.push_back(2.0 * std::log(std::abs(a)) + base);
        if (sn != 0.0) lden.push_back(2.0 * std::log(std::abs(sn)) + base);
    }
    if (lden.size() < 4)
        throw std::invalid_argument("bounds: too few profile bins under the test function");
    const double den = log_sum_exp(lden);
    if (den == neg_inf()) throw std::runtime_error("bounds: zero Rayleigh denominator");
    if (lnum.empty()) return 0.0;
    return std::exp(log_sum_exp(lnum) - den);
}

// Assembled closed-form bound: growth ratio times the bracket
// [ Vol(B_R)/Vol(S_R) * 4/R * F(R) * delta(R) + Lambda(R) ].
inline double paper_upper(const GrowthProfile& p, int m, double kappa, double R) {
    if (!(R > 0.0)) throw std::invalid_argument("bounds: radius must be positive");
    if (R > p.s_max() * (1.0 + 1e-12))
        throw std::invalid_argument("bounds: radius exceeds the profile range");
    const double q_ratio = q_at(p, R) / q_at(p, R / 2.0);
    const double delta = std::log(q_ratio);
    const SpaceForm sf{kappa, m};
    const double ball_over_sphere = std::exp(sf.log_ball(R) - sf.log_sphere(R));
    return q_ratio *
           (ball_over_sphere * (4.0 / R) * f_R(m, kappa, R) * delta + lambda_R(m, kappa, R));
}

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

// Doubling bracket: lower constant <= lambda^* <= C times the same constant.
inline Interval two_sided_estimate(const GrowthProfile& p, int m, double kappa) {
    const double lo = mckean_lower(m, kappa);
    const double c = doubling_constant(p);
    return {lo, c * lo};
}

// ---------------------------------------------------------------------------
// Report assembly.

struct BoundEntry {
    double R = 0.0;
    double rayleigh_upper = 0.0;
    double paper_upper = 0.0;
    double lambda_R = 0.0;
    double F_R = 0.0;
    double delta_R = 0.0;
    double q_ratio = 0.0;
};

struct BoundReport {
    std::string geometry;
    int n = 2;
    int m = 2; // dimension parameter used in the test function (defaults to n)
    double kappa = 0.0;
    double lower_mckean = 0.0;
    double lower_cheeger = 0.0;
    std::vector<BoundEntry> schedule;
    double verdict_lower = 0.0;
    double verdict_upper = 0.0; // best upper, inflated by the profile error
    double profile_rel_error = 0.0;
    double doubling = 1.0;
    Interval doubling_interval;
};

inline BoundReport assemble_report(const std::string& geometry_id, const GrowthProfile& p,
                                   const std::vector<double>& schedule, int m_override = 0) {
    if (schedule.empty()) throw std::invalid_argument("bounds: empty schedule");
    BoundReport rep;
    rep.geometry = geometry_id;
    rep.n = p.model.dim;
    rep.m = m_override > 0 ? m_override : rep.n;
    rep.kappa = p.model.kappa;
    rep.lower_mckean = mckean_lower(rep.m, rep.kappa);
    rep.lower_cheeger = cheeger_lower(rep.m, rep.kappa);
    rep.profile_rel_error = p.meta.rel_error;

    double best_upper = std::numeric_limits<double>::infinity();
    for (const double R : schedule) {
        BoundEntry e;
        e.R = R;
        e.rayleigh_upper = rayleigh_upper(p, rep.m, rep.kappa, R);
        e.paper_upper = paper_upper(p, rep.m, rep.kappa, R);
        e.lambda_R = lambda_R(rep.m, rep.kappa, R);
        e.F_R = f_R(rep.m, rep.kappa, R);
        e.delta_R = log_growth_delta(p, R);
        e.q_ratio = q_at(p, R) / q_at(p, R / 2.0);
        best_upper = std::min(best_upper, std::min(e.rayleigh_upper, e.paper_upper));
        rep.schedule.push_back(e);
    }
    rep.verdict_lower = std::max(rep.lower_mckean, rep.lower_cheeger);
    rep.verdict_upper = best_upper * (1.0 + p.meta.rel_error);
    rep.doubling = doubling_constant(p);
    rep.doubling_interval = two_sided_estimate(p, rep.m, rep.kappa);
    return rep;
}

} // namespace tone
