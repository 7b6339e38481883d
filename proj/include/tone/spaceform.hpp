#pragma once

// Simply connected space forms of curvature kappa <= 0: the comparison
// functions S_kappa / C_kappa and the volumes of geodesic spheres and balls,
// together with log-space variants that stay finite far beyond the overflow
// range of the linear values (needed for hyperbolic radii in the thousands).

#include <cmath>
#include <stdexcept>
#include <string>

#include "tone/numerics.hpp"

namespace tone {

// Curvatures closer to zero than this are treated as exactly flat.
inline constexpr double kFlatKappaCutoff = 1e-14;

inline bool is_flat(double kappa) { return std::abs(kappa) < kFlatKappaCutoff; }

inline void require_admissible_curvature(double kappa) {
    if (!(kappa <= 0.0) || !std::isfinite(kappa))
        throw std::invalid_argument("spaceform: curvature must be finite and <= 0");
}

// sqrt(-kappa); zero in the flat case.
inline double curvature_scale(double kappa) {
    require_admissible_curvature(kappa);
    return is_flat(kappa) ? 0.0 : std::sqrt(-kappa);
}

// S_kappa(t): solution of S'' + kappa S = 0 with S(0)=0, S'(0)=1.
// Equals t when flat, sinh(sqrt(-kappa) t)/sqrt(-kappa) otherwise.
inline double s_kappa(double kappa, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("spaceform: s_kappa needs t >= 0");
    const double a = curvature_scale(kappa);
    if (a == 0.0) return t;
    return std::sinh(a * t) / a;
}

// log S_kappa(t); finite for arguments where the linear value overflows.
inline double log_s_kappa(double kappa, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("spaceform: log_s_kappa needs t >= 0");
    if (t == 0.0) return neg_inf();
    const double a = curvature_scale(kappa);
    if (a == 0.0) return std::log(t);
    const double x = a * t;
    if (x < 350.0) return std::log(std::sinh(x) / a);
    // sinh(x) = e^x (1 - e^{-2x}) / 2
    return x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0 * a);
}

// C_kappa(t) = S_kappa'(t) / S_kappa(t); 1/t flat, sqrt(-kappa) coth(...) otherwise.
inline double c_kappa(double kappa, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("spaceform: c_kappa needs t > 0");
    const double a = curvature_scale(kappa);
    if (a == 0.0) return 1.0 / t;
    return a / std::tanh(a * t);
}

// Volume of the unit sphere S^{n-1} in R^n: 2 pi^{n/2} / Gamma(n/2).
inline double unit_sphere_volume(int n) {
    if (n < 2) throw std::invalid_argument("spaceform: dimension must be >= 2");
    return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

// Volume of the geodesic sphere of radius R in the n-dimensional model.
inline double sphere_volume(double kappa, int n, double R) {
    if (!(R >= 0.0)) throw std::invalid_argument("spaceform: radius must be >= 0");
    return unit_sphere_volume(n) * std::pow(s_kappa(kappa, R), n - 1);
}

inline double log_sphere_volume(double kappa, int n, double R) {
    if (!(R >= 0.0)) throw std::invalid_argument("spaceform: radius must be >= 0");
    if (R == 0.0) return neg_inf();
    return std::log(unit_sphere_volume(n)) +
           static_cast<double>(n - 1) * log_s_kappa(kappa, R);
}

namespace detail {

// Exact antiderivative of sinh^{n-1}(a s)/a^{n-1} on [0, R] by binomial
// expansion of (e^{as} - e^{-as})^{n-1}; used in both linear and log form.
// Terms: sum_j (-1)^j C(n-1, j) (e^{b_j R} - 1)/b_j, b_j = (n-1-2j) a.
inline double ball_integral_linear(double a, int n, double R) {
    const int k = n - 1;
    double binom = 1.0;
    double acc = 0.0;
    for (int j = 0; j <= k; ++j) {
        const double b = (k - 2 * j) * a;
        const double term =
            (b == 0.0) ? R : std::expm1(b * R) / b;
        acc += ((j % 2 == 0) ? 1.0 : -1.0) * binom * term;
        binom = binom * (k - j) / (j + 1.0);
    }
    return acc / std::pow(2.0 * a, k);
}

// log of the same integral for large a*R: factor out the leading mode
// e^{(n-1) a R} / ((n-1) a); the remaining ratios are O(e^{-2aR}).
inline double log_ball_integral(double a, int n, double R) {
    const int k = n - 1;
    const double lead = static_cast<double>(k) * a * R;
    double binom = 1.0;
    double acc = 0.0;
    for (int j = 0; j <= k; ++j) {
        const double b = (k - 2 * j) * a;
        double ratio;
        if (b == 0.0) {
            ratio = R * k * a * std::exp(-lead);
        } else {
            // (e^{bR} - 1)/b * (k a) e^{-lead}
            ratio = (std::exp(b * R - lead) - std::exp(-lead)) * (k * a) / b;
        }
        acc += ((j % 2 == 0) ? 1.0 : -1.0) * binom * ratio;
        binom = binom * (k - j) / (j + 1.0);
    }
    return lead - std::log(static_cast<double>(k) * a) + std::log(acc) -
           static_cast<double>(k) * std::log(2.0 * a);
}

} // namespace detail

// Volume of the geodesic ball of radius R in the n-dimensional model.
// Closed form when flat; exact exponential-sum antiderivative otherwise.
// Overflows to +inf past the double range (use log_ball_volume there).
inline double ball_volume(double kappa, int n, double R) {
    if (!(R >= 0.0)) throw std::invalid_argument("spaceform: radius must be >= 0");
    const double omega = unit_sphere_volume(n);
    const double a = curvature_scale(kappa);
    if (a == 0.0) return omega * std::pow(R, n) / static_cast<double>(n);
    if (R == 0.0) return 0.0;
    const double x = a * R;
    if (n == 2) {
        // 2 pi (cosh(aR) - 1)/a^2 = 4 pi sinh^2(aR/2)/a^2, cancellation-free.
        const double sh = std::sinh(0.5 * x);
        return omega * 2.0 * sh * sh / (a * a);
    }
    if (x < 0.5) {
        // Small radii: the alternating sum cancels badly; integrate directly.
        return omega * integrate_adaptive(
                           [&](double s) { return std::pow(s_kappa(kappa, s), n - 1); },
                           0.0, R, 1e-14);
    }
    return omega * detail::ball_integral_linear(a, n, R);
}

inline double log_ball_volume(double kappa, int n, double R) {
    if (!(R >= 0.0)) throw std::invalid_argument("spaceform: radius must be >= 0");
    if (R == 0.0) return neg_inf();
    const double a = curvature_scale(kappa);
    if (a == 0.0)
        return std::log(unit_sphere_volume(n) / static_cast<double>(n)) +
               static_cast<double>(n) * std::log(R);
    if (static_cast<double>(n - 1) * a * R < 600.0)
        return std::log(ball_volume(kappa, n, R));
    return std::log(unit_sphere_volume(n)) + detail::log_ball_integral(a, n, R);
}

// A model space form K^n(kappa), kappa <= 0, n >= 2.
struct SpaceForm {
    double kappa = 0.0;
    int dim = 2;

    SpaceForm() = default;
    SpaceForm(double kappa_, int dim_) : kappa(kappa_), dim(dim_) {
        require_admissible_curvature(kappa);
        if (dim < 2) throw std::invalid_argument("spaceform: dimension must be >= 2");
    }

    double scale() const { return curvature_scale(kappa); }
    bool flat() const { return is_flat(kappa); }

    double s(double t) const { return s_kappa(kappa, t); }
    double log_s(double t) const { return log_s_kappa(kappa, t); }
    double c(double t) const { return c_kappa(kappa, t); }
    double sphere(double R) const { return sphere_volume(kappa, dim, R); }
    double log_sphere(double R) const { return log_sphere_volume(kappa, dim, R); }
    double ball(double R) const { return ball_volume(kappa, dim, R); }
    double log_ball(double R) const { return log_ball_volume(kappa, dim, R); }
};

} // namespace tone
