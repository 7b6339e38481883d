#pragma once

// Small numeric toolbox shared by the library: log-space reductions,
// composite Gauss-Legendre panels, adaptive Simpson quadrature, Hermite
// interpolation on uniform grids, bisection, and a deterministic parallel
// loop. Everything here is deterministic: no randomness, no
// reduction-order dependence on thread count.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace tone {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

inline double neg_inf() { return -std::numeric_limits<double>::infinity(); }

// log(sum(exp(x_i))) without overflow; empty input -> -inf.
inline double log_sum_exp(const std::vector<double>& xs) {
    double m = neg_inf();
    for (double x : xs) m = std::max(m, x);
    if (!std::isfinite(m)) return m; // all -inf (or empty)
    double acc = 0.0;
    for (double x : xs) acc += std::exp(x - m);
    return m + std::log(acc);
}

// log(exp(a) - exp(b)) for a > b; returns -inf when a == b.
inline double log_diff_exp(double a, double b) {
    if (b == neg_inf()) return a;
    if (!(a >= b)) throw std::domain_error("numerics: log_diff_exp requires a >= b");
    const double d = b - a;
    if (d >= 0.0) return neg_inf();
    return a + std::log1p(-std::exp(d));
}

// ---------------------------------------------------------------------------
// Composite Gauss-Legendre quadrature on panels.

// 8-point Gauss-Legendre rule on [-1, 1].
inline const double kGauss8X[8] = {
    -0.96028985649753623168356086857, -0.79666647741362673959155393647,
    -0.52553240991632898581773904918, -0.18343464249564980493947614236,
    0.18343464249564980493947614236,  0.52553240991632898581773904918,
    0.79666647741362673959155393647,  0.96028985649753623168356086857};
inline const double kGauss8W[8] = {
    0.10122853629037625915253135431, 0.22238103445337447054435599443,
    0.31370664587788728733796220199, 0.36268378337836198296515044928,
    0.36268378337836198296515044928, 0.31370664587788728733796220199,
    0.22238103445337447054435599443, 0.10122853629037625915253135431};

struct PanelRule {
    std::vector<double> x; // nodes
    std::vector<double> w; // weights
};

// `panels` equal panels over [lo, hi], 8 Gauss nodes each.
inline PanelRule gauss_panels(double lo, double hi, long panels) {
    if (!(hi > lo) || panels < 1)
        throw std::invalid_argument("numerics: bad panel range");
    PanelRule r;
    r.x.reserve(8 * panels);
    r.w.reserve(8 * panels);
    const double width = (hi - lo) / static_cast<double>(panels);
    for (long p = 0; p < panels; ++p) {
        const double a = lo + width * static_cast<double>(p);
        const double mid = a + 0.5 * width;
        for (int i = 0; i < 8; ++i) {
            r.x.push_back(mid + 0.5 * width * kGauss8X[i]);
            r.w.push_back(0.5 * width * kGauss8W[i]);
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Adaptive Simpson quadrature (smooth 1-D integrands, interior use only).

namespace detail {
inline double simpson_step(const std::function<double(double)>& f, double a,
                           double fa, double b, double fb, double m, double fm,
                           double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}
} // namespace detail

inline double integrate_adaptive(const std::function<double(double)>& f,
                                 double a, double b, double rel_tol = 1e-12,
                                 int max_depth = 48) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double scale = std::max({std::abs(whole), std::abs(fa) * (b - a), 1e-300});
    return detail::simpson_step(f, a, fa, b, fb, m, fm, whole, rel_tol * scale,
                                max_depth);
}

// ---------------------------------------------------------------------------
// Cubic Hermite interpolation on a uniform grid (values + derivatives).

class UniformHermite {
  public:
    UniformHermite() = default;
    UniformHermite(double x0, double dx, std::vector<double> values,
                   std::vector<double> slopes)
        : x0_(x0), dx_(dx), v_(std::move(values)), d_(std::move(slopes)) {
        if (v_.size() != d_.size() || v_.size() < 2 || !(dx_ > 0.0))
            throw std::invalid_argument("numerics: bad Hermite table");
    }

    double x_min() const { return x0_; }
    double x_max() const { return x0_ + dx_ * static_cast<double>(v_.size() - 1); }

    double value(double x) const {
        const Cell c = locate(x);
        const double h00 = (1.0 + 2.0 * c.t) * (1.0 - c.t) * (1.0 - c.t);
        const double h10 = c.t * (1.0 - c.t) * (1.0 - c.t);
        const double h01 = c.t * c.t * (3.0 - 2.0 * c.t);
        const double h11 = c.t * c.t * (c.t - 1.0);
        return h00 * v_[c.i] + h10 * dx_ * d_[c.i] + h01 * v_[c.i + 1] +
               h11 * dx_ * d_[c.i + 1];
    }

    double derivative(double x) const {
        const Cell c = locate(x);
        const double g00 = 6.0 * c.t * (c.t - 1.0);
        const double g10 = (3.0 * c.t - 4.0) * c.t + 1.0;
        const double g01 = -g00;
        const double g11 = c.t * (3.0 * c.t - 2.0);
        return (g00 * v_[c.i] + g01 * v_[c.i + 1]) / dx_ + g10 * d_[c.i] +
               g11 * d_[c.i + 1];
    }

  private:
    struct Cell {
        std::size_t i;
        double t;
    };
    Cell locate(double x) const {
        const double u = (x - x0_) / dx_;
        if (u < -1e-9 || u > static_cast<double>(v_.size() - 1) + 1e-9)
            throw std::domain_error("numerics: Hermite evaluation out of range");
        const double cl = std::clamp(u, 0.0, static_cast<double>(v_.size() - 1));
        std::size_t i = static_cast<std::size_t>(cl);
        if (i >= v_.size() - 1) i = v_.size() - 2;
        return {i, cl - static_cast<double>(i)};
    }

    double x0_ = 0.0, dx_ = 1.0;
    std::vector<double> v_, d_;
};

// ---------------------------------------------------------------------------
// Root bracketing by bisection; f must change sign on [lo, hi].

inline double bisect(const std::function<double(double)>& f, double lo,
                     double hi, double tol = 1e-14, int max_iter = 200) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0))
        throw std::invalid_argument("numerics: bisect needs a sign change");
    for (int it = 0; it < max_iter && (hi - lo) > tol * std::max(1.0, std::abs(lo));
         ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Deterministic parallel loop. Work is split into fixed chunks; each chunk
// writes only to its own slots, so results are identical for any thread
// count. TONE_THREADS (if set) caps the pool.

inline int thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("TONE_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v < 1024) hw = std::min<unsigned>(hw * 16, static_cast<unsigned>(v));
    }
    return static_cast<int>(hw);
}

inline void parallel_for(long begin, long end,
                         const std::function<void(long, long)>& body,
                         int threads = 0) {
    if (end <= begin) return;
    if (threads <= 0) threads = thread_budget();
    const long span = end - begin;
    const int used = static_cast<int>(std::min<long>(threads, span));
    if (used <= 1) {
        body(begin, end);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(used));
    const long chunk = (span + used - 1) / used;
    for (int t = 0; t < used; ++t) {
        const long lo = begin + chunk * t;
        const long hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

} // namespace tone
