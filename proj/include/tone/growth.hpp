#pragma once

// Extrinsic volume growth. The central object is a binned profile of the
// volume function s -> Vol(M cap B_p(s)) together with the comparison ratio
// Q(s) = Vol(M cap B_p(s)) / Vol(ball of radius s in the model space form).
// Profiles come either from tensor Gauss-Legendre quadrature over a chart
// (with a half-resolution shadow pass for error estimates) or from a
// closed-form ratio in log space. All quadrature is deterministic: nodes are
// evaluated in parallel into an indexed buffer and reduced sequentially.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tone/geometry.hpp"
#include "tone/numerics.hpp"
#include "tone/spaceform.hpp"
#include "tone/version.hpp"

namespace tone {

struct QuadratureMeta {
    long nodes_axis0 = 0;
    long nodes_axis1 = 0;
    long nodes_axis2 = 0;
    int bins = 0;
    double rel_error = 0.0;         // cumulative-volume error estimate
    double density_rel_error = 0.0; // per-bin density error estimate (p95)
    bool synthetic = false;
};

struct GrowthProfile {
    SpaceForm model;           // comparison space form (kappa, intrinsic dim)
    std::vector<double> radii; // bins+1 entries, radii[0] = 0
    std::vector<double> vol;   // cumulative volume (may overflow for synthetic data)
    std::vector<double> q;     // Q(radii[k]); q[0] carries the first bin's value
    std::vector<double> density;     // per-bin dVol/ds, bin k ends at radii[k]
    std::vector<double> log_vol;     // always finite for k >= 1
    std::vector<double> log_density;
    QuadratureMeta meta;

    double s_max() const { return radii.back(); }
    double ds() const { return radii[1] - radii[0]; }
};

// Linear interpolation of Q between grid radii.
inline double q_at(const GrowthProfile& p, double r) {
    if (!(r >= 0.0) || r > p.s_max() * (1.0 + 1e-12))
        throw std::invalid_argument("growth: radius outside the profile range");
    const double ds = p.ds();
    const double pos = std::min(r / ds, static_cast<double>(p.q.size() - 1));
    const auto k = static_cast<std::size_t>(pos);
    if (k + 1 >= p.q.size()) return p.q.back();
    const double t = pos - static_cast<double>(k);
    return (1.0 - t) * p.q[k] + t * p.q[k + 1];
}

// ---------------------------------------------------------------------------
// Quadrature engine.

namespace detail {

struct PanelPlan {
    long p0 = 0, p1 = 0, p2 = 0; // 8-node panels per axis (p2 = 0 when 2-D)
};

// Radial charts pin panel edges to the bin edges so the radius of a node
// never straddles a bin boundary.
inline PanelPlan plan_panels(const ImmersedGeometry& g, int bins, long nodes0,
                             long nodes1, bool halve) {
    PanelPlan pl;
    long p0 = std::max<long>(1, nodes0 / 8);
    long p1 = std::max<long>(1, nodes1 / 8);
    if (halve) {
        p0 = std::max<long>(1, p0 / 2);
        p1 = std::max<long>(1, p1 / 2);
    }
    if (g.radial_axis0) {
        long per_bin = std::max<long>(halve ? 1 : 2, p0 / bins);
        pl.p0 = per_bin * bins;
    } else {
        pl.p0 = p0;
    }
    pl.p1 = p1;
    if (g.n == 3) pl.p2 = std::max<long>(1, p1 / 2);
    return pl;
}

// One quadrature sweep, integrand binned by extrinsic radius. point_value
// returns the full integrand (density included) at the chart parameters.
inline std::vector<double> binned_pass(const ImmersedGeometry& g, double s_max, int bins,
                                       const PanelPlan& pl,
                                       const std::function<double(const double*)>& point_value,
                                       int threads) {
    const DomainRect dom = g.domain_fn(s_max);
    const PanelRule r0 = gauss_panels(dom.range[0].first, dom.range[0].second, pl.p0);
    const PanelRule r1 = gauss_panels(dom.range[1].first, dom.range[1].second, pl.p1);
    PanelRule r2;
    const bool has2 = dom.dims == 3;
    if (has2) r2 = gauss_panels(dom.range[2].first, dom.range[2].second, pl.p2);

    const long N0 = static_cast<long>(r0.x.size());
    const long N1 = static_cast<long>(r1.x.size());
    const long N2 = has2 ? static_cast<long>(r2.x.size()) : 1;
    const long cols = N1 * N2;
    const double ds = s_max / bins;

    std::vector<double> sums(static_cast<std::size_t>(bins), 0.0);
    const long chunk_rows = std::max<long>(1, (1L << 21) / cols);
    std::vector<double> rbuf(static_cast<std::size_t>(chunk_rows * cols));
    std::vector<double> vbuf(static_cast<std::size_t>(chunk_rows * cols));

    for (long i0 = 0; i0 < N0; i0 += chunk_rows) {
        const long i1 = std::min(N0, i0 + chunk_rows);
        parallel_for(
            i0, i1,
            [&](long lo, long hi) {
                double u[3] = {0.0, 0.0, 0.0};
                for (long i = lo; i < hi; ++i) {
                    u[0] = r0.x[i];
                    const double w0 = r0.w[i];
                    for (long j = 0; j < N1; ++j) {
                        u[1] = r1.x[j];
                        const double w01 = w0 * r1.w[j];
                        for (long k = 0; k < N2; ++k) {
                            double w = w01;
                            if (has2) {
                                u[2] = r2.x[k];
                                w *= r2.w[k];
                            }
                            const std::size_t idx = static_cast<std::size_t>(
                                (i - i0) * cols + j * N2 + k);
                            const double r = extrinsic_distance(g, u);
                            rbuf[idx] = r;
                            vbuf[idx] = r < s_max ? point_value(u) * w : 0.0;
                        }
                    }
                }
            },
            threads);
        const long count = (i1 - i0) * cols;
        for (long idx = 0; idx < count; ++idx) {
            const double v = vbuf[static_cast<std::size_t>(idx)];
            if (v == 0.0) continue;
            long b = static_cast<long>(rbuf[static_cast<std::size_t>(idx)] / ds);
            b = std::min<long>(std::max<long>(b, 0), bins - 1);
            sums[static_cast<std::size_t>(b)] += v;
        }
    }
    return sums;
}

inline double percentile95(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t idx =
        std::min(v.size() - 1, static_cast<std::size_t>(std::ceil(0.95 * v.size())) - 1);
    return v[idx];
}

} // namespace detail

// ---------------------------------------------------------------------------
// Profile construction.

inline GrowthProfile compute_growth_profile(const ImmersedGeometry& g, double s_max,
                                            int bins = 512, long nodes0 = 16384,
                                            long nodes1 = 2048, int threads = 0) {
    if (!(s_max > 0.0) || !std::isfinite(s_max))
        throw std::invalid_argument("growth: truncation radius must be positive");
    if (bins < 8) throw std::invalid_argument("growth: need at least 8 bins");

    auto density = [&g](const double* u) { return area_element(g, u); };
    const auto plan_f = detail::plan_panels(g, bins, nodes0, nodes1, false);
    const auto plan_h = detail::plan_panels(g, bins, nodes0, nodes1, true);
    const std::vector<double> full = detail::binned_pass(g, s_max, bins, plan_f, density, threads);
    const std::vector<double> half = detail::binned_pass(g, s_max, bins, plan_h, density, threads);

    GrowthProfile p;
    p.model = SpaceForm{g.ambient.kappa, g.n};
    p.meta.bins = bins;
    p.meta.nodes_axis0 = plan_f.p0 * 8;
    p.meta.nodes_axis1 = plan_f.p1 * 8;
    p.meta.nodes_axis2 = plan_f.p2 * 8;

    const double ds = s_max / bins;
    p.radii.resize(static_cast<std::size_t>(bins) + 1);
    p.vol.assign(p.radii.size(), 0.0);
    p.q.assign(p.radii.size(), 0.0);
    p.density.assign(p.radii.size(), 0.0);
    p.log_vol.assign(p.radii.size(), neg_inf());
    p.log_density.assign(p.radii.size(), neg_inf());

    double cum_f = 0.0, cum_h = 0.0, worst_cum = 0.0;
    std::vector<double> bin_errs;
    for (int k = 1; k <= bins; ++k) {
        const double bf = full[static_cast<std::size_t>(k - 1)];
        const double bh = half[static_cast<std::size_t>(k - 1)];
        if (!(bf > 0.0) || !std::isfinite(bf))
            throw std::runtime_error(
                "growth: empty or invalid radius bin; increase node counts");
        cum_f += bf;
        cum_h += bh;
        const double s_k = ds * k;
        p.radii[static_cast<std::size_t>(k)] = s_k;
        p.vol[static_cast<std::size_t>(k)] = cum_f;
        p.density[static_cast<std::size_t>(k)] = bf / ds;
        p.log_vol[static_cast<std::size_t>(k)] = std::log(cum_f);
        p.log_density[static_cast<std::size_t>(k)] = std::log(bf / ds);
        p.q[static_cast<std::size_t>(k)] =
            std::exp(std::log(cum_f) - p.model.log_ball(s_k));
        if (s_k >= s_max / 8.0) {
            worst_cum = std::max(worst_cum, std::abs(cum_f - cum_h) / cum_f);
            bin_errs.push_back(std::abs(bf - bh) / bf);
        }
    }
    p.q[0] = p.q[1];
    p.meta.rel_error = worst_cum;
    p.meta.density_rel_error = detail::percentile95(std::move(bin_errs));
    return p;
}

// Closed-form profile: Q given analytically, volumes synthesized in log space
// against the model ball. Exact by construction (meta errors are zero), and
// usable at radii where linear volumes overflow.
inline GrowthProfile make_synthetic_profile(const SpaceForm& sf,
                                            const std::function<double(double)>& Q,
                                            double s_max, int bins = 512) {
    if (!(s_max > 0.0)) throw std::invalid_argument("growth: truncation radius must be positive");
    if (bins < 8) throw std::invalid_argument("growth: need at least 8 bins");
    GrowthProfile p;
    p.model = sf;
    p.meta.bins = bins;
    p.meta.synthetic = true;
    const double ds = s_max / bins;
    p.radii.resize(static_cast<std::size_t>(bins) + 1);
    p.vol.assign(p.radii.size(), 0.0);
    p.q.assign(p.radii.size(), 0.0);
    p.density.assign(p.radii.size(), 0.0);
    p.log_vol.assign(p.radii.size(), neg_inf());
    p.log_density.assign(p.radii.size(), neg_inf());
    for (int k = 1; k <= bins; ++k) {
        const double s_k = ds * k;
        const double qk = Q(s_k);
        if (!(qk > 0.0) || !std::isfinite(qk))
            throw std::invalid_argument("growth: synthetic ratio must be positive");
        const auto ku = static_cast<std::size_t>(k);
        p.radii[ku] = s_k;
        p.q[ku] = qk;
        p.log_vol[ku] = std::log(qk) + sf.log_ball(s_k);
        p.vol[ku] = std::exp(p.log_vol[ku]); // may overflow to inf; logs stay exact
        p.log_density[ku] = log_diff_exp(p.log_vol[ku], p.log_vol[ku - 1]) - std::log(ds);
        p.density[ku] = std::exp(p.log_density[ku]);
    }
    p.q[0] = p.q[1];
    return p;
}

// ---------------------------------------------------------------------------
// Profile statistics.

// Largest ratio Q(R)/Q(R/2) over grid radii R in [2 ds, s_max].
inline double doubling_constant(const GrowthProfile& p) {
    double c = 1.0;
    for (std::size_t k = 2; k < p.q.size(); ++k)
        c = std::max(c, p.q[k] / q_at(p, p.radii[k] / 2.0));
    return c;
}

// delta(R) = ln Q(R) - ln Q(R/2).
inline double log_growth_delta(const GrowthProfile& p, double R) {
    if (!(R > 0.0) || R > p.s_max() * (1.0 + 1e-12))
        throw std::invalid_argument("growth: delta radius outside the profile range");
    return std::log(q_at(p, R)) - std::log(q_at(p, R / 2.0));
}

struct MonotonicityReport {
    bool ok = true;
    bool ratio_at_least_one = true;
    double worst_drop = 0.0;  // most negative step Q(k+1) - Q(k)
    double min_q = 0.0;
    double tolerance = 0.0;
};

// Q must be nondecreasing and >= 1 up to quadrature noise; the slack is a
// small multiple of the per-bin density error.
inline MonotonicityReport check_monotone(const GrowthProfile& p, double slack_mult = 3.0) {
    MonotonicityReport rep;
    rep.tolerance = slack_mult * p.meta.density_rel_error + 1e-13;
    rep.min_q = p.q[1];
    for (std::size_t k = 1; k + 1 < p.q.size(); ++k) {
        const double step = p.q[k + 1] - p.q[k];
        rep.worst_drop = std::min(rep.worst_drop, step);
        if (step < -rep.tolerance * std::max(1.0, p.q[k])) rep.ok = false;
        rep.min_q = std::min(rep.min_q, p.q[k + 1]);
    }
    if (rep.min_q < 1.0 - rep.tolerance) rep.ratio_at_least_one = false;
    return rep;
}

// Fraction of bins on which the bin volume dominates Q(left edge) times the
// model shell volume of the bin — the differential inequality behind the
// monotonicity of Q, integrated over one bin.
inline double density_lemma_fraction(const GrowthProfile& p, double slack_mult = 3.0) {
    const double tol = slack_mult * std::max(p.meta.density_rel_error, 1e-12);
    const double log_slack = std::log1p(-std::min(tol, 0.9));
    long ok = 0, total = 0;
    for (std::size_t k = 1; k < p.radii.size(); ++k) {
        const double shell = log_diff_exp(p.model.log_ball(p.radii[k]),
                                          k >= 2 ? p.model.log_ball(p.radii[k - 1]) : neg_inf());
        const double rhs = std::log(p.q[k - 1]) + shell + log_slack;
        const double lhs = p.log_density[k] + std::log(p.ds());
        ++total;
        if (lhs >= rhs) ++ok;
    }
    return static_cast<double>(ok) / static_cast<double>(total);
}

// ---------------------------------------------------------------------------
// Curvature integrals and decay diagnostics over extrinsic balls.

struct CurvatureIntegral {
    std::vector<double> radii;      // bin right edges
    std::vector<double> bin_totals; // contribution of each radial bin
    double total = 0.0;
};

// Integral of |A|^power over M cap B_p(s_max), binned by radius.
inline CurvatureIntegral curvature_integral(const ImmersedGeometry& g, double power,
                                            double s_max, int bins = 256,
                                            long nodes0 = 8192, long nodes1 = 1024,
                                            int threads = 0) {
    auto value = [&g, power](const double* u) {
        return std::pow(norm_a_fast(g, u), power) * area_element(g, u);
    };
    const auto plan = detail::plan_panels(g, bins, nodes0, nodes1, false);
    std::vector<double> sums = detail::binned_pass(g, s_max, bins, plan, value, threads);
    CurvatureIntegral out;
    out.radii.resize(sums.size());
    for (std::size_t k = 0; k < sums.size(); ++k) {
        out.radii[k] = s_max * static_cast<double>(k + 1) / bins;
        out.total += sums[k];
    }
    out.bin_totals = std::move(sums);
    return out;
}

struct DecayProfile {
    std::vector<double> radii;      // bin right edges
    std::vector<double> sup_scaled; // per-bin sup of |A| exp(2 sqrt(-kappa) r)
    double tail_slope = 0.0;        // log-slope over the last quartile
    bool decaying = false;          // true when the scaled sup is genuinely falling
};

// Scans |A| exp(2 sqrt(-kappa) r_p) on a coarse node grid, taking per-bin
// suprema (order-independent, hence deterministic under any threading).
inline DecayProfile decay_profile(const ImmersedGeometry& g, double s_max, int bins = 128,
                                  long nodes0 = 4096, long nodes1 = 256) {
    const double alpha = std::sqrt(-g.ambient.kappa);
    const DomainRect dom = g.domain_fn(s_max);
    const auto plan = detail::plan_panels(g, bins, nodes0, nodes1, false);
    const PanelRule r0 = gauss_panels(dom.range[0].first, dom.range[0].second, plan.p0);
    const PanelRule r1 = gauss_panels(dom.range[1].first, dom.range[1].second, plan.p1);
    if (dom.dims != 2)
        throw std::invalid_argument("growth: decay profile implemented for n = 2");

    DecayProfile out;
    out.radii.resize(static_cast<std::size_t>(bins));
    out.sup_scaled.assign(static_cast<std::size_t>(bins), 0.0);
    const double ds = s_max / bins;
    for (int k = 0; k < bins; ++k) out.radii[static_cast<std::size_t>(k)] = ds * (k + 1);

    for (std::size_t i = 0; i < r0.x.size(); ++i)
        for (std::size_t j = 0; j < r1.x.size(); ++j) {
            const double u[2] = {r0.x[i], r1.x[j]};
            const double r = extrinsic_distance(g, u);
            if (r >= s_max) continue;
            long b = std::min<long>(static_cast<long>(r / ds), bins - 1);
            const double scaled = norm_a_fast(g, u) * std::exp(2.0 * alpha * r);
            auto& slot = out.sup_scaled[static_cast<std::size_t>(b)];
            slot = std::max(slot, scaled);
        }

    // Least-squares log-slope over the last quartile of populated bins.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    long cnt = 0;
    for (int k = 3 * bins / 4; k < bins; ++k) {
        const double sup = out.sup_scaled[static_cast<std::size_t>(k)];
        if (!(sup > 0.0)) continue;
        const double x = out.radii[static_cast<std::size_t>(k)], y = std::log(sup);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    if (cnt >= 2) {
        const double det = cnt * sxx - sx * sx;
        out.tail_slope = det != 0.0 ? (cnt * sxy - sx * sy) / det : 0.0;
    }
    out.decaying = out.tail_slope < -0.05 * std::max(alpha, 1.0 / s_max);
    return out;
}

// ---------------------------------------------------------------------------
// Growth theorems: the limiting ratio of a complete minimal surface is capped
// by (1/4) * total |A|^2 + chi(M), and separately by the number of ends.

struct GrowthTheoremReport {
    double sup_q = 0.0;
    double curvature_cap = 0.0;
    double ends_cap = 0.0;
    bool curvature_ok = true;
    bool ends_ok = true;
};

inline GrowthTheoremReport check_growth_theorems(const GrowthProfile& p,
                                                 double total_sq_curvature,
                                                 const TopologyMeta& topo) {
    GrowthTheoremReport rep;
    for (std::size_t k = 1; k < p.q.size(); ++k) rep.sup_q = std::max(rep.sup_q, p.q[k]);
    const double slack = 3.0 * p.meta.density_rel_error + 1e-9;
    if (topo.euler_char) {
        rep.curvature_cap = *topo.euler_char + 0.25 * total_sq_curvature;
        rep.curvature_ok = rep.sup_q <= rep.curvature_cap * (1.0 + slack) + slack;
    }
    if (topo.ends) {
        rep.ends_cap = *topo.ends;
        rep.ends_ok = rep.sup_q <= rep.ends_cap * (1.0 + slack) + slack;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// CSV serialization. Metadata rides in '#' comment lines; the data block is
// "s,vol,q,dvol_ds" with %.17g values, so a read/write cycle is byte-exact.

inline void write_profile_csv(std::ostream& os, const GrowthProfile& p) {
    char line[256];
    std::snprintf(line, sizeof line, "# tone-profile version=%s\n", version());
    os << line;
    std::snprintf(line, sizeof line, "# kappa=%.17g n=%d bins=%d synthetic=%d\n",
                  p.model.kappa, p.model.dim, p.meta.bins, p.meta.synthetic ? 1 : 0);
    os << line;
    std::snprintf(line, sizeof line, "# nodes_axis0=%ld nodes_axis1=%ld nodes_axis2=%ld\n",
                  p.meta.nodes_axis0, p.meta.nodes_axis1, p.meta.nodes_axis2);
    os << line;
    std::snprintf(line, sizeof line, "# rel_error=%.17g density_rel_error=%.17g\n",
                  p.meta.rel_error, p.meta.density_rel_error);
    os << line;
    os << "s,vol,q,dvol_ds\n";
    for (std::size_t k = 0; k < p.radii.size(); ++k) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", p.radii[k], p.vol[k],
                      p.q[k], p.density[k]);
        os << line;
    }
}

inline GrowthProfile read_profile_csv(std::istream& is) {
    GrowthProfile p;
    double kappa = 0.0;
    int n = 0;
    bool have_model = false, have_header = false;
    std::string raw;
    std::vector<std::array<double, 4>> rows;
    while (std::getline(is, raw)) {
        if (raw.empty()) continue;
        if (raw[0] == '#') {
            std::istringstream ls(raw.substr(1));
            std::string tok;
            while (ls >> tok) {
                const auto eq = tok.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = tok.substr(0, eq);
                const std::string val = tok.substr(eq + 1);
                if (key == "kappa") kappa = std::strtod(val.c_str(), nullptr);
                else if (key == "n") n = static_cast<int>(std::strtol(val.c_str(), nullptr, 10));
                else if (key == "bins") p.meta.bins = static_cast<int>(std::strtol(val.c_str(), nullptr, 10));
                else if (key == "synthetic") p.meta.synthetic = val == "1";
                else if (key == "nodes_axis0") p.meta.nodes_axis0 = std::strtol(val.c_str(), nullptr, 10);
                else if (key == "nodes_axis1") p.meta.nodes_axis1 = std::strtol(val.c_str(), nullptr, 10);
                else if (key == "nodes_axis2") p.meta.nodes_axis2 = std::strtol(val.c_str(), nullptr, 10);
                else if (key == "rel_error") p.meta.rel_error = std::strtod(val.c_str(), nullptr);
                else if (key == "density_rel_error")
                    p.meta.density_rel_error = std::strtod(val.c_str(), nullptr);
            }
            if (raw.find("kappa=") != std::string::npos) have_model = true;
            continue;
        }
        if (!have_header) {
            if (raw != "s,vol,q,dvol_ds")
                throw std::invalid_argument("growth: profile CSV has an unexpected header");
            have_header = true;
            continue;
        }
        std::array<double, 4> row{};
        const char* c = raw.c_str();
        char* end = nullptr;
        for (int f = 0; f < 4; ++f) {
            row[static_cast<std::size_t>(f)] = std::strtod(c, &end);
            if (end == c || (f < 3 && *end != ','))
                throw std::invalid_argument("growth: malformed profile CSV row");
            c = end + 1;
        }
        rows.push_back(row);
    }
    if (!have_model || !have_header || n < 2 || rows.size() < 9)
        throw std::invalid_argument("growth: incomplete profile CSV");
    if (rows[0][0] != 0.0)
        throw std::invalid_argument("growth: profile must start at radius zero");

    p.model = SpaceForm{kappa, n};
    const std::size_t K = rows.size();
    p.radii.resize(K);
    p.vol.resize(K);
    p.q.resize(K);
    p.density.resize(K);
    p.log_vol.assign(K, neg_inf());
    p.log_density.assign(K, neg_inf());
    const double ds = rows[1][0] - rows[0][0];
    for (std::size_t k = 0; k < K; ++k) {
        p.radii[k] = rows[k][0];
        p.vol[k] = rows[k][1];
        p.q[k] = rows[k][2];
        p.density[k] = rows[k][3];
        if (k > 0 && std::abs(p.radii[k] - ds * static_cast<double>(k)) > 1e-9 * ds)
            throw std::invalid_argument("growth: profile radii must be uniform");
        if (k > 0 && !(p.q[k] > 0.0))
            throw std::invalid_argument("growth: profile ratios must be positive");
    }
    if (p.meta.bins == 0) p.meta.bins = static_cast<int>(K - 1);
    for (std::size_t k = 1; k < K; ++k) {
        p.log_vol[k] = std::isfinite(p.vol[k]) && p.vol[k] > 0.0
                           ? std::log(p.vol[k])
                           : std::log(p.q[k]) + p.model.log_ball(p.radii[k]);
        p.log_density[k] =
            std::isfinite(p.density[k]) && p.density[k] > 0.0
                ? std::log(p.density[k])
                : log_diff_exp(p.log_vol[k], p.log_vol[k - 1]) - std::log(ds);
    }
    return p;
}

} // namespace tone
