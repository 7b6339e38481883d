#pragma once

// Named verification checks behind `tone verify`: desk-scale versions of the
// library invariants, one line per check, filterable by suite. Returns the
// number of failed checks so the CLI can exit nonzero.

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "tone/bounds.hpp"
#include "tone/catalog.hpp"
#include "tone/geometry.hpp"
#include "tone/growth.hpp"
#include "tone/numerics.hpp"
#include "tone/spaceform.hpp"
#include "tone/spectrum.hpp"

namespace tone {

struct VerifyOptions {
    std::string suite;                // empty = all suites
    bool inject_decreasing_q = false; // negative control: force a failure
    int threads = 0;
};

namespace detail {

inline void expect(bool ok, const std::string& msg) {
    if (!ok) throw std::runtime_error(msg);
}

inline void expect_near(double got, double want, double tol, const std::string& what) {
    const double err = std::abs(got - want);
    if (!(err <= tol)) {
        std::ostringstream os;
        os << what << ": got " << got << ", want " << want << " (err " << err << " > " << tol
           << ")";
        throw std::runtime_error(os.str());
    }
}

// Shared lazily built fixtures so independent checks do not recompute
// profiles.
struct VerifyFixtures {
    int threads = 0;
    std::optional<ImmersedGeometry> tg2, eucat, hycat, warped;
    std::optional<GrowthProfile> tg2_prof, eucat_prof, hycat_prof, warped_prof;

    const ImmersedGeometry& get_tg2() {
        if (!tg2) tg2 = totally_geodesic(2, 3, -1.0);
        return *tg2;
    }
    const ImmersedGeometry& get_eucat() {
        if (!eucat) eucat = euclidean_catenoid(1.0);
        return *eucat;
    }
    const ImmersedGeometry& get_hycat() {
        if (!hycat) hycat = hyperbolic_catenoid(1.0, -1.0, 48.0);
        return *hycat;
    }
    const ImmersedGeometry& get_warped() {
        if (!warped) warped = warped_intrinsic_surface(0.1, -1.0);
        return *warped;
    }
    const GrowthProfile& get_tg2_prof() {
        if (!tg2_prof) tg2_prof = compute_growth_profile(get_tg2(), 20.0, 64, 4096, 256, threads);
        return *tg2_prof;
    }
    const GrowthProfile& get_eucat_prof() {
        if (!eucat_prof)
            eucat_prof = compute_growth_profile(get_eucat(), 50.0, 128, 8192, 512, threads);
        return *eucat_prof;
    }
    const GrowthProfile& get_hycat_prof() {
        if (!hycat_prof)
            hycat_prof = compute_growth_profile(get_hycat(), 20.0, 128, 8192, 512, threads);
        return *hycat_prof;
    }
    const GrowthProfile& get_warped_prof() {
        if (!warped_prof)
            warped_prof = compute_growth_profile(get_warped(), 20.0, 128, 4096, 256, threads);
        return *warped_prof;
    }
};

} // namespace detail

inline int run_verify(const VerifyOptions& opt, std::ostream& os) {
    struct CheckCase {
        std::string suite, name;
        std::function<void()> body;
    };
    auto fx = std::make_shared<detail::VerifyFixtures>();
    fx->threads = opt.threads;
    std::vector<CheckCase> checks;
    using detail::expect;
    using detail::expect_near;

    // ---- spaceform ---------------------------------------------------------
    checks.push_back({"spaceform", "ball-derivative-matches-sphere", [] {
        for (const double kappa : {0.0, -1.0})
            for (const int n : {2, 3, 4})
                for (const double R : {0.7, 3.0}) {
                    const SpaceForm sf{kappa, n};
                    const double h = 1e-6 * R;
                    const double fd = (sf.ball(R + h) - sf.ball(R - h)) / (2.0 * h);
                    expect_near(fd / sf.sphere(R), 1.0, 1e-6, "d(ball)/dR vs sphere");
                }
    }});
    checks.push_back({"spaceform", "flat-limit-continuity", [] {
        const SpaceForm tiny{-1e-12, 3}, flat{0.0, 3};
        expect_near(tiny.ball(2.0) / flat.ball(2.0), 1.0, 1e-9, "ball at kappa -> 0");
        expect_near(c_kappa(-4.0, 40.0), 2.0, 1e-10, "C_kappa tail");
    }});

    // ---- geometry ----------------------------------------------------------
    checks.push_back({"geometry", "hyperboloid-constraint-and-distance", [fx] {
        const auto& g = fx->get_tg2();
        const double u[2] = {1.3, 0.7};
        const Vec x = g.chart(u);
        expect_near(g.ambient.kappa * mink_dot(x, x), 1.0, 1e-12, "kappa<x,x>");
        expect_near(extrinsic_distance(g, u), 1.3, 1e-12, "polar radius");
    }});
    checks.push_back({"geometry", "totally-geodesic-has-zero-A", [fx] {
        const double u[2] = {0.9, 2.1};
        expect(second_fundamental_form_norm(fx->get_tg2(), u) <= 1e-8, "|A| not ~0");
    }});
    checks.push_back({"geometry", "catenoids-are-minimal", [fx] {
        const double u[2] = {0.8, 1.1};
        expect(second_fundamental_form(fx->get_eucat(), u).mean_h <= 1e-6, "euclidean |H|");
        expect(second_fundamental_form(fx->get_hycat(), u).mean_h <= 1e-6, "hyperbolic |H|");
    }});
    checks.push_back({"geometry", "finite-difference-vs-curvature-shortcut", [fx] {
        for (const ImmersedGeometry* gp : {&fx->get_eucat(), &fx->get_hycat()}) {
            ImmersedGeometry fd = *gp;
            fd.jacobian = nullptr;
            fd.hessian = nullptr;
            for (const double s : {0.4, 1.7}) {
                const double u[2] = {s, 0.9};
                const double a_fd = second_fundamental_form_norm(fd, u);
                const double a_gauss = norm_a_fast(*gp, u);
                expect_near(a_fd / a_gauss, 1.0, 1e-4, "|A| FD vs Gauss path");
            }
        }
    }});

    // ---- growth ------------------------------------------------------------
    checks.push_back({"growth", "totally-geodesic-profile-is-exact", [fx] {
        const auto& p = fx->get_tg2_prof();
        for (std::size_t k = 1; k < p.radii.size(); ++k) {
            const double want = p.model.ball(p.radii[k]);
            expect_near(p.vol[k] / want, 1.0, 1e-6, "profile vs ball volume");
        }
    }});
    checks.push_back({"growth", "ratio-monotone-on-catalog", [fx] {
        for (const GrowthProfile* p : {&fx->get_tg2_prof(), &fx->get_eucat_prof(),
                                       &fx->get_hycat_prof(), &fx->get_warped_prof()}) {
            const MonotonicityReport rep = check_monotone(*p);
            expect(rep.ok, "Q decreased beyond tolerance");
            expect(rep.ratio_at_least_one, "Q dropped below 1");
        }
    }});
    checks.push_back({"growth", "negative-control-fails-monotonicity", [] {
        const GrowthProfile bad = make_synthetic_profile(
            SpaceForm{-1.0, 2}, [](double s) { return 2.0 - s / 20.0; }, 16.0, 64);
        expect(!check_monotone(bad).ok, "decreasing Q was not flagged");
    }});
    checks.push_back({"growth", "density-dominates-model-shells", [fx] {
        for (const GrowthProfile* p :
             {&fx->get_tg2_prof(), &fx->get_eucat_prof(), &fx->get_hycat_prof()})
            expect(density_lemma_fraction(*p) >= 0.99, "shell comparison below 99%");
    }});
    checks.push_back({"growth", "curvature-and-ends-caps", [fx] {
        const CurvatureIntegral ci =
            curvature_integral(fx->get_eucat(), 2.0, 50.0, 128, 8192, 256, fx->threads);
        expect_near(ci.total / (8.0 * kPi), 1.0, 0.02, "total |A|^2 vs 8 pi");
        const auto repc = check_growth_theorems(fx->get_eucat_prof(), ci.total,
                                                fx->get_eucat().topology);
        expect(repc.curvature_ok && repc.ends_ok, "euclidean caps violated");
        const CurvatureIntegral ch =
            curvature_integral(fx->get_hycat(), 2.0, 20.0, 128, 8192, 256, fx->threads);
        const auto reph =
            check_growth_theorems(fx->get_hycat_prof(), ch.total, fx->get_hycat().topology);
        expect(reph.ends_ok, "hyperbolic ends cap violated");
    }});
    checks.push_back({"growth", "csv-round-trip-is-byte-exact", [fx] {
        std::ostringstream first;
        write_profile_csv(first, fx->get_tg2_prof());
        std::istringstream in(first.str());
        const GrowthProfile back = read_profile_csv(in);
        std::ostringstream second;
        write_profile_csv(second, back);
        expect(first.str() == second.str(), "CSV round trip changed bytes");
    }});
    checks.push_back({"growth", "scaled-curvature-sup-is-reported-honestly", [fx] {
        const DecayProfile dp = decay_profile(fx->get_hycat(), 16.0, 64, 2048, 128);
        double peak = 0.0;
        for (const double v : dp.sup_scaled) peak = std::max(peak, v);
        expect(peak > 0.0 && std::isfinite(peak), "scaled sup not finite");
        expect(!dp.decaying, "catenoid scaled |A| plateaus; decay flag must stay false");
    }});

    // ---- bounds ------------------------------------------------------------
    checks.push_back({"bounds", "lower-constants", [] {
        expect_near(mckean_lower(2, -1.0), 0.25, 0.0, "McKean (2,-1)");
        expect_near(mckean_lower(3, -4.0), 4.0, 0.0, "McKean (3,-4)");
        expect_near(cheeger_lower(4, -1.0), 2.25, 1e-15, "Cheeger (4,-1)");
        for (const int n : {2, 3, 5})
            for (const double k : {0.0, -0.5, -2.0}) {
                const double a = mckean_lower(n, k), b = cheeger_lower(n, k);
                expect(std::abs(a - b) <= 4e-16 * std::max(a, b), "constants differ");
            }
    }});
    checks.push_back({"bounds", "closed-form-values", [] {
        expect_near(lambda_R(2, -1.0, 1000.0), 0.26264532744956789, 1e-14, "Lambda(1000)");
        expect_near(f_R(2, -1.0, 1000.0), 0.25632266372478394, 1e-14, "F(1000)");
        expect_near(f_R(3, 0.0, 10.0), 0.68611158833075780, 1e-14, "F flat");
    }});
    checks.push_back({"bounds", "limits-at-large-R", [] {
        for (const double R : {100.0, 1e3, 1e4}) {
            expect((lambda_R(2, -1.0, R) - 0.25) * R <= 14.0, "Lambda tail");
            expect((f_R(2, -1.0, R) - 0.25) * R <= 14.0, "F tail");
        }
        for (const int m : {2, 3}) {
            const SpaceForm flat{0.0, m};
            const double v = std::exp(flat.log_ball(1e4) - flat.log_sphere(1e4)) * 4e-4;
            expect_near(v / (4.0 / m), 1.0, 0.01, "flat ball/sphere factor");
        }
        const SpaceForm hyp{-1.0, 2};
        expect(std::exp(hyp.log_ball(1e4) - hyp.log_sphere(1e4)) * 4e-4 <= 1e-3,
               "hyperbolic factor must vanish");
    }});
    checks.push_back({"bounds", "sin-squared-integral", [] {
        for (const double R : {1.0, 7.3}) {
            const double got = integrate_adaptive(
                [R](double s) {
                    const double v = std::sin(2.0 * kPi * (s - R / 2.0) / R);
                    return v * v;
                },
                R / 2.0, R, 1e-13);
            expect_near(got / (R / 4.0), 1.0, 1e-10, "sin^2 integral");
        }
    }});
    checks.push_back({"bounds", "space-form-majorization", [] {
        const GrowthProfile q1 = make_synthetic_profile(
            SpaceForm{-1.0, 2}, [](double) { return 1.0; }, 1000.0, 2048);
        for (const double R : {250.0, 500.0, 1000.0}) {
            expect(rayleigh_upper(q1, 2, -1.0, R) <= lambda_R(2, -1.0, R), "quotient above Lambda");
            expect_near(paper_upper(q1, 2, -1.0, R) / lambda_R(2, -1.0, R), 1.0, 1e-12,
                        "delta=0 must collapse to Lambda");
        }
    }});
    checks.push_back({"bounds", "quotient-below-assembled-bound", [fx] {
        for (const double R : {25.0, 50.0}) {
            const auto& p = fx->get_eucat_prof();
            expect(rayleigh_upper(p, 2, 0.0, R) <=
                       paper_upper(p, 2, 0.0, R) * (1.0 + 1e-9) + 1e-12,
                   "chain order violated (euclidean)");
        }
        for (const double R : {10.0, 20.0}) {
            const auto& p = fx->get_hycat_prof();
            expect(rayleigh_upper(p, 2, -1.0, R) <=
                       paper_upper(p, 2, -1.0, R) * (1.0 + 1e-9) + 1e-12,
                   "chain order violated (hyperbolic)");
        }
    }});
    checks.push_back({"bounds", "report-brackets-mckean-equality", [] {
        const GrowthProfile q1 = make_synthetic_profile(
            SpaceForm{-1.0, 2}, [](double) { return 1.0; }, 2000.0, 4096);
        const BoundReport rep = assemble_report("totally-geodesic", q1, {500.0, 1000.0, 2000.0});
        expect(rep.verdict_lower >= 0.25 && rep.verdict_upper <= 0.2513,
               "verdict escaped [0.25, 0.2513]");
        expect(rep.verdict_lower <= rep.verdict_upper, "verdict interval inverted");
        expect(std::abs(rep.doubling - 1.0) <= 1e-9, "doubling constant not 1");
    }});

    // ---- spectrum ----------------------------------------------------------
    checks.push_back({"spectrum", "interval-eigenvalue", [] {
        SturmLiouvilleProblem pr;
        pr.p = [](double) { return 1.0; };
        pr.w = [](double) { return 1.0; };
        pr.a = 0.0;
        pr.b = kPi;
        const auto e = richardson_extrapolate(bottom_eigenvalue(pr, 256),
                                              bottom_eigenvalue(pr, 512));
        expect_near(e.value, 1.0, 1e-6, "interval lambda1");
    }});
    checks.push_back({"spectrum", "disk-eigenvalue-vs-bessel", [] {
        SurfaceOfRevolution disk;
        disk.name = "disk";
        disk.circle_radius = [](double s) { return std::abs(s); };
        disk.s_limit = std::numeric_limits<double>::infinity();
        disk.axis_at_zero = true;
        const SpectrumResult r = tone_of_revolution_surface(disk, {1.0}, 512);
        expect_near(r.extrapolated, 5.783185962946785, 1e-3, "disk lambda1 vs j01^2");
    }});
    checks.push_back({"spectrum", "ball-sequence-approaches-quarter", [fx] {
        const SpectrumResult r =
            tone_of_revolution_surface(*fx->get_tg2().revolution, {10.0, 20.0, 30.0}, 1024);
        expect(r.lambda1[1] < r.lambda1[0] && r.lambda1[2] < r.lambda1[1],
               "domain monotonicity violated");
        for (const double v : r.lambda1) expect(v >= 0.25 - 1e-3, "below the comparison bound");
        expect_near(r.extrapolated, 0.25, 0.005, "extrapolated ball tone");
    }});
    checks.push_back({"spectrum", "mesh-convergence-order", [] {
        SturmLiouvilleProblem pr;
        pr.p = [](double) { return 1.0; };
        pr.w = [](double) { return 1.0; };
        pr.a = 0.0;
        pr.b = kPi;
        const double l1 = bottom_eigenvalue(pr, 128), l2 = bottom_eigenvalue(pr, 256),
                     l3 = bottom_eigenvalue(pr, 512);
        expect(std::abs(l1 - l2) <= 4.4 * std::abs(l2 - l3), "not second order");
    }});
    checks.push_back({"spectrum", "catenoid-truncations-respect-lower-bound", [fx] {
        const SpectrumResult r =
            tone_of_revolution_surface(*fx->get_hycat().revolution, {10.0, 20.0}, 2048);
        for (const double v : r.lambda1)
            expect(v >= 0.25 - 1e-3, "truncated catenoid below comparison bound");
    }});

    // ---- catalog -----------------------------------------------------------
    checks.push_back({"catalog", "json-loader-round-trip", [] {
        const auto tg = geometry_from_json(nlohmann::json::parse(
            R"({"ambient":{"kind":"hyperbolic","m":3,"kappa":-1.0},
                "builtin":{"name":"totally-geodesic","params":{"n":2}}})"));
        expect(tg.name == "totally-geodesic" && tg.n == 2, "tg loader");
        const auto cat = geometry_from_json(nlohmann::json::parse(
            R"({"ambient":{"kind":"euclidean","m":3},
                "builtin":{"name":"euclidean-catenoid","params":{"scale":2.0}},
                "topology":{"euler_char":0,"ends":2}})"));
        expect(cat.name == "euclidean-catenoid", "catenoid loader");
        const auto warped = geometry_from_json(nlohmann::json::parse(
            R"({"ambient":{"kind":"intrinsic","kappa":-1.0},
                "builtin":{"name":"warped-intrinsic","params":{"epsilon":0.1}}})"));
        expect(warped.intrinsic(), "warped loader");
    }});
    checks.push_back({"catalog", "loader-rejects-bad-configs", [] {
        auto throws = [](const char* text) {
            try {
                geometry_from_json(nlohmann::json::parse(text));
            } catch (const std::invalid_argument&) {
                return true;
            }
            return false;
        };
        expect(throws(R"({"ambient":{"kind":"euclidean","m":3},
                          "builtin":{"name":"euclidean-catenoid"},"surprise":1})"),
               "unknown key accepted");
        expect(throws(R"({"ambient":{"kind":"hyperbolic","m":3,"kappa":-1.0},
                          "builtin":{"name":"euclidean-catenoid"}})"),
               "ambient mismatch accepted");
        expect(throws(R"({"ambient":{"kind":"euclidean","m":3},
                          "builtin":{"name":"moebius"}})"),
               "unknown builtin accepted");
    }});
    checks.push_back({"catalog", "constructors-reject-out-of-range", [] {
        auto throws = [](const std::function<void()>& f) {
            try {
                f();
            } catch (const std::invalid_argument&) {
                return true;
            }
            return false;
        };
        expect(throws([] { hyperbolic_catenoid(1e4, -1.0); }), "huge waist accepted");
        expect(throws([] { hyperbolic_catenoid(1e-9, -1.0); }), "tiny waist accepted");
        expect(throws([] { warped_intrinsic_surface(-0.1, -1.0); }),
               "curvature violation accepted");
    }});
    checks.push_back({"catalog", "listing-has-labeled-targets", [] {
        const auto entries = catalog_entries();
        expect(entries.size() == 4, "expected four entries");
        for (const auto& e : entries) {
            expect(!e.targets.empty(), "entry without targets");
            for (const auto& t : e.targets)
                expect(t.basis == "closed form" || t.basis == "classical" ||
                           t.basis == "computed",
                       "unexpected provenance label");
        }
    }});

    if (opt.inject_decreasing_q)
        checks.push_back({"growth", "injected-decreasing-profile", [] {
            const GrowthProfile bad = make_synthetic_profile(
                SpaceForm{-1.0, 2}, [](double s) { return 2.0 - s / 20.0; }, 16.0, 64);
            expect(check_monotone(bad).ok, "injected profile is not monotone");
        }});

    int failures = 0, ran = 0;
    for (const auto& c : checks) {
        if (!opt.suite.empty() && c.suite != opt.suite) continue;
        ++ran;
        try {
            c.body();
            os << "[PASS] " << c.suite << "/" << c.name << "\n";
        } catch (const std::exception& e) {
            ++failures;
            os << "[FAIL] " << c.suite << "/" << c.name << ": " << e.what() << "\n";
        }
    }
    os << ran - failures << "/" << ran << " checks passed\n";
    if (ran == 0) throw std::invalid_argument("verify: unknown suite '" + opt.suite + "'");
    return failures;
}

} // namespace tone
