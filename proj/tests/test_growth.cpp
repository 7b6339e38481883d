// Volume-growth profiles: quadrature against closed-form ball volumes,
// synthetic profiles against hand-computed ratios, CSV round trips, the
// monotonicity and shell-comparison checks, curvature integrals, and
// thread-count independence. Frozen constants quoted beyond double precision
// come from an extended-precision evaluation.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tone/catalog.hpp"
#include "tone/growth.hpp"

TEST_CASE("totally geodesic profile reproduces the model ball") {
    const tone::ImmersedGeometry g = tone::totally_geodesic(2, 3, -1.0);
    const tone::GrowthProfile p = tone::compute_growth_profile(g, 10.0, 64, 4096, 256);
    for (std::size_t k = 1; k < p.radii.size(); ++k) {
        CHECK_THAT(p.vol[k], Catch::Matchers::WithinRel(p.model.ball(p.radii[k]), 1e-6));
        CHECK_THAT(p.q[k], Catch::Matchers::WithinRel(1.0, 1e-6));
    }
    CHECK(p.model.dim == 2);
    CHECK(p.model.kappa == -1.0);
    CHECK(p.meta.rel_error < 1e-6);
    CHECK_THAT(tone::doubling_constant(p), Catch::Matchers::WithinAbs(1.0, 1e-6));
}

TEST_CASE("synthetic profiles evaluate the ratio exactly") {
    // Q(s) = 2 - exp(-s), increasing from 1 toward 2.
    const auto Q = [](double s) { return 2.0 - std::exp(-s); };
    const tone::GrowthProfile p =
        tone::make_synthetic_profile(tone::SpaceForm{-1.0, 2}, Q, 8.0, 4096);
    CHECK(p.meta.synthetic);
    for (const std::size_t k : {std::size_t{512}, std::size_t{2048}, std::size_t{4096}}) {
        const double r = p.radii[k];
        CHECK_THAT(p.vol[k], Catch::Matchers::WithinRel(Q(r) * p.model.ball(r), 1e-12));
    }
    CHECK_THAT(tone::q_at(p, 3.21), Catch::Matchers::WithinRel(Q(3.21), 1e-6));
    CHECK_THROWS_AS(tone::q_at(p, 8.5), std::invalid_argument);

    // Doubling constant: sup over R of Q(R)/Q(R/2). Substituting
    // x = exp(-R/2) gives (2-x^2)/(2-x), maximized at x = 2-sqrt(2) with
    // value 4 - 2 sqrt(2), frozen: 1.1715728752538099023966225515...
    CHECK_THAT(tone::doubling_constant(p),
               Catch::Matchers::WithinRel(1.1715728752538099, 1e-5));

    // Log ratio between R and R/2 at R = 2 (both grid radii):
    // ln(2-e^-2) - ln(2-e^-1), frozen: 0.13320113475491392253594277...
    CHECK_THAT(tone::log_growth_delta(p, 2.0),
               Catch::Matchers::WithinAbs(0.13320113475491392, 1e-12));

    CHECK_THROWS_AS(tone::log_growth_delta(p, 17.0), std::invalid_argument);
    CHECK_THROWS_AS(
        tone::make_synthetic_profile(tone::SpaceForm{-1.0, 2}, [](double) { return 0.0; },
                                     1.0, 16),
        std::invalid_argument);
}

TEST_CASE("synthetic profiles survive volume overflow in log space") {
    const tone::GrowthProfile p = tone::make_synthetic_profile(
        tone::SpaceForm{-1.0, 2}, [](double) { return 1.0; }, 2000.0, 2048);
    CHECK(std::isinf(p.vol.back()));
    CHECK(std::isfinite(p.log_vol.back()));
    CHECK_THAT(p.log_vol.back(),
               Catch::Matchers::WithinAbs(p.model.log_ball(2000.0), 1e-10));
    CHECK_THAT(tone::q_at(p, 1234.5), Catch::Matchers::WithinRel(1.0, 1e-12));
    CHECK_THAT(tone::doubling_constant(p), Catch::Matchers::WithinAbs(1.0, 1e-12));
}

TEST_CASE("monotonicity check accepts growth and flags decay") {
    const tone::GrowthProfile good = tone::make_synthetic_profile(
        tone::SpaceForm{-1.0, 2}, [](double s) { return 2.0 - std::exp(-s); }, 8.0, 256);
    const tone::MonotonicityReport ok = tone::check_monotone(good);
    CHECK(ok.ok);
    CHECK(ok.ratio_at_least_one);
    CHECK(ok.worst_drop <= 0.0);

    const tone::GrowthProfile bad = tone::make_synthetic_profile(
        tone::SpaceForm{-1.0, 2}, [](double s) { return 2.0 - s / 20.0; }, 16.0, 256);
    CHECK(!tone::check_monotone(bad).ok);

    const tone::GrowthProfile low = tone::make_synthetic_profile(
        tone::SpaceForm{-1.0, 2}, [](double) { return 0.5; }, 8.0, 256);
    CHECK(tone::check_monotone(low).ok);
    CHECK(!tone::check_monotone(low).ratio_at_least_one);
}

TEST_CASE("shell comparison fraction") {
    const tone::GrowthProfile flat = tone::make_synthetic_profile(
        tone::SpaceForm{-1.0, 2}, [](double) { return 1.0; }, 10.0, 256);
    CHECK(tone::density_lemma_fraction(flat) == 1.0);
    // An increasing ratio gives density strictly above the comparison shell.
    const tone::GrowthProfile inc = tone::make_synthetic_profile(
        tone::SpaceForm{-1.0, 2}, [](double s) { return 2.0 - std::exp(-s); }, 8.0, 256);
    CHECK(tone::density_lemma_fraction(inc) == 1.0);
}

TEST_CASE("euclidean catenoid growth approaches its two planes") {
    const tone::ImmersedGeometry g = tone::euclidean_catenoid(1.0);
    const tone::GrowthProfile p = tone::compute_growth_profile(g, 30.0, 128, 8192, 512);
    CHECK(p.model.kappa == 0.0);
    // Q climbs from ~1 at the waist toward 2 (one plane per end).
    CHECK(p.q[4] < 1.3);
    CHECK(p.q.back() > 1.9);
    CHECK(p.q.back() < 2.0 + 1e-3);
    CHECK(tone::check_monotone(p).ok);
    CHECK(tone::check_monotone(p).ratio_at_least_one);
    CHECK(tone::density_lemma_fraction(p) >= 0.99);
    CHECK(p.meta.rel_error < 1e-2);

    const auto rep = tone::check_growth_theorems(p, 8.0 * tone::kPi,
                                                 g.topology);
    CHECK(rep.curvature_ok); // sup Q = 2 vs 2 pi + 0
    CHECK(rep.ends_ok);      // sup Q = 2 vs E(M) = 2
    CHECK_THAT(rep.sup_q, Catch::Matchers::WithinAbs(2.0, 0.05));
}

TEST_CASE("curvature integral of the euclidean catenoid") {
    const tone::ImmersedGeometry g = tone::euclidean_catenoid(1.0);
    const tone::CurvatureIntegral ci = tone::curvature_integral(g, 2.0, 30.0, 128, 8192, 512);
    CHECK_THAT(ci.total, Catch::Matchers::WithinRel(8.0 * tone::kPi, 0.01));
    // The integrand concentrates at the waist: the outer quarter of the bins
    // contributes under 1% of the total.
    double tail = 0.0;
    for (std::size_t k = ci.bin_totals.size() * 3 / 4; k < ci.bin_totals.size(); ++k)
        tail += ci.bin_totals[k];
    CHECK(tail < 0.01 * ci.total);
}

TEST_CASE("scaled curvature decay flag") {
    // kappa = 0: the scale factor is 1 and |A| itself decays along the ends.
    const tone::DecayProfile dp = tone::decay_profile(tone::euclidean_catenoid(1.0), 20.0);
    CHECK(dp.decaying);
    CHECK(dp.tail_slope < 0.0);
}

TEST_CASE("warped intrinsic profile stabilizes below 1 + epsilon") {
    const tone::ImmersedGeometry g = tone::warped_intrinsic_surface(0.1, -1.0);
    const tone::GrowthProfile p = tone::compute_growth_profile(g, 20.0, 128, 4096, 256);
    CHECK(tone::check_monotone(p).ok);
    CHECK(p.q.back() > 1.05);
    CHECK(p.q.back() < 1.1 + 1e-6);
    // Last-quartile stabilization: relative change under 1%.
    const double at_three_quarters = tone::q_at(p, 15.0);
    CHECK(std::abs(p.q.back() - at_three_quarters) / p.q.back() < 0.01);
}

TEST_CASE("profile CSV round trip is byte exact") {
    const tone::ImmersedGeometry g = tone::euclidean_catenoid(1.0);
    const tone::GrowthProfile p = tone::compute_growth_profile(g, 8.0, 32, 1024, 128);
    std::ostringstream first;
    tone::write_profile_csv(first, p);
    std::istringstream in(first.str());
    const tone::GrowthProfile back = tone::read_profile_csv(in);
    std::ostringstream second;
    tone::write_profile_csv(second, back);
    CHECK(first.str() == second.str());
    REQUIRE(back.radii.size() == p.radii.size());
    CHECK(back.vol == p.vol);
    CHECK(back.q == p.q);
    CHECK(back.model.kappa == p.model.kappa);
    CHECK(back.model.dim == p.model.dim);
    CHECK(back.meta.synthetic == p.meta.synthetic);
    CHECK(back.meta.rel_error == p.meta.rel_error);
    // Reconstructed log columns agree with the originals.
    for (std::size_t k = 1; k < p.radii.size(); ++k) {
        CHECK_THAT(back.log_vol[k], Catch::Matchers::WithinAbs(p.log_vol[k], 1e-10));
        CHECK_THAT(back.log_density[k], Catch::Matchers::WithinAbs(p.log_density[k], 1e-8));
    }
}

TEST_CASE("profile CSV rejects malformed input") {
    auto reject = [](const std::string& text) {
        std::istringstream in(text);
        CHECK_THROWS_AS(tone::read_profile_csv(in), std::invalid_argument);
    };
    reject("s,vol,q\n0,0,1\n");                          // wrong header
    reject("# tone-profile version=0\ns,vol,q,dvol_ds\n"); // no rows
    const std::string meta = "# tone-profile version=0.1.0\n# kappa=-1 n=2 bins=8 synthetic=1\n"
                             "# nodes_axis0=0 nodes_axis1=0 nodes_axis2=0\n"
                             "# rel_error=0 density_rel_error=0\ns,vol,q,dvol_ds\n";
    reject(meta + "0,0,1,0\n1,2,1,x\n");                 // malformed number
    std::string nonuniform = meta;
    for (int k = 0; k < 9; ++k) nonuniform += std::to_string(k) + ",1,1,1\n";
    nonuniform += "10,1,1,1\n";                          // jumps from 8 to 10
    reject(nonuniform);
}

TEST_CASE("identical profiles regardless of thread count") {
    const tone::ImmersedGeometry g = tone::euclidean_catenoid(1.0);
    const tone::GrowthProfile a = tone::compute_growth_profile(g, 10.0, 32, 2048, 128, 1);
    const tone::GrowthProfile b = tone::compute_growth_profile(g, 10.0, 32, 2048, 128, 4);
    CHECK(a.vol == b.vol);
    CHECK(a.density == b.density);
    CHECK(a.q == b.q);
}

TEST_CASE("insufficient sampling is an error, not a wrong answer") {
    const tone::ImmersedGeometry g = tone::euclidean_catenoid(1.0);
    CHECK_THROWS_AS(tone::compute_growth_profile(g, 30.0, 4096, 64, 8),
                    std::runtime_error);
    CHECK_THROWS_AS(tone::compute_growth_profile(g, -1.0, 64, 1024, 128),
                    std::invalid_argument);
    CHECK_THROWS_AS(tone::compute_growth_profile(g, 10.0, 4, 1024, 128),
                    std::invalid_argument);
}
