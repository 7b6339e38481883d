// The 1-D spectral oracle against independent mathematics: the interval
// eigenvalue, the disk eigenvalue via an in-test Bessel power series and
// bisection, mesh-order convergence, and the equivalence of the full-domain
// solve with a half-domain mirror solve for even profiles.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include "tone/catalog.hpp"
#include "tone/spectrum.hpp"

namespace {

// In-test oracle: J_0 by its power series, summed in double precision.
double bessel_j0(double x) {
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= -(x * x / 4.0) / (static_cast<double>(k) * k);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

// In-test oracle: first positive zero of J_0 by plain bisection on [2, 3].
double bessel_j0_first_zero() {
    double lo = 2.0, hi = 3.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (bessel_j0(lo) * bessel_j0(mid) <= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

tone::SturmLiouvilleProblem interval_problem() {
    tone::SturmLiouvilleProblem pr;
    pr.p = [](double) { return 1.0; };
    pr.w = [](double) { return 1.0; };
    pr.a = 0.0;
    pr.b = tone::kPi;
    return pr;
}

} // namespace

TEST_CASE("interval eigenvalue") {
    const tone::SturmLiouvilleProblem pr = interval_problem();
    const double l256 = tone::bottom_eigenvalue(pr, 256);
    const double l512 = tone::bottom_eigenvalue(pr, 512);
    CHECK_THAT(l256, Catch::Matchers::WithinAbs(1.0, 1e-4));
    CHECK_THAT(l512, Catch::Matchers::WithinAbs(1.0, 3e-5));
    const tone::Extrapolated e = tone::richardson_extrapolate(l256, l512);
    CHECK_THAT(e.value, Catch::Matchers::WithinAbs(1.0, 1e-6));
    CHECK(e.error >= std::abs(e.value - 1.0) / 10.0); // error bar is honest
}

TEST_CASE("mesh convergence is second order") {
    const tone::SturmLiouvilleProblem pr = interval_problem();
    const double l1 = tone::bottom_eigenvalue(pr, 128);
    const double l2 = tone::bottom_eigenvalue(pr, 256);
    const double l3 = tone::bottom_eigenvalue(pr, 512);
    const double ratio = std::abs(l1 - l2) / std::abs(l2 - l3);
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
}

TEST_CASE("richardson extrapolation on an exact h^2 model") {
    // f(h) = L + c h^2 with L = 1, c such that f(2h) = 1.04, f(h) = 1.01.
    const tone::Extrapolated e = tone::richardson_extrapolate(1.04, 1.01);
    CHECK_THAT(e.value, Catch::Matchers::WithinRel(1.0, 1e-14));
    CHECK_THAT(e.error, Catch::Matchers::WithinRel(0.01, 1e-12));
}

TEST_CASE("disk eigenvalue equals the squared bessel zero") {
    // Independent oracle: j_{0,1} = 2.4048255576957727686216318... by power
    // series plus bisection, frozen to double precision.
    const double j01 = bessel_j0_first_zero();
    CHECK_THAT(j01, Catch::Matchers::WithinAbs(2.4048255576957728, 1e-12));
    const double want = j01 * j01; // 5.7831859629467845...

    tone::SurfaceOfRevolution disk;
    disk.name = "flat-disk";
    disk.circle_radius = [](double s) { return std::abs(s); };
    disk.s_limit = std::numeric_limits<double>::infinity();
    disk.axis_at_zero = true;
    const tone::SpectrumResult r = tone::tone_of_revolution_surface(disk, {1.0}, 512);
    CHECK_THAT(r.extrapolated, Catch::Matchers::WithinRel(want, 1e-9));
    CHECK(r.error <= 1e-3);
    CHECK(r.lambda1.size() == 1);
}

TEST_CASE("hyperbolic ball sequence extrapolates to one quarter") {
    const tone::ImmersedGeometry g = tone::totally_geodesic(2, 3, -1.0);
    REQUIRE(g.revolution.has_value());
    const tone::SpectrumResult r =
        tone::tone_of_revolution_surface(*g.revolution, {10.0, 20.0, 30.0}, 2048);
    // Domain monotonicity, and no value below the whole-space tone.
    CHECK(r.lambda1[1] < r.lambda1[0]);
    CHECK(r.lambda1[2] < r.lambda1[1]);
    for (const double v : r.lambda1) CHECK(v >= 0.25 - 1e-6);
    CHECK_THAT(r.extrapolated, Catch::Matchers::WithinAbs(0.25, 0.005));
    for (const double me : r.mesh_error) CHECK(me <= 1e-5);
    // Regression against previously computed values (same code path, frozen
    // to guard against silent changes).
    CHECK_THAT(r.lambda1[0], Catch::Matchers::WithinRel(0.3282707616825202, 1e-9));
    CHECK_THAT(r.lambda1[1], Catch::Matchers::WithinRel(0.2716788387090087, 1e-9));
    CHECK_THAT(r.lambda1[2], Catch::Matchers::WithinRel(0.26003392000501413, 1e-9));
}

TEST_CASE("full-domain solve agrees with the half-domain mirror for even profiles") {
    // The catenoid's circle radius is even in s, so the ground state on
    // [-T, T] is even and must match the Neumann half problem. The library
    // solves the full domain without assuming this; the test supplies the
    // mirror as an oracle.
    const tone::ImmersedGeometry g = tone::euclidean_catenoid(1.0);
    const auto radius = g.revolution->circle_radius;
    const double T = 20.0;

    tone::SturmLiouvilleProblem full;
    full.p = radius;
    full.w = radius;
    full.a = -T;
    full.b = T;

    tone::SturmLiouvilleProblem half;
    half.p = radius;
    half.w = radius;
    half.a = 0.0;
    half.b = T;
    half.neumann_left = true;

    const tone::Extrapolated ef = tone::richardson_extrapolate(
        tone::bottom_eigenvalue(full, 2048), tone::bottom_eigenvalue(full, 4096));
    const tone::Extrapolated eh = tone::richardson_extrapolate(
        tone::bottom_eigenvalue(half, 1024), tone::bottom_eigenvalue(half, 2048));
    CHECK_THAT(ef.value, Catch::Matchers::WithinRel(eh.value, 1e-7));
}

TEST_CASE("euclidean catenoid tone vanishes in the truncation limit") {
    const tone::ImmersedGeometry g = tone::euclidean_catenoid(1.0);
    const tone::SpectrumResult r =
        tone::tone_of_revolution_surface(*g.revolution, {10.0, 20.0, 40.0}, 2048);
    CHECK(r.lambda1[0] > r.lambda1[1]);
    CHECK(r.lambda1[1] > r.lambda1[2]);
    CHECK(r.lambda1[2] > 0.0);
    // The 1/T^2 truncation model leaves a genuine residual here (the waist
    // couples the two ends), so the limit is checked against the method's own
    // error estimate rather than an absolute tolerance.
    CHECK_THAT(r.extrapolated, Catch::Matchers::WithinAbs(0.0, 3.0 * r.error + 1e-6));
    CHECK(std::abs(r.extrapolated) < r.lambda1[2]);
}

TEST_CASE("truncated hyperbolic catenoid stays above the comparison bound") {
    const tone::ImmersedGeometry g = tone::hyperbolic_catenoid(1.0, -1.0, 32.0);
    const tone::SpectrumResult r =
        tone::tone_of_revolution_surface(*g.revolution, {10.0, 20.0}, 2048);
    for (const double v : r.lambda1) CHECK(v >= 0.25 - 1e-3);
    CHECK(r.lambda1[1] < r.lambda1[0]);
}

TEST_CASE("oracle input validation") {
    const tone::ImmersedGeometry g = tone::hyperbolic_catenoid(1.0, -1.0, 16.0);
    const auto& rev = *g.revolution;
    CHECK_THROWS_AS(tone::tone_of_revolution_surface(rev, {}), std::invalid_argument);
    CHECK_THROWS_AS(tone::tone_of_revolution_surface(rev, {-1.0}), std::invalid_argument);
    CHECK_THROWS_AS(tone::tone_of_revolution_surface(rev, {20.0, 10.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(tone::tone_of_revolution_surface(rev, {10.0, 10.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(tone::tone_of_revolution_surface(rev, {100.0}), std::invalid_argument);
}

TEST_CASE("assembly rejects tiny meshes and bad coefficients") {
    tone::SturmLiouvilleProblem pr = interval_problem();
    CHECK_THROWS_AS(tone::bottom_eigenvalue(pr, 8), std::invalid_argument);
    pr.p = [](double) { return std::numeric_limits<double>::infinity(); };
    CHECK_THROWS_AS(tone::bottom_eigenvalue(pr, 64), std::runtime_error);
}
