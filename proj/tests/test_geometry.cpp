// Immersed-geometry machinery against independent oracles: geodesic shooting
// on the hyperboloid (RK4 on x'' = -kappa x) for extrinsic distances,
// finite-difference charts for analytic derivative cross-checks, and closed
// forms for the catenoid's curvature.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include "tone/catalog.hpp"
#include "tone/geometry.hpp"

namespace {

// In-test oracle: integrate the hyperboloid geodesic equation x'' = -kappa x
// with classical RK4, starting at x0 with unit tangent aimed at x1, for the
// claimed distance d. Returns the Minkowski gap between x(d) and x1.
double geodesic_shoot_gap(const tone::Vec& x0, const tone::Vec& x1, double kappa, double d) {
    using tone::Vec;
    const double dot01 = tone::mink_dot(x0, x1);
    Vec v = x1 - (kappa * dot01) * x0; // tangential projection at x0
    const double len = std::sqrt(tone::mink_dot(v, v));
    v = (1.0 / len) * v;

    Vec x = x0, w = v;
    const int steps = 4000;
    const double h = d / steps;
    for (int i = 0; i < steps; ++i) {
        // RK4 for the first-order system (x, w)' = (w, -kappa x).
        const Vec k1x = w, k1w = (-kappa) * x;
        const Vec k2x = w + (h / 2) * k1w, k2w = (-kappa) * (x + (h / 2) * k1x);
        const Vec k3x = w + (h / 2) * k2w, k3w = (-kappa) * (x + (h / 2) * k2x);
        const Vec k4x = w + h * k3w, k4w = (-kappa) * (x + h * k3x);
        x = x + (h / 6) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        w = w + (h / 6) * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
    }
    const Vec gap = x - x1;
    return std::sqrt(std::abs(tone::mink_dot(gap, gap)));
}

} // namespace

TEST_CASE("vector helpers") {
    tone::Vec x = tone::Vec::zero(3), y = tone::Vec::zero(3);
    x[0] = 1.0;
    x[1] = 2.0;
    x[2] = -1.0;
    y[0] = 0.5;
    y[2] = 2.0;
    CHECK(tone::euclid_dot(x, y) == -1.5);
    CHECK(tone::mink_dot(x, y) == -2.5);
    CHECK((x + y)[0] == 1.5);
    CHECK((x - y)[2] == -3.0);
    CHECK((2.0 * x)[1] == 4.0);
    CHECK(tone::sym_index(0, 1, 2) == tone::sym_index(1, 0, 2));
}

TEST_CASE("ambient factories validate") {
    CHECK(tone::Ambient::euclidean(3).coords() == 3);
    CHECK(tone::Ambient::hyperbolic(3, -1.0).coords() == 4);
    CHECK_THROWS_AS(tone::Ambient::hyperbolic(3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(tone::Ambient::euclidean(1), std::invalid_argument);
}

TEST_CASE("hyperboloid projection") {
    tone::Vec x = tone::Vec::zero(4);
    x[0] = std::cosh(0.7);
    x[1] = std::sinh(0.7);
    const tone::Vec y = tone::project_to_hyperboloid(x, -1.0);
    CHECK_THAT(-tone::mink_dot(y, y), Catch::Matchers::WithinRel(1.0, 1e-14));
    // Small drift is renormalized, large drift is fatal.
    tone::Vec drift = (1.0 + 1e-8) * x;
    const tone::Vec z = tone::project_to_hyperboloid(drift, -1.0);
    CHECK_THAT(-tone::mink_dot(z, z), Catch::Matchers::WithinRel(1.0, 1e-12));
    tone::Vec broken = (1.0 + 1e-3) * x;
    CHECK_THROWS_AS(tone::project_to_hyperboloid(broken, -1.0), std::runtime_error);
}

TEST_CASE("totally geodesic plane in hyperbolic 3-space") {
    const tone::ImmersedGeometry g = tone::totally_geodesic(2, 3, -1.0);
    const double u[2] = {1.1, 0.6};
    const tone::Vec x = g.chart(u);
    CHECK_THAT(-tone::mink_dot(x, x), Catch::Matchers::WithinRel(1.0, 1e-13));
    CHECK_THAT(tone::extrinsic_distance(g, u), Catch::Matchers::WithinRel(1.1, 1e-13));
    CHECK_THAT(tone::area_element(g, u),
               Catch::Matchers::WithinRel(std::sinh(1.1), 1e-12));
    CHECK(tone::second_fundamental_form_norm(g, u) <= 1e-8);
    CHECK_THAT(tone::gauss_curvature(g, u), Catch::Matchers::WithinRel(-1.0, 1e-12));

    // Distance from the base point via geodesic shooting: x(r) must be reached
    // after integrating exactly the reported distance.
    const double base[2] = {0.0, 0.0};
    const tone::Vec x0 = g.chart(base);
    CHECK(geodesic_shoot_gap(x0, x, -1.0, tone::extrinsic_distance(g, u)) <= 1e-9);
}

TEST_CASE("hyperboloid distance formula vs geodesic shooting") {
    // Points on the catenoid in H^3: the closed-form distance must agree with
    // an RK4-integrated geodesic between the ambient images.
    const tone::ImmersedGeometry g = tone::hyperbolic_catenoid(1.0, -1.0, 24.0);
    const double base[2] = {0.0, 0.0};
    const tone::Vec x0 = g.chart(base);
    for (const double s : {0.6, 2.0, 5.0}) {
        const double u[2] = {s, 1.2};
        const tone::Vec x1 = g.chart(u);
        const double d = tone::extrinsic_distance(g, u);
        CHECK(geodesic_shoot_gap(x0, x1, -1.0, d) <= 1e-7 * std::exp(d));
    }
}

TEST_CASE("analytic derivatives match finite differences") {
    for (const tone::ImmersedGeometry& g :
         {tone::euclidean_catenoid(1.0), tone::hyperbolic_catenoid(1.0, -1.0, 24.0)}) {
        tone::ImmersedGeometry fd = g;
        fd.jacobian = nullptr;
        fd.hessian = nullptr;
        for (const double s : {0.3, 1.4, 3.0}) {
            const double u[2] = {s, 0.8};
            const tone::SecondFormReport exact = tone::second_fundamental_form(g, u);
            const tone::SecondFormReport approx = tone::second_fundamental_form(fd, u);
            CHECK_THAT(approx.norm_a, Catch::Matchers::WithinRel(exact.norm_a, 1e-4));
            CHECK(exact.mean_h <= 1e-9);     // minimal, analytic path
            CHECK(approx.mean_h <= 1e-5);    // minimal, FD path
        }
    }
}

TEST_CASE("euclidean catenoid closed forms") {
    const double c0 = 1.3;
    const tone::ImmersedGeometry g = tone::euclidean_catenoid(c0);
    const double u[2] = {0.9, 2.2};
    // Area element c0^2 cosh^2 t against the metric determinant.
    tone::ImmersedGeometry nofast = g;
    nofast.area_fn = nullptr;
    const double want_area = c0 * c0 * std::cosh(0.9) * std::cosh(0.9);
    CHECK_THAT(tone::area_element(g, u), Catch::Matchers::WithinRel(want_area, 1e-13));
    CHECK_THAT(tone::area_element(nofast, u), Catch::Matchers::WithinRel(want_area, 1e-12));
    // Gauss curvature -1/(c0^2 cosh^4 t): callback vs the Gauss equation on
    // analytic second derivatives.
    tone::ImmersedGeometry eq = g;
    eq.gauss_fn = nullptr;
    const double want_k = -1.0 / (c0 * c0 * std::pow(std::cosh(0.9), 4));
    CHECK_THAT(tone::gauss_curvature(g, u), Catch::Matchers::WithinRel(want_k, 1e-14));
    CHECK_THAT(tone::gauss_curvature(eq, u), Catch::Matchers::WithinRel(want_k, 1e-10));
    // |A|^2 = -2K for a minimal surface in R^3: shortcut vs projection.
    const double na = tone::second_fundamental_form_norm(g, u);
    CHECK_THAT(na, Catch::Matchers::WithinRel(std::sqrt(-2.0 * want_k), 1e-10));
    CHECK_THAT(tone::norm_a_fast(g, u), Catch::Matchers::WithinRel(na, 1e-12));
    // Closed-form distance against the chart difference.
    tone::ImmersedGeometry nodist = g;
    nodist.distance_fn = nullptr;
    CHECK_THAT(tone::extrinsic_distance(g, u),
               Catch::Matchers::WithinRel(tone::extrinsic_distance(nodist, u), 1e-13));
}

TEST_CASE("gauss equation on the hyperbolic catenoid") {
    const tone::ImmersedGeometry g = tone::hyperbolic_catenoid(0.7, -1.0, 24.0);
    tone::ImmersedGeometry eq = g;
    eq.gauss_fn = nullptr;
    for (const double s : {0.2, 1.0, 2.5}) {
        const double u[2] = {s, 0.4};
        // Profile-based K (from the revolution reduction) vs the ambient
        // Gauss equation with analytic hessians.
        CHECK_THAT(tone::gauss_curvature(eq, u),
                   Catch::Matchers::WithinRel(tone::gauss_curvature(g, u), 1e-7));
        CHECK_THAT(tone::norm_a_fast(g, u),
                   Catch::Matchers::WithinRel(tone::second_fundamental_form_norm(g, u),
                                              1e-7));
    }
}

TEST_CASE("curvature defect integral") {
    // Totally geodesic H^2 in H^3: K = kappa everywhere, defect 0.
    const tone::ImmersedGeometry tg = tone::totally_geodesic(2, 3, -1.0);
    CHECK(std::abs(tone::curvature_defect_integral(tg, 4.0)) <= 1e-10);
    // Euclidean catenoid: integral of (0 - K) tends to 4 pi (total absolute
    // curvature). At s_max = 50 the tail is below half a percent.
    const tone::ImmersedGeometry cat = tone::euclidean_catenoid(1.0);
    CHECK_THAT(tone::curvature_defect_integral(cat, 50.0),
               Catch::Matchers::WithinRel(4.0 * tone::kPi, 5e-3));
}

TEST_CASE("degenerate induced metric is rejected") {
    tone::ImmersedGeometry g;
    g.name = "degenerate";
    g.ambient = tone::Ambient::euclidean(3);
    g.n = 2;
    g.base = {0.0, 0.0};
    g.chart = [](const double* u) {
        tone::Vec v = tone::Vec::zero(3);
        v[0] = u[0];
        v[1] = u[0]; // second parameter never enters: rank-1 metric
        return v;
    };
    const double u[2] = {0.5, 0.5};
    CHECK_THROWS_AS(tone::second_fundamental_form(g, u), std::runtime_error);
}

TEST_CASE("intrinsic mode uses the radial coordinate as distance") {
    const tone::ImmersedGeometry g = tone::warped_intrinsic_surface(0.1, -1.0);
    const double u[2] = {1.7, 0.3};
    CHECK(g.intrinsic());
    CHECK_THAT(tone::extrinsic_distance(g, u), Catch::Matchers::WithinRel(1.7, 1e-13));
    CHECK(tone::area_element(g, u) > std::sinh(1.7)); // widened profile
}
