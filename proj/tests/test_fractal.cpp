#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <nplab/fractal.hpp>
#include <nplab/region.hpp>

using namespace nplab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("weierstrass series values") {
    WeierstrassSpec ws; // a = 1/2, b = 3, 31 terms
    // W(0) = sum (1/2)^k = 2 - 2^{-30}
    CHECK_THAT(weierstrass_eval(ws, 0.0),
               WithinRel(1.9999999990686774, 1e-14));
    // every term flips sign at x = 1/2 since 3^k is odd
    CHECK_THAT(weierstrass_eval(ws, 0.5),
               WithinRel(-1.9999999990686774, 1e-14));
    CHECK_THAT(weierstrass_eval(ws, 0.37),
               WithinRel(weierstrass_eval(ws, 1.37), 1e-12));
    CHECK_THAT(weierstrass_eval(ws, 0.37),
               WithinRel(weierstrass_eval(ws, -0.63), 1e-12));

    WeierstrassSpec bad;
    bad.a = 1.2;
    CHECK_THROWS_AS(weierstrass_eval(bad, 0.0), std::domain_error);
    bad = {};
    bad.b = 1.0;
    CHECK_THROWS_AS(weierstrass_eval(bad, 0.0), std::domain_error);
    bad = {};
    bad.k_max = -1;
    CHECK_THROWS_AS(weierstrass_eval(bad, 0.0), std::domain_error);
}

TEST_CASE("box dimension of smooth graphs") {
    auto seg = [](double x) { return 0.5 * x + 0.1; };
    auto fit = graph_box_dimension(seg, 0.0, 1.0, 9);
    CHECK_THAT(fit.dimension, WithinAbs(1.0, 0.05));

    auto curve = [](double x) { return std::sin(3.0 * x); };
    auto fit2 = graph_box_dimension(curve, 0.0, 2.0, 9);
    CHECK_THAT(fit2.dimension, WithinAbs(1.0, 0.05));
}

TEST_CASE("box dimension of the rough graph") {
    WeierstrassSpec ws;
    auto f = [&](double x) { return weierstrass_eval(ws, x); };
    auto fit = graph_box_dimension(f, 0.0, 1.0, 10);
    // 2 - log 2 / log 3
    CHECK_THAT(fit.dimension, WithinAbs(1.3690702464285426, 0.15));
    CHECK(fit.resid < 0.5);
}

TEST_CASE("box count fit needs enough levels") {
    auto seg = [](double x) { return x; };
    CHECK_THROWS_AS(graph_box_dimension(seg, 0.0, 1.0, 3, 2, 2),
                    std::invalid_argument);
}

TEST_CASE("interval collar scales linearly") {
    auto fit = interval_collar_fit(0.0, 4.0, {0.2, 0.1, 0.05, 0.025});
    CHECK_THAT(fit.eta, WithinAbs(1.0, 0.05));
    CHECK_THAT(fit.c, WithinRel(2.0, 0.05));
    // saturated strips clip at the interval length
    auto sat = interval_collar_fit(0.0, 0.1, {1.0, 2.0});
    CHECK_THAT(sat.mu[0], WithinRel(0.1, 1e-15));
    CHECK_THAT(sat.mu[1], WithinRel(0.1, 1e-15));

    CHECK_THROWS_AS(interval_collar_fit(1.0, 0.0, {0.1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(collar_fit_from({0.1, 0.2}, {0.0, 0.5}),
                    std::runtime_error);
}

TEST_CASE("graph distance against a flat line") {
    auto flat = [](double) { return 1.0; };
    CHECK_THAT(graph_distance(flat, 0.3, 0.2, 2.0), WithinRel(0.8, 1e-9));
    // beating the vertical candidate requires walking sideways
    auto vee = [](double u) { return std::fabs(u); };
    double on_graph = graph_distance(vee, -1.0, 1.0, 2.0);
    CHECK(on_graph < 1e-6 + 1e-12);
    // distance from the kink's axis to either arm is 1/sqrt(2)
    double d = graph_distance(vee, 0.0, 1.0, 2.0);
    CHECK_THAT(d, WithinAbs(0.7071067811865476, 1e-3));
}

TEST_CASE("rough domain closes and has positive area") {
    WeierstrassSpec ws;
    Region R = region_weierstrass_domain(ws, -4.0, 3.0);
    Pt lo, hi;
    R.bbox(lo, hi);
    CHECK(lo[0] < 0.0);
    CHECK(hi[0] > 0.0);
    CHECK(R.contains(pt2(0.0, 2.5)));
    CHECK(!R.contains(pt2(0.0, 3.5)));
    CHECK(!R.contains(pt2(0.0, -5.0)));
    // parabola below the graph everywhere: the enclosed set never closes
    CHECK_THROWS_AS(region_weierstrass_domain(ws, -4.0, -10.0),
                    std::invalid_argument);
}

TEST_CASE("collar growth inside the rough domain") {
    WeierstrassSpec ws;
    auto wc = weierstrass_collar_fit(ws, -4.0, 3.0,
                                     {0.04, 0.02, 0.01, 0.005}, 60000);
    CHECK(wc.area > 0.0);
    CHECK(wc.samples_in > 1000);
    // graph dimension d = 2 - log2/log3 gives collar exponent 2 - d
    CHECK_THAT(wc.fit.eta, WithinAbs(0.6309297535714574, 0.15));
    REQUIRE(!wc.fit_vertical.r.empty());
    // vertical distance dominates the true distance, so its collar is leaner
    for (size_t j = 0; j < wc.fit.mu.size(); ++j)
        CHECK(wc.fit_vertical.mu[j] <= wc.fit.mu[j] + 1e-12);
}
