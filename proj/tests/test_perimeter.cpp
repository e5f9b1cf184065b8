#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <nplab/heat.hpp>
#include <nplab/perimeter.hpp>
#include <nplab/properties.hpp>

using namespace nplab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

PerimeterOpts coarse_opts() {
    PerimeterOpts o;
    o.profile_tol = 1e-6;
    o.max_panels = 120;
    o.j_tol = 1e-7;
    return o;
}

} // namespace

TEST_CASE("classical perimeter of the unit interval") {
    Region E = region_interval(0.0, 1.0);
    Region full = region_full(1);
    for (double s : {0.05, 0.1, 0.2}) {
        double want = 1.0 / (s * (1.0 - 2.0 * s));
        CHECK_THAT(perimeter_classical_1d(E, full, s), WithinRel(want, 1e-10));
    }
}

TEST_CASE("exact riesz cell against nested quadrature") {
    double s = 0.2;
    QuadOpts qo;
    qo.rel_tol = 1e-11;
    auto inner = [&](double x) {
        return integrate_adaptive(
                   [&](double y) {
                       return std::pow(std::fabs(x - y), -1.0 - 2.0 * s);
                   },
                   2.0, 3.0, qo)
            .value;
    };
    double oracle = integrate_adaptive(inner, 0.0, 1.0, qo).value;
    CHECK_THAT(detail::riesz_cell(0.0, 1.0, 2.0, 3.0, s),
               WithinRel(oracle, 1e-9));
}

TEST_CASE("riesz interaction symmetry and guards") {
    Region A = region_interval(0.0, 1.0);
    Region B = region_intervals({{1.5, 2.0}, {3.0, 4.5}});
    double ab = riesz_interaction_1d(A, B, 0.15);
    double ba = riesz_interaction_1d(B, A, 0.15);
    CHECK_THAT(ab, WithinRel(ba, 1e-12));

    CHECK_THROWS_AS(riesz_interaction_1d(A, B, 0.5), std::domain_error);
    CHECK_THROWS_AS(riesz_interaction_1d(A, B, 0.0), std::domain_error);

    // touching is fine, overlap diverges
    CHECK(std::isfinite(riesz_interaction_1d(A, region_interval(1.0, 2.0), 0.1)));
    CHECK(std::isinf(
        riesz_interaction_1d(A, region_interval(0.5, 2.0), 0.1)));
    CHECK(std::isinf(riesz_interaction_1d(region_interval(-INF, 0.0),
                                          region_interval(1.0, INF), 0.1)));
    // one ray against a bounded set stays finite
    CHECK(std::isfinite(riesz_interaction_1d(region_interval(-INF, 0.0),
                                             region_interval(1.0, 2.0), 0.1)));
}

TEST_CASE("time route matches the spatial route without multiplicities") {
    HeatKernel H(rs_trivial(1));
    Region E = region_interval(0.0, 1.0);
    Region Om = region_interval(-2.0, 2.0);
    auto o = coarse_opts();
    for (double s : {0.1, 0.2}) {
        auto v = perimeter_dunkl(H, E, Om, s, o);
        REQUIRE(!v.divergent);
        CHECK_THAT(v.value, WithinRel(per0_dunkl_1d(E, Om, s), 1e-3));
    }
}

TEST_CASE("perimeter is symmetric under complementing the set") {
    Region E = region_interval(0.5, 1.5);
    Region Om = region_interval(-1.0, 2.0);
    // classical route: exact swap of the two outside pairs
    CHECK_THAT(perimeter_classical_1d(E, Om, 0.15),
               WithinRel(perimeter_classical_1d(region_complement(E), Om, 0.15),
                         1e-12));
    // kernel route
    HeatKernel H(rs_z2(0.5));
    auto o = coarse_opts();
    auto a = perimeter_dunkl(H, E, Om, 0.2, o);
    auto b = perimeter_dunkl(H, region_complement(E), Om, 0.2, o);
    REQUIRE(!a.divergent);
    REQUIRE(!b.divergent);
    CHECK_THAT(a.value, WithinRel(b.value, 2e-5));
}

TEST_CASE("interaction profile guards") {
    HeatKernel H(rs_trivial(1));
    CHECK_THROWS_AS(
        build_interaction_profile(H, region_interval(0.0, 2.0),
                                  region_interval(1.0, 3.0), {0.1}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        build_interaction_profile(H, region_interval(-INF, 0.0),
                                  region_interval(1.0, INF), {0.1}),
        std::invalid_argument);
}

TEST_CASE("interaction mass is symmetric in its sets") {
    HeatKernel H(rs_z2(0.5));
    IntervalList A = {{0.0, 1.0}};
    IntervalList B = {{2.0, 3.0}};
    double ab = interaction_mass(H, A, B, 0.5);
    double ba = interaction_mass(H, B, A, 0.5);
    CHECK_THAT(ab, WithinRel(ba, 1e-7));
}

TEST_CASE("unweighted tail kernel closed form") {
    // int_1^inf t^{-s-1} p_t(x, y) dt against the incomplete gamma form
    double s = 0.15;
    QuadOpts qo;
    qo.rel_tol = 1e-12;
    for (double d : {0.5, 2.0}) {
        auto f = [&](double t) {
            return std::pow(t, -s - 1.0) * std::exp(-d * d / (4.0 * t)) /
                   std::sqrt(4.0 * PI * t);
        };
        double cap = 1e8;
        // past the cap the exponential factor is sandwiched between
        // exp(-d^2/(4 cap)) and 1; take the midpoint of the two tails
        double tail = std::pow(cap, -s - 0.5) / ((s + 0.5) *
                                                 std::sqrt(4.0 * PI)) *
                      std::exp(-d * d / (8.0 * cap));
        double oracle = integrate_adaptive(f, 1.0, cap, qo).value + tail;
        double closed = std::pow(4.0, s) / std::sqrt(PI) *
                        gamma_inc_lower(s + 0.5, 0.25 * d * d) *
                        std::pow(d, -1.0 - 2.0 * s);
        CHECK_THAT(closed, WithinRel(oracle, 1e-8));
    }
}

TEST_CASE("tail functional time route matches the closed form") {
    HeatKernel H(rs_trivial(1));
    Region E = region_interval(2.0, INF);
    auto tp = build_tail_mass_profile(H, E, pt1(0.0), 1.0, {0.1, 0.2});
    for (double s : {0.1, 0.2}) {
        auto piece = lambda_tail_from_profile(tp, s);
        REQUIRE(!piece.divergent);
        CHECK_THAT(piece.value,
                   WithinRel(lambda_tail_kappa0(E, 0.0, 1.0, s), 1e-3));
    }
}

TEST_CASE("scaled tail values stay in the unit range") {
    for (double s : {0.3, 0.1, 0.03}) {
        double half = s * lambda_tail_kappa0(region_interval(0.0, INF), 0.0,
                                             1.0, s);
        double fullv = s * lambda_tail_kappa0(region_full(1), 0.0, 1.0, s);
        CHECK(half >= 0.0);
        CHECK(half <= fullv + 1e-12);
        CHECK(fullv <= 1.0 + 0.05);
    }
}

TEST_CASE("xi recovers the share of directions in the set") {
    HeatKernel H(rs_trivial(1));
    auto xi_bounded =
        xi_estimate(H, region_interval(-3.0, 5.0), pt1(0.0), 1.0,
                    {0.2, 0.1, 0.05});
    REQUIRE(!xi_bounded.divergent);
    CHECK_THAT(xi_bounded.fit.limit, WithinAbs(0.0, 0.03));

    auto xi_full =
        xi_estimate(H, region_full(1), pt1(0.0), 1.0, {0.2, 0.1, 0.05});
    REQUIRE(!xi_full.divergent);
    CHECK_THAT(xi_full.fit.limit, WithinAbs(1.0, 0.03));

    auto xi_half = xi_estimate(H, region_interval(0.0, INF), pt1(0.0), 1.0,
                               {0.2, 0.1, 0.05});
    REQUIRE(!xi_half.divergent);
    CHECK_THAT(xi_half.fit.limit, WithinAbs(0.5, 0.03));
}

TEST_CASE("xi of a set and its complement fill the full share") {
    HeatKernel H(rs_z2(0.5));
    Region E = region_union(region_interval(0.3, INF),
                            region_interval(-2.0, -1.0));
    auto a = xi_estimate(H, E, pt1(0.0), 0.5, {0.2, 0.1, 0.05});
    auto b = xi_estimate(H, region_complement(E), pt1(0.0), 0.5,
                         {0.2, 0.1, 0.05});
    REQUIRE(!a.divergent);
    REQUIRE(!b.divergent);
    CHECK_THAT(a.fit.limit + b.fit.limit, WithinAbs(1.0, 0.03));
}

TEST_CASE("relative limit for a compactly contained set") {
    HeatKernel H(rs_z2(0.5));
    Region E = region_interval(0.3, 0.8);
    Region Om = region_interval(-1.0, 1.0);
    auto rl = relative_limit(H, E, Om, {0.1, 0.05, 0.025, 0.0125}, 0.0,
                             coarse_opts());
    REQUIRE(!rl.divergent);
    double muE = measure_of(H.measure(), E).value;
    CHECK_THAT(rl.target, WithinRel(2.0 * muE, 1e-9));
    CHECK(rl.rel_err < 0.02);
}

TEST_CASE("recovering xi from the relative limit") {
    HeatKernel H(rs_trivial(1));
    Region E = region_interval(0.0, INF);
    Region Om = region_interval(-2.0, 1.0);
    auto rl = relative_limit(H, E, Om, {0.2, 0.1, 0.05}, 0.5, coarse_opts());
    REQUIRE(!rl.divergent);
    double rec = xi_from_relative_limit(rl.fit.limit, rl.mu_in, rl.mu_out_in);
    CHECK_THAT(rec, WithinAbs(0.5, 0.05));
}

TEST_CASE("pseudo balls on the line") {
    RootSystem rs0 = rs_trivial(1);
    auto iv0 = pseudo_ball_1d(rs0, 1.0, 0.3).to_intervals();
    REQUIRE(iv0.size() == 1);
    CHECK_THAT(iv0[0].first, WithinAbs(0.7, 1e-15));
    CHECK_THAT(iv0[0].second, WithinAbs(1.3, 1e-15));

    RootSystem rs = rs_z2(0.5);
    auto iv = pseudo_ball_1d(rs, 1.0, 0.3).to_intervals();
    REQUIRE(iv.size() == 2);
    // reflected copy around the origin
    CHECK_THAT(iv[0].first, WithinAbs(-1.3, 1e-15));
    CHECK_THAT(iv[0].second, WithinAbs(-0.7, 1e-15));
    CHECK_THAT(iv[1].first, WithinAbs(0.7, 1e-15));
    CHECK_THAT(iv[1].second, WithinAbs(1.3, 1e-15));

    // ball reaching past the origin merges into one interval
    auto ivm = pseudo_ball_1d(rs, 0.1, 0.5).to_intervals();
    REQUIRE(ivm.size() == 1);
    CHECK_THAT(ivm[0].first, WithinAbs(-0.6, 1e-15));
    CHECK_THAT(ivm[0].second, WithinAbs(0.6, 1e-15));
}

TEST_CASE("iota closed sums on the line") {
    for (double s : {0.2, 0.05}) {
        CHECK_THAT(s * iota_integral_1d(region_full(1), s),
                   WithinRel(1.0, 1e-12));
        CHECK_THAT(s * iota_integral_1d(region_interval(0.0, INF), s),
                   WithinRel(0.5, 1e-12));
    }
    auto est = iota_estimate_1d(region_full(1), {0.2, 0.1, 0.05});
    CHECK_THAT(est.fit.limit, WithinRel(1.0, 0.02));
    auto bounded = iota_estimate_1d(region_intervals({{-3.0, -2.0}, {5.0, 9.0}}),
                                    {0.2, 0.1, 0.05});
    CHECK(bounded.fit.limit < 0.01);
}

TEST_CASE("iota in the plane sees the full angle") {
    auto full = iota_estimate_2d(region_full(2), {0.2, 0.1, 0.05});
    CHECK_THAT(full.fit.limit, WithinRel(PI, 0.02));
    auto half = iota_estimate_2d(
        region_half_space(pt2(1.0, 0.0), 0.0, 2), {0.2, 0.1, 0.05});
    CHECK_THAT(half.fit.limit, WithinRel(0.5 * PI, 0.02));
    auto disk = iota_estimate_2d(region_ball(pt2(0.0, 0.0), 3.0, 2),
                                 {0.2, 0.1, 0.05});
    CHECK(disk.fit.limit < 0.01);
}

TEST_CASE("weighted perimeter trend for an interval") {
    RootSystem rs = rs_trivial(1);
    Region E = region_interval(0.0, 1.0);
    Region Om = region_interval(-2.0, 2.0);
    auto tr = weighted_trend(rs, E, Om, {0.2, 0.1, 0.05, 0.02});
    CHECK(tr.decreasing);
    CHECK(tr.final_over_first < 0.1);
}

TEST_CASE("weighted half line through the origin converges") {
    RootSystem rs = rs_z2(0.5);
    Region E = region_interval(0.0, INF);
    Region Om = region_interval(-1.0, 1.0);
    double v = weighted_perimeter_1d(rs, E, Om, 0.3);
    CHECK(std::isfinite(v));
    CHECK(v > 0.0);
}

TEST_CASE("randomized perimeter properties") {
    for (auto& pc : subadditivity_random(2, 311))
        CHECK(pc.pass);
    for (auto& pc : domain_monotonicity_random(2, 313))
        CHECK(pc.pass);
    for (auto& pc : translation_invariance_random(2, 317))
        CHECK(pc.pass);
    for (auto& pc : reflection_invariance_random(1, 331))
        CHECK(pc.pass);
}
