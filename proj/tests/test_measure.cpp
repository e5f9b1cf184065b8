#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <nplab/measure.hpp>

using namespace nplab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("interval measure closed forms") {
    CHECK_THAT(measure_interval_1d(0.0, -0.3, 1.1), WithinRel(1.4, 1e-14));
    CHECK_THAT(measure_interval_1d(0.5, 0.0, 1.0),
               WithinRel(0.7071067811865476, 1e-13));
    CHECK_THAT(measure_interval_1d(0.5, -1.0, 1.0),
               WithinRel(1.4142135623730951, 1e-13));
    // quadrature oracle for a generic multiplicity
    double kappa = 0.8;
    QuadOpts qo;
    qo.rel_tol = 1e-12;
    auto f = [kappa](double x) { return weight1d(kappa, x); };
    double oracle = integrate_adaptive(f, 0.25, 1.75, qo).value;
    CHECK_THAT(measure_interval_1d(kappa, 0.25, 1.75),
               WithinRel(oracle, 1e-11));
}

TEST_CASE("measure of tagged regions") {
    auto mu0 = make_measure(rs_trivial(1));
    CHECK_THAT(measure_of(mu0, region_interval(0.0, 1.0)).value,
               WithinRel(1.0, 1e-14));

    auto muh = make_measure(rs_z2(0.5));
    CHECK_THAT(measure_of(muh, region_interval(0.0, 1.0)).value,
               WithinRel(0.7071067811865476, 1e-13));

    IntervalList ivs = {{-2.0, -1.0}, {0.5, 1.5}};
    double want = measure_interval_1d(0.5, -2.0, -1.0) +
                  measure_interval_1d(0.5, 0.5, 1.5);
    CHECK_THAT(measure_of(muh, region_intervals(ivs)).value,
               WithinRel(want, 1e-13));

    CHECK_THROWS_AS(measure_of(muh, region_complement(region_interval(0, 1))),
                    std::invalid_argument);

    auto mu2 = make_measure(rs_trivial(2));
    auto disk = measure_of(mu2, region_ball(pt2(0.0, 0.0), 1.0, 2));
    CHECK_THAT(disk.value, WithinRel(PI, 1e-7));
    CHECK(!disk.monte_carlo);
}

TEST_CASE("ball volumes") {
    auto mu0 = make_measure(rs_trivial(1));
    CHECK_THAT(ball_volume(mu0, pt1(3.0), 0.7), WithinRel(1.4, 1e-14));

    auto muh = make_measure(rs_z2(0.5));
    CHECK_THAT(ball_volume(muh, pt1(0.0), 1.0),
               WithinRel(1.4142135623730951, 1e-13));

    auto mu2 = make_measure(rs_trivial(2));
    CHECK_THAT(ball_volume(mu2, pt2(0.4, -0.2), 2.0),
               WithinRel(4.0 * PI, 1e-12));
    CHECK_THROWS_AS(ball_volume(mu0, pt1(0.0), 0.0), std::domain_error);
}

TEST_CASE("volume profile comparison") {
    // ball_volume / vol_asym stays within fixed constants on the line
    auto muh = make_measure(rs_z2(0.5));
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> ux(-2.0, 2.0), ur(0.05, 2.0);
    for (int i = 0; i < 40; ++i) {
        Pt x = pt1(ux(rng));
        double r = ur(rng);
        double ratio = ball_volume(muh, x, r) / vol_asym(muh, x, r);
        CHECK(ratio >= 1.0);
        CHECK(ratio <= 2.0 + 1e-12);
    }
}

TEST_CASE("gaussian mass constants") {
    auto mm0 = mm_constant(make_measure(rs_trivial(2)));
    CHECK(mm0.formula_available);
    CHECK_THAT(mm0.formula, WithinRel(2.0 * PI, 1e-13));
    CHECK(mm0.rel_dev < 1e-9);

    auto mmh = mm_constant(make_measure(rs_z2(0.5)));
    CHECK_THAT(mmh.formula, WithinRel(2.8284271247461901, 1e-12));
    CHECK_THAT(mmh.quadrature, WithinRel(2.8284271247461901, 1e-9));
    CHECK(mmh.rel_dev < 1e-9);

    // two-axis product must factor into the square of the 1-d value
    auto mm2 = mm_constant(make_measure(rs_z2_product(2, {0.5, 0.5})));
    CHECK_THAT(mm2.formula, WithinRel(8.0, 1e-12));
    CHECK_THAT(mm2.quadrature, WithinRel(8.0, 1e-9));

    CHECK_THAT(mm1_coord(0.5), WithinRel(2.8284271247461901, 1e-13));
    CHECK_THAT(mm1_coord(0.0), WithinRel(std::sqrt(2.0 * PI), 1e-13));
}

TEST_CASE("gaussian mass on a general group") {
    std::vector<Pt> roots = {pt2(std::sqrt(2.0), 0.0),
                             pt2(0.0, std::sqrt(2.0))};
    RootSystem rs = rs_from_roots(2, roots, {0.5, 0.5});
    MeasureOpts opts;
    opts.mc_samples = 200000;
    auto mm = mm_constant(make_measure(rs), opts);
    CHECK(!mm.formula_available);
    CHECK_THAT(mm.quadrature, WithinRel(8.0, 0.02));
}

TEST_CASE("measure group invariance on boxes") {
    auto mu = make_measure(rs_z2_product(2, {0.5, 0.25}));
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 10; ++i) {
        double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
        if (b < a) std::swap(a, b);
        if (d < c) std::swap(c, d);
        Region box = region_axis_box(pt2(a, c), pt2(b, d), 2);
        Region flip = region_axis_box(pt2(-b, c), pt2(-a, d), 2);
        CHECK_THAT(measure_of(mu, box).value,
                   WithinAbs(measure_of(mu, flip).value, 1e-12));
    }
}

TEST_CASE("qmc path is deterministic and consistent") {
    auto mu = make_measure(rs_z2_product(2, {0.5, 0.5}));
    Region ball = region_ball(pt2(0.0, 0.0), 1.0, 2);
    Region forced = region_intersect(
        ball, region_axis_box(pt2(-2.0, -2.0), pt2(2.0, 2.0), 2));
    MeasureOpts opts;
    opts.mc_samples = 150000;
    auto a = measure_of(mu, forced, opts);
    auto b = measure_of(mu, forced, opts);
    CHECK(a.monte_carlo);
    CHECK(a.value == b.value);
    CHECK(a.std_err > 0.0);
    auto exact = measure_of(mu, ball, opts);
    CHECK(!exact.monte_carlo);
    CHECK_THAT(a.value, WithinRel(exact.value, 0.02));
}
