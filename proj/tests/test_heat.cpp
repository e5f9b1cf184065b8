#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <nplab/field.hpp>
#include <nplab/heat.hpp>
#include <nplab/kernel_checks.hpp>

using namespace nplab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("classical kernel closed values") {
    HeatKernel H(rs_trivial(1));
    double t0 = 1.0 / (4.0 * PI);
    CHECK_THAT(H.density(t0, pt1(0.3), pt1(0.3)), WithinRel(1.0, 1e-13));
    CHECK_THAT(H.density(0.25, pt1(1.0), pt1(0.0)),
               WithinRel(0.20755374871029735, 1e-13));
    double want = std::exp(-0.49 / 2.0) / std::sqrt(2.0 * PI);
    CHECK_THAT(H.density(0.5, pt1(0.7), pt1(0.0)), WithinRel(want, 1e-13));
}

TEST_CASE("rank one kernel against the integral representation") {
    for (double kappa : {0.25, 0.5, 1.0}) {
        HeatKernel H(rs_z2(kappa));
        double ic = 1.0 / mm1_coord(kappa);
        for (double t : {0.3, 1.0})
            for (double x : {0.4, 1.0, 2.5})
                for (double y : {-1.7, -0.2, 0.9, 3.0}) {
                    double z = x * y / (2.0 * t);
                    if (std::fabs(z) > 500.0) continue;
                    double oracle = ic * std::pow(2.0 * t, -kappa - 0.5) *
                                    std::exp(-(x * x + y * y) / (4.0 * t)) *
                                    ekernel_gj(kappa, z, 64);
                    CHECK_THAT(H.coord_density(0, t, x, y),
                               WithinRel(oracle, 1e-8));
                }
    }
}

TEST_CASE("scaled kernel function cross check") {
    for (double kappa : {0.25, 0.5, 1.0})
        for (double z : {-25.0, -11.0, -3.0, -0.5, 0.5, 3.0, 11.0, 25.0, 50.0})
            CHECK_THAT(etilde(kappa, z) * std::exp(std::fabs(z)),
                       WithinRel(ekernel_gj(kappa, z, 64), 1e-8));
}

TEST_CASE("rank one closed value at zero product") {
    HeatKernel H(rs_z2(0.5));
    double want = std::exp(-0.25) / (4.0 * std::sqrt(2.0));
    CHECK_THAT(H.density(1.0, pt1(1.0), pt1(0.0)), WithinRel(want, 1e-12));
}

TEST_CASE("kernel symmetry and sign flip invariance") {
    HeatKernel H(rs_z2(0.5));
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(-3.0, 3.0), ut(0.05, 5.0);
    for (int i = 0; i < 20; ++i) {
        double t = ut(rng), x = u(rng), y = u(rng);
        double p = H.density(t, pt1(x), pt1(y));
        CHECK(p > 0.0);
        CHECK_THAT(H.density(t, pt1(y), pt1(x)), WithinRel(p, 1e-13));
        CHECK_THAT(H.density(t, pt1(-x), pt1(-y)), WithinRel(p, 1e-13));
    }
    HeatKernel H2(rs_z2_product(2, {0.5, 0.25}));
    for (int i = 0; i < 10; ++i) {
        double t = ut(rng);
        Pt x = pt2(u(rng), u(rng)), y = pt2(u(rng), u(rng));
        double p = H2.density(t, x, y);
        CHECK(p > 0.0);
        CHECK_THAT(H2.density(t, pt2(-x[0], x[1]), pt2(-y[0], y[1])),
                   WithinRel(p, 1e-13));
    }
}

TEST_CASE("gaussian envelope dominates the kernel") {
    HeatKernel H(rs_z2(0.5));
    std::mt19937_64 rng(67);
    std::uniform_real_distribution<double> u(-3.0, 3.0), ut(0.05, 5.0);
    for (int i = 0; i < 30; ++i) {
        double t = ut(rng), x = u(rng), y = u(rng);
        double d = pseudo_dist(H.system(), pt1(x), pt1(y));
        CHECK(H.density(t, pt1(x), pt1(y)) <=
              H.gaussian_upper(t, d * d) * (1.0 + 1e-12));
    }
}

TEST_CASE("kernel mass is complete and sub markov") {
    HeatKernel H0(rs_trivial(1));
    CHECK(H0.completeness_deviation(1.0, pt1(0.4)) < 1e-8);
    for (double kappa : {0.25, 0.5, 1.0}) {
        HeatKernel H(rs_z2(kappa));
        for (double t : {0.1, 1.0, 10.0})
            for (double x : {0.0, 0.7, 2.0})
                CHECK(H.completeness_deviation(t, pt1(x)) < 1e-6);
    }
    HeatKernel H2(rs_z2_product(2, {0.5, 0.5}));
    CHECK(H2.completeness_deviation(1.0, pt2(0.5, -1.2)) < 1e-5);

    HeatKernel H(rs_z2(0.5));
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> u(-2.0, 2.0), ut(0.05, 5.0);
    for (int i = 0; i < 10; ++i) {
        double a = u(rng), b = u(rng);
        if (b < a) std::swap(a, b);
        double m =
            H.region_mass(ut(rng), pt1(u(rng)), region_interval(a, b)).value;
        CHECK(m >= 0.0);
        CHECK(m <= 1.0 + 1e-9);
    }
}

TEST_CASE("semigroup identity on random tuples") {
    HeatKernel Hh(rs_z2(0.5));
    HeatKernel H0(rs_trivial(1));
    std::mt19937_64 rng(73);
    std::uniform_real_distribution<double> u(-2.5, 2.5);
    std::uniform_real_distribution<double> ul(std::log(0.05), std::log(5.0));
    for (int i = 0; i < 6; ++i) {
        double t = std::exp(ul(rng)), s = std::exp(ul(rng));
        Pt x = pt1(u(rng)), y = pt1(u(rng));
        CHECK(Hh.semigroup_deviation(t, s, x, y) < 1e-5);
        CHECK(H0.semigroup_deviation(t, s, x, y) < 1e-8);
    }
    HeatKernel H2(rs_z2_product(2, {0.5, 0.25}));
    for (int i = 0; i < 2; ++i) {
        double t = std::exp(ul(rng)), s = std::exp(ul(rng));
        Pt x = pt2(u(rng), u(rng)), y = pt2(u(rng), u(rng));
        CHECK(H2.semigroup_deviation(t, s, x, y) < 1e-5);
    }
}

TEST_CASE("gaussian smoothing closed form") {
    HeatKernel H(rs_trivial(1));
    Field f = field_gauss(0.0, 1.0, 1.0);
    for (double t : {0.05, 0.5, 3.0})
        for (double x : {0.0, 0.7, 2.0}) {
            double want = std::exp(-x * x / (1.0 + 4.0 * t)) /
                          std::sqrt(1.0 + 4.0 * t);
            CHECK_THAT(H.apply(f, t, x), WithinRel(want, 1e-8));
        }
}

TEST_CASE("small time approximate identity") {
    Field f = field_tent(0.0, 1.0, 1.0); // Lipschitz constant 1
    HeatKernel H0(rs_trivial(1));
    HeatKernel Hh(rs_z2(0.5));
    for (double x : {-0.6, 0.35, 0.8}) {
        CHECK_THAT(H0.apply(f, 1e-4, x), WithinAbs(f.eval1(x), 1e-2));
        CHECK_THAT(Hh.apply(f, 1e-4, x), WithinAbs(f.eval1(x), 1e-2));
    }
}

TEST_CASE("large time decay exponents") {
    HeatKernel Hh(rs_z2(0.5));
    Field f = field_tent(0.3, 0.3, 1.0);
    auto fit = ultracontractivity_fit(Hh, f, 1.0, 5.0, 500.0, 6);
    CHECK_THAT(fit.slope, WithinAbs(-1.0, 0.05));
    CHECK(fit.max_residual < 0.05);

    HeatKernel H2(rs_trivial(2));
    std::vector<Field> fs = {field_tent(0.0, 1.0, 1.0),
                             field_tent(0.0, 1.0, 1.0)};
    auto fit2 = ultracontractivity_fit_product(H2, fs, 2.0, 5.0, 500.0, 6);
    CHECK_THAT(fit2.slope_over_p, WithinAbs(-0.5, 0.05));
}

TEST_CASE("calibrated gaussian bound survives fresh probes") {
    for (bool dunkl : {false, true}) {
        HeatKernel H(dunkl ? rs_z2(0.5) : rs_trivial(1));
        auto fit = calibrate_gaussian_bound(H, 0.125, 2000, 101);
        REQUIRE(fit.c1 > 0.0);
        double worst = gaussian_bound_max_ratio(H, fit.c1 * 1.05, 0.125, 400,
                                                909);
        CHECK(worst <= 1.0);
    }
}

TEST_CASE("calibrated difference bound survives fresh probes") {
    for (bool dunkl : {false, true}) {
        HeatKernel H(dunkl ? rs_z2(0.5) : rs_trivial(1));
        auto fit = calibrate_regularity_bound(H, 4.0, 0.125, 6000, 202);
        REQUIRE(fit.c1 > 0.0);
        CHECK(regularity_max_ratio(H, fit, 400, 808) <= 1.0);
        CHECK(regularity_ratio(H, fit, 0.7, pt1(0.4), pt1(0.4), pt1(-1.0)) ==
              0.0);
    }
}

TEST_CASE("kernel constructor rejects general groups") {
    std::vector<Pt> roots = {pt2(std::sqrt(2.0), 0.0), pt2(0.0, std::sqrt(2.0)),
                             pt2(1.0, 1.0), pt2(1.0, -1.0)};
    RootSystem rs = rs_from_roots(2, roots, {0.5, 0.5, 0.3, 0.3});
    CHECK_THROWS_AS(HeatKernel(rs), std::invalid_argument);
}
