#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <nplab/quadrature.hpp>
#include <nplab/specfun.hpp>

using namespace nplab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("gk15 on polynomials") {
    auto r = detail::gk15([](double x) { return x * x * x; }, 0.0, 1.0);
    CHECK_THAT(r.integral, WithinRel(0.25, 1e-14));
    auto rq = detail::gk15([](double x) { return x * x; }, -1.0, 2.0);
    CHECK_THAT(rq.integral, WithinRel(3.0, 1e-14));
}

TEST_CASE("adaptive on smooth integrands") {
    QuadOpts qo;
    qo.rel_tol = 1e-12;
    auto r = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, PI,
                                qo);
    CHECK_THAT(r.value, WithinRel(2.0, 1e-12));
    CHECK(r.err_est < 1e-10);

    auto osc = integrate_adaptive([](double x) { return std::sin(x); }, 0.0,
                                  10.0 * PI, qo);
    CHECK_THAT(osc.value, WithinAbs(0.0, 1e-10));
}

TEST_CASE("adaptive with endpoint singularity") {
    QuadOpts qo;
    qo.rel_tol = 1e-10;
    qo.split_points = graded_splits(0.0, 1.0, 1e-12);
    auto r = integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); },
                                0.0, 1.0, qo);
    CHECK_THAT(r.value, WithinRel(2.0, 1e-8));

    auto rl = integrate_adaptive([](double x) { return -std::log(x); }, 0.0,
                                 1.0, qo);
    CHECK_THAT(rl.value, WithinRel(1.0, 1e-9));
}

TEST_CASE("adaptive respects interior split points") {
    // kink at 0.3 resolved exactly once a cut sits on it
    QuadOpts qo;
    qo.rel_tol = 1e-12;
    qo.split_points = {0.3};
    auto r = integrate_adaptive(
        [](double x) { return std::fabs(x - 0.3); }, 0.0, 1.0, qo);
    double want = 0.5 * (0.3 * 0.3 + 0.7 * 0.7);
    CHECK_THAT(r.value, WithinRel(want, 1e-13));
}

TEST_CASE("adaptive degenerate range") {
    QuadOpts qo;
    auto r = integrate_adaptive([](double x) { return x; }, 1.0, 1.0, qo);
    CHECK(r.value == 0.0);
}

TEST_CASE("graded splits bracket the singular point") {
    auto s = graded_splits(2.0, 4.0, 1e-6);
    REQUIRE(!s.empty());
    bool has_point = false, has_floor = false;
    for (double v : s) {
        if (v == 2.0) has_point = true;
        if (v == 2.0 + 1e-6) has_floor = true;
    }
    CHECK(has_point);
    CHECK(has_floor);
}

TEST_CASE("gauss legendre moments") {
    auto rule = gauss_legendre(16);
    REQUIRE(rule.x.size() == 16);
    for (int k = 0; k <= 15; ++k) {
        double m = 0.0;
        for (size_t i = 0; i < rule.x.size(); ++i)
            m += rule.w[i] * std::pow(rule.x[i], 2.0 * k);
        CHECK_THAT(m, WithinRel(2.0 / (2.0 * k + 1.0), 1e-12));
    }
    double odd = 0.0;
    for (size_t i = 0; i < rule.x.size(); ++i)
        odd += rule.w[i] * rule.x[i] * rule.x[i] * rule.x[i];
    CHECK_THAT(odd, WithinAbs(0.0, 1e-14));
}

TEST_CASE("gauss jacobi moments") {
    // weight (1-x)^{-1/2} (1+x)^{1/2}: mass pi, x^2 -> pi/2, x^3 -> 3 pi/8
    auto rule = gauss_jacobi(24, -0.5, 0.5);
    double m0 = 0.0, m2 = 0.0, m3 = 0.0;
    for (size_t i = 0; i < rule.x.size(); ++i) {
        m0 += rule.w[i];
        m2 += rule.w[i] * rule.x[i] * rule.x[i];
        m3 += rule.w[i] * rule.x[i] * rule.x[i] * rule.x[i];
    }
    CHECK_THAT(m0, WithinRel(PI, 1e-12));
    CHECK_THAT(m2, WithinRel(0.5 * PI, 1e-12));
    CHECK_THAT(m3, WithinRel(0.375 * PI, 1e-12));
    CHECK_THROWS_AS(gauss_jacobi(0, 0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(gauss_jacobi(8, -1.0, 0.0), std::domain_error);
}

TEST_CASE("gauss jacobi reduces to legendre") {
    auto gj = gauss_jacobi(12, 0.0, 0.0);
    auto gl = gauss_legendre(12);
    for (int i = 0; i < 12; ++i) {
        CHECK_THAT(gj.x[i], WithinAbs(gl.x[i], 1e-12));
        CHECK_THAT(gj.w[i], WithinAbs(gl.w[i], 1e-12));
    }
}

TEST_CASE("gauss jacobi against adaptive on a generic weight") {
    auto rule = gauss_jacobi(32, 0.5, 1.5);
    double viaRule = 0.0;
    for (size_t i = 0; i < rule.x.size(); ++i)
        viaRule += rule.w[i] * std::exp(0.7 * rule.x[i]);
    auto f = [](double x) {
        return std::pow(1.0 - x, 0.5) * std::pow(1.0 + x, 1.5) *
               std::exp(0.7 * x);
    };
    QuadOpts qo;
    qo.rel_tol = 1e-12;
    auto viaAdaptive = integrate_adaptive(f, -1.0, 1.0, qo);
    CHECK_THAT(viaRule, WithinRel(viaAdaptive.value, 1e-10));
}
