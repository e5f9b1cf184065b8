#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <nplab/quadrature.hpp>
#include <nplab/specfun.hpp>

using namespace nplab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Gamma(x) for 0 < x < 1 by an alternating series on [0,1] plus an adaptive
// tail; shares no code with the Lanczos path
double gamma_oracle_unit(double x) {
    double head = 0.0, term = 1.0;
    for (int k = 0; k < 60; ++k) {
        head += term / (k + x);
        term *= -1.0 / (k + 1.0);
        if (std::fabs(term) < 1e-18) break;
    }
    auto f = [x](double t) { return std::pow(t, x - 1.0) * std::exp(-t); };
    QuadOpts qo;
    qo.rel_tol = 1e-13;
    double tail = integrate_adaptive(f, 1.0, 60.0, qo).value;
    return head + tail;
}

// I_nu(z) for integer nu from the ascending series with exact factorials
double bessel_i1_series_oracle(double z) {
    double sum = 0.0;
    double kfac = 1.0;
    for (int k = 0; k < 40; ++k) {
        if (k > 0) kfac *= k;
        double k1fac = kfac * (k + 1.0);
        sum += std::pow(0.5 * z, 2.0 * k + 1.0) / (kfac * k1fac);
    }
    return sum;
}

} // namespace

TEST_CASE("gamma closed values") {
    CHECK_THAT(gamma_fn(1.0), WithinRel(1.0, 1e-13));
    CHECK_THAT(gamma_fn(0.5), WithinRel(1.7724538509055160, 1e-13));
    CHECK_THAT(gamma_fn(5.0), WithinRel(24.0, 1e-13));
}

TEST_CASE("gamma recurrence") {
    for (double x : {0.3, 0.6, 1.7, 4.2, 9.5})
        CHECK_THAT(gamma_fn(x + 1.0), WithinRel(x * gamma_fn(x), 1e-12));
}

TEST_CASE("gamma at 0.6 against integral oracle") {
    double oracle = gamma_oracle_unit(0.6);
    CHECK_THAT(oracle, WithinRel(1.4891922488128171, 1e-11));
    CHECK_THAT(gamma_fn(0.6), WithinRel(oracle, 1e-11));
    CHECK_THAT(gamma_fn(0.6), WithinRel(1.4891922488128171, 1e-13));
}

TEST_CASE("gamma domain errors") {
    CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
    CHECK_THROWS_AS(gamma_fn(-1.5), std::domain_error);
}

TEST_CASE("lower incomplete gamma closed forms") {
    for (double u : {0.25, 0.5, 3.0, 20.0})
        CHECK_THAT(gamma_inc_lower(1.0, u),
                   WithinRel(1.0 - std::exp(-u), 1e-12));
    CHECK(gamma_inc_lower(2.0, 0.0) == 0.0);
    CHECK(gamma_inc_lower(0.7, 0.0) == 0.0);
    CHECK_THAT(gamma_inc_lower(2.0, 1.0),
               WithinRel(0.26424111765711536, 1e-12));
}

TEST_CASE("incomplete gamma quadrature oracle at (2,1)") {
    auto f = [](double t) { return t * std::exp(-t); };
    QuadOpts qo;
    qo.rel_tol = 1e-13;
    double oracle = integrate_adaptive(f, 0.0, 1.0, qo).value;
    CHECK_THAT(gamma_inc_lower(2.0, 1.0), WithinRel(oracle, 1e-11));
}

TEST_CASE("incomplete gamma monotonicity and saturation") {
    double prev = 0.0;
    for (double u : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
        double v = gamma_inc_lower(2.5, u);
        CHECK(v > prev);
        prev = v;
    }
    CHECK_THAT(gamma_inc_lower(2.5, 60.0), WithinRel(gamma_fn(2.5), 1e-13));
    for (double p : {0.4, 1.3, 3.7})
        for (double u : {0.2, 1.9, 7.0})
            CHECK_THAT(gamma_inc_lower(p, u) + gamma_inc_upper(p, u),
                       WithinRel(gamma_fn(p), 1e-12));
    CHECK_THROWS_AS(gamma_inc_lower(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(gamma_inc_lower(1.0, -0.5), std::domain_error);
}

TEST_CASE("bessel half integer closed form") {
    for (double z : {0.3, 2.0, 10.0}) {
        double want = std::sqrt(2.0 / (PI * z)) * std::sinh(z);
        CHECK_THAT(bessel_i(0.5, z), WithinRel(want, 1e-12));
    }
    CHECK_THAT(bessel_i(0.5, 2.0), WithinRel(2.0462368630890550, 1e-12));
}

TEST_CASE("bessel at zero argument") {
    CHECK(bessel_i(0.0, 0.0) == 1.0);
    CHECK(bessel_i(0.7, 0.0) == 0.0);
    CHECK(bessel_i(2.0, 0.0) == 0.0);
}

TEST_CASE("bessel I1(2) against series oracle") {
    double oracle = bessel_i1_series_oracle(2.0);
    CHECK_THAT(oracle, WithinRel(1.5906368546373291, 1e-13));
    CHECK_THAT(bessel_i(1.0, 2.0), WithinRel(oracle, 1e-12));
}

TEST_CASE("bessel recurrence") {
    // I_{nu-1}(z) - I_{nu+1}(z) = (2 nu / z) I_nu(z); scaled form at large z
    // where the unscaled values overflow the difference's precision budget
    for (auto [nu, z] : {std::pair{1.0, 1.5}, {0.7, 7.0}, {1.2, 20.0}}) {
        double lhs = bessel_i(nu - 1.0, z) - bessel_i(nu + 1.0, z);
        double rhs = 2.0 * nu / z * bessel_i(nu, z);
        CHECK_THAT(lhs, WithinRel(rhs, 1e-8));
    }
    for (auto [nu, z] : {std::pair{2.0, 40.0}, {0.5, 120.0}}) {
        double lhs = bessel_i_scaled(nu - 1.0, z) - bessel_i_scaled(nu + 1.0, z);
        double rhs = 2.0 * nu / z * bessel_i_scaled(nu, z);
        CHECK_THAT(lhs, WithinRel(rhs, 1e-8));
    }
}

TEST_CASE("bessel scaled consistency") {
    for (double nu : {0.0, 0.5, 1.3})
        for (double z : {0.5, 8.0, 30.0, 200.0}) {
            double lhs = bessel_i_scaled(nu, z);
            double rhs = z <= 600.0 ? bessel_i(nu, z) * std::exp(-z) : lhs;
            CHECK_THAT(lhs, WithinRel(rhs, 1e-11));
        }
    CHECK_THROWS_AS(bessel_i(0.5, -1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_i(-0.8, 1.0), std::domain_error);
}

TEST_CASE("sphere areas") {
    CHECK_THAT(sphere_area(1), WithinRel(2.0, 1e-13));
    CHECK_THAT(sphere_area(2), WithinRel(2.0 * PI, 1e-13));
    CHECK_THAT(sphere_area(3), WithinRel(4.0 * PI, 1e-13));
    CHECK_THROWS_AS(sphere_area(0), std::domain_error);
}
