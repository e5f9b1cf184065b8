#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nplab {

inline constexpr double PI = 3.14159265358979323846;

// Gamma for x > 0, Lanczos approximation (g = 7, 9 coefficients).
// Relative error is a few 1e-14 over the range used here.
inline double gamma_fn(double x) {
    if (!(x > 0.0)) throw std::domain_error("gamma_fn: requires x > 0");
    static const double g = 7.0;
    static const double c[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    if (x < 0.5) {
        // reflection keeps the base formula in its accurate regime
        return PI / (std::sin(PI * x) * gamma_fn(1.0 - x));
    }
    double z = x - 1.0;
    double a = c[0];
    for (int i = 1; i < 9; ++i) a += c[i] / (z + i);
    double t = z + g + 0.5;
    return std::sqrt(2.0 * PI) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

// log Gamma for x > 0
inline double lgamma_pos(double x) {
    if (!(x > 0.0)) throw std::domain_error("lgamma_pos: requires x > 0");
    return std::lgamma(x);
}

namespace detail {

// regularized lower incomplete gamma P(a,x) by series, valid for x < a+1
inline double gamma_p_series(double a, double x) {
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int it = 0; it < 600; ++it) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-17) break;
    }
    return sum * std::exp(-x + a * std::log(x) - lgamma_pos(a));
}

// regularized upper incomplete gamma Q(a,x) by Lentz continued fraction, x >= a+1
inline double gamma_q_contfrac(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 600; ++i) {
        double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-17) break;
    }
    return h * std::exp(-x + a * std::log(x) - lgamma_pos(a));
}

} // namespace detail

// lower incomplete gamma, not regularized: int_0^u e^{-t} t^{p-1} dt
inline double gamma_inc_lower(double p, double u) {
    if (!(p > 0.0)) throw std::domain_error("gamma_inc_lower: requires p > 0");
    if (u < 0.0) throw std::domain_error("gamma_inc_lower: requires u >= 0");
    if (u == 0.0) return 0.0;
    if (u < p + 1.0) return detail::gamma_p_series(p, u) * gamma_fn(p);
    return (1.0 - detail::gamma_q_contfrac(p, u)) * gamma_fn(p);
}

// upper incomplete gamma: int_u^inf e^{-t} t^{p-1} dt
inline double gamma_inc_upper(double p, double u) {
    if (!(p > 0.0)) throw std::domain_error("gamma_inc_upper: requires p > 0");
    if (u < 0.0) throw std::domain_error("gamma_inc_upper: requires u >= 0");
    if (u == 0.0) return gamma_fn(p);
    if (u < p + 1.0) return (1.0 - detail::gamma_p_series(p, u)) * gamma_fn(p);
    return detail::gamma_q_contfrac(p, u) * gamma_fn(p);
}

namespace detail {

// ascending series for I_nu, all terms positive, converges for every z
inline double bessel_i_series(double nu, double z) {
    if (z == 0.0) {
        if (nu == 0.0) return 1.0;
        if (nu > 0.0) return 0.0;
        return std::numeric_limits<double>::infinity();
    }
    double term = std::exp(nu * std::log(0.5 * z) - lgamma_pos(nu + 1.0));
    double sum = term;
    double q = 0.25 * z * z;
    for (int k = 0; k < 400; ++k) {
        term *= q / ((k + 1.0) * (k + 1.0 + nu));
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return sum;
}

// large-argument expansion of e^{-z} I_nu(z); sets ok=false when the series
// cannot reach the requested accuracy before its terms turn around
inline double bessel_i_asym_scaled(double nu, double z, bool* ok) {
    double mu = 4.0 * nu * nu;
    double sum = 1.0;
    double term = 1.0;
    double prev = std::numeric_limits<double>::infinity();
    *ok = false;
    for (int k = 1; k <= 60; ++k) {
        double num = mu - (2.0 * k - 1.0) * (2.0 * k - 1.0);
        term *= -num / (8.0 * k * z);
        if (std::fabs(term) >= prev) break;
        prev = std::fabs(term);
        sum += term;
        if (std::fabs(term) < 1e-13 * std::fabs(sum)) {
            *ok = true;
            break;
        }
    }
    return sum / std::sqrt(2.0 * PI * z);
}

} // namespace detail

// e^{-z} I_nu(z) for z >= 0, nu >= -1/2
inline double bessel_i_scaled(double nu, double z) {
    if (z < 0.0) throw std::domain_error("bessel_i_scaled: requires z >= 0");
    if (nu < -0.5) throw std::domain_error("bessel_i_scaled: requires nu >= -1/2");
    if (z <= 12.0) return detail::bessel_i_series(nu, z) * std::exp(-z);
    bool ok = false;
    double v = detail::bessel_i_asym_scaled(nu, z, &ok);
    if (ok) return v;
    return detail::bessel_i_series(nu, z) * std::exp(-z);
}

// modified Bessel I_nu(z) for z >= 0, nu >= -1/2
inline double bessel_i(double nu, double z) {
    if (z < 0.0) throw std::domain_error("bessel_i: requires z >= 0");
    if (nu < -0.5) throw std::domain_error("bessel_i: requires nu >= -1/2");
    if (z <= 12.0) return detail::bessel_i_series(nu, z);
    bool ok = false;
    double v = detail::bessel_i_asym_scaled(nu, z, &ok);
    if (ok) return v * std::exp(z);
    return detail::bessel_i_series(nu, z);
}

// surface measure of the unit sphere in R^n
inline double sphere_area(int n) {
    if (n < 1) throw std::domain_error("sphere_area: requires n >= 1");
    return 2.0 * std::pow(PI, 0.5 * n) / gamma_fn(0.5 * n);
}

} // namespace nplab
