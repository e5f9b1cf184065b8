#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "measure.hpp"
#include "region.hpp"

namespace nplab {

enum class FieldTag { indicator, tent, gauss, expr };

// Scalar test function with enough structure for the quadratures: tagged
// shape, breakpoints, effective support. Gaussian tails are cut at nine
// standard deviations, far below every tolerance used here.
struct Field {
    FieldTag tag = FieldTag::indicator;
    int n = 1;
    Region region;                         // indicator
    double tc = 0.0, thw = 1.0, th = 1.0;  // tent
    double gc = 0.0, gs = 1.0, ga = 1.0;   // gauss
    std::function<double(double)> fn;      // expr, n == 1
    std::vector<double> expr_brk;
    double expr_lo = 0.0, expr_hi = 0.0;
    double expr_sup = 0.0;

    double eval1(double x) const {
        switch (tag) {
            case FieldTag::indicator:
                return region.contains(pt1(x)) ? 1.0 : 0.0;
            case FieldTag::tent: {
                double u = 1.0 - std::fabs(x - tc) / thw;
                return u > 0.0 ? th * u : 0.0;
            }
            case FieldTag::gauss: {
                double u = (x - gc) / gs;
                return ga * std::exp(-u * u);
            }
            case FieldTag::expr:
                return fn(x);
        }
        return 0.0;
    }

    std::pair<double, double> support1d() const {
        switch (tag) {
            case FieldTag::indicator: {
                auto iv = region.to_intervals();
                if (iv.empty()) return {0.0, 0.0};
                return {iv.front().first, iv.back().second};
            }
            case FieldTag::tent:
                return {tc - thw, tc + thw};
            case FieldTag::gauss:
                return {gc - 9.0 * gs, gc + 9.0 * gs};
            case FieldTag::expr:
                return {expr_lo, expr_hi};
        }
        return {0.0, 0.0};
    }

    std::vector<double> breakpoints() const {
        switch (tag) {
            case FieldTag::indicator:
                return region.breakpoints1d();
            case FieldTag::tent:
                return {tc - thw, tc, tc + thw};
            case FieldTag::gauss:
                return {gc};
            case FieldTag::expr:
                return expr_brk;
        }
        return {};
    }

    double sup_abs() const {
        switch (tag) {
            case FieldTag::indicator:
                return 1.0;
            case FieldTag::tent:
                return std::fabs(th);
            case FieldTag::gauss:
                return std::fabs(ga);
            case FieldTag::expr:
                return expr_sup;
        }
        return 0.0;
    }
};

inline Field field_indicator(Region r) {
    Field f;
    f.tag = FieldTag::indicator;
    f.n = r.n;
    f.region = std::move(r);
    return f;
}

inline Field field_tent(double center, double halfwidth, double height) {
    if (!(halfwidth > 0.0)) throw std::domain_error("field_tent: halfwidth > 0");
    Field f;
    f.tag = FieldTag::tent;
    f.tc = center;
    f.thw = halfwidth;
    f.th = height;
    return f;
}

inline Field field_gauss(double center, double sigma, double amp) {
    if (!(sigma > 0.0)) throw std::domain_error("field_gauss: sigma > 0");
    Field f;
    f.tag = FieldTag::gauss;
    f.gc = center;
    f.gs = sigma;
    f.ga = amp;
    return f;
}

namespace detail {

inline Field combine_fields(const Field& a, const Field& b, bool take_max) {
    if (a.n != 1 || b.n != 1)
        throw std::domain_error("field max/min: n == 1 only");
    Field f;
    f.tag = FieldTag::expr;
    auto fa = a, fb = b; // copies captured by value
    if (take_max)
        f.fn = [fa, fb](double x) { return std::max(fa.eval1(x), fb.eval1(x)); };
    else
        f.fn = [fa, fb](double x) { return std::min(fa.eval1(x), fb.eval1(x)); };
    auto ba = a.breakpoints();
    auto bb = b.breakpoints();
    f.expr_brk = ba;
    f.expr_brk.insert(f.expr_brk.end(), bb.begin(), bb.end());
    std::sort(f.expr_brk.begin(), f.expr_brk.end());
    auto sa = a.support1d();
    auto sb = b.support1d();
    f.expr_lo = std::min(sa.first, sb.first);
    f.expr_hi = std::max(sa.second, sb.second);
    f.expr_sup = std::max(a.sup_abs(), b.sup_abs());
    return f;
}

} // namespace detail

inline Field field_max(const Field& a, const Field& b) {
    if (a.tag == FieldTag::indicator && b.tag == FieldTag::indicator)
        return field_indicator(region_union(a.region, b.region));
    return detail::combine_fields(a, b, true);
}

inline Field field_min(const Field& a, const Field& b) {
    if (a.tag == FieldTag::indicator && b.tag == FieldTag::indicator)
        return field_indicator(region_intersect(a.region, b.region));
    return detail::combine_fields(a, b, false);
}

inline Field field_sum(const Field& a, const Field& b) {
    if (a.n != 1 || b.n != 1) throw std::domain_error("field_sum: n == 1 only");
    Field f;
    f.tag = FieldTag::expr;
    f.n = 1;
    auto fa = a, fb = b;
    f.fn = [fa, fb](double x) { return fa.eval1(x) + fb.eval1(x); };
    f.expr_brk = a.breakpoints();
    auto bb = b.breakpoints();
    f.expr_brk.insert(f.expr_brk.end(), bb.begin(), bb.end());
    std::sort(f.expr_brk.begin(), f.expr_brk.end());
    auto sa = a.support1d();
    auto sb = b.support1d();
    f.expr_lo = std::min(sa.first, sb.first);
    f.expr_hi = std::max(sa.second, sb.second);
    f.expr_sup = a.sup_abs() + b.sup_abs();
    return f;
}

// int |f|^p dmu over the effective support, n == 1
inline double lp_norm_pow(const WeightedMeasure& mu, const Field& f, double p,
                          double rel_tol = 1e-10) {
    if (mu.rs.n != 1) throw std::domain_error("lp_norm_pow: n == 1 only");
    if (f.tag == FieldTag::indicator && p >= 1.0) {
        // |1_E|^p = 1_E
        return measure_of(mu, f.region).value;
    }
    auto [lo, hi] = f.support1d();
    if (!(hi > lo)) return 0.0;
    if (std::isinf(lo) || std::isinf(hi))
        throw std::domain_error("lp_norm_pow: unbounded support");
    double kappa = mu.rs.coord_kappa[0];
    auto g = [&](double x) {
        double v = std::fabs(f.eval1(x));
        return weight1d(kappa, x) * (p == 1.0 ? v : std::pow(v, p));
    };
    QuadOpts qo;
    qo.rel_tol = rel_tol;
    qo.abs_tol = 1e-15;
    qo.split_points = f.breakpoints();
    if (lo < 0.0 && hi > 0.0) {
        auto gs = graded_splits(0.0, std::min(-lo, hi), 1e-12);
        qo.split_points.insert(qo.split_points.end(), gs.begin(), gs.end());
    }
    return integrate_adaptive(g, lo, hi, qo).value;
}

} // namespace nplab
