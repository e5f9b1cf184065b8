#pragma once

// Randomized instance generators for the perimeter property checks:
// reflection invariance on the sign-flip system, subadditivity, domain
// monotonicity, and translation invariance of the classical form.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "perimeter.hpp"

namespace nplab {

namespace detail {

inline Region random_union_1d(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::uniform_int_distribution<int> k(1, 2);
    IntervalList ivs;
    int m = k(rng);
    for (int i = 0; i < m; ++i) {
        double a = u(rng), b = u(rng);
        if (b < a) std::swap(a, b);
        if (b - a < 0.05) b = a + 0.05;
        ivs.push_back({a, b});
    }
    return region_intervals(ivs).to_intervals().empty()
               ? region_interval(lo, lo + 0.1)
               : region_intervals(region_intervals(ivs).to_intervals());
}

} // namespace detail

inline std::vector<PropertyCheck> reflection_invariance_random(
    int count, std::uint64_t seed, double rel_slack = 2e-5) {
    HeatKernel H(rs_z2(0.5));
    std::vector<PropertyCheck> out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ua(0.1, 1.0), uw(0.2, 1.0),
        um(0.3, 1.0);
    PerimeterOpts po;
    po.profile_tol = 1e-5;
    po.max_panels = 48;
    po.j_tol = 1e-6;
    double s = 0.3;
    for (int i = 0; i < count; ++i) {
        double a = ua(rng), b = a + uw(rng), L = b + um(rng);
        Region A = region_interval(a, b);
        Region gA = region_interval(-b, -a);
        Region Om = region_interval(-L, L);
        double lhs = perimeter_dunkl(H, A, Om, s, po).value;
        double rhs = perimeter_dunkl(H, gA, Om, s, po).value;
        double scale = std::max(std::fabs(lhs), 1.0);
        double m = rel_slack - std::fabs(lhs - rhs) / scale;
        out.push_back({"reflection_invariance_" + std::to_string(i), lhs, rhs,
                       m, m >= 0.0});
    }
    return out;
}

inline std::vector<PropertyCheck> subadditivity_random(int count,
                                                       std::uint64_t seed,
                                                       double rel_slack = 2e-8) {
    std::vector<PropertyCheck> out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> us(0.08, 0.42), um(0.3, 1.5);
    for (int i = 0; i < count; ++i) {
        Region A = detail::random_union_1d(rng, -2.0, 2.0);
        Region B = detail::random_union_1d(rng, -2.0, 2.0);
        Region AB = region_intervals(region_union(A, B).to_intervals());
        double L = 2.0 + um(rng);
        Region Om = region_interval(-L, L);
        double s = us(rng);
        double lhs = per0_dunkl_1d(AB, Om, s);
        double rhs = per0_dunkl_1d(A, Om, s) + per0_dunkl_1d(B, Om, s);
        double scale = std::max(std::fabs(rhs), 1.0);
        double m = (rhs - lhs) / scale + rel_slack;
        out.push_back({"subadditivity_" + std::to_string(i), lhs, rhs, m,
                       m >= 0.0});
    }
    return out;
}

inline std::vector<PropertyCheck> domain_monotonicity_random(
    int count, std::uint64_t seed, double rel_slack = 2e-8) {
    std::vector<PropertyCheck> out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> us(0.08, 0.42), uc(0.2, 1.2);
    for (int i = 0; i < count; ++i) {
        Region A = detail::random_union_1d(rng, -1.5, 1.5);
        double g1 = uc(rng), g2 = g1 + uc(rng);
        Region U1 = region_interval(-1.5 - g1, 1.5 + g1);
        Region U2 = region_interval(-1.5 - g2, 1.5 + g2);
        double s = us(rng);
        double lhs = per0_dunkl_1d(A, U1, s);
        double rhs = per0_dunkl_1d(A, U2, s);
        double scale = std::max(std::fabs(rhs), 1.0);
        double m = (rhs - lhs) / scale + rel_slack;
        out.push_back({"domain_monotonicity_" + std::to_string(i), lhs, rhs, m,
                       m >= 0.0});
    }
    return out;
}

inline std::vector<PropertyCheck> translation_invariance_random(
    int count, std::uint64_t seed, double rel_slack = 1e-6) {
    std::vector<PropertyCheck> out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ua(-1.0, 1.0), uw(0.3, 1.5),
        uv(-3.0, 3.0), us(0.08, 0.42);
    for (int i = 0; i < count; ++i) {
        double a = ua(rng), b = a + uw(rng), v = uv(rng), s = us(rng);
        double pad = uw(rng);
        Region E = region_interval(a, b);
        Region Om = region_interval(a - pad, b + pad);
        Region Ev = region_interval(a + v, b + v);
        Region Omv = region_interval(a - pad + v, b + pad + v);
        double lhs = perimeter_classical_1d(E, Om, s);
        double rhs = perimeter_classical_1d(Ev, Omv, s);
        double scale = std::max(std::fabs(lhs), 1.0);
        double m = rel_slack - std::fabs(lhs - rhs) / scale;
        out.push_back({"translation_invariance_" + std::to_string(i), lhs, rhs,
                       m, m >= 0.0});
    }
    return out;
}

inline std::vector<PropertyCheck> perimeter_properties_random(
    int count, std::uint64_t seed) {
    auto out = reflection_invariance_random(count, seed);
    auto add = [&](std::vector<PropertyCheck> v) {
        out.insert(out.end(), v.begin(), v.end());
    };
    add(subadditivity_random(count, seed + 1));
    add(domain_monotonicity_random(count, seed + 2));
    add(translation_invariance_random(count, seed + 3));
    return out;
}

} // namespace nplab
