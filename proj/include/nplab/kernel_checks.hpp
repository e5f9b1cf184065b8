#pragma once

// Empirical verification of the kernel difference bound
//
//   |p_t(x,z) - p_t(y,z)| <= c1 |x-y| (1 + |x-y|/sqrt(2t))^(n+2chi)
//                            e^{|x-y|^2/(c2 t)}
//                            e^{-c3 d(x,z)^2/t} / (sqrt(t) V(x, sqrt(2t)))
//
// and of the L^p -> L^inf decay exponent on product systems.  The shape
// parameters c2, c3 are fixed by the caller; c1 is calibrated as the padded
// worst case of a seeded sweep, after which fresh probes must stay <= 1.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "heat.hpp"

namespace nplab {

struct RegularityBoundFit {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    double max_ratio = 0.0;
    int samples = 0;
};

// log of the bound's x,y,z-dependent part (c1 excluded); -inf when |x-y| = 0
inline double regularity_log_envelope(const HeatKernel& H, double c2, double c3,
                                      double t, const Pt& x, const Pt& y,
                                      const Pt& z) {
    const int n = H.dim();
    double dxy2 = dist2(x, y, n);
    if (!(dxy2 > 0.0)) return -INF;
    double dxy = std::sqrt(dxy2);
    double dxz = pseudo_dist(H.system(), x, z);
    auto mu = H.measure();
    double vx = ball_volume(mu, x, std::sqrt(2.0 * t));
    return std::log(dxy) +
           (n + 2.0 * H.chi()) * std::log1p(dxy / std::sqrt(2.0 * t)) +
           dxy2 / (c2 * t) - c3 * dxz * dxz / t - 0.5 * std::log(t) -
           std::log(vx);
}

inline double regularity_ratio(const HeatKernel& H,
                               const RegularityBoundFit& fit, double t,
                               const Pt& x, const Pt& y, const Pt& z) {
    double num = std::fabs(H.density(t, x, z) - H.density(t, y, z));
    if (!(num > 0.0)) return 0.0;
    double le = regularity_log_envelope(H, fit.c2, fit.c3, t, x, y, z);
    return std::exp(std::log(num) - le - std::log(fit.c1));
}

namespace detail {

template <class Fn>
inline double sweep_regularity(const HeatKernel& H, double c2, double c3,
                               int samples, std::uint64_t seed, Fn&& score) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ut(std::log(1e-2), std::log(10.0));
    std::uniform_real_distribution<double> ux(-3.0, 3.0);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        double t = std::exp(ut(rng));
        Pt x{}, y{}, z{};
        for (int i = 0; i < H.dim(); ++i) {
            x[i] = ux(rng);
            y[i] = ux(rng);
            z[i] = ux(rng);
        }
        double num = std::fabs(H.density(t, x, z) - H.density(t, y, z));
        if (!(num > 1e-280)) continue;
        double le = regularity_log_envelope(H, c2, c3, t, x, y, z);
        if (std::isinf(le)) continue;
        worst = std::max(worst, score(std::log(num) - le));
    }
    return worst;
}

} // namespace detail

inline RegularityBoundFit calibrate_regularity_bound(const HeatKernel& H,
                                                     double c2, double c3,
                                                     int samples,
                                                     std::uint64_t seed) {
    double worst = detail::sweep_regularity(
        H, c2, c3, samples, seed, [](double lr) { return std::exp(lr); });
    return {worst * 1.05, c2, c3, 1.0, samples};
}

inline double regularity_max_ratio(const HeatKernel& H,
                                   const RegularityBoundFit& fit, int samples,
                                   std::uint64_t seed) {
    double lc1 = std::log(fit.c1);
    return detail::sweep_regularity(
        H, fit.c2, fit.c3, samples, seed,
        [lc1](double lr) { return std::exp(lr - lc1); });
}

// P_t f(0) for f(x) = prod_i f_i(x_i) on a product system; each factor must
// have bounded support
inline double apply_product(const HeatKernel& H, const std::vector<Field>& fs,
                            double t, double rel_tol = 1e-9) {
    if (static_cast<int>(fs.size()) != H.dim())
        throw std::invalid_argument("apply_product: one factor per coordinate");
    double v = 1.0;
    for (int i = 0; i < H.dim(); ++i) {
        const Field& fi = fs[static_cast<size_t>(i)];
        auto [lo, hi] = fi.support1d();
        if (std::isinf(lo) || std::isinf(hi))
            throw std::domain_error("apply_product: bounded support required");
        auto r = H.coord_weighted_integral(
            i, t, 0.0, lo, hi, [&](double y) { return fi.eval1(y); },
            fi.breakpoints(), rel_tol, 1e-14);
        v *= r.value;
    }
    return v;
}

inline DecayFit ultracontractivity_fit_product(const HeatKernel& H,
                                               const std::vector<Field>& fs,
                                               double p, double t0, double t1,
                                               int npts) {
    if (npts < 2)
        throw std::domain_error("ultracontractivity_fit_product: npts >= 2");
    std::vector<double> lt(static_cast<size_t>(npts)),
        lv(static_cast<size_t>(npts));
    for (int i = 0; i < npts; ++i) {
        double t = t0 * std::pow(t1 / t0, double(i) / (npts - 1));
        double v = std::fabs(apply_product(H, fs, t));
        if (!(v > 0.0))
            throw std::runtime_error(
                "ultracontractivity_fit_product: vanishing value");
        lt[static_cast<size_t>(i)] = std::log(t);
        lv[static_cast<size_t>(i)] = std::log(v);
    }
    auto [icpt, slope] = ls_line(lt, lv);
    double resid = 0.0;
    for (int i = 0; i < npts; ++i)
        resid = std::max(resid, std::fabs(icpt + slope * lt[static_cast<size_t>(i)] -
                                          lv[static_cast<size_t>(i)]));
    return {slope, slope / p, resid};
}

} // namespace nplab
