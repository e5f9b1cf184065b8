#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qmc.hpp"
#include "quadrature.hpp"
#include "region.hpp"
#include "rootsystem.hpp"
#include "specfun.hpp"

namespace nplab {

struct MeasureOpts {
    double rel_tol = 1e-9;
    std::uint64_t mc_samples = 400'000;
    std::uint64_t seed = 20180515;
};

struct MeasureEstimate {
    double value = 0.0;
    double std_err = 0.0; // zero for deterministic paths
    bool monte_carlo = false;
};

// closed form of int_a^b 2^k |x|^{2k} dx, finite a <= b
inline double measure_interval_1d(double kappa, double a, double b) {
    auto prim = [kappa](double x) {
        double ax = std::fabs(x);
        if (ax == 0.0) return 0.0;
        double v = std::pow(2.0, kappa) * std::pow(ax, 2.0 * kappa + 1.0) /
                   (2.0 * kappa + 1.0);
        return x > 0.0 ? v : -v;
    };
    return prim(b) - prim(a);
}

// measure mu_kappa = w_kappa(x) dx restricted by the root system
struct WeightedMeasure {
    RootSystem rs;

    int dim() const { return rs.n; }
    double chi() const { return rs.chi(); }
    double density(const Pt& x) const { return weight(rs, x); }
};

inline WeightedMeasure make_measure(RootSystem rs) { return {std::move(rs)}; }

namespace detail {

// angular density of the product weight on the circle of radius 1 (n = 2)
inline double angular_weight_2d(const RootSystem& rs, double c, double s) {
    Pt p{c, s, 0.0, 0.0};
    return weight(rs, p);
}

} // namespace detail

inline MeasureEstimate measure_of(const WeightedMeasure& mu, const Region& R,
                                  const MeasureOpts& opts = {}) {
    MeasureEstimate out;
    const RootSystem& rs = mu.rs;
    const int n = rs.n;
    if (R.n != n)
        throw std::invalid_argument("measure_of: region dimension mismatch");
    if (n == 1) {
        double total = 0.0;
        for (const auto& iv : R.to_intervals()) {
            if (std::isinf(iv.first) || std::isinf(iv.second))
                throw std::invalid_argument(
                    "measure_of: region has infinite weighted measure");
            total += measure_interval_1d(rs.coord_kappa[0], iv.first, iv.second);
        }
        out.value = total;
        return out;
    }
    if (rs.is_product() && R.tag == RegionTag::axis_box) {
        double total = 1.0;
        for (int i = 0; i < n; ++i) {
            if (std::isinf(R.lo[i]) || std::isinf(R.hi[i]))
                throw std::invalid_argument(
                    "measure_of: box has infinite weighted measure");
            total *= measure_interval_1d(rs.coord_kappa[i], R.lo[i], R.hi[i]);
        }
        out.value = total;
        return out;
    }
    if (rs.is_product() && n == 2 && R.tag == RegionTag::ball) {
        // polar split: radial part in closed form, angular part by quadrature
        double cx = R.center[0], cy = R.center[1], rad = R.radius;
        double chi = rs.chi();
        auto angular = [&](double rho) {
            auto f = [&](double th) {
                Pt p{cx + rho * std::cos(th), cy + rho * std::sin(th), 0.0, 0.0};
                return weight(rs, p);
            };
            std::vector<double> splits;
            for (int k = -2; k <= 2; ++k) {
                // angles where a coordinate of the moving point changes sign
                if (std::fabs(cx) <= rho) {
                    double base = std::acos(-cx / rho);
                    splits.push_back(base + 2.0 * PI * k);
                    splits.push_back(-base + 2.0 * PI * k);
                }
                if (std::fabs(cy) <= rho) {
                    double base = std::asin(-cy / rho);
                    splits.push_back(base + 2.0 * PI * k);
                    splits.push_back(PI - base + 2.0 * PI * k);
                }
            }
            QuadOpts qo;
            qo.rel_tol = opts.rel_tol;
            qo.abs_tol = 1e-14;
            qo.split_points = splits;
            return integrate_adaptive(f, 0.0, 2.0 * PI, qo).value;
        };
        auto radial = [&](double rho) { return rho * angular(rho); };
        QuadOpts qo;
        qo.rel_tol = std::max(opts.rel_tol, 1e-8);
        qo.abs_tol = 1e-14;
        (void)chi;
        out.value = integrate_adaptive(radial, 0.0, rad, qo).value;
        return out;
    }
    // generic bounded region: quasi-Monte Carlo against the weight
    if (!R.bounded())
        throw std::invalid_argument("measure_of: unbounded region without a "
                                    "closed-form path");
    Pt blo, bhi;
    R.bbox(blo, bhi);
    std::vector<double> lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
        lo[i] = blo[i];
        hi[i] = bhi[i];
    }
    auto f = [&](const std::vector<double>& v) {
        Pt p{};
        for (int i = 0; i < n; ++i) p[i] = v[i];
        return R.contains(p) ? weight(rs, p) : 0.0;
    };
    auto est = qmc_integrate_box(f, lo, hi, opts.mc_samples, opts.seed);
    out.value = est.value;
    out.std_err = est.std_err;
    out.monte_carlo = true;
    return out;
}

// V_kappa(x, r) = mu_kappa(B(x, r)) for the Euclidean ball
inline double ball_volume(const WeightedMeasure& mu, const Pt& x, double r,
                          const MeasureOpts& opts = {}) {
    const int n = mu.rs.n;
    if (!(r > 0.0)) throw std::domain_error("ball_volume: requires r > 0");
    if (n == 1)
        return measure_interval_1d(mu.rs.coord_kappa[0], x[0] - r, x[0] + r);
    if (mu.rs.kind == GroupKind::trivial)
        return std::pow(PI, 0.5 * n) * std::pow(r, n) / gamma_fn(0.5 * n + 1.0);
    return measure_of(mu, region_ball(x, r, n), opts).value;
}

// r^n prod (|<alpha,x>| + r)^{2 kappa}: the sharp-order volume profile
inline double vol_asym(const WeightedMeasure& mu, const Pt& x, double r) {
    double v = std::pow(r, mu.rs.n);
    for (const auto& rt : mu.rs.positive_roots)
        v *= std::pow(std::fabs(dot(rt.alpha, x, mu.rs.n)) + r, 2.0 * rt.kappa);
    return v;
}

struct MmConstant {
    double quadrature = 0.0;
    double quadrature_tail_bound = 0.0;
    double formula = 0.0;
    bool formula_available = false;
    double rel_dev = 0.0;
};

// Gaussian total mass c_kappa = int e^{-|x|^2/2} w_kappa dx. The product
// formula is applied per irreducible component; for the supported product
// systems each coordinate is its own component with chi_i = kappa_i.
inline MmConstant mm_constant(const WeightedMeasure& mu,
                              const MeasureOpts& opts = {}) {
    MmConstant out;
    const RootSystem& rs = mu.rs;
    const int n = rs.n;
    if (rs.is_product()) {
        double quad = 1.0;
        double tail = 0.0;
        const double Y = 12.0;
        for (int i = 0; i < n; ++i) {
            double k = rs.coord_kappa[i];
            auto f = [k](double t) {
                return weight1d(k, t) * std::exp(-0.5 * t * t);
            };
            QuadOpts qo;
            qo.rel_tol = std::min(opts.rel_tol, 1e-10);
            qo.abs_tol = 1e-16;
            qo.split_points = graded_splits(0.0, 1.0, 1e-10);
            double v = 2.0 * integrate_adaptive(f, 0.0, Y, qo).value;
            // tail: int_Y^inf 2^k t^{2k} e^{-t^2/2} dt = 2^{2k-1/2} G(k+1/2, Y^2/2)
            double tb = 2.0 * std::pow(2.0, 2.0 * k - 0.5) *
                        gamma_inc_upper(k + 0.5, 0.5 * Y * Y);
            quad *= v;
            tail += tb;
        }
        out.quadrature = quad;
        out.quadrature_tail_bound = tail;
        double formula = std::pow(2.0 * PI, 0.5 * n);
        for (int i = 0; i < n; ++i) {
            double k = rs.coord_kappa[i];
            formula *= gamma_fn(2.0 * k + 1.0) / gamma_fn(k + 1.0);
        }
        out.formula = formula;
        out.formula_available = true;
        out.rel_dev = std::fabs(quad - formula) / formula;
        return out;
    }
    // general group: QMC on a box that carries all but a bounded tail
    const double Y = 10.0;
    std::vector<double> lo(n, -Y), hi(n, Y);
    auto f = [&](const std::vector<double>& v) {
        Pt p{};
        for (int i = 0; i < n; ++i) p[i] = v[i];
        return weight(rs, p) * std::exp(-0.5 * dot(p, p, n));
    };
    auto est = qmc_integrate_box(f, lo, hi, opts.mc_samples, opts.seed);
    out.quadrature = est.value;
    out.quadrature_tail_bound = est.std_err;
    out.formula_available = false;
    return out;
}

// 1-d coordinate Gaussian mass 2^{2k+1/2} Gamma(k+1/2), the normalization of
// the rank-1 heat kernel
inline double mm1_coord(double kappa) {
    return std::pow(2.0, 2.0 * kappa + 0.5) * gamma_fn(kappa + 0.5);
}

} // namespace nplab
