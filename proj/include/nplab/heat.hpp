#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "extrapolate.hpp"
#include "field.hpp"
#include "measure.hpp"
#include "quadrature.hpp"
#include "region.hpp"
#include "rootsystem.hpp"
#include "specfun.hpp"

namespace nplab {

namespace detail {

// I_{nu+1}(w)/I_nu(w) by continued fraction (Lentz), w in the series regime
inline double bessel_i_ratio(double nu, double w) {
    const double tiny = 1e-300;
    double f = tiny, C = tiny, D = 0.0;
    for (int k = 1; k <= 400; ++k) {
        double b = 2.0 * (nu + k) / w;
        D = b + D;
        if (D == 0.0) D = tiny;
        C = b + 1.0 / C;
        if (C == 0.0) C = tiny;
        D = 1.0 / D;
        double delta = C * D;
        f *= delta;
        if (std::fabs(delta - 1.0) < 1e-15) break;
    }
    return f;
}

// (A_nu +- A_{nu+1}) / sqrt(2 pi w) where A is the large-argument expansion
// of e^{-w} sqrt(2 pi w) I(w). Termwise combination keeps the minus branch
// stable: the order-zero terms cancel exactly instead of in floating point.
inline double scaled_bessel_pair_asym(double nu, double w, double sign) {
    double mu_a = 4.0 * nu * nu;
    double mu_b = 4.0 * (nu + 1.0) * (nu + 1.0);
    double ta = 1.0, tb = 1.0;
    double acc = sign > 0.0 ? 2.0 : 0.0;
    double prev = 1e308;
    for (int k = 1; k <= 60; ++k) {
        double den = 8.0 * k * w;
        double odd = (2.0 * k - 1.0) * (2.0 * k - 1.0);
        ta *= -(mu_a - odd) / den;
        tb *= -(mu_b - odd) / den;
        double inc = sign > 0.0 ? ta + tb : ta - tb;
        acc += inc;
        double mag = std::fabs(ta) + std::fabs(tb);
        if (mag < 1e-17 * std::max(std::fabs(acc), 1e-30)) break;
        if (mag > prev) break; // divergent tail of the asymptotic series
        prev = mag;
    }
    return acc / std::sqrt(2.0 * PI * w);
}

} // namespace detail

// exp(-|z|) E_kappa(z) for the rank-one kernel; bounded by 1, smooth away
// from z = 0, algebraic decay as z -> -inf and ~ z^-kappa as z -> +inf
inline double etilde(double kappa, double z) {
    if (kappa == 0.0) return z >= 0.0 ? 1.0 : std::exp(2.0 * z);
    double w = std::fabs(z);
    if (w < 1e-4) {
        double q = 0.25 * z * z;
        double even = 1.0 + q / (kappa + 0.5) +
                      q * q / (2.0 * (kappa + 0.5) * (kappa + 1.5));
        double odd = z / (2.0 * kappa + 1.0) * (1.0 + q / (kappa + 1.5));
        return std::exp(-w) * (even + odd);
    }
    double nu = kappa - 0.5;
    double pref = gamma_fn(kappa + 0.5) * std::pow(2.0 / w, nu);
    double sign = z > 0.0 ? 1.0 : -1.0;
    if (w <= 12.0) {
        double inu = bessel_i_scaled(nu, w);
        double ratio = detail::bessel_i_ratio(nu, w);
        return pref * inu * (1.0 + sign * ratio);
    }
    return pref * detail::scaled_bessel_pair_asym(nu, w, sign);
}

inline double ekernel(double kappa, double z) {
    if (std::fabs(z) > 600.0)
        throw std::domain_error("ekernel: |z| too large, use etilde");
    return std::exp(std::fabs(z)) * etilde(kappa, z);
}

// reference route through the weighted integral representation on [-1,1];
// independent of the Bessel path, used to cross-check etilde
inline double ekernel_gj(double kappa, double z, int m = 48) {
    if (!(kappa > 0.0)) throw std::domain_error("ekernel_gj: kappa > 0");
    auto rule = gauss_jacobi(m, kappa - 1.0, kappa);
    double ck = gamma_fn(kappa + 0.5) / (gamma_fn(kappa) * std::sqrt(PI));
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += rule.w[i] * std::exp(z * rule.x[i]);
    return ck * s;
}

// classical 1-D heat mass of [a,b] seen from x; erfc branches avoid the
// cancellation when the interval sits far on one side
inline double gauss_interval_mass(double t, double x, double a, double b) {
    double s = std::sqrt(4.0 * t);
    double al = (a - x) / s, be = (b - x) / s;
    if (al >= 0.0) return 0.5 * (std::erfc(al) - std::erfc(be));
    if (be <= 0.0) return 0.5 * (std::erfc(-be) - std::erfc(-al));
    return 0.5 * (std::erf(be) - std::erf(al));
}

// certified bound on the rank-one kernel mass of {|y| > |x| + u0 sqrt(4t)}
inline double coord_tail_bound(double kappa, double t, double x, double u0) {
    if (kappa == 0.0) return std::erfc(u0);
    double c2k = std::pow(2.0, std::max(0.0, 2.0 * kappa - 1.0));
    double pref = std::pow(2.0, kappa + 1.0) * c2k / mm1_coord(kappa);
    double amp = std::exp(-(kappa + 0.5) * std::log(2.0 * t)) * std::sqrt(4.0 * t);
    double ax = std::fabs(x);
    double term1 = ax == 0.0 ? 0.0
                             : std::pow(ax, 2.0 * kappa) * 0.5 * std::sqrt(PI) *
                                   std::erfc(u0);
    double term2 =
        std::pow(4.0 * t, kappa) * 0.5 * gamma_inc_upper(kappa + 0.5, u0 * u0);
    return pref * amp * (term1 + term2);
}

struct MassResult {
    double value = 0.0;
    double err_bound = 0.0; // truncation bound plus quadrature estimate
};

// Heat semigroup for the trivial and sign-flip product settings. Kernel
// densities are taken with respect to the weighted measure; masses clip the
// spatial domain at a radius with a certified remainder bound.
class HeatKernel {
public:
    explicit HeatKernel(RootSystem rs_) : rs(std::move(rs_)) {
        if (!rs.is_product())
            throw std::invalid_argument(
                "HeatKernel: trivial or sign-flip product systems only");
        for (int i = 0; i < rs.n; ++i)
            inv_c.push_back(1.0 / mm1_coord(rs.coord_kappa[i]));
    }

    const RootSystem& system() const { return rs; }
    WeightedMeasure measure() const { return make_measure(rs); }
    int dim() const { return rs.n; }
    double chi() const { return rs.chi(); }
    double kappa(int i) const { return rs.coord_kappa[i]; }

    double coord_density(int i, double t, double x, double y) const {
        double k = rs.coord_kappa[i];
        if (k == 0.0) {
            double d = x - y;
            return std::exp(-d * d / (4.0 * t)) / std::sqrt(4.0 * PI * t);
        }
        double dd = std::fabs(x) - std::fabs(y);
        double lp = -(k + 0.5) * std::log(2.0 * t) - dd * dd / (4.0 * t);
        return inv_c[static_cast<size_t>(i)] * std::exp(lp) *
               etilde(k, x * y / (2.0 * t));
    }

    double density(double t, const Pt& x, const Pt& y) const {
        double v = 1.0;
        for (int i = 0; i < rs.n; ++i) v *= coord_density(i, t, x[i], y[i]);
        return v;
    }

    // p_t(x,y) <= gaussian_upper(t, d(x,y)^2) everywhere
    double gaussian_upper(double t, double dist2_) const {
        double lp = -dist2_ / (4.0 * t);
        for (int i = 0; i < rs.n; ++i)
            lp -= (rs.coord_kappa[i] + 0.5) * std::log(2.0 * t);
        double v = std::exp(lp);
        for (double ic : inv_c) v *= ic;
        return v;
    }

    // integral of k(t,x0,.) g(.) dmu over [A,B], panels pre-graded at the
    // kernel bumps, the weight cusp, and any caller-supplied breakpoints
    template <class G>
    QuadResult coord_weighted_integral(int i, double t, double x0, double A,
                                       double B, G&& g,
                                       const std::vector<double>& extra_splits,
                                       double rel_tol, double abs_tol) const {
        if (!(A < B)) return {};
        double k = rs.coord_kappa[i];
        double ic = inv_c[static_cast<size_t>(i)];
        double lt = std::log(2.0 * t);
        double wdt = std::sqrt(4.0 * t);
        auto integrand = [&](double y) -> double {
            if (k == 0.0) {
                double d = x0 - y;
                return std::exp(-d * d / (4.0 * t) - 0.5 * lt) * ic * g(y);
            }
            if (y == 0.0) return 0.0;
            double dd = std::fabs(x0) - std::fabs(y);
            double lp = -(k + 0.5) * lt - dd * dd / (4.0 * t) +
                        k * std::log(2.0 * y * y);
            return ic * std::exp(lp) * etilde(k, x0 * y / (2.0 * t)) * g(y);
        };
        QuadOpts qo;
        qo.rel_tol = rel_tol;
        qo.abs_tol = abs_tol;
        qo.split_points = extra_splits;
        double span = B - A;
        auto add = [&](std::vector<double> v) {
            qo.split_points.insert(qo.split_points.end(), v.begin(), v.end());
        };
        if (k == 0.0) {
            add(graded_splits(x0, span, wdt));
        } else {
            add(graded_splits(std::fabs(x0), span, wdt));
            add(graded_splits(-std::fabs(x0), span, wdt));
            if (A < 0.0 && B > 0.0) add(graded_splits(0.0, span, span * 1e-12));
        }
        return integrate_adaptive(integrand, A, B, qo);
    }

    // kernel mass of [a,b] (ends may be infinite) seen from x along axis i
    MassResult coord_mass(int i, double t, double x, double a, double b,
                          double rel_tol = 1e-10,
                          double abs_tol = 1e-13) const {
        MassResult out;
        if (!(a < b)) return out;
        double k = rs.coord_kappa[i];
        if (k == 0.0) {
            out.value = gauss_interval_mass(t, x, a, b);
            return out;
        }
        double wdt = std::sqrt(4.0 * t);
        double u0 = 7.0, tb;
        for (;;) {
            tb = coord_tail_bound(k, t, x, u0);
            if (tb <= abs_tol || u0 >= 40.0) break;
            u0 += 2.0;
        }
        double Y = std::fabs(x) + u0 * wdt;
        double A = std::max(a, -Y), B = std::min(b, Y);
        if (a < -Y || b > Y) out.err_bound += tb;
        if (!(A < B)) return out;
        auto r = coord_weighted_integral(
            i, t, x, A, B, [](double) { return 1.0; }, {}, rel_tol, abs_tol);
        out.value = r.value;
        out.err_bound += r.err_est;
        return out;
    }

    MassResult region_mass(double t, const Pt& x, const Region& R,
                           double rel_tol = 1e-10,
                           double abs_tol = 1e-13) const {
        const int n = rs.n;
        if (R.n != n)
            throw std::invalid_argument("region_mass: dimension mismatch");
        if (R.tag == RegionTag::empty) return {};
        if (R.tag == RegionTag::full) {
            double pv = 1.0, pe = 1.0;
            for (int i = 0; i < n; ++i) {
                auto mi = coord_mass(i, t, x[i], -INF, INF, rel_tol, abs_tol);
                pv *= mi.value;
                pe *= mi.value + mi.err_bound;
            }
            return {pv, pe - pv};
        }
        if (n == 1) {
            MassResult out;
            for (auto& iv : R.to_intervals()) {
                auto mi =
                    coord_mass(0, t, x[0], iv.first, iv.second, rel_tol, abs_tol);
                out.value += mi.value;
                out.err_bound += mi.err_bound;
            }
            return out;
        }
        if (R.tag == RegionTag::axis_box) {
            double pv = 1.0, pe = 1.0;
            for (int i = 0; i < n; ++i) {
                auto mi =
                    coord_mass(i, t, x[i], R.lo[i], R.hi[i], rel_tol, abs_tol);
                pv *= mi.value;
                pe *= mi.value + mi.err_bound;
            }
            return {pv, pe - pv};
        }
        if (R.tag == RegionTag::half_space && rs.kind == GroupKind::trivial) {
            double nn = std::sqrt(dot(R.normal, R.normal, n));
            double u = (R.offset - dot(R.normal, x, n)) /
                       (nn * std::sqrt(4.0 * t));
            return {0.5 * std::erfc(u), 0.0};
        }
        if (rs.kind == GroupKind::trivial && n == 2)
            return polar_mass_2d(t, x, R, rel_tol);
        throw std::invalid_argument(
            "region_mass: unsupported region for this kernel");
    }

    // classical planar mass by radial quadrature of the sampled angular
    // occupancy; err_bound carries the sampling slack, not a certified bound
    MassResult polar_mass_2d(double t, const Pt& x, const Region& R,
                             double rel_tol, int ang_samples = 2048) const {
        double u0 = 9.0;
        double rmax = u0 * std::sqrt(4.0 * t);
        auto ang = [&](double rho) {
            int cnt = 0;
            for (int j = 0; j < ang_samples; ++j) {
                double phi = (j + 0.5) * (2.0 * PI / ang_samples);
                Pt p = pt2(x[0] + rho * std::cos(phi), x[1] + rho * std::sin(phi));
                if (R.contains(p)) ++cnt;
            }
            return 2.0 * PI * cnt / ang_samples;
        };
        auto g = [&](double rho) {
            double a = ang(rho);
            if (a == 0.0) return 0.0;
            return std::exp(-rho * rho / (4.0 * t)) / (4.0 * PI * t) * rho * a;
        };
        QuadOpts qo;
        qo.rel_tol = std::max(rel_tol, 3e-7);
        qo.abs_tol = 1e-10;
        qo.max_evals = 60'000;
        for (double h : radial_hints(x, R, rmax))
            if (h > 0.0 && h < rmax) qo.split_points.push_back(h);
        auto r = integrate_adaptive(g, 0.0, rmax, qo);
        double slack = 8.0 / ang_samples + std::exp(-u0 * u0);
        return {r.value, r.err_est + slack};
    }

    double apply(const Field& f, double t, double x0,
                 double rel_tol = 1e-9) const {
        if (rs.n != 1) throw std::invalid_argument("apply: n == 1 only");
        if (f.tag == FieldTag::indicator)
            return region_mass(t, pt1(x0), f.region, rel_tol).value;
        auto [lo, hi] = f.support1d();
        if (!(hi > lo)) return 0.0;
        auto fr = coord_weighted_integral(
            0, t, x0, lo, hi, [&](double y) { return f.eval1(y); },
            f.breakpoints(), rel_tol, 1e-15);
        return fr.value;
    }

    double completeness_deviation(double t, const Pt& x,
                                  double rel_tol = 1e-11) const {
        auto m = region_mass(t, x, region_full(rs.n), rel_tol, 1e-15);
        return std::fabs(m.value - 1.0);
    }

    // relative defect of int k_t(x,.) k_u(y,.) dmu against k_{t+u}(x,y)
    double semigroup_deviation(double t, double u, const Pt& x,
                               const Pt& y) const {
        double conv = 1.0;
        for (int i = 0; i < rs.n; ++i) {
            double k = rs.coord_kappa[i];
            double wmax = std::sqrt(4.0 * std::max(t, u));
            double Z = std::max(std::fabs(x[i]), std::fabs(y[i])) + 14.0 * wmax;
            auto g = [&](double z) {
                double w = k == 0.0 ? 1.0 : weight1d(k, z);
                return coord_density(i, t, x[i], z) *
                       coord_density(i, u, y[i], z) * w;
            };
            QuadOpts qo;
            qo.rel_tol = 1e-11;
            qo.abs_tol = 1e-16;
            double span = 2.0 * Z;
            auto add = [&](std::vector<double> v) {
                qo.split_points.insert(qo.split_points.end(), v.begin(), v.end());
            };
            add(graded_splits(std::fabs(x[i]), span, std::sqrt(4.0 * t)));
            add(graded_splits(-std::fabs(x[i]), span, std::sqrt(4.0 * t)));
            add(graded_splits(std::fabs(y[i]), span, std::sqrt(4.0 * u)));
            add(graded_splits(-std::fabs(y[i]), span, std::sqrt(4.0 * u)));
            if (k > 0.0) add(graded_splits(0.0, span, span * 1e-12));
            conv *= integrate_adaptive(g, -Z, Z, qo).value;
        }
        double p = density(t + u, x, y);
        return std::fabs(conv / p - 1.0);
    }

private:
    static std::vector<double> radial_hints(const Pt& x, const Region& R,
                                            double rmax) {
        std::vector<double> h;
        Pt lo, hi;
        R.bbox(lo, hi);
        double cl[2], ch[2];
        for (int i = 0; i < 2; ++i) {
            cl[i] = std::max(lo[i], x[i] - rmax);
            ch[i] = std::min(hi[i], x[i] + rmax);
            if (!(cl[i] <= ch[i])) return h;
        }
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                double dx = (a ? ch[0] : cl[0]) - x[0];
                double dy = (b ? ch[1] : cl[1]) - x[1];
                h.push_back(std::hypot(dx, dy));
            }
        for (int i = 0; i < 2; ++i) {
            h.push_back(std::fabs(cl[i] - x[i]));
            h.push_back(std::fabs(ch[i] - x[i]));
        }
        collect_ball_hints(x, R, h);
        return h;
    }

    static void collect_ball_hints(const Pt& x, const Region& R,
                                   std::vector<double>& h) {
        if (R.tag == RegionTag::ball) {
            double d = std::hypot(R.center[0] - x[0], R.center[1] - x[1]);
            h.push_back(std::fabs(d - R.radius));
            h.push_back(d + R.radius);
        }
        for (const auto& c : R.children) collect_ball_hints(x, c, h);
    }

    RootSystem rs;
    std::vector<double> inv_c;
};

struct GaussianBoundFit {
    double c1 = 0.0;
    double c2 = 0.0;
    double max_ratio = 0.0;
    int samples = 0;
};

namespace detail {

template <class Fn>
inline double sweep_gaussian_ratio(const HeatKernel& H, double c2, int samples,
                                   std::uint64_t seed, Fn&& score) {
    auto mu = H.measure();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ut(std::log(1e-3), std::log(30.0));
    std::uniform_real_distribution<double> ux(-3.0, 3.0);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        double t = std::exp(ut(rng));
        Pt x{}, y{};
        for (int i = 0; i < H.dim(); ++i) {
            x[i] = ux(rng);
            y[i] = ux(rng);
        }
        double p = H.density(t, x, y);
        if (!(p > 1e-280)) continue; // bound holds trivially there
        double rt = std::sqrt(t);
        double vx = ball_volume(mu, x, rt);
        double vy = ball_volume(mu, y, rt);
        double d = pseudo_dist(H.system(), x, y);
        double lv = std::log(p) + 0.5 * std::log(vx * vy) + c2 * d * d / t;
        worst = std::max(worst, score(lv));
    }
    return worst;
}

} // namespace detail

// largest p sqrt(V_x V_y) exp(c2 d^2/t) over a seeded sweep; padding this by
// a few percent gives a c1 that the probe below should never exceed
inline GaussianBoundFit calibrate_gaussian_bound(const HeatKernel& H, double c2,
                                                 int samples,
                                                 std::uint64_t seed) {
    double worst = detail::sweep_gaussian_ratio(
        H, c2, samples, seed, [](double lv) { return std::exp(lv); });
    return {worst, c2, 1.0, samples};
}

inline double gaussian_bound_max_ratio(const HeatKernel& H, double c1,
                                       double c2, int samples,
                                       std::uint64_t seed) {
    double lc1 = std::log(c1);
    return detail::sweep_gaussian_ratio(
        H, c2, samples, seed,
        [lc1](double lv) { return std::exp(lv - lc1); });
}

struct DecayFit {
    double slope = 0.0;
    double slope_over_p = 0.0;
    double max_residual = 0.0;
};

// slope of log |P_t f(0)| against log t on a geometric grid; for compactly
// supported f the decay rate is the weighted volume exponent
inline DecayFit ultracontractivity_fit(const HeatKernel& H, const Field& f,
                                       double p, double t0, double t1,
                                       int npts) {
    if (npts < 2) throw std::domain_error("ultracontractivity_fit: npts >= 2");
    std::vector<double> lt(npts), lv(npts);
    for (int i = 0; i < npts; ++i) {
        double t = t0 * std::pow(t1 / t0, double(i) / (npts - 1));
        double v = std::fabs(H.apply(f, t, 0.0));
        if (!(v > 0.0))
            throw std::runtime_error("ultracontractivity_fit: vanishing value");
        lt[i] = std::log(t);
        lv[i] = std::log(v);
    }
    auto [icpt, slope] = ls_line(lt, lv);
    double resid = 0.0;
    for (int i = 0; i < npts; ++i)
        resid = std::max(resid, std::fabs(icpt + slope * lt[i] - lv[i]));
    return {slope, slope / p, resid};
}

} // namespace nplab
