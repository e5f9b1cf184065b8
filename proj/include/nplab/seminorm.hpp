#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "extrapolate.hpp"
#include "field.hpp"
#include "heat.hpp"
#include "measure.hpp"
#include "timeprofile.hpp"

namespace nplab {

inline double delta_pow(double a, double b, double p) {
    double d = std::fabs(a - b);
    if (p == 1.0) return d;
    if (p == 2.0) return d * d;
    return std::pow(d, p);
}

// Phi(t) = iint p_t(x,y) |f(x)-f(y)|^p dmu(x) dmu(y) on the line.
// Indicators go through the renormalized form 2(mu(E) - iint_{ExE} p_t),
// which stays accurate when t is small and Phi is a near-cancellation.
inline double phi_indicator(const HeatKernel& H, const Region& E, double muE,
                            double t, double rel_tol = 3e-8) {
    auto ivs = E.to_intervals();
    if (ivs.empty()) return 0.0;
    for (auto& iv : ivs)
        if (std::isinf(iv.first) || std::isinf(iv.second))
            throw std::invalid_argument("phi_indicator: unbounded set");
    double wdt = std::sqrt(4.0 * t);
    double kap = H.kappa(0);
    double inner = 0.0;
    for (auto& [a, b] : ivs) {
        auto outer = [&](double x) {
            double m = 0.0;
            for (auto& [c, d] : ivs)
                m += H.coord_mass(0, t, x, c, d, 1e-2 * rel_tol, 1e-13).value;
            double w = kap == 0.0 ? 1.0 : weight1d(kap, x);
            return m * w;
        };
        QuadOpts qo;
        qo.rel_tol = rel_tol;
        qo.abs_tol = 1e-12 * std::max(1.0, muE);
        double span = b - a;
        for (auto& [c, d] : ivs) {
            auto g1 = graded_splits(c, span, 0.5 * wdt);
            auto g2 = graded_splits(d, span, 0.5 * wdt);
            qo.split_points.insert(qo.split_points.end(), g1.begin(), g1.end());
            qo.split_points.insert(qo.split_points.end(), g2.begin(), g2.end());
            if (kap > 0.0) {
                auto g3 = graded_splits(-c, span, 0.5 * wdt);
                auto g4 = graded_splits(-d, span, 0.5 * wdt);
                qo.split_points.insert(qo.split_points.end(), g3.begin(),
                                       g3.end());
                qo.split_points.insert(qo.split_points.end(), g4.begin(),
                                       g4.end());
            }
        }
        if (kap > 0.0 && a < 0.0 && b > 0.0) {
            auto g0 = graded_splits(0.0, span, span * 1e-12);
            qo.split_points.insert(qo.split_points.end(), g0.begin(), g0.end());
        }
        inner += integrate_adaptive(outer, a, b, qo).value;
    }
    return std::max(0.0, 2.0 * (muE - inner));
}

inline double phi_general(const HeatKernel& H, const Field& f, double p,
                          double t, double rel_tol = 3e-8) {
    auto [lo, hi] = f.support1d();
    if (!(hi > lo)) return 0.0;
    double kap = H.kappa(0);
    double wdt = std::sqrt(4.0 * t);
    double reach = 9.0 * wdt;
    double xa, xb;
    if (kap == 0.0) {
        xa = lo - reach;
        xb = hi + reach;
    } else {
        double U = std::max(std::fabs(lo), std::fabs(hi)) + reach;
        xa = -U;
        xb = U;
    }
    auto fbrk = f.breakpoints();
    auto outer = [&](double x) {
        double fx = f.eval1(x);
        auto g = [&](double y) { return delta_pow(fx, f.eval1(y), p); };
        double v =
            H.coord_weighted_integral(0, t, x, lo, hi, g, fbrk, 1e-2 * rel_tol,
                                      1e-13)
                .value;
        if (fx != 0.0) {
            double out_mass =
                H.coord_mass(0, t, x, -INF, lo, 1e-2 * rel_tol, 1e-13).value +
                H.coord_mass(0, t, x, hi, INF, 1e-2 * rel_tol, 1e-13).value;
            double fp = p == 1.0 ? std::fabs(fx)
                                 : (p == 2.0 ? fx * fx
                                             : std::pow(std::fabs(fx), p));
            v += fp * out_mass;
        }
        double w = kap == 0.0 ? 1.0 : weight1d(kap, x);
        return v * w;
    };
    QuadOpts qo;
    qo.rel_tol = rel_tol;
    qo.abs_tol = 1e-13;
    double span = xb - xa;
    auto add = [&](double c, double fl) {
        auto g = graded_splits(c, span, fl);
        qo.split_points.insert(qo.split_points.end(), g.begin(), g.end());
    };
    for (double c : fbrk) qo.split_points.push_back(c);
    add(lo, 0.5 * wdt);
    add(hi, 0.5 * wdt);
    if (kap > 0.0) {
        add(-lo, 0.5 * wdt);
        add(-hi, 0.5 * wdt);
        add(0.0, span * 1e-12);
    }
    return integrate_adaptive(outer, xa, xb, qo).value;
}

inline double phi_value(const HeatKernel& H, const Field& f, double p, double t,
                        double rel_tol = 3e-8) {
    if (H.dim() != 1) throw std::invalid_argument("phi_value: n == 1 only");
    if (f.tag == FieldTag::indicator) {
        double muE = measure_of(H.measure(), f.region).value;
        return phi_indicator(H, f.region, muE, t, rel_tol);
    }
    return phi_general(H, f, p, t, rel_tol);
}

struct PhiProfileOpts {
    double t_lo = 0.0, t_hi = 0.0; // 0 = auto from the support scale
    double profile_tol = 3e-7;
    int max_panels = 320;
    double phi_tol = 3e-8;
    bool fit_small = true;
    std::vector<std::pair<double, double>> drive;
};

inline std::pair<double, double> phi_time_range(const Field& f) {
    auto [lo, hi] = f.support1d();
    double ell = std::max(hi - lo, 1e-6);
    double t_lo = std::min(1e-6, std::pow(1e-3 * ell, 2.0));
    double t_hi = std::max(1e4, std::pow(50.0 * ell, 2.0));
    return {t_lo, t_hi};
}

inline TimeProfile build_phi_profile(const HeatKernel& H, const Field& f,
                                     double p, PhiProfileOpts o = {}) {
    if (H.dim() != 1)
        throw std::invalid_argument("build_phi_profile: n == 1 only");
    auto [alo, ahi] = phi_time_range(f);
    TimeProfileOpts to;
    to.t_lo = o.t_lo > 0.0 ? o.t_lo : alo;
    to.t_hi = o.t_hi > 0.0 ? o.t_hi : ahi;
    to.rel_tol = o.profile_tol;
    to.max_panels = o.max_panels;
    to.fit_small = o.fit_small;
    to.drive = o.drive;
    double lpn = lp_norm_pow(H.measure(), f, p);
    to.known_limit = 2.0 * lpn;
    if (f.tag == FieldTag::indicator) {
        Region E = f.region;
        double muE = lpn; // equals mu(E) for indicators
        return TimeProfile::build(
            [&, muE](double t) {
                return phi_indicator(H, E, muE, t, o.phi_tol);
            },
            to);
    }
    return TimeProfile::build(
        [&](double t) { return phi_general(H, f, p, t, o.phi_tol); }, to);
}

struct BesovValue {
    double s = 0.0, p = 1.0, q = 1.0;
    double npow = 0.0;  // N^q for finite q; sup-scale N^p when q = inf
    double value = 0.0; // N
    double err = 0.0;
    bool divergent = false;
};

inline BesovValue besov_from_profile(const TimeProfile& tp, double s, double p,
                                     double q) {
    BesovValue out;
    out.s = s;
    out.p = p;
    out.q = q;
    auto piece = profile_integral(tp, 0.5 * q * s, q / p);
    out.npow = piece.value;
    out.err = piece.err;
    out.divergent = piece.divergent;
    out.value = piece.divergent || piece.value <= 0.0
                    ? 0.0
                    : std::pow(piece.value, 1.0 / q);
    return out;
}

// q = inf form: N^p = sup_t t^{-sp/2} Phi(t); the ends vanish for the
// fields used here, so the bulk nodes carry the supremum
inline BesovValue besov_sup_from_profile(const TimeProfile& tp, double s,
                                         double p) {
    BesovValue out;
    out.s = s;
    out.p = p;
    out.q = INF;
    out.npow = tp.sup_bulk(0.5 * s * p, 1.0);
    out.value = out.npow <= 0.0 ? 0.0 : std::pow(out.npow, 1.0 / p);
    return out;
}

struct MsLimit {
    std::vector<double> s;
    std::vector<double> s_npow; // s * N_{s,p}^p along the grid
    LimitEstimate fit;
    double target = 0.0;  // (4/p) ||f||_p^p
    double rel_err = 0.0; // |fit - target| / target
    bool divergent = false;
    long profile_evals = 0;
};

inline MsLimit ms_limit(const HeatKernel& H, const Field& f, double p,
                        std::vector<double> s_grid, PhiProfileOpts o = {}) {
    if (s_grid.empty()) throw std::invalid_argument("ms_limit: empty grid");
    if (o.drive.empty())
        for (double s : s_grid) o.drive.push_back({0.5 * p * s, 1.0});
    TimeProfile tp = build_phi_profile(H, f, p, o);
    MsLimit out;
    out.profile_evals = tp.evals;
    out.s = s_grid;
    for (double s : s_grid) {
        auto b = besov_from_profile(tp, s, p, p);
        out.divergent = out.divergent || b.divergent;
        out.s_npow.push_back(s * b.npow);
    }
    out.fit = fit_limit(out.s, out.s_npow);
    out.target = 4.0 / p * lp_norm_pow(H.measure(), f, p);
    out.rel_err = std::fabs(out.fit.limit - out.target) /
                  std::max(std::fabs(out.target), 1e-300);
    return out;
}

// ---- classical difference-quotient route (kappa = 0, n = 1) ----

// g(v) = int |f(x+v)-f(x)|^p dx
inline double shift_difference_lp(const Field& f, double p, double v,
                                  double rel_tol = 1e-9) {
    auto [lo, hi] = f.support1d();
    auto integrand = [&](double x) {
        return delta_pow(f.eval1(x + v), f.eval1(x), p);
    };
    QuadOpts qo;
    qo.rel_tol = rel_tol;
    qo.abs_tol = 1e-14;
    for (double c : f.breakpoints()) {
        qo.split_points.push_back(c);
        qo.split_points.push_back(c - v);
    }
    return integrate_adaptive(integrand, lo - v, hi, qo).value;
}

// [f]^p in the difference-quotient scale, exact tail past the support span
inline double gagliardo_seminorm_pow(const Field& f, double s, double p,
                                     double rel_tol = 1e-8) {
    auto [lo, hi] = f.support1d();
    double V = hi - lo;
    if (!(V > 0.0)) return 0.0;
    double lpn = lp_norm_pow(make_measure(rs_trivial(1)), f, p);
    auto integrand = [&](double v) {
        return std::pow(v, -1.0 - p * s) * shift_difference_lp(f, p, v,
                                                               1e-2 * rel_tol);
    };
    QuadOpts qo;
    qo.rel_tol = rel_tol;
    qo.abs_tol = 1e-13;
    auto g0 = graded_splits(0.0, V, V * 1e-10);
    qo.split_points.assign(g0.begin(), g0.end());
    auto brk = f.breakpoints();
    for (size_t i = 0; i < brk.size(); ++i)
        for (size_t j = 0; j < brk.size(); ++j) {
            double d = brk[i] - brk[j];
            if (d > 0.0 && d < V) qo.split_points.push_back(d);
        }
    double bulk = integrate_adaptive(integrand, 0.0, V, qo).value;
    double tail = 2.0 * lpn * std::pow(V, -p * s) / (p * s);
    return 2.0 * (bulk + tail);
}

// N^p = conversion * [f]^p in the unweighted setting
inline double besov_gagliardo_factor(int n, double s, double p) {
    return std::pow(2.0, p * s) * gamma_fn((n + p * s) / 2.0) /
           std::pow(PI, 0.5 * n);
}

struct LatticeCheck {
    double margin_qp = 0.0;  // (N^p f + N^p g - N^p max - N^p min)/scale
    double margin_sup = 0.0; // same in the q = inf scale
    bool divergent = false;
};

inline LatticeCheck lattice_check(const HeatKernel& H, const Field& f,
                                  const Field& g, double s, double p,
                                  PhiProfileOpts o = {}) {
    if (o.drive.empty()) o.drive.push_back({0.5 * p * s, 1.0});
    Field fm = field_max(f, g), fn = field_min(f, g);
    const Field* fields[4] = {&f, &g, &fm, &fn};
    double qp[4], sup[4];
    LatticeCheck out;
    for (int i = 0; i < 4; ++i) {
        TimeProfile tp = build_phi_profile(H, *fields[i], p, o);
        auto b = besov_from_profile(tp, s, p, p);
        out.divergent = out.divergent || b.divergent;
        qp[i] = b.npow;
        sup[i] = besov_sup_from_profile(tp, s, p).npow;
    }
    double sc1 = std::max(qp[0] + qp[1], 1e-300);
    double sc2 = std::max(sup[0] + sup[1], 1e-300);
    out.margin_qp = (qp[0] + qp[1] - qp[2] - qp[3]) / sc1;
    out.margin_sup = (sup[0] + sup[1] - sup[2] - sup[3]) / sc2;
    return out;
}

} // namespace nplab
