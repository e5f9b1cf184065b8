#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "extrapolate.hpp"
#include "qmc.hpp"
#include "region.hpp"

namespace nplab {

struct BoxCountFit {
    std::vector<double> log_inv_delta;
    std::vector<double> log_count;
    double dimension = 0.0;
    double resid = 0.0;
};

namespace detail {

inline long column_boxes(double ymin, double ymax, double delta,
                         double offset) {
    long a = static_cast<long>(std::floor((ymin - offset) / delta));
    long b = static_cast<long>(std::floor((ymax - offset) / delta));
    return b - a + 1;
}

inline BoxCountFit fit_box_counts(std::vector<double> lx,
                                  std::vector<double> ly, int drop_lo,
                                  int drop_hi) {
    BoxCountFit out;
    out.log_inv_delta = lx;
    out.log_count = ly;
    std::vector<double> fx, fy;
    for (size_t i = 0; i < lx.size(); ++i) {
        if (static_cast<int>(i) < drop_lo) continue;
        if (i + drop_hi >= lx.size()) continue;
        fx.push_back(lx[i]);
        fy.push_back(ly[i]);
    }
    if (fx.size() < 2) throw std::invalid_argument("fit_box_counts: too few levels");
    auto [icpt, slope] = ls_line(fx, fy);
    out.dimension = slope;
    for (size_t i = 0; i < fx.size(); ++i)
        out.resid = std::max(out.resid,
                             std::fabs(icpt + slope * fx[i] - fy[i]));
    return out;
}

} // namespace detail

// box-counting dimension of a graph over [x0, x1]; dyadic grids, column
// extremes by sampling, and a half-cell shift to damp grid alignment
template <class F>
inline BoxCountFit graph_box_dimension(F&& f, double x0, double x1,
                                       int levels = 11, int drop_lo = 2,
                                       int drop_hi = 2,
                                       int samples_per_col = 32) {
    if (!(x1 > x0)) throw std::invalid_argument("graph_box_dimension: x1 > x0");
    std::vector<double> lx, ly;
    for (int k = 0; k < levels; ++k) {
        long ncol = 4L << k;
        double delta = (x1 - x0) / static_cast<double>(ncol);
        long n = 0, ns = 0;
        for (long j = 0; j < ncol; ++j) {
            double a = x0 + j * delta;
            double ymin = INF, ymax = -INF;
            for (int i = 0; i < samples_per_col; ++i) {
                double u = a + (i + 0.5) * delta / samples_per_col;
                double v = f(u);
                ymin = std::min(ymin, v);
                ymax = std::max(ymax, v);
            }
            n += detail::column_boxes(ymin, ymax, delta, 0.0);
            ns += detail::column_boxes(ymin, ymax, delta, 0.5 * delta);
        }
        long use = std::min(n, ns);
        lx.push_back(std::log(1.0 / delta));
        ly.push_back(std::log(static_cast<double>(use)));
    }
    return detail::fit_box_counts(lx, ly, drop_lo, drop_hi);
}

struct CollarFit {
    std::vector<double> r;
    std::vector<double> mu;
    double eta = 0.0; // growth exponent of mu(D_r)
    double c = 0.0;   // prefactor
    double resid = 0.0;
};

inline CollarFit collar_fit_from(const std::vector<double>& r,
                                 const std::vector<double>& mu) {
    CollarFit out;
    out.r = r;
    out.mu = mu;
    std::vector<double> lx, ly;
    for (size_t i = 0; i < r.size(); ++i) {
        if (!(mu[i] > 0.0))
            throw std::runtime_error("collar_fit_from: empty collar sample");
        lx.push_back(std::log(r[i]));
        ly.push_back(std::log(mu[i]));
    }
    auto [icpt, slope] = ls_line(lx, ly);
    out.eta = slope;
    out.c = std::exp(icpt);
    for (size_t i = 0; i < lx.size(); ++i)
        out.resid = std::max(out.resid,
                             std::fabs(icpt + slope * lx[i] - ly[i]));
    return out;
}

// exact inner collar of an interval: two endpoint strips
inline CollarFit interval_collar_fit(double a, double b,
                                     std::vector<double> r_list) {
    if (!(b > a)) throw std::invalid_argument("interval_collar_fit: b > a");
    std::vector<double> mu;
    for (double r : r_list) mu.push_back(std::min(2.0 * r, b - a));
    return collar_fit_from(r_list, mu);
}

// distance from (x, y) to the graph of g, searched over |u - x| <= cap;
// a point farther than cap in x cannot beat cap in the plane
template <class G>
inline double graph_distance(G&& g, double x, double y, double cap,
                             int coarse = 48) {
    double best = std::fabs(g(x) - y);
    double win = std::min(best, cap);
    if (!(win > 0.0)) return best;
    double lo = x - win, hi = x + win, bu = x;
    for (int pass = 0; pass < 3; ++pass) {
        int m = pass == 0 ? coarse : 16;
        double step = (hi - lo) / m;
        for (int i = 0; i <= m; ++i) {
            double u = lo + i * step;
            double du = u - x, dv = g(u) - y;
            double d = std::sqrt(du * du + dv * dv);
            if (d < best) {
                best = d;
                bu = u;
            }
        }
        lo = std::max(x - win, bu - step);
        hi = std::min(x + win, bu + step);
    }
    return best;
}

struct WeierstrassCollar {
    CollarFit fit;          // nearest-point distance to the bounding graphs
    CollarFit fit_vertical; // vertical-distance proxy (upper bound on d)
    double area = 0.0;      // sampled measure of the domain
    long samples_in = 0;
};

// mu(D_r) for the domain pinched between the parabola and the rough graph,
// by low-discrepancy sampling of the distance-to-boundary histogram
inline WeierstrassCollar weierstrass_collar_fit(const WeierstrassSpec& ws,
                                                double par_c2, double par_c0,
                                                std::vector<double> r_list,
                                                long n_samples = 200000) {
    if (r_list.empty())
        throw std::invalid_argument("weierstrass_collar_fit: empty radii");
    Region R = region_weierstrass_domain(ws, par_c2, par_c0);
    Pt lo, hi;
    R.bbox(lo, hi);
    double vol = (hi[0] - lo[0]) * (hi[1] - lo[1]);
    double rcap = *std::max_element(r_list.begin(), r_list.end());
    auto wf = [&](double u) { return weierstrass_eval(ws, u); };
    auto pf = [&](double u) { return par_c2 * u * u + par_c0; };
    std::vector<long> cnt(r_list.size(), 0), cnt_v(r_list.size(), 0);
    long inside = 0;
    for (long i = 0; i < n_samples; ++i) {
        double x = lo[0] + (hi[0] - lo[0]) *
                               detail::radical_inverse(static_cast<std::uint64_t>(i) + 1, 2);
        double y = lo[1] + (hi[1] - lo[1]) *
                               detail::radical_inverse(static_cast<std::uint64_t>(i) + 1, 3);
        if (!R.contains(pt2(x, y))) continue;
        ++inside;
        double d = graph_distance(wf, x, y, rcap);
        if (d > 0.0) d = std::min(d, graph_distance(pf, x, y, rcap));
        double dv = std::min(std::fabs(wf(x) - y), std::fabs(pf(x) - y));
        for (size_t j = 0; j < r_list.size(); ++j) {
            if (d < r_list[j]) ++cnt[j];
            if (dv < r_list[j]) ++cnt_v[j];
        }
    }
    WeierstrassCollar out;
    out.samples_in = inside;
    out.area = vol * static_cast<double>(inside) / n_samples;
    std::vector<double> mu, mu_v;
    for (size_t j = 0; j < r_list.size(); ++j) {
        mu.push_back(vol * static_cast<double>(cnt[j]) / n_samples);
        mu_v.push_back(vol * static_cast<double>(cnt_v[j]) / n_samples);
    }
    out.fit = collar_fit_from(r_list, mu);
    out.fit_vertical = collar_fit_from(r_list, mu_v);
    return out;
}

} // namespace nplab
