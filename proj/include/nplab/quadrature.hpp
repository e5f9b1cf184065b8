#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "specfun.hpp"

namespace nplab {

struct QuadResult {
    double value = 0.0;
    double err_est = 0.0;
    long evals = 0;
    bool converged = true;
};

namespace detail {

// 15-point Kronrod rule with embedded 7-point Gauss rule on [-1,1]
inline constexpr double kron_x[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000,
};
inline constexpr double kron_w[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
};
inline constexpr double gauss7_w[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469,
};

struct Gk15Out {
    double integral;
    double err;
    double resabs;
};

template <class F>
inline Gk15Out gk15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    fv[7] = f(c);
    for (int j = 0; j < 7; ++j) {
        fv[j] = f(c - h * kron_x[j]);
        fv[14 - j] = f(c + h * kron_x[j]);
    }
    double resk = kron_w[7] * fv[7];
    double resabs = std::fabs(resk);
    for (int j = 0; j < 7; ++j) {
        resk += kron_w[j] * (fv[j] + fv[14 - j]);
        resabs += kron_w[j] * (std::fabs(fv[j]) + std::fabs(fv[14 - j]));
    }
    double resg = gauss7_w[3] * fv[7];
    for (int j = 0; j < 3; ++j) {
        int jt = 2 * j + 1;
        resg += gauss7_w[j] * (fv[jt] + fv[14 - jt]);
    }
    double reskh = 0.5 * resk;
    double resasc = kron_w[7] * std::fabs(fv[7] - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kron_w[j] *
                  (std::fabs(fv[j] - reskh) + std::fabs(fv[14 - j] - reskh));
    double err = std::fabs(resk - resg) * h;
    resasc *= std::fabs(h);
    resabs *= std::fabs(h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    return {resk * h, err, resabs};
}

} // namespace detail

struct QuadOpts {
    double rel_tol = 1e-9;
    double abs_tol = 0.0;
    long max_evals = 2'000'000;
    std::vector<double> split_points; // pre-seeded panel boundaries
};

// Adaptive Gauss-Kronrod on a finite interval. Splits the worst panel until
// the summed error estimate meets max(abs_tol, rel_tol * |value|).
template <class F>
inline QuadResult integrate_adaptive(F&& f, double a, double b,
                                     const QuadOpts& opts = {}) {
    QuadResult out;
    if (!(a < b)) {
        if (a == b) return out;
        throw std::invalid_argument("integrate_adaptive: requires a <= b");
    }
    struct Seg {
        double a, b, val, err;
    };
    std::vector<double> cuts;
    cuts.push_back(a);
    for (double s : opts.split_points)
        if (s > a && s < b) cuts.push_back(s);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<Seg> segs;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        auto r = detail::gk15(f, cuts[i], cuts[i + 1]);
        segs.push_back({cuts[i], cuts[i + 1], r.integral, r.err});
        out.evals += 15;
    }
    for (;;) {
        double total = 0.0, toterr = 0.0;
        size_t worst = 0;
        double werr = -1.0;
        for (size_t i = 0; i < segs.size(); ++i) {
            total += segs[i].val;
            toterr += segs[i].err;
            if (segs[i].err > werr) {
                werr = segs[i].err;
                worst = i;
            }
        }
        double target = std::max(opts.abs_tol, opts.rel_tol * std::fabs(total));
        if (toterr <= target || werr <= 0.0) {
            out.value = total;
            out.err_est = toterr;
            return out;
        }
        if (out.evals + 30 > opts.max_evals) {
            out.value = total;
            out.err_est = toterr;
            out.converged = false;
            return out;
        }
        Seg s = segs[worst];
        double m = 0.5 * (s.a + s.b);
        if (!(m > s.a && m < s.b)) {
            // interval at floating point resolution, freeze it
            segs[worst].err = 0.0;
            continue;
        }
        auto r1 = detail::gk15(f, s.a, m);
        auto r2 = detail::gk15(f, m, s.b);
        out.evals += 30;
        segs[worst] = {s.a, m, r1.integral, r1.err};
        segs.push_back({m, s.b, r2.integral, r2.err});
    }
}

// Geometric ladder of split points accumulating toward `point` from  distance
// `span` down to `floor_scale`; used to seed panels at integrable singular
// points and boundary layers.
inline std::vector<double> graded_splits(double point, double span,
                                         double floor_scale) {
    std::vector<double> s;
    if (!(span > 0.0) || !(floor_scale > 0.0)) return s;
    double h = span;
    for (int k = 0; k < 80 && h > floor_scale; ++k) {
        s.push_back(point + h);
        s.push_back(point - h);
        h *= 0.25;
    }
    s.push_back(point + floor_scale);
    s.push_back(point - floor_scale);
    s.push_back(point);
    return s;
}

struct QuadRule {
    std::vector<double> x; // nodes
    std::vector<double> w; // weights
};

namespace detail {

// implicit QL with eigenvector first components, for Golub-Welsch
inline void tridiag_ql(std::vector<double>& d, std::vector<double>& e,
                       std::vector<double>& z) {
    const int n = static_cast<int>(d.size());
    if (n == 1) return;
    e.resize(n, 0.0);
    e[n - 1] = 0.0;
    const double prec = 2.22e-16;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        for (;;) {
            int m;
            for (m = l; m < n; ++m) {
                if (m == n - 1) break;
                if (std::fabs(e[m]) <=
                    prec * (std::fabs(d[m]) + std::fabs(d[m + 1])))
                    break;
            }
            if (m == l) break;
            if (++iter > 60)
                throw std::runtime_error("tridiag_ql: no convergence");
            double p = d[l];
            double g = (d[l + 1] - p) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - p + e[l] / (g + (g >= 0.0 ? r : -r));
            double s = 1.0, c = 1.0;
            p = 0.0;
            for (int i = m - 1; i >= l; --i) {
                double f = s * e[i];
                double b = c * e[i];
                if (std::fabs(g) <= std::fabs(f)) {
                    c = g / f;
                    r = std::hypot(c, 1.0);
                    e[i + 1] = f * r;
                    s = 1.0 / r;
                    c *= s;
                } else {
                    s = f / g;
                    r = std::hypot(s, 1.0);
                    e[i + 1] = g * r;
                    c = 1.0 / r;
                    s *= c;
                }
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    // sort ascending by node
    for (int i = 0; i < n - 1; ++i) {
        int k = i;
        for (int j = i + 1; j < n; ++j)
            if (d[j] < d[k]) k = j;
        if (k != i) {
            std::swap(d[i], d[k]);
            std::swap(z[i], z[k]);
        }
    }
}

} // namespace detail

// Gauss-Jacobi rule: integrates f against (1-x)^a (1+x)^b on [-1,1] exactly
// for polynomial f of degree < 2m. Golub-Welsch on the Jacobi recurrence.
inline QuadRule gauss_jacobi(int m, double a, double b) {
    if (m < 1 || !(a > -1.0) || !(b > -1.0))
        throw std::domain_error("gauss_jacobi: need m >= 1, a > -1, b > -1");
    std::vector<double> d(m), e(m, 0.0), z(m, 0.0);
    double ab = a + b;
    d[0] = (b - a) / (ab + 2.0);
    for (int k = 1; k < m; ++k) {
        double kk = k;
        double den = (2.0 * kk + ab) * (2.0 * kk + ab + 2.0);
        d[k] = (b * b - a * a) / den;
        double num;
        if (k == 1)
            num = 4.0 * (1.0 + a) * (1.0 + b) /
                  ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        else
            num = 4.0 * kk * (kk + a) * (kk + b) * (kk + ab) /
                  ((2.0 * kk + ab) * (2.0 * kk + ab) * (2.0 * kk + ab + 1.0) *
                   (2.0 * kk + ab - 1.0));
        e[k - 1] = std::sqrt(num);
    }
    double mu0 = std::exp((ab + 1.0) * std::log(2.0) + lgamma_pos(a + 1.0) +
                          lgamma_pos(b + 1.0) - lgamma_pos(ab + 2.0));
    z[0] = 1.0;
    detail::tridiag_ql(d, e, z);
    QuadRule rule;
    rule.x = d;
    rule.w.resize(m);
    for (int i = 0; i < m; ++i) rule.w[i] = mu0 * z[i] * z[i];
    return rule;
}

// Gauss-Legendre nodes and weights on [-1,1] by Newton iteration.
inline QuadRule gauss_legendre(int m) {
    if (m < 1) throw std::domain_error("gauss_legendre: need m >= 1");
    QuadRule rule;
    rule.x.resize(m);
    rule.w.resize(m);
    for (int i = 0; i < (m + 1) / 2; ++i) {
        double x = std::cos(PI * (i + 0.75) / (m + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < m; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = m * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        rule.x[i] = -x;
        rule.x[m - 1 - i] = x;
        rule.w[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.w[m - 1 - i] = rule.w[i];
    }
    return rule;
}

} // namespace nplab
