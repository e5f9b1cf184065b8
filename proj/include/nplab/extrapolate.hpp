#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace nplab {

// Small-s limit fit of v(s). Primary model is linear, v = L + a s, on the
// smallest four grid points; falls back to quadratic when the linear fit does
// not explain the data to 1e-3 relative.
struct LimitEstimate {
    std::vector<double> s;
    std::vector<double> v;
    double limit = 0.0;
    double slope = 0.0;
    double curvature = 0.0;
    double residual = 0.0; // max abs residual of the accepted model
    bool quadratic = false;
};

namespace detail {

// least squares for v ~ sum_j c_j s^j, degree deg, returns coefficients
inline std::vector<double> polyfit(const std::vector<double>& s,
                                   const std::vector<double>& v, int deg) {
    const int m = deg + 1;
    const int n = static_cast<int>(s.size());
    std::vector<double> ata(m * m, 0.0), atb(m, 0.0);
    for (int i = 0; i < n; ++i) {
        double pw[8];
        pw[0] = 1.0;
        for (int j = 1; j < m; ++j) pw[j] = pw[j - 1] * s[i];
        for (int r = 0; r < m; ++r) {
            atb[r] += pw[r] * v[i];
            for (int c = 0; c < m; ++c) ata[r * m + c] += pw[r] * pw[c];
        }
    }
    // gaussian elimination with partial pivoting
    std::vector<double> a = ata, b = atb;
    for (int col = 0; col < m; ++col) {
        int piv = col;
        for (int r = col + 1; r < m; ++r)
            if (std::fabs(a[r * m + col]) > std::fabs(a[piv * m + col])) piv = r;
        for (int c = 0; c < m; ++c) std::swap(a[col * m + c], a[piv * m + c]);
        std::swap(b[col], b[piv]);
        double p = a[col * m + col];
        if (p == 0.0) throw std::runtime_error("polyfit: singular system");
        for (int r = 0; r < m; ++r) {
            if (r == col) continue;
            double fac = a[r * m + col] / p;
            for (int c = col; c < m; ++c) a[r * m + c] -= fac * a[col * m + c];
            b[r] -= fac * b[col];
        }
    }
    std::vector<double> coef(m);
    for (int j = 0; j < m; ++j) coef[j] = b[j] / a[j * m + j];
    return coef;
}

inline double max_resid(const std::vector<double>& s,
                        const std::vector<double>& v,
                        const std::vector<double>& coef) {
    double worst = 0.0;
    for (size_t i = 0; i < s.size(); ++i) {
        double pred = 0.0, pw = 1.0;
        for (double c : coef) {
            pred += c * pw;
            pw *= s[i];
        }
        worst = std::max(worst, std::fabs(v[i] - pred));
    }
    return worst;
}

} // namespace detail

inline LimitEstimate fit_limit(std::vector<double> s, std::vector<double> v) {
    if (s.size() != v.size() || s.size() < 2)
        throw std::invalid_argument("fit_limit: need >= 2 points");
    // order by s ascending, keep pairs together
    std::vector<size_t> idx(s.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return s[a] < s[b]; });
    LimitEstimate out;
    for (size_t i : idx) {
        out.s.push_back(s[i]);
        out.v.push_back(v[i]);
    }
    size_t use = std::min<size_t>(4, out.s.size());
    std::vector<double> ss(out.s.begin(), out.s.begin() + use);
    std::vector<double> vv(out.v.begin(), out.v.begin() + use);
    auto lin = detail::polyfit(ss, vv, 1);
    double lin_resid = detail::max_resid(ss, vv, lin);
    out.limit = lin[0];
    out.slope = lin[1];
    out.residual = lin_resid;
    if (lin_resid > 1e-3 * std::fabs(lin[0]) && out.s.size() >= 3) {
        size_t useq = std::min<size_t>(5, out.s.size());
        std::vector<double> sq(out.s.begin(), out.s.begin() + useq);
        std::vector<double> vq(out.v.begin(), out.v.begin() + useq);
        auto quad = detail::polyfit(sq, vq, 2);
        out.limit = quad[0];
        out.slope = quad[1];
        out.curvature = quad[2];
        out.residual = detail::max_resid(sq, vq, quad);
        out.quadratic = true;
    }
    return out;
}

// plain least-squares slope of y against x
inline double ls_slope(const std::vector<double>& x,
                       const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("ls_slope: need >= 2 points");
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= x.size();
    my /= y.size();
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    if (den == 0.0) throw std::invalid_argument("ls_slope: degenerate abscissae");
    return num / den;
}

// intercept + slope
inline std::pair<double, double> ls_line(const std::vector<double>& x,
                                         const std::vector<double>& y) {
    double b = ls_slope(x, y);
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= x.size();
    my /= y.size();
    return {my - b * mx, b};
}

} // namespace nplab
