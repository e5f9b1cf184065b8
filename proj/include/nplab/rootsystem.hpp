#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace nplab {

inline constexpr int MAX_DIM = 4;

// point in R^n, n <= MAX_DIM; unused coordinates stay zero
using Pt = std::array<double, MAX_DIM>;

inline Pt pt1(double x) { return Pt{x, 0.0, 0.0, 0.0}; }
inline Pt pt2(double x, double y) { return Pt{x, y, 0.0, 0.0}; }

inline double dot(const Pt& a, const Pt& b, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

inline double dist2(const Pt& a, const Pt& b, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
}

struct Mat {
    std::array<double, MAX_DIM * MAX_DIM> a{};
};

inline Mat mat_identity(int n) {
    Mat m;
    for (int i = 0; i < n; ++i) m.a[i * MAX_DIM + i] = 1.0;
    return m;
}

inline Pt mat_apply(const Mat& m, const Pt& x, int n) {
    Pt y{};
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += m.a[i * MAX_DIM + j] * x[j];
        y[i] = s;
    }
    return y;
}

inline Mat mat_mul(const Mat& p, const Mat& q, int n) {
    Mat r;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k)
                s += p.a[i * MAX_DIM + k] * q.a[k * MAX_DIM + j];
            r.a[i * MAX_DIM + j] = s;
        }
    return r;
}

inline double mat_dist(const Mat& p, const Mat& q, int n) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            worst = std::max(worst, std::fabs(p.a[i * MAX_DIM + j] -
                                              q.a[i * MAX_DIM + j]));
    return worst;
}

struct Root {
    Pt alpha{};
    double kappa = 0.0;
};

enum class GroupKind { trivial, z2, z2_product, general };

// Finite reflection group data: positive roots with multiplicities and the
// closed group. For the product kinds coord_kappa[i] carries the coordinate
// multiplicities (zero entries allowed).
struct RootSystem {
    int n = 1;
    GroupKind kind = GroupKind::trivial;
    std::vector<Root> positive_roots;
    std::vector<Mat> group; // contains the identity
    std::vector<double> coord_kappa;

    double chi() const {
        double s = 0.0;
        for (const auto& r : positive_roots) s += r.kappa;
        return s;
    }
    bool is_product() const { return kind != GroupKind::general; }
};

inline Mat reflection_matrix(const Pt& alpha, int n) {
    double a2 = dot(alpha, alpha, n);
    Mat m = mat_identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m.a[i * MAX_DIM + j] -= 2.0 * alpha[i] * alpha[j] / a2;
    return m;
}

inline RootSystem rs_trivial(int n) {
    if (n < 1 || n > MAX_DIM)
        throw std::domain_error("rs_trivial: dimension must be 1..4");
    RootSystem rs;
    rs.n = n;
    rs.kind = GroupKind::trivial;
    rs.group.push_back(mat_identity(n));
    rs.coord_kappa.assign(n, 0.0);
    return rs;
}

inline RootSystem rs_z2_product(int n, const std::vector<double>& kappas) {
    if (n < 1 || n > 3)
        throw std::domain_error("rs_z2_product: dimension must be 1..3");
    if (static_cast<int>(kappas.size()) != n)
        throw std::invalid_argument("rs_z2_product: one multiplicity per axis");
    for (double k : kappas)
        if (k < 0.0)
            throw std::invalid_argument("rs_z2_product: multiplicities >= 0");
    RootSystem rs;
    rs.n = n;
    rs.kind = n == 1 ? GroupKind::z2 : GroupKind::z2_product;
    rs.coord_kappa = kappas;
    const double sq2 = std::sqrt(2.0);
    for (int i = 0; i < n; ++i) {
        Root r;
        r.alpha = Pt{};
        r.alpha[i] = sq2;
        r.kappa = kappas[i];
        rs.positive_roots.push_back(r);
    }
    // sign flip group, 2^n elements
    for (int mask = 0; mask < (1 << n); ++mask) {
        Mat m = mat_identity(n);
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) m.a[i * MAX_DIM + i] = -1.0;
        rs.group.push_back(m);
    }
    return rs;
}

inline RootSystem rs_z2(double kappa) { return rs_z2_product(1, {kappa}); }

// general root input; closes the generated group and checks G-invariance of
// the multiplicity function
inline RootSystem rs_from_roots(int n, const std::vector<Pt>& roots,
                                const std::vector<double>& kappas) {
    if (n < 1 || n > MAX_DIM)
        throw std::domain_error("rs_from_roots: dimension must be 1..4");
    if (roots.size() != kappas.size() || roots.empty())
        throw std::invalid_argument("rs_from_roots: one multiplicity per root");
    RootSystem rs;
    rs.n = n;
    rs.kind = GroupKind::general;
    for (size_t i = 0; i < roots.size(); ++i) {
        double a2 = dot(roots[i], roots[i], n);
        if (std::fabs(a2 - 2.0) > 1e-9)
            throw std::invalid_argument("rs_from_roots: roots must have |a|^2 = 2");
        if (kappas[i] < 0.0)
            throw std::invalid_argument("rs_from_roots: multiplicities >= 0");
        // keep one representative per +- pair
        bool dup = false;
        for (const auto& r : rs.positive_roots) {
            double dp = dist2(r.alpha, roots[i], n);
            Pt neg;
            for (int j = 0; j < n; ++j) neg[j] = -roots[i][j];
            double dm = dist2(r.alpha, neg, n);
            if (dp < 1e-18 || dm < 1e-18) {
                if (std::fabs(r.kappa - kappas[i]) > 1e-12)
                    throw std::invalid_argument(
                        "rs_from_roots: inconsistent multiplicity on a root pair");
                dup = true;
                break;
            }
        }
        if (!dup) rs.positive_roots.push_back({roots[i], kappas[i]});
    }
    // group closure by repeated products
    rs.group.push_back(mat_identity(n));
    for (const auto& r : rs.positive_roots)
        rs.group.push_back(reflection_matrix(r.alpha, n));
    bool grew = true;
    while (grew) {
        grew = false;
        size_t sz = rs.group.size();
        for (size_t i = 0; i < sz && !grew; ++i)
            for (size_t j = 0; j < sz; ++j) {
                Mat prod = mat_mul(rs.group[i], rs.group[j], n);
                bool found = false;
                for (const auto& g : rs.group)
                    if (mat_dist(prod, g, n) < 1e-10) {
                        found = true;
                        break;
                    }
                if (!found) {
                    if (rs.group.size() >= 1024)
                        throw std::runtime_error(
                            "rs_from_roots: group closure exceeded 1024 elements");
                    rs.group.push_back(prod);
                    grew = true;
                    break;
                }
            }
    }
    // multiplicity must be constant on group orbits of roots
    for (const auto& g : rs.group)
        for (const auto& r : rs.positive_roots) {
            Pt im = mat_apply(g, r.alpha, n);
            bool matched = false;
            for (const auto& r2 : rs.positive_roots) {
                Pt neg;
                for (int j = 0; j < n; ++j) neg[j] = -r2.alpha[j];
                if (dist2(im, r2.alpha, n) < 1e-16 || dist2(im, neg, n) < 1e-16) {
                    if (std::fabs(r.kappa - r2.kappa) > 1e-12)
                        throw std::invalid_argument(
                            "rs_from_roots: multiplicity not G-invariant");
                    matched = true;
                    break;
                }
            }
            if (!matched)
                throw std::invalid_argument(
                    "rs_from_roots: root set not closed under the group");
        }
    rs.coord_kappa.assign(n, 0.0);
    return rs;
}

// product of |<alpha, x>|^{2 kappa} over positive roots
inline double weight(const RootSystem& rs, const Pt& x) {
    double w = 1.0;
    for (const auto& r : rs.positive_roots) {
        double d = std::fabs(dot(r.alpha, x, rs.n));
        if (r.kappa != 0.0) w *= std::pow(d, 2.0 * r.kappa);
    }
    return w;
}

// 1-d coordinate factor 2^kappa |x|^{2 kappa}
inline double weight1d(double kappa, double x) {
    if (kappa == 0.0) return 1.0;
    return std::pow(2.0 * x * x, kappa);
}

// min over the group of |x - g y|
inline double pseudo_dist(const RootSystem& rs, const Pt& x, const Pt& y) {
    if (rs.is_product()) {
        // sign flips minimize coordinatewise
        double s = 0.0;
        for (int i = 0; i < rs.n; ++i) {
            double d = rs.kind == GroupKind::trivial
                           ? std::fabs(x[i] - y[i])
                           : std::fabs(std::fabs(x[i]) - std::fabs(y[i]));
            s += d * d;
        }
        return std::sqrt(s);
    }
    double best = std::numeric_limits<double>::infinity();
    for (const auto& g : rs.group) {
        Pt gy = mat_apply(g, y, rs.n);
        best = std::min(best, dist2(x, gy, rs.n));
    }
    return std::sqrt(best);
}

} // namespace nplab
