#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rootsystem.hpp"
#include "specfun.hpp"

namespace nplab {

inline constexpr double INF = std::numeric_limits<double>::infinity();

// W_{a,b}(x) = sum_{k=0}^{k_max} a^k cos(2 pi b^k x), b an integer >= 2.
// The phase is reduced mod 1 each level so high levels stay accurate.
struct WeierstrassSpec {
    double a = 0.5;
    int b = 3;
    int k_max = 30;
};

inline double weierstrass_eval(const WeierstrassSpec& ws, double x) {
    if (!(ws.a > 0.0) || !(ws.a < 1.0) || ws.b < 2 || ws.k_max < 0)
        throw std::domain_error("weierstrass_eval: need 0 < a < 1, b >= 2");
    double u = x - std::floor(x);
    double coef = 1.0;
    double sum = 0.0;
    for (int k = 0; k <= ws.k_max; ++k) {
        sum += coef * std::cos(2.0 * PI * u);
        coef *= ws.a;
        u *= ws.b;
        u -= std::floor(u);
    }
    return sum;
}

enum class RegionTag {
    empty,
    full,
    interval_union,
    ball,
    axis_box,
    half_space,
    weierstrass_domain,
    complement,
    intersection,
};

using IntervalList = std::vector<std::pair<double, double>>;

namespace detail {

inline IntervalList normalize_intervals(IntervalList v) {
    IntervalList out;
    std::sort(v.begin(), v.end());
    for (auto& iv : v) {
        if (!(iv.second > iv.first)) continue;
        if (!out.empty() && iv.first <= out.back().second)
            out.back().second = std::max(out.back().second, iv.second);
        else
            out.push_back(iv);
    }
    return out;
}

inline IntervalList complement_intervals(const IntervalList& v) {
    IntervalList out;
    double cur = -INF;
    for (const auto& iv : v) {
        if (iv.first > cur) out.push_back({cur, iv.first});
        cur = std::max(cur, iv.second);
    }
    if (cur < INF) out.push_back({cur, INF});
    return out;
}

inline IntervalList intersect_intervals(const IntervalList& a,
                                        const IntervalList& b) {
    IntervalList out;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        double lo = std::max(a[i].first, b[j].first);
        double hi = std::min(a[i].second, b[j].second);
        if (hi > lo) out.push_back({lo, hi});
        if (a[i].second < b[j].second)
            ++i;
        else
            ++j;
    }
    return out;
}

} // namespace detail

// Tagged region of R^n. Geometry tags carry exact structure used by the
// integrators; complement and intersection are symbolic nodes.
struct Region {
    RegionTag tag = RegionTag::empty;
    int n = 1;

    IntervalList intervals;  // interval_union, n == 1
    Pt center{};             // ball
    double radius = 0.0;
    Pt lo{}, hi{};           // axis_box, +-inf entries allowed
    Pt normal{};             // half_space {x : <normal, x> > offset}
    double offset = 0.0;
    WeierstrassSpec wspec{}; // weierstrass_domain (n == 2): region between
    double par_c2 = 0.0;     //   the parabola par_c2 x^2 + par_c0 below
    double par_c0 = 0.0;     //   and the Weierstrass graph above
    double wx0 = 0.0, wx1 = 0.0;
    std::vector<Region> children;

    bool contains(const Pt& x) const {
        switch (tag) {
            case RegionTag::empty:
                return false;
            case RegionTag::full:
                return true;
            case RegionTag::interval_union: {
                for (const auto& iv : intervals)
                    if (x[0] > iv.first && x[0] < iv.second) return true;
                return false;
            }
            case RegionTag::ball:
                return dist2(x, center, n) < radius * radius;
            case RegionTag::axis_box: {
                for (int i = 0; i < n; ++i)
                    if (!(x[i] > lo[i] && x[i] < hi[i])) return false;
                return true;
            }
            case RegionTag::half_space:
                return dot(normal, x, n) > offset;
            case RegionTag::weierstrass_domain: {
                if (!(x[0] > wx0 && x[0] < wx1)) return false;
                double lower = par_c2 * x[0] * x[0] + par_c0;
                if (!(x[1] > lower)) return false;
                return x[1] < weierstrass_eval(wspec, x[0]);
            }
            case RegionTag::complement:
                return !children[0].contains(x);
            case RegionTag::intersection: {
                for (const auto& c : children)
                    if (!c.contains(x)) return false;
                return true;
            }
        }
        return false;
    }

    void bbox(Pt& blo, Pt& bhi) const {
        for (int i = 0; i < MAX_DIM; ++i) {
            blo[i] = -INF;
            bhi[i] = INF;
        }
        switch (tag) {
            case RegionTag::empty:
                for (int i = 0; i < n; ++i) {
                    blo[i] = 0.0;
                    bhi[i] = 0.0;
                }
                break;
            case RegionTag::full:
                break;
            case RegionTag::interval_union:
                if (intervals.empty()) {
                    blo[0] = bhi[0] = 0.0;
                } else {
                    blo[0] = intervals.front().first;
                    bhi[0] = intervals.back().second;
                }
                break;
            case RegionTag::ball:
                for (int i = 0; i < n; ++i) {
                    blo[i] = center[i] - radius;
                    bhi[i] = center[i] + radius;
                }
                break;
            case RegionTag::axis_box:
                for (int i = 0; i < n; ++i) {
                    blo[i] = lo[i];
                    bhi[i] = hi[i];
                }
                break;
            case RegionTag::half_space:
                break;
            case RegionTag::weierstrass_domain: {
                blo[0] = wx0;
                bhi[0] = wx1;
                double pmin = std::min(par_c2 * wx0 * wx0 + par_c0,
                                       par_c2 * wx1 * wx1 + par_c0);
                if (wx0 < 0.0 && wx1 > 0.0) pmin = std::min(pmin, par_c0);
                blo[1] = std::min(pmin, -1.0 / (1.0 - wspec.a));
                bhi[1] = 1.0 / (1.0 - wspec.a);
                break;
            }
            case RegionTag::complement:
                break;
            case RegionTag::intersection: {
                for (const auto& c : children) {
                    Pt clo, chi;
                    c.bbox(clo, chi);
                    for (int i = 0; i < n; ++i) {
                        blo[i] = std::max(blo[i], clo[i]);
                        bhi[i] = std::min(bhi[i], chi[i]);
                    }
                }
                break;
            }
        }
    }

    bool bounded() const {
        Pt blo, bhi;
        bbox(blo, bhi);
        for (int i = 0; i < n; ++i)
            if (std::isinf(blo[i]) || std::isinf(bhi[i])) return false;
        return true;
    }

    // exact interval-union normal form, n == 1 only
    IntervalList to_intervals() const {
        if (n != 1)
            throw std::domain_error("Region::to_intervals: requires n == 1");
        switch (tag) {
            case RegionTag::empty:
                return {};
            case RegionTag::full:
                return {{-INF, INF}};
            case RegionTag::interval_union:
                return detail::normalize_intervals(intervals);
            case RegionTag::ball:
                return {{center[0] - radius, center[0] + radius}};
            case RegionTag::axis_box:
                return {{lo[0], hi[0]}};
            case RegionTag::half_space: {
                if (normal[0] == 0.0)
                    throw std::domain_error("half_space: zero normal");
                if (normal[0] > 0.0) return {{offset / normal[0], INF}};
                return {{-INF, offset / normal[0]}};
            }
            case RegionTag::weierstrass_domain:
                throw std::domain_error("weierstrass_domain: requires n == 2");
            case RegionTag::complement:
                return detail::complement_intervals(children[0].to_intervals());
            case RegionTag::intersection: {
                IntervalList acc = {{-INF, INF}};
                for (const auto& c : children)
                    acc = detail::intersect_intervals(acc, c.to_intervals());
                return acc;
            }
        }
        return {};
    }

    std::vector<double> breakpoints1d() const {
        std::vector<double> b;
        for (const auto& iv : to_intervals()) {
            if (!std::isinf(iv.first)) b.push_back(iv.first);
            if (!std::isinf(iv.second)) b.push_back(iv.second);
        }
        return b;
    }
};

inline Region region_empty(int n) {
    Region r;
    r.tag = RegionTag::empty;
    r.n = n;
    return r;
}

inline Region region_full(int n) {
    Region r;
    r.tag = RegionTag::full;
    r.n = n;
    return r;
}

inline Region region_intervals(IntervalList v) {
    Region r;
    r.tag = RegionTag::interval_union;
    r.n = 1;
    r.intervals = detail::normalize_intervals(std::move(v));
    return r;
}

inline Region region_interval(double a, double b) {
    return region_intervals({{a, b}});
}

inline Region region_ball(const Pt& c, double radius, int n) {
    if (!(radius >= 0.0)) throw std::domain_error("region_ball: radius >= 0");
    Region r;
    r.tag = RegionTag::ball;
    r.n = n;
    r.center = c;
    r.radius = radius;
    return r;
}

inline Region region_axis_box(const Pt& lo, const Pt& hi, int n) {
    Region r;
    r.tag = RegionTag::axis_box;
    r.n = n;
    r.lo = lo;
    r.hi = hi;
    for (int i = 0; i < n; ++i)
        if (!(hi[i] > lo[i]))
            throw std::invalid_argument("region_axis_box: empty extent");
    return r;
}

inline Region region_half_space(const Pt& normal, double offset, int n) {
    Region r;
    r.tag = RegionTag::half_space;
    r.n = n;
    r.normal = normal;
    r.offset = offset;
    if (dot(normal, normal, n) == 0.0)
        throw std::invalid_argument("region_half_space: zero normal");
    return r;
}

inline Region region_complement(Region inner) {
    Region r;
    r.tag = RegionTag::complement;
    r.n = inner.n;
    r.children.push_back(std::move(inner));
    return r;
}

inline Region region_intersect(Region a, Region b) {
    Region r;
    r.tag = RegionTag::intersection;
    r.n = a.n;
    if (a.n != b.n)
        throw std::invalid_argument("region_intersect: dimension mismatch");
    r.children.push_back(std::move(a));
    r.children.push_back(std::move(b));
    return r;
}

inline Region region_setminus(Region a, Region b) {
    return region_intersect(std::move(a), region_complement(std::move(b)));
}

inline Region region_union(Region a, Region b) {
    return region_complement(region_intersect(region_complement(std::move(a)),
                                              region_complement(std::move(b))));
}

// domain enclosed between the parabola below and the Weierstrass graph above;
// the x-range is located by bisection on the sign of W - parabola
inline Region region_weierstrass_domain(const WeierstrassSpec& ws, double par_c2,
                                        double par_c0) {
    Region r;
    r.tag = RegionTag::weierstrass_domain;
    r.n = 2;
    r.wspec = ws;
    r.par_c2 = par_c2;
    r.par_c0 = par_c0;
    auto gap = [&](double x) {
        return weierstrass_eval(ws, x) - (par_c2 * x * x + par_c0);
    };
    if (!(gap(0.0) > 0.0))
        throw std::invalid_argument(
            "region_weierstrass_domain: curves must be separated at x = 0");
    // march outward until the gap closes, then bisect
    auto locate = [&](double dir) {
        double x0 = 0.0, x1 = 0.0;
        double step = 1.0 / 64.0;
        for (int i = 1; i < 4096; ++i) {
            double x = dir * step * i;
            if (gap(x) <= 0.0) {
                x1 = x;
                x0 = dir * step * (i - 1);
                break;
            }
        }
        if (x1 == 0.0)
            throw std::invalid_argument(
                "region_weierstrass_domain: domain does not close");
        for (int it = 0; it < 200; ++it) {
            double m = 0.5 * (x0 + x1);
            if (gap(m) > 0.0)
                x0 = m;
            else
                x1 = m;
        }
        return 0.5 * (x0 + x1);
    };
    r.wx1 = locate(1.0);
    r.wx0 = locate(-1.0);
    return r;
}

} // namespace nplab
