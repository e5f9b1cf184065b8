#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "extrapolate.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"

namespace nplab {

struct TimeProfileOpts {
    double t_lo = 1e-6;
    double t_hi = 1e4;
    double panels_per_unit = 1.0; // seed density in log time
    int max_panels = 320;
    int refine_batch = 6;
    double rel_tol = 3e-7;
    // (sigma, power) pairs whose weighted integrals steer refinement
    std::vector<std::pair<double, double>> drive;
    bool fit_small = true;
    std::optional<double> known_limit; // large-time limit, when available
    bool fit_tail = true;
    double tail_beta_hint = 0.0; // 0 searches for the decay rate
};

struct SmallTModel {
    double amp = 0.0, gamma = 0.0, resid = 0.0;
    bool valid = false;
};

struct TailModel {
    double limit = 0.0, coef = 0.0, beta = 1.0, resid = 0.0;
    bool valid = false;
};

struct TimePiece {
    double value = 0.0;
    double err = 0.0;
    bool divergent = false;
};

// Profile of an exponent-independent time integrand F stored at Gauss-Kronrod
// nodes on panels in log t. One expensive build serves every weighted
// integral int t^-(1+sigma) F(t)^power dt across a grid of exponents, with
// fitted power-law models closing the two ends of the time axis.
class TimeProfile {
public:
    struct Panel {
        double a = 0.0, b = 0.0; // in theta = log t
        std::array<double, 15> f{};
    };

    double t_lo = 0.0, t_hi = 0.0;
    std::vector<Panel> panels;
    SmallTModel small;
    TailModel tail;
    long evals = 0;

    static std::array<double, 15> node_thetas(double a, double b) {
        double c = 0.5 * (a + b), h = 0.5 * (b - a);
        std::array<double, 15> th;
        th[7] = c;
        for (int j = 0; j < 7; ++j) {
            th[j] = c - h * detail::kron_x[j];
            th[14 - j] = c + h * detail::kron_x[j];
        }
        return th;
    }

    // Kronrod value and error of the sigma-weighted integrand on one panel
    static std::pair<double, double> panel_integrate(const Panel& p,
                                                     double sigma,
                                                     double power) {
        double h = 0.5 * (p.b - p.a);
        auto th = node_thetas(p.a, p.b);
        double g[15];
        for (int j = 0; j < 15; ++j) {
            double v = std::max(p.f[j], 0.0);
            double vp = power == 1.0 ? v : std::pow(v, power);
            g[j] = std::exp(-sigma * th[j]) * vp;
        }
        double resk = detail::kron_w[7] * g[7];
        for (int j = 0; j < 7; ++j)
            resk += detail::kron_w[j] * (g[j] + g[14 - j]);
        double resg = detail::gauss7_w[3] * g[7];
        for (int j = 0; j < 3; ++j) {
            int jt = 2 * j + 1;
            resg += detail::gauss7_w[j] * (g[jt] + g[14 - jt]);
        }
        double reskh = 0.5 * resk;
        double resasc = detail::kron_w[7] * std::fabs(g[7] - reskh);
        for (int j = 0; j < 7; ++j)
            resasc += detail::kron_w[j] * (std::fabs(g[j] - reskh) +
                                           std::fabs(g[14 - j] - reskh));
        double err = std::fabs(resk - resg) * h;
        resasc *= h;
        if (resasc != 0.0 && err != 0.0)
            err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
        return {resk * h, err};
    }

    template <class Fn>
    static TimeProfile build(Fn&& fn, const TimeProfileOpts& opts) {
        if (!(opts.t_lo > 0.0) || !(opts.t_hi > opts.t_lo))
            throw std::invalid_argument("TimeProfile: bad time range");
        TimeProfile tp;
        tp.t_lo = opts.t_lo;
        tp.t_hi = opts.t_hi;
        double a = std::log(opts.t_lo), b = std::log(opts.t_hi);
        int n0 = std::clamp(
            static_cast<int>(std::ceil((b - a) * opts.panels_per_unit)), 4,
            std::max(4, opts.max_panels));
        double h = (b - a) / n0;
        for (int i = 0; i < n0; ++i)
            tp.panels.push_back({a + i * h, a + (i + 1) * h, {}});

        auto eval_panels = [&](std::vector<size_t> idx) {
            std::vector<std::pair<size_t, int>> tasks;
            std::vector<double> theta;
            for (size_t pi : idx) {
                auto th = node_thetas(tp.panels[pi].a, tp.panels[pi].b);
                for (int j = 0; j < 15; ++j) {
                    tasks.emplace_back(pi, j);
                    theta.push_back(th[j]);
                }
            }
            std::vector<double> vals(tasks.size());
            parallel_for(tasks.size(), [&](size_t k) {
                vals[k] = fn(std::exp(theta[k]));
            });
            for (size_t k = 0; k < tasks.size(); ++k)
                tp.panels[tasks[k].first].f[tasks[k].second] = vals[k];
            tp.evals += static_cast<long>(tasks.size());
        };
        {
            std::vector<size_t> all(tp.panels.size());
            for (size_t i = 0; i < all.size(); ++i) all[i] = i;
            eval_panels(all);
        }

        auto drive = opts.drive;
        if (drive.empty()) drive.push_back({0.1, 1.0});
        for (int round = 0; round < 80; ++round) {
            bool ok = true;
            std::vector<double> badness(tp.panels.size(), 0.0);
            for (auto [sigma, power] : drive) {
                double tot = 0.0, errsum = 0.0;
                std::vector<double> perr(tp.panels.size());
                for (size_t i = 0; i < tp.panels.size(); ++i) {
                    auto [v, e] = panel_integrate(tp.panels[i], sigma, power);
                    tot += v;
                    perr[i] = e;
                    errsum += e;
                }
                double scale = std::max(std::fabs(tot), 1e-300);
                if (errsum > opts.rel_tol * scale) ok = false;
                for (size_t i = 0; i < tp.panels.size(); ++i)
                    badness[i] = std::max(badness[i], perr[i] / scale);
            }
            if (ok || static_cast<int>(tp.panels.size()) >= opts.max_panels)
                break;
            std::vector<size_t> order(tp.panels.size());
            for (size_t i = 0; i < order.size(); ++i) order[i] = i;
            std::sort(order.begin(), order.end(), [&](size_t p, size_t q) {
                return badness[p] > badness[q];
            });
            int nb = std::min<int>(opts.refine_batch,
                                   opts.max_panels -
                                       static_cast<int>(tp.panels.size()));
            nb = std::max(nb, 1);
            std::vector<size_t> fresh;
            for (int k = 0; k < nb && k < static_cast<int>(order.size()); ++k) {
                size_t pi = order[k];
                if (badness[pi] <= 0.0) continue;
                double pa = tp.panels[pi].a, pb = tp.panels[pi].b;
                double pm = 0.5 * (pa + pb);
                if (!(pm > pa && pm < pb)) continue;
                tp.panels[pi] = {pa, pm, {}};
                tp.panels.push_back({pm, pb, {}});
                fresh.push_back(pi);
                fresh.push_back(tp.panels.size() - 1);
            }
            if (fresh.empty()) break;
            eval_panels(fresh);
        }
        std::sort(tp.panels.begin(), tp.panels.end(),
                  [](const Panel& p, const Panel& q) { return p.a < q.a; });

        if (opts.fit_small) tp.fit_small_model();
        if (opts.fit_tail)
            tp.fit_tail_model(opts.known_limit, opts.tail_beta_hint);
        return tp;
    }

    TimePiece bulk(double sigma, double power) const {
        TimePiece out;
        for (const auto& p : panels) {
            auto [v, e] = panel_integrate(p, sigma, power);
            out.value += v;
            out.err += e;
        }
        return out;
    }

    double sup_bulk(double sigma, double power) const {
        double best = 0.0;
        for (const auto& p : panels) {
            auto th = node_thetas(p.a, p.b);
            for (int j = 0; j < 15; ++j) {
                double v = std::max(p.f[j], 0.0);
                double vp = power == 1.0 ? v : std::pow(v, power);
                best = std::max(best, std::exp(-sigma * th[j]) * vp);
            }
        }
        return best;
    }

    TimePiece small_t(double sigma, double power) const {
        TimePiece out;
        if (!small.valid) return out;
        double ex = small.gamma * power - sigma;
        if (ex <= 0.02) {
            out.divergent = true;
            return out;
        }
        double ampp =
            power == 1.0 ? small.amp : std::pow(std::max(small.amp, 0.0), power);
        out.value = ampp * std::pow(t_lo, ex) / ex;
        out.err = out.value * std::min(1.0, small.resid * std::fabs(power));
        return out;
    }

    TimePiece tail_t(double sigma, double power) const {
        TimePiece out;
        if (!(sigma > 0.0)) {
            out.divergent = true;
            return out;
        }
        if (!tail.valid) return out;
        double T = t_hi;
        double L = tail.limit, C = tail.coef, B = tail.beta;
        double scale = std::max(std::fabs(L), 1e-300);
        if (power == 1.0) {
            out.value = L * std::pow(T, -sigma) / sigma +
                        C * std::pow(T, -(sigma + B)) / (sigma + B);
            out.err = tail.resid * scale * std::pow(T, -sigma) / sigma;
            return out;
        }
        if (std::fabs(L) <= 1e-300) {
            double cp = std::pow(std::max(C, 0.0), power);
            double ex = sigma + B * power;
            out.value = cp * std::pow(T, -ex) / ex;
            out.err = out.value * std::min(1.0, tail.resid * std::fabs(power));
            return out;
        }
        double lp = std::pow(L, power);
        out.value = lp * std::pow(T, -sigma) / sigma +
                    power * std::pow(L, power - 1.0) * C *
                        std::pow(T, -(sigma + B)) / (sigma + B);
        double u = std::fabs(C) * std::pow(T, -B);
        out.err = (std::fabs(power * (power - 1.0)) * 0.5 *
                       std::pow(L, power - 2.0) * u * u +
                   tail.resid * scale * std::fabs(power) *
                       std::pow(L, power - 1.0)) *
                  std::pow(T, -sigma) / sigma;
        return out;
    }

    std::vector<std::pair<double, double>> nodes() const {
        std::vector<std::pair<double, double>> out;
        for (const auto& p : panels) {
            auto th = node_thetas(p.a, p.b);
            for (int j = 0; j < 15; ++j)
                out.emplace_back(std::exp(th[j]), p.f[j]);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::vector<std::pair<double, double>> node_range(double th_min,
                                                      double th_max) const {
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : panels) {
            auto th = node_thetas(p.a, p.b);
            for (int j = 0; j < 15; ++j)
                if (th[j] >= th_min && th[j] <= th_max)
                    pts.emplace_back(th[j], p.f[j]);
        }
        std::sort(pts.begin(), pts.end());
        return pts;
    }

    void fit_small_model() {
        double th_lo = std::log(t_lo);
        double window = std::log(10.0) * 1.2;
        auto pts = node_range(th_lo, th_lo + window);
        if (pts.size() < 6) pts = node_range(th_lo, th_lo + 2.5 * window);
        std::vector<double> xs, ys;
        for (auto& [th, f] : pts) {
            if (!(f > 0.0)) return; // leave invalid
            xs.push_back(th);
            ys.push_back(std::log(f));
        }
        if (xs.size() < 4) return;
        auto [icpt, slope] = ls_line(xs, ys);
        double r = 0.0;
        for (size_t i = 0; i < xs.size(); ++i)
            r = std::max(r, std::fabs(icpt + slope * xs[i] - ys[i]));
        small = {std::exp(icpt), slope, r, true};
    }

    // regress F on [1, t^-beta] (or just t^-beta with the limit pinned)
    struct TailTry {
        double limit, coef, resid;
    };
    TailTry tail_regress(const std::vector<std::pair<double, double>>& pts,
                         double beta,
                         const std::optional<double>& pin) const {
        double s11 = 0, s1b = 0, sbb = 0, s1f = 0, sbf = 0;
        for (auto& [th, f] : pts) {
            double xb = std::exp(-beta * th);
            s11 += 1.0;
            s1b += xb;
            sbb += xb * xb;
            s1f += f;
            sbf += xb * f;
        }
        double L, C;
        if (pin) {
            L = *pin;
            C = sbb > 0.0 ? (sbf - L * s1b) / sbb : 0.0;
        } else {
            double det = s11 * sbb - s1b * s1b;
            if (std::fabs(det) < 1e-300) return {0.0, 0.0, 1e300};
            L = (sbb * s1f - s1b * sbf) / det;
            C = (s11 * sbf - s1b * s1f) / det;
        }
        double r = 0.0;
        for (auto& [th, f] : pts)
            r = std::max(r, std::fabs(L + C * std::exp(-beta * th) - f));
        return {L, C, r};
    }

    void fit_tail_model(const std::optional<double>& known, double beta_hint) {
        double th_hi = std::log(t_hi);
        auto pts = node_range(th_hi - std::log(10.0) * 2.0, th_hi);
        if (pts.size() < 6) pts = node_range(th_hi - std::log(10.0) * 4.0, th_hi);
        if (pts.size() < 4) return;
        double fmax = 0.0;
        for (auto& [th, f] : pts) fmax = std::max(fmax, std::fabs(f));
        double scale = std::max(fmax, known ? std::fabs(*known) : 0.0);
        scale = std::max(scale, 1e-300);

        if (known) {
            double rmax = 0.0;
            for (auto& [th, f] : pts)
                rmax = std::max(rmax, std::fabs(*known - f));
            if (rmax <= 1e-12 * scale) {
                tail = {*known, 0.0, 1.0, rmax / scale, true};
                return;
            }
        }
        double best_beta = 1.0, best_resid = 1e300, best_L = 0.0, best_C = 0.0;
        auto consider = [&](double beta) {
            if (!(beta > 0.0)) return;
            auto tr = tail_regress(pts, beta, known);
            if (tr.resid < best_resid) {
                best_resid = tr.resid;
                best_beta = beta;
                best_L = tr.limit;
                best_C = tr.coef;
            }
        };
        if (beta_hint > 0.0) {
            consider(beta_hint);
        } else {
            for (int i = 0; i <= 48; ++i)
                consider(0.05 * std::pow(6.0 / 0.05, i / 48.0));
            // golden refinement around the grid winner
            double lo = best_beta / 1.35, hi = best_beta * 1.35;
            const double gr = 0.6180339887498949;
            double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
            for (int it = 0; it < 40; ++it) {
                double r1 = tail_regress(pts, x1, known).resid;
                double r2 = tail_regress(pts, x2, known).resid;
                if (r1 < r2) {
                    hi = x2;
                    x2 = x1;
                    x1 = hi - gr * (hi - lo);
                } else {
                    lo = x1;
                    x1 = x2;
                    x2 = lo + gr * (hi - lo);
                }
            }
            consider(0.5 * (lo + hi));
        }
        tail = {best_L, best_C, best_beta, best_resid / scale, true};
    }
};

// three-piece weighted time integral with divergence propagation
inline TimePiece profile_integral(const TimeProfile& tp, double sigma,
                                  double power) {
    TimePiece b = tp.bulk(sigma, power);
    TimePiece s = tp.small_t(sigma, power);
    TimePiece t = tp.tail_t(sigma, power);
    TimePiece out;
    out.divergent = s.divergent || t.divergent;
    out.value = b.value + s.value + t.value;
    out.err = b.err + s.err + t.err;
    return out;
}

} // namespace nplab
