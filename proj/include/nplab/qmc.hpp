#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

namespace nplab {

namespace detail {

inline constexpr int halton_primes[6] = {2, 3, 5, 7, 11, 13};

// radical-inverse in the given base
inline double radical_inverse(std::uint64_t i, int base) {
    double f = 1.0, r = 0.0;
    while (i > 0) {
        f /= base;
        r += f * static_cast<double>(i % base);
        i /= base;
    }
    return r;
}

} // namespace detail

struct QmcEstimate {
    double value = 0.0;
    double std_err = 0.0;
    std::uint64_t samples = 0;
};

// Halton sequence with a seeded Cranley-Patterson rotation. `replicates`
// independent rotations give the reported standard error.
template <class F>
inline QmcEstimate qmc_integrate_box(F&& f, const std::vector<double>& lo,
                                     const std::vector<double>& hi,
                                     std::uint64_t samples, std::uint64_t seed,
                                     int replicates = 8) {
    const int dim = static_cast<int>(lo.size());
    if (dim < 1 || dim > 6)
        throw std::domain_error("qmc_integrate_box: dim must be 1..6");
    if (replicates < 2) replicates = 2;
    double volume = 1.0;
    for (int d = 0; d < dim; ++d) {
        if (!(hi[d] > lo[d]))
            throw std::invalid_argument("qmc_integrate_box: empty box");
        volume *= hi[d] - lo[d];
    }
    const std::uint64_t per = std::max<std::uint64_t>(samples / replicates, 16);
    std::vector<double> means;
    std::vector<double> x(dim);
    for (int r = 0; r < replicates; ++r) {
        std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 0x1234abcdULL + r);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        std::vector<double> shift(dim);
        for (int d = 0; d < dim; ++d) shift[d] = uni(rng);
        double acc = 0.0;
        for (std::uint64_t i = 0; i < per; ++i) {
            for (int d = 0; d < dim; ++d) {
                double u = detail::radical_inverse(i + 1, detail::halton_primes[d]) +
                           shift[d];
                u -= std::floor(u);
                x[d] = lo[d] + (hi[d] - lo[d]) * u;
            }
            acc += f(x);
        }
        means.push_back(acc / static_cast<double>(per));
    }
    double m = 0.0;
    for (double v : means) m += v;
    m /= means.size();
    double var = 0.0;
    for (double v : means) var += (v - m) * (v - m);
    var /= (means.size() - 1.0);
    QmcEstimate out;
    out.value = m * volume;
    out.std_err = std::sqrt(var / means.size()) * volume;
    out.samples = per * replicates;
    return out;
}

} // namespace nplab
