#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hewalk/walk.hpp"

namespace hewalk {

/// Position distribution after t steps. Displacements are measured from
/// origin, the walker's starting site.
struct Distribution {
    std::vector<double> probs;
    std::size_t t = 0;
    std::size_t origin = 0;

    double total() const {
        double s = 0.0;
        for (double p : probs) s += p;
        return s;
    }
};

inline Distribution walk_distribution(const CoinLatticeState& s, std::size_t t = 0, std::size_t origin = 0) {
    Distribution d;
    d.t = t;
    d.origin = origin;
    d.probs.resize(s.n_sites());
    for (std::size_t j = 0; j < s.n_sites(); ++j) d.probs[j] = probability_at(s, j);
    return d;
}

/// sum n^2 P(n) - (sum n P(n))^2 with n the signed displacement from origin.
inline double variance(const Distribution& d) {
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t j = 0; j < d.probs.size(); ++j) {
        const double n = static_cast<double>(j) - static_cast<double>(d.origin);
        m1 += n * d.probs[j];
        m2 += n * n * d.probs[j];
    }
    return m2 - m1 * m1;
}

/// Symmetric +-1 random walk after t steps: P(origin + 2k - t) = C(t, k) / 2^t.
/// Built row by row of Pascal's triangle with halving, which keeps every entry
/// a dyadic rational (exact while C(t, k) fits the mantissa).
inline Distribution classical_distribution(std::size_t t, std::size_t n_sites, std::size_t origin) {
    if (origin >= n_sites || t > origin || origin + t >= n_sites)
        throw RangeError("classical walk of " + std::to_string(t) + " steps from site " + std::to_string(origin) +
                         " leaves a lattice of " + std::to_string(n_sites) + " sites");
    std::vector<double> row{1.0};
    for (std::size_t r = 1; r <= t; ++r) {
        std::vector<double> next(r + 1, 0.0);
        for (std::size_t k = 0; k <= r; ++k) {
            const double left = k > 0 ? row[k - 1] : 0.0;
            const double right = k < r ? row[k] : 0.0;
            next[k] = 0.5 * (left + right);
        }
        row = std::move(next);
    }
    Distribution d;
    d.t = t;
    d.origin = origin;
    d.probs.assign(n_sites, 0.0);
    for (std::size_t k = 0; k <= t; ++k) d.probs[origin - t + 2 * k] = row[k];
    return d;
}

inline Distribution classical_distribution(std::size_t t, std::size_t n_sites) {
    return classical_distribution(t, n_sites, n_sites / 2);
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw DimensionError("loglog_slope: need two equal-length series of >= 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw RangeError("loglog_slope: non-positive sample");
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct VarianceSeries {
    std::vector<double> t;
    std::vector<double> quantum;
    std::vector<double> classical;
};

/// Lattice just wide enough for a t-step walk from the centre, plus a margin
/// that keeps the seam monitor quiet.
inline std::size_t lattice_for_steps(std::size_t t) { return 2 * t + 5; }

/// Variance of a DTQW started at the lattice centre with coin (c0, c1), and of
/// the classical walk, for every t in 1..t_max.
inline VarianceSeries variance_series(double theta, Complex c0, Complex c1, std::size_t t_max, Axis axis = Axis::y) {
    const std::size_t n = lattice_for_steps(t_max);
    const std::size_t origin = n / 2;
    VarianceSeries vs;
    const auto u = StepUnitary::dtqw(theta, axis);
    evolve_observed(CoinLatticeState::localized(n, origin, c0, c1), u, t_max,
                    [&](std::size_t k, const CoinLatticeState& s) {
                        if (k == 0) return;
                        vs.t.push_back(static_cast<double>(k));
                        vs.quantum.push_back(variance(walk_distribution(s, k, origin)));
                        vs.classical.push_back(variance(classical_distribution(k, n, origin)));
                    });
    return vs;
}

}  // namespace hewalk
