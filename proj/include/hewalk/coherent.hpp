#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <iostream>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "hewalk/state.hpp"

namespace hewalk {

/// Largest tail weight a truncated coherent state may shed before
/// renormalization.
inline constexpr double kCoherentTailTolerance = 1e-10;

/// Truncated coherent state sum_j alpha^j / sqrt(j!) |j> over Fock levels
/// 0..n_sites-1, renormalized to unit norm. Coefficients are built in log
/// space so alpha^j and 1/sqrt(j!) never overflow or underflow separately.
/// Pass tail_tol = infinity for comparison targets that may be clipped.
inline LatticeState coherent_state(Complex alpha, std::size_t n_sites, double tail_tol = kCoherentTailTolerance) {
    if (n_sites == 0) throw DimensionError("coherent_state: empty lattice");
    LatticeState s(n_sites);
    const double mag = std::abs(alpha);
    if (mag == 0.0) {
        s[0] = 1.0;
        return s;
    }
    const double log_mag = std::log(mag);
    const double arg = std::arg(alpha);

    std::vector<double> log_c(n_sites);
    double peak = -INFINITY;
    for (std::size_t j = 0; j < n_sites; ++j) {
        const double jd = static_cast<double>(j);
        log_c[j] = jd * log_mag - 0.5 * std::lgamma(jd + 1.0);
        peak = std::max(peak, log_c[j]);
    }
    for (std::size_t j = 0; j < n_sites; ++j) {
        const double m = std::exp(log_c[j] - peak);
        s[j] = arg == 0.0 ? Complex{m, 0.0} : std::polar(m, static_cast<double>(j) * arg);
    }

    // Exact |alpha|^2 weight missing beyond the truncation, relative to the
    // full (untruncated) state: 1 - P(Poisson(|alpha|^2) < N).
    const double lam = mag * mag;
    double head = 0.0;
    {
        double log_term = -lam;  // log of e^{-lam} lam^j / j!
        for (std::size_t j = 0; j < n_sites; ++j) {
            if (j > 0) log_term += std::log(lam) - std::log(static_cast<double>(j));
            head += std::exp(log_term);
        }
    }
    const double tail = 1.0 - head;
    if (tail > tail_tol)
        throw TruncationError("coherent state with |alpha| = " + num(mag) + " loses weight " +
                              num(tail) + " beyond " + std::to_string(n_sites) + " sites");
    return s.normalized();
}

inline LatticeState coherent_lattice_state(double alpha0, std::size_t n_sites) {
    if (!(alpha0 >= 0.0)) throw ConfigError("coherent_lattice_state: alpha0 must be non-negative");
    return coherent_state(Complex{alpha0, 0.0}, n_sites);
}

struct CoinPair {
    Complex c0;
    Complex c1;
};

/// (|0> + e^{i delta}|1>) / sqrt(2)
inline CoinPair coin_state(double delta) {
    if (delta < 0.0 || delta > std::numbers::pi / 2 + 1e-12)
        std::cerr << "warning: coin phase delta = " << delta << " lies outside [0, pi/2]\n";
    const double r = 1.0 / std::numbers::sqrt2;
    return {Complex{r, 0.0}, std::polar(r, delta)};
}

inline CoinLatticeState make_initial(const WalkConfig& cfg) {
    cfg.validate();
    const LatticeState lattice = coherent_lattice_state(cfg.alpha0, cfg.n_sites);
    const CoinPair coin = coin_state(cfg.delta);
    return CoinLatticeState(coin.c0 * lattice, coin.c1 * lattice);
}

}  // namespace hewalk
