#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hewalk/errors.hpp"

namespace hewalk {

using Complex = std::complex<double>;

enum class Axis { x, y, z };
enum class Boundary { cyclic, hard_wall };

/// Amplitudes of one lattice branch, indexed by site 0..N-1. Site j doubles
/// as the Fock number j when the lattice hosts a coherent state.
class LatticeState {
public:
    LatticeState() = default;
    explicit LatticeState(std::size_t n_sites) : amps_(n_sites) {}
    explicit LatticeState(std::vector<Complex> amps) : amps_(std::move(amps)) {}

    static LatticeState basis(std::size_t n_sites, std::size_t site) {
        if (site >= n_sites) throw IndexError("basis site " + std::to_string(site) + " outside lattice of " + std::to_string(n_sites));
        LatticeState s(n_sites);
        s.amps_[site] = 1.0;
        return s;
    }

    std::size_t size() const { return amps_.size(); }
    bool empty() const { return amps_.empty(); }

    const Complex& operator[](std::size_t j) const { return amps_[j]; }
    Complex& operator[](std::size_t j) { return amps_[j]; }

    std::span<const Complex> amps() const { return amps_; }
    std::span<Complex> amps() { return amps_; }
    std::vector<Complex>& data() { return amps_; }
    const std::vector<Complex>& data() const { return amps_; }

    double norm_sq() const {
        double s = 0.0;
        for (const auto& a : amps_) s += std::norm(a);
        return s;
    }
    double norm() const { return std::sqrt(norm_sq()); }

    LatticeState& operator*=(Complex c) {
        for (auto& a : amps_) a *= c;
        return *this;
    }
    friend LatticeState operator*(Complex c, LatticeState s) { return s *= c; }

    // Explicit: projection probabilities are read off the unnormalized branch.
    LatticeState normalized() const {
        const double n = norm();
        if (n == 0.0) throw DimensionError("cannot normalize the zero state");
        return (1.0 / n) * *this;
    }

    bool operator==(const LatticeState&) const = default;

private:
    std::vector<Complex> amps_;
};

/// Pure coin (x) lattice state: comp0 pairs with coin |0>, comp1 with |1>.
struct CoinLatticeState {
    LatticeState comp0;
    LatticeState comp1;

    CoinLatticeState() = default;
    explicit CoinLatticeState(std::size_t n_sites) : comp0(n_sites), comp1(n_sites) {}
    CoinLatticeState(LatticeState c0, LatticeState c1) : comp0(std::move(c0)), comp1(std::move(c1)) {
        if (comp0.size() != comp1.size())
            throw DimensionError("coin branches differ in length: " + std::to_string(comp0.size()) + " vs " + std::to_string(comp1.size()));
    }

    /// |coin> (x) |site> with coin amplitudes (c0, c1).
    static CoinLatticeState localized(std::size_t n_sites, std::size_t site, Complex c0, Complex c1) {
        CoinLatticeState s(n_sites);
        if (site >= n_sites) throw IndexError("site " + std::to_string(site) + " outside lattice of " + std::to_string(n_sites));
        s.comp0[site] = c0;
        s.comp1[site] = c1;
        return s;
    }

    std::size_t n_sites() const { return comp0.size(); }

    const LatticeState& branch(int b) const { return b == 0 ? comp0 : comp1; }

    bool operator==(const CoinLatticeState&) const = default;
};

struct WalkConfig {
    std::size_t n_sites = 200;
    double alpha0 = 10.0;
    double delta = 0.0;
    double theta1 = 0.0;
    double theta2 = -std::numbers::pi / 2;
    Axis axis = Axis::y;
    std::size_t steps = 20;
    Boundary boundary = Boundary::cyclic;
    double leakage_tol = 1e-8;
    std::size_t window = 40;

    void validate() const {
        constexpr double two_pi = 2 * std::numbers::pi;
        constexpr double slack = 1e-12;
        if (n_sites < 2) throw ConfigError("n_sites must be >= 2");
        if (!(alpha0 >= 0.0) || !std::isfinite(alpha0)) throw ConfigError("alpha0 must be finite and non-negative");
        if (!std::isfinite(delta)) throw ConfigError("delta must be finite");
        for (double th : {theta1, theta2})
            if (!(std::abs(th) <= two_pi + slack)) throw ConfigError("rotation angles must lie in [-2pi, 2pi]");
        if (!(leakage_tol > 0.0)) throw ConfigError("leakage_tol must be positive");
        if (window < 2) throw ConfigError("window must be >= 2");
    }

    bool operator==(const WalkConfig&) const = default;
};

inline const char* to_string(Axis a) {
    switch (a) {
        case Axis::x: return "x";
        case Axis::y: return "y";
        case Axis::z: return "z";
    }
    return "?";
}

inline const char* to_string(Boundary b) { return b == Boundary::cyclic ? "cyclic" : "hard-wall"; }

inline Axis parse_axis(const std::string& s) {
    if (s == "x") return Axis::x;
    if (s == "y") return Axis::y;
    if (s == "z") return Axis::z;
    throw ConfigError("unknown rotation axis '" + s + "' (expected x, y or z)");
}

inline Boundary parse_boundary(const std::string& s) {
    if (s == "cyclic") return Boundary::cyclic;
    if (s == "hard-wall" || s == "hard_wall") return Boundary::hard_wall;
    throw ConfigError("unknown boundary policy '" + s + "' (expected cyclic or hard-wall)");
}

/// <a|b> = sum_j conj(a_j) b_j
inline Complex inner_product(const LatticeState& a, const LatticeState& b) {
    if (a.size() != b.size())
        throw DimensionError("inner_product: length mismatch " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    Complex s{};
    for (std::size_t j = 0; j < a.size(); ++j) s += std::conj(a[j]) * b[j];
    return s;
}

inline double norm(const CoinLatticeState& s) { return std::sqrt(s.comp0.norm_sq() + s.comp1.norm_sq()); }

inline double probability_at(const CoinLatticeState& s, std::size_t j) {
    if (j >= s.n_sites())
        throw IndexError("probability_at: site " + std::to_string(j) + " outside lattice of " + std::to_string(s.n_sites()));
    return std::norm(s.comp0[j]) + std::norm(s.comp1[j]);
}

}  // namespace hewalk
