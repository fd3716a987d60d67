#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include "hewalk/state.hpp"

namespace hewalk {

/// 2x2 coin operator acting identically on every site.
struct CoinMatrix {
    Complex m00{1.0}, m01{}, m10{}, m11{1.0};

    void apply(Complex& c0, Complex& c1) const {
        const Complex n0 = m00 * c0 + m01 * c1;
        const Complex n1 = m10 * c0 + m11 * c1;
        c0 = n0;
        c1 = n1;
    }

    CoinMatrix operator*(const CoinMatrix& r) const {
        return {m00 * r.m00 + m01 * r.m10, m00 * r.m01 + m01 * r.m11,
                m10 * r.m00 + m11 * r.m10, m10 * r.m01 + m11 * r.m11};
    }
};

/// exp(-i theta (n.sigma) / 2) for n along the selected axis.
inline CoinMatrix rotation_matrix(double theta, Axis axis) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    const Complex i{0.0, 1.0};
    switch (axis) {
        case Axis::x: return {c, -i * s, -i * s, c};
        case Axis::y: return {c, -s, s, c};
        case Axis::z: return {Complex{c, -s}, 0.0, 0.0, Complex{c, s}};
    }
    return {};
}

struct StepUnitary {
    enum class Kind { dtqw, ssqw };

    Kind kind = Kind::ssqw;
    double theta1 = 0.0;
    double theta2 = 0.0;  // ignored for dtqw
    Axis axis = Axis::y;
    Boundary boundary = Boundary::cyclic;
    double leakage_tol = 1e-8;

    static StepUnitary dtqw(double theta, Axis axis = Axis::y, Boundary b = Boundary::cyclic, double tol = 1e-8) {
        return {Kind::dtqw, theta, 0.0, axis, b, tol};
    }
    static StepUnitary ssqw(double theta1, double theta2, Axis axis = Axis::y, Boundary b = Boundary::cyclic,
                            double tol = 1e-8) {
        return {Kind::ssqw, theta1, theta2, axis, b, tol};
    }
    static StepUnitary from_config(const WalkConfig& cfg) {
        return ssqw(cfg.theta1, cfg.theta2, cfg.axis, cfg.boundary, cfg.leakage_tol);
    }
};

inline CoinLatticeState apply_coin(CoinLatticeState s, const CoinMatrix& m) {
    for (std::size_t j = 0; j < s.n_sites(); ++j) m.apply(s.comp0[j], s.comp1[j]);
    return s;
}

inline CoinLatticeState apply_rotation(CoinLatticeState s, double theta, Axis axis) {
    return apply_coin(std::move(s), rotation_matrix(theta, axis));
}

namespace detail {

// Moves every amplitude of one branch by +1 (right) or -1 (left).
inline void shift_branch(LatticeState& branch, bool right, Boundary boundary, double leakage_tol, int coin) {
    auto& v = branch.data();
    const std::size_t n = v.size();
    if (n == 0) return;

    auto leak = [&](std::size_t j) {
        return BoundaryLeakageError("amplitude " + num(std::abs(v[j])) + " at site " + std::to_string(j) +
                                    " of coin-" + std::to_string(coin) + " branch exceeds leakage tolerance " +
                                    num(leakage_tol) + "; enlarge the lattice");
    };

    if (boundary == Boundary::cyclic) {
        // Monitor the seam so wraparound never goes unnoticed.
        for (std::size_t j : {std::size_t{0}, std::size_t{1}, n - 2, n - 1})
            if (j < n && std::abs(v[j]) > leakage_tol) throw leak(j);
        if (right) {
            const Complex last = v[n - 1];
            for (std::size_t j = n - 1; j > 0; --j) v[j] = v[j - 1];
            v[0] = last;
        } else {
            const Complex first = v[0];
            for (std::size_t j = 0; j + 1 < n; ++j) v[j] = v[j + 1];
            v[n - 1] = first;
        }
        return;
    }

    // Hard wall: the edge amplitude falls off the lattice.
    if (right) {
        if (std::abs(v[n - 1]) > leakage_tol) throw leak(n - 1);
        for (std::size_t j = n - 1; j > 0; --j) v[j] = v[j - 1];
        v[0] = 0.0;
    } else {
        if (std::abs(v[0]) > leakage_tol) throw leak(0);
        for (std::size_t j = 0; j + 1 < n; ++j) v[j] = v[j + 1];
        v[n - 1] = 0.0;
    }
}

}  // namespace detail

/// T: coin-0 branch moves j -> j+1, coin-1 branch moves j -> j-1.
inline CoinLatticeState apply_shift_full(CoinLatticeState s, Boundary boundary, double leakage_tol = 1e-8) {
    detail::shift_branch(s.comp0, true, boundary, leakage_tol, 0);
    detail::shift_branch(s.comp1, false, boundary, leakage_tol, 1);
    return s;
}

/// T0: only the coin-0 branch moves right.
inline CoinLatticeState apply_shift_t0(CoinLatticeState s, Boundary boundary, double leakage_tol = 1e-8) {
    detail::shift_branch(s.comp0, true, boundary, leakage_tol, 0);
    return s;
}

/// T1: only the coin-1 branch moves left.
inline CoinLatticeState apply_shift_t1(CoinLatticeState s, Boundary boundary, double leakage_tol = 1e-8) {
    detail::shift_branch(s.comp1, false, boundary, leakage_tol, 1);
    return s;
}

/// One time step. dtqw: T R(theta1). ssqw: T1 R(theta2) T0 R(theta1), rightmost first.
inline CoinLatticeState step(CoinLatticeState s, const StepUnitary& u) {
    const CoinMatrix r1 = rotation_matrix(u.theta1, u.axis);
    s = apply_coin(std::move(s), r1);
    if (u.kind == StepUnitary::Kind::dtqw) return apply_shift_full(std::move(s), u.boundary, u.leakage_tol);
    s = apply_shift_t0(std::move(s), u.boundary, u.leakage_tol);
    s = apply_coin(std::move(s), rotation_matrix(u.theta2, u.axis));
    return apply_shift_t1(std::move(s), u.boundary, u.leakage_tol);
}

inline CoinLatticeState evolve(CoinLatticeState s, const StepUnitary& u, std::size_t t) {
    for (std::size_t k = 0; k < t; ++k) s = step(std::move(s), u);
    return s;
}

/// Calls visit(k, state) for k = 0..t, stepping in between.
template <typename Visitor>
CoinLatticeState evolve_observed(CoinLatticeState s, const StepUnitary& u, std::size_t t, Visitor&& visit) {
    visit(std::size_t{0}, static_cast<const CoinLatticeState&>(s));
    for (std::size_t k = 1; k <= t; ++k) {
        s = step(std::move(s), u);
        visit(k, static_cast<const CoinLatticeState&>(s));
    }
    return s;
}

}  // namespace hewalk
