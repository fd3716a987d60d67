#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>

#include "hewalk/analysis.hpp"
#include "hewalk/state.hpp"

namespace hewalk {

inline constexpr double kDisplacementTailTolerance = 1e-6;
inline constexpr double kSymmetryCheckTolerance = 0.02;

/// Truncated bosonic displacement exp(beta a^dag - conj(beta) a) on Fock
/// levels 0..n-1, with a|j> = sqrt(j)|j-1>.
inline Eigen::MatrixXcd displacement_matrix(Complex beta, std::size_t n) {
    const auto dim = static_cast<Eigen::Index>(n);
    Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index j = 0; j + 1 < dim; ++j) {
        const double s = std::sqrt(static_cast<double>(j + 1));
        gen(j + 1, j) = beta * s;             // a^dag
        gen(j, j + 1) = -std::conj(beta) * s;  // -conj(beta) a
    }
    return gen.exp();
}

namespace detail {

inline std::size_t tail_start(std::size_t n) { return n - std::max<std::size_t>(1, n / 10); }

inline double tail_weight(const LatticeState& s) {
    double w = 0.0;
    for (std::size_t j = tail_start(s.size()); j < s.size(); ++j) w += std::norm(s[j]);
    return w;
}

}  // namespace detail

inline LatticeState apply_matrix(const Eigen::MatrixXcd& m, const LatticeState& s) {
    if (static_cast<std::size_t>(m.cols()) != s.size()) throw DimensionError("apply_matrix: dimension mismatch");
    Eigen::VectorXcd v(static_cast<Eigen::Index>(s.size()));
    for (std::size_t j = 0; j < s.size(); ++j) v(static_cast<Eigen::Index>(j)) = s[j];
    const Eigen::VectorXcd out = m * v;
    LatticeState r(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) r[j] = out(static_cast<Eigen::Index>(j));
    return r;
}

/// D(beta)|s>. Throws when the result leans on the top of the truncation,
/// where the truncated D no longer acts like the true displacement.
inline LatticeState displace(const LatticeState& s, Complex beta) {
    LatticeState out = apply_matrix(displacement_matrix(beta, s.size()), s);
    const double tail = detail::tail_weight(out);
    if (tail > kDisplacementTailTolerance)
        throw DisplacementTruncationError("displacement by " + num(std::abs(beta)) + " leaves weight " +
                                          num(tail) + " in the top Fock levels of the truncation");
    return out;
}

/// Integer relabelling j -> j + offset. Weight pushed past either end is
/// dropped, and more than the tail tolerance of it is an error.
inline LatticeState relabel_shift(const LatticeState& s, std::ptrdiff_t offset) {
    LatticeState out(s.size());
    double lost = 0.0;
    const auto n = static_cast<std::ptrdiff_t>(s.size());
    for (std::ptrdiff_t j = 0; j < n; ++j) {
        const std::ptrdiff_t k = j + offset;
        if (k < 0 || k >= n) lost += std::norm(s[static_cast<std::size_t>(j)]);
        else out[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(j)];
    }
    if (lost > kDisplacementTailTolerance)
        throw DisplacementTruncationError("relabel by " + std::to_string(offset) + " sites drops weight " +
                                          num(lost));
    return out;
}

struct SymmetrizedPair {
    LatticeState branch0;
    LatticeState branch1;
    Complex beta{};
    Complex alpha_sym{};
    // Estimator readings on the displaced branches.
    Complex check0{};
    Complex check1{};

    bool within_tolerance(double tol = kSymmetryCheckTolerance) const {
        return std::abs(check0 - alpha_sym) <= tol && std::abs(check1 + alpha_sym) <= tol;
    }
};

namespace detail {

// Near-vacuum states have too few reliable sites for the estimator; all
// their weight at Fock 0 means amplitude 0.
inline Complex post_estimate(const LatticeState& s, std::size_t window) {
    try {
        return estimate_alpha_bar(s, window).alpha_bar;
    } catch (const EstimationError&) {
        if (std::norm(s[0]) > 1.0 - 1e-6) return 0.0;
        throw;
    }
}

}  // namespace detail

/// Displaces both branches by beta = -(a2 + g a2)/2 with g = a1/a2, so the
/// branch amplitudes become +alpha_sym and -alpha_sym, alpha_sym = (g a2 - a2)/2.
inline SymmetrizedPair symmetrize(const ConditionalState& c0, const ConditionalState& c1, const AmplitudeEstimate& est1,
                                  const AmplitudeEstimate& est2, std::size_t window = kDefaultWindow) {
    const Complex a1 = est1.alpha_bar;
    const Complex a2 = est2.alpha_bar;
    if (std::abs(a2) == 0.0) throw EstimationError("symmetrize: second branch amplitude is zero");
    const Complex g = a1 / a2;

    SymmetrizedPair out;
    out.beta = -(a2 + g * a2) / 2.0;
    out.alpha_sym = (g * a2 - a2) / 2.0;

    const Eigen::MatrixXcd d = displacement_matrix(out.beta, c0.state.size());
    out.branch0 = apply_matrix(d, c0.raw_normalized());
    out.branch1 = apply_matrix(d, c1.raw_normalized());
    for (const LatticeState* b : {&out.branch0, &out.branch1}) {
        const double tail = detail::tail_weight(*b);
        if (tail > kDisplacementTailTolerance)
            throw DisplacementTruncationError("symmetrizing displacement leaves weight " + num(tail) +
                                              " in the top Fock levels of the truncation");
    }
    out.check0 = detail::post_estimate(out.branch0, window);
    out.check1 = detail::post_estimate(out.branch1, window);
    return out;
}

}  // namespace hewalk
