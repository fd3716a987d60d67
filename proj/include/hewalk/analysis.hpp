#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "hewalk/coherent.hpp"
#include "hewalk/state.hpp"

namespace hewalk {

inline constexpr double kDegenerateBranchProb = 1e-12;
inline constexpr double kReliableAmplitudeFloor = 1e-8;
inline constexpr std::size_t kDefaultWindow = 40;

/// One coin branch of an evolved state, normalized so that the amplitude at
/// its peak site is real and positive. The removed phase is kept in raw_phase:
/// the original branch equals sqrt(prob) * raw_phase * state.
struct ConditionalState {
    int branch = 0;
    LatticeState state;
    double prob = 0.0;
    Complex raw_phase{1.0, 0.0};

    LatticeState raw_normalized() const { return raw_phase * state; }
};

/// Index of the largest |amplitude|. Magnitudes equal to within a relative
/// 1e-12 count as ties and resolve toward the lower index.
inline std::size_t peak_site(const LatticeState& s) {
    if (s.empty()) throw DimensionError("peak_site: empty state");
    std::size_t best = 0;
    double best_mag = std::abs(s[0]);
    for (std::size_t j = 1; j < s.size(); ++j) {
        const double m = std::abs(s[j]);
        if (m > best_mag * (1.0 + 1e-12)) {
            best = j;
            best_mag = m;
        }
    }
    return best;
}

inline ConditionalState condition_on(const CoinLatticeState& s, int b) {
    const LatticeState& comp = s.branch(b);
    const double p = comp.norm_sq();
    if (p < kDegenerateBranchProb)
        throw DegenerateBranchError("coin-" + std::to_string(b) + " branch carries probability " + num(p) +
                                    "; the coin is not entangled with the lattice");
    ConditionalState c;
    c.branch = b;
    c.prob = p;
    LatticeState unit = comp.normalized();
    const Complex at_peak = unit[peak_site(unit)];
    c.raw_phase = at_peak / std::abs(at_peak);
    c.state = std::conj(c.raw_phase) * std::move(unit);
    return c;
}

/// Projects the coin onto |0> and |1> and traces it out.
inline std::pair<ConditionalState, ConditionalState> extract_conditional(const CoinLatticeState& s) {
    const double n2 = s.comp0.norm_sq() + s.comp1.norm_sq();
    if (std::abs(n2 - 1.0) > 1e-8)
        throw DimensionError("extract_conditional: state norm^2 is " + num(n2) + ", expected 1");
    return {condition_on(s, 0), condition_on(s, 1)};
}

/// sqrt(j+1) C_{j+1} / C_j, the coherent amplitude implied by neighbouring
/// Fock coefficients. Exact for a coherent state at every site.
inline Complex local_alpha(const LatticeState& s, std::size_t j, double floor = kReliableAmplitudeFloor) {
    if (j + 1 >= s.size())
        throw IndexError("local_alpha: site " + std::to_string(j) + " has no right neighbour in a lattice of " +
                         std::to_string(s.size()));
    if (!(std::abs(s[j]) > floor))
        throw UnreliableSiteError("local_alpha: |C_" + std::to_string(j) + "| = " + num(std::abs(s[j])) +
                                  " is below the reliability floor");
    return std::sqrt(static_cast<double>(j) + 1.0) * s[j + 1] / s[j];
}

struct AmplitudeEstimate {
    std::size_t peak_site = 0;
    std::vector<std::size_t> window;
    std::vector<Complex> local_alphas;
    Complex alpha_bar{};
};

/// Averages local_alpha over window_size consecutive sites centred on the
/// peak. Unreliable or out-of-range sites trim the window on their side only;
/// the centre never moves.
inline AmplitudeEstimate estimate_alpha_bar(const LatticeState& s, std::size_t window_size = kDefaultWindow,
                                            double floor = kReliableAmplitudeFloor) {
    if (window_size < 2) throw EstimationError("estimate_alpha_bar: window must hold at least 2 sites");
    AmplitudeEstimate est;
    est.peak_site = peak_site(s);

    const auto usable = [&](std::ptrdiff_t j) {
        return j >= 0 && static_cast<std::size_t>(j) + 1 < s.size() && std::abs(s[static_cast<std::size_t>(j)]) > floor;
    };

    const auto centre = static_cast<std::ptrdiff_t>(est.peak_site);
    const auto half = static_cast<std::ptrdiff_t>(window_size / 2);
    const std::ptrdiff_t nominal_lo = centre - half;
    const std::ptrdiff_t nominal_hi = nominal_lo + static_cast<std::ptrdiff_t>(window_size) - 1;

    std::ptrdiff_t lo = centre;
    std::ptrdiff_t hi = centre - 1;
    if (usable(centre)) {
        hi = centre;
        while (lo - 1 >= nominal_lo && usable(lo - 1)) --lo;
        while (hi + 1 <= nominal_hi && usable(hi + 1)) ++hi;
    }
    if (hi - lo + 1 < 2)
        throw EstimationError("estimate_alpha_bar: fewer than 2 reliable sites around peak " +
                              std::to_string(est.peak_site));

    Complex sum{};
    for (std::ptrdiff_t j = lo; j <= hi; ++j) {
        const auto site = static_cast<std::size_t>(j);
        const Complex a = local_alpha(s, site, floor);
        est.window.push_back(site);
        est.local_alphas.push_back(a);
        sum += a;
    }
    est.alpha_bar = sum / static_cast<double>(est.local_alphas.size());
    return est;
}

enum class PhaseLabel { Be1, Be2, Be3, Be4 };

inline const char* to_string(PhaseLabel l) {
    switch (l) {
        case PhaseLabel::Be1: return "Be1";
        case PhaseLabel::Be2: return "Be2";
        case PhaseLabel::Be3: return "Be3";
        case PhaseLabel::Be4: return "Be4";
    }
    return "?";
}

inline PhaseLabel parse_phase_label(const std::string& s) {
    for (auto l : {PhaseLabel::Be1, PhaseLabel::Be2, PhaseLabel::Be3, PhaseLabel::Be4})
        if (s == to_string(l)) return l;
    throw ConfigError("unknown phase class '" + s + "'");
}

/// Closed form g/sqrt(2) (|0>|psi0> + e^{i phi} |1>|psi1>) with real,
/// peak-positive psi's. phi and global are quarter-turn representatives;
/// relative_phase is the unrounded arg(raw1 / raw0).
struct PhaseClass {
    PhaseLabel label = PhaseLabel::Be4;
    double phi = 0.0;
    Complex global{1.0, 0.0};
    double relative_phase = 0.0;
};

inline constexpr double kPhaseTolerance = 1e-6;

namespace detail {

struct BranchPhase {
    bool real = true;
    bool imaginary = true;
    int sign = 0;  // sign of the peak coefficient's real (if real) or imaginary part
};

inline BranchPhase branch_phase(const ConditionalState& c) {
    const LatticeState raw = c.raw_normalized();
    const std::size_t pk = peak_site(raw);
    const double cutoff = kPhaseTolerance * std::abs(raw[pk]);
    BranchPhase bp;
    for (std::size_t j = 0; j < raw.size(); ++j) {
        const double m = std::abs(raw[j]);
        if (m <= cutoff) continue;
        if (std::abs(raw[j].imag()) >= kPhaseTolerance * m) bp.real = false;
        if (std::abs(raw[j].real()) >= kPhaseTolerance * m) bp.imaginary = false;
    }
    if (bp.real) bp.sign = raw[pk].real() > 0 ? 1 : -1;
    else if (bp.imaginary) bp.sign = raw[pk].imag() > 0 ? 1 : -1;
    return bp;
}

inline double quarter_turn(double angle) {
    const double q = std::numbers::pi / 2;
    double r = std::round(angle / q) * q;
    if (r <= -std::numbers::pi + 1e-12) r += 2 * std::numbers::pi;
    return r + 0.0;
}

inline Complex nearest_unit_quarter(Complex z) {
    const double a = quarter_turn(std::arg(z));
    return {std::round(std::cos(a)), std::round(std::sin(a))};
}

}  // namespace detail

inline PhaseClass classify_phase(const ConditionalState& c0, const ConditionalState& c1) {
    const auto p0 = detail::branch_phase(c0);
    const auto p1 = detail::branch_phase(c1);
    PhaseClass pc;
    if (p0.real && p1.real && p0.sign > 0 && p1.sign > 0) pc.label = PhaseLabel::Be1;
    else if (p0.real && p1.real && p0.sign < 0 && p1.sign < 0) pc.label = PhaseLabel::Be2;
    else if (p0.imaginary && p1.imaginary && p0.sign == -p1.sign) pc.label = PhaseLabel::Be3;
    else pc.label = PhaseLabel::Be4;

    pc.relative_phase = std::arg(c1.raw_phase / c0.raw_phase);
    pc.phi = detail::quarter_turn(pc.relative_phase);
    pc.global = detail::nearest_unit_quarter(c0.raw_phase);
    return pc;
}

/// Relative phases admitted for the target state.
inline constexpr std::array<double, 4> kTargetPhases{0.0, std::numbers::pi / 2, std::numbers::pi, -std::numbers::pi / 2};

/// Coherent target for comparisons; the truncation tail is not policed here.
inline LatticeState target_state(Complex alpha, std::size_t n) {
    return coherent_state(alpha, n, std::numeric_limits<double>::infinity());
}

/// Fidelity of the generated state against (|0>|a1> + e^{i phi}|1>|a2>)/sqrt(2),
/// each branch weighted 1/2.
inline double fidelity_he(const ConditionalState& c0, const ConditionalState& c1, Complex a1, Complex a2, double phi) {
    const std::size_t n = c0.state.size();
    const LatticeState t1 = target_state(a1, n);
    const LatticeState t2 = target_state(a2, n);
    const Complex o0 = inner_product(t1, c0.raw_normalized());
    const Complex o1 = inner_product(t2, c1.raw_normalized());
    return 0.25 * std::norm(o0 + std::polar(1.0, -phi) * o1);
}

struct FidelityResult {
    double fidelity = 0.0;
    double phi = 0.0;
};

/// fidelity_he maximized over the admitted target phases.
inline FidelityResult best_fidelity(const ConditionalState& c0, const ConditionalState& c1, Complex a1, Complex a2) {
    const std::size_t n = c0.state.size();
    const LatticeState t1 = target_state(a1, n);
    const LatticeState t2 = target_state(a2, n);
    const Complex o0 = inner_product(t1, c0.raw_normalized());
    const Complex o1 = inner_product(t2, c1.raw_normalized());
    FidelityResult best{-1.0, 0.0};
    for (double phi : kTargetPhases) {
        const double f = 0.25 * std::norm(o0 + std::polar(1.0, -phi) * o1);
        if (f > best.fidelity + 1e-15) best = {f, phi};
    }
    return best;
}

}  // namespace hewalk
