#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "hewalk/analysis.hpp"
#include "hewalk/coherent.hpp"
#include "hewalk/displacement.hpp"
#include "hewalk/walk.hpp"

namespace hewalk {

/// Reported sites use 1-based lattice labels; internal indices start at 0.
inline std::size_t to_reported_site(std::size_t internal) { return internal + 1; }

struct StateRow {
    std::size_t site = 0;  // reported (1-based)
    Complex amp0{};
    Complex amp1{};
    double prob = 0.0;

    bool operator==(const StateRow&) const = default;
};

struct RunRecord {
    WalkConfig config;
    Complex alpha_bar_1{};
    Complex alpha_bar_2{};
    std::pair<std::size_t, std::size_t> peak_sites{};  // reported (1-based)
    std::pair<double, double> prob_pair{};
    double fidelity = 0.0;
    double phi = 0.0;  // target relative phase that maximizes the fidelity
    PhaseLabel phase_class = PhaseLabel::Be4;
    double phase_phi = 0.0;
    Complex global_phase{1.0, 0.0};
    std::optional<Complex> alpha_sym;
    std::optional<std::string> error;
    std::optional<std::vector<StateRow>> distributions;

    bool operator==(const RunRecord&) const = default;
};

struct GenerateOptions {
    bool symmetrize = false;
    bool keep_states = false;
};

/// Everything one run computes, for callers that need more than the record.
struct RunArtifacts {
    CoinLatticeState final_state;
    ConditionalState branch0;
    ConditionalState branch1;
    AmplitudeEstimate est1;
    AmplitudeEstimate est2;
    PhaseClass phase;
    FidelityResult fid;
    std::optional<SymmetrizedPair> sym;
};

inline std::vector<StateRow> state_rows(const CoinLatticeState& s) {
    std::vector<StateRow> rows(s.n_sites());
    for (std::size_t j = 0; j < s.n_sites(); ++j)
        rows[j] = {to_reported_site(j), s.comp0[j], s.comp1[j], probability_at(s, j)};
    return rows;
}

inline RunArtifacts run_pipeline(const WalkConfig& cfg, bool symmetrize_branches = false) {
    cfg.validate();
    RunArtifacts a;
    a.final_state = evolve(make_initial(cfg), StepUnitary::from_config(cfg), cfg.steps);
    std::tie(a.branch0, a.branch1) = extract_conditional(a.final_state);
    a.est1 = estimate_alpha_bar(a.branch0.state, cfg.window);
    a.est2 = estimate_alpha_bar(a.branch1.state, cfg.window);
    a.phase = classify_phase(a.branch0, a.branch1);
    a.fid = best_fidelity(a.branch0, a.branch1, a.est1.alpha_bar, a.est2.alpha_bar);
    if (symmetrize_branches) a.sym = symmetrize(a.branch0, a.branch1, a.est1, a.est2, cfg.window);
    return a;
}

inline RunRecord make_record(const WalkConfig& cfg, const RunArtifacts& a, const GenerateOptions& opt) {
    RunRecord r;
    r.config = cfg;
    r.alpha_bar_1 = a.est1.alpha_bar;
    r.alpha_bar_2 = a.est2.alpha_bar;
    r.peak_sites = {to_reported_site(a.est1.peak_site), to_reported_site(a.est2.peak_site)};
    r.prob_pair = {a.branch0.prob, a.branch1.prob};
    r.fidelity = a.fid.fidelity;
    r.phi = a.fid.phi;
    r.phase_class = a.phase.label;
    r.phase_phi = a.phase.phi;
    r.global_phase = a.phase.global;
    if (a.sym) r.alpha_sym = a.sym->alpha_sym;
    if (opt.keep_states) r.distributions = state_rows(a.final_state);
    return r;
}

/// make_initial -> evolve -> extract -> estimate x2 -> classify -> fidelity
/// [-> symmetrize]. Module errors come back with the config attached.
inline RunRecord cmd_generate(const WalkConfig& cfg, const GenerateOptions& opt = {}) {
    try {
        return make_record(cfg, run_pipeline(cfg, opt.symmetrize), opt);
    } catch (const Error& e) {
        throw Error(std::string(e.what()) + " [n_sites=" + std::to_string(cfg.n_sites) +
                    ", alpha0=" + std::to_string(cfg.alpha0) + ", delta=" + std::to_string(cfg.delta) +
                    ", theta1=" + std::to_string(cfg.theta1) + ", theta2=" + std::to_string(cfg.theta2) +
                    ", steps=" + std::to_string(cfg.steps) + "]");
    }
}

enum class SweepAxis { alpha0, steps };

inline SweepAxis parse_sweep_axis(const std::string& s) {
    if (s == "alpha0") return SweepAxis::alpha0;
    if (s == "steps") return SweepAxis::steps;
    throw ConfigError("unknown sweep axis '" + s + "' (expected alpha0 or steps)");
}

inline WalkConfig sweep_point(WalkConfig cfg, SweepAxis axis, double value) {
    if (axis == SweepAxis::alpha0) {
        cfg.alpha0 = value;
    } else {
        if (value < 0 || value != static_cast<double>(static_cast<std::size_t>(value)))
            throw ConfigError("steps must be a non-negative integer, got " + num(value));
        cfg.steps = static_cast<std::size_t>(value);
    }
    return cfg;
}

/// Worker count from HEWALK_WORKERS, else the hardware concurrency.
inline std::size_t default_workers() {
    if (const char* env = std::getenv("HEWALK_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Independent runs, one per value, returned in input order. A failing point
/// keeps its config and carries the error; the rest of the sweep continues.
inline std::vector<RunRecord> cmd_sweep(const WalkConfig& base, SweepAxis axis, const std::vector<double>& values,
                                        std::size_t workers = 0, const GenerateOptions& opt = {}) {
    if (values.empty()) throw ConfigError("sweep needs at least one value");
    if (workers == 0) workers = default_workers();
    workers = std::min(workers, values.size());

    std::vector<RunRecord> out(values.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < values.size(); i = next++) {
            RunRecord& rec = out[i];
            rec.config = base;
            try {
                const WalkConfig cfg = sweep_point(base, axis, values[i]);
                rec.config = cfg;
                rec = cmd_generate(cfg, opt);
            } catch (const std::exception& e) {
                rec.error = e.what();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
        work();
    }
    return out;
}

}  // namespace hewalk
