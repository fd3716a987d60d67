#pragma once

#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "hewalk/io.hpp"
#include "hewalk/stats.hpp"

namespace hewalk {

struct FigurePanel {
    std::string panel;
    std::string description;
    CsvTable table;
    Json meta = Json::object();
};

namespace detail {

inline CsvTable alpha_table(const AmplitudeEstimate& e1, const AmplitudeEstimate& e2) {
    CsvTable t{{"branch", "site", "alpha_re", "alpha_im"}, {}};
    for (int b = 0; b < 2; ++b) {
        const AmplitudeEstimate& e = b == 0 ? e1 : e2;
        for (std::size_t i = 0; i < e.window.size(); ++i)
            t.add({static_cast<double>(b), static_cast<double>(to_reported_site(e.window[i])), e.local_alphas[i].real(),
                   e.local_alphas[i].imag()});
    }
    return t;
}

inline CsvTable comparison_table(const RunArtifacts& a) {
    const std::size_t n = a.final_state.n_sites();
    const LatticeState t1 = target_state(a.est1.alpha_bar, n);
    const LatticeState t2 = target_state(a.est2.alpha_bar, n);
    CsvTable t{{"site", "psi0_re", "psi0_im", "target0_re", "target0_im", "psi1_re", "psi1_im", "target1_re", "target1_im"},
               {}};
    for (std::size_t j = 0; j < n; ++j) {
        const Complex p0 = a.branch0.state[j], p1 = a.branch1.state[j];
        t.add({static_cast<double>(to_reported_site(j)), p0.real(), p0.imag(), t1[j].real(), t1[j].imag(), p1.real(),
               p1.imag(), t2[j].real(), t2[j].imag()});
    }
    return t;
}

inline Json run_summary(const RunArtifacts& a) {
    return Json{{"alpha_bar_1", to_json(a.est1.alpha_bar)},
                {"alpha_bar_2", to_json(a.est2.alpha_bar)},
                {"peak_sites", Json::array({to_reported_site(a.est1.peak_site), to_reported_site(a.est2.peak_site)})},
                {"fidelity", a.fid.fidelity},
                {"phase_class", to_string(a.phase.label)}};
}

inline WalkConfig with_steps(WalkConfig c, std::size_t t) {
    c.steps = t;
    return c;
}

inline CsvTable centred_distribution(const Distribution& q, const Distribution* classical) {
    CsvTable t{{"displacement", "prob"}, {}};
    if (classical) t.columns.push_back("prob_classical");
    for (std::size_t j = 0; j < q.probs.size(); ++j) {
        std::vector<double> row{static_cast<double>(j) - static_cast<double>(q.origin), q.probs[j]};
        if (classical) row.push_back(classical->probs[j]);
        t.add(std::move(row));
    }
    return t;
}

inline FigurePanel state_panel(std::string name, const WalkConfig& cfg, const std::string& what) {
    const RunArtifacts a = run_pipeline(cfg);
    return {std::move(name), what, state_table(a.final_state), Json{{"config", to_json(cfg)}, {"run", run_summary(a)}}};
}

}  // namespace detail

inline const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids{"fig2", "fig3", "fig4", "fig5", "fig5d", "fig6", "fig7"};
    return ids;
}

inline constexpr std::size_t kFig5DistributionSteps = 100;
inline constexpr std::size_t kFig5VarianceSteps = 200;

/// Builds the panels of one figure. base supplies the coin-lattice
/// parameters of the generation figures; step counts are fixed per figure.
inline std::vector<FigurePanel> build_figure(const std::string& id, const WalkConfig& base, std::size_t workers = 0) {
    using detail::with_steps;
    std::vector<FigurePanel> panels;

    if (id == "fig2") {
        panels.push_back(detail::state_panel("a", with_steps(base, 0), "initial coin-lattice state"));
        for (auto [t, state_name, alpha_name] : {std::tuple{20, "b", "c"}, std::tuple{60, "d", "e"}}) {
            const WalkConfig cfg = with_steps(base, static_cast<std::size_t>(t));
            const RunArtifacts a = run_pipeline(cfg);
            const Json meta{{"config", to_json(cfg)}, {"run", detail::run_summary(a)}};
            panels.push_back({state_name, "state after " + std::to_string(t) + " steps", state_table(a.final_state), meta});
            panels.push_back({alpha_name, "local coherent amplitudes around the peaks after " + std::to_string(t) + " steps",
                              detail::alpha_table(a.est1, a.est2), meta});
        }
    } else if (id == "fig3") {
        for (auto [t, name] : {std::pair{20, "a"}, std::pair{60, "b"}}) {
            const WalkConfig cfg = with_steps(base, static_cast<std::size_t>(t));
            const RunArtifacts a = run_pipeline(cfg);
            panels.push_back({name, "generated conditional states against target coherent states",
                              detail::comparison_table(a), Json{{"config", to_json(cfg)}, {"run", detail::run_summary(a)}}});
        }
    } else if (id == "fig4") {
        std::vector<double> alphas;
        for (double a0 = 6.0; a0 <= 10.0 + 1e-9; a0 += 0.5) alphas.push_back(a0);
        const WalkConfig at20 = with_steps(base, 20);
        CsvTable ta{{"alpha0", "fidelity", "alpha_bar_1", "alpha_bar_2", "ok"}, {}};
        for (const auto& r : cmd_sweep(at20, SweepAxis::alpha0, alphas, workers)) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            ta.add({r.config.alpha0, r.error ? nan : r.fidelity, r.error ? nan : r.alpha_bar_1.real(),
                    r.error ? nan : r.alpha_bar_2.real(), r.error ? 0.0 : 1.0});
        }
        panels.push_back({"a", "fidelity against initial coherent amplitude at 20 steps", std::move(ta),
                          Json{{"config", to_json(at20)}, {"alpha0", alphas}}});

        std::vector<double> steps;
        for (int t = 4; t <= 60; t += 4) steps.push_back(t);
        CsvTable tb{{"alpha0", "steps", "fidelity", "ok"}, {}};
        for (double a0 : {8.0, 9.0, 10.0}) {
            WalkConfig cfg = base;
            cfg.alpha0 = a0;
            for (const auto& r : cmd_sweep(cfg, SweepAxis::steps, steps, workers))
                tb.add({a0, static_cast<double>(r.config.steps),
                        r.error ? std::numeric_limits<double>::quiet_NaN() : r.fidelity, r.error ? 0.0 : 1.0});
        }
        panels.push_back({"b", "fidelity against step count", std::move(tb),
                          Json{{"config", to_json(base)}, {"alpha0", {8.0, 9.0, 10.0}}, {"steps", steps}}});
    } else if (id == "fig5" || id == "fig5d") {
        const double theta = std::numbers::pi / 2;
        if (id == "fig5") {
            const std::size_t t = kFig5DistributionSteps;
            const std::size_t n = lattice_for_steps(t);
            const std::size_t origin = n / 2;
            const auto u = StepUnitary::dtqw(theta);
            const Complex r{1.0 / std::numbers::sqrt2, 0.0}, ir{0.0, 1.0 / std::numbers::sqrt2};
            const Json meta{{"theta", theta}, {"steps", t}, {"n_sites", n}, {"origin", origin}};
            auto run = [&](Complex c0, Complex c1) {
                return walk_distribution(evolve(CoinLatticeState::localized(n, origin, c0, c1), u, t), t, origin);
            };
            panels.push_back({"a", "DTQW distribution, coin |1> start", detail::centred_distribution(run(0.0, 1.0), nullptr), meta});
            panels.push_back({"b", "DTQW distribution, coin |0> start", detail::centred_distribution(run(1.0, 0.0), nullptr), meta});
            const Distribution classical = classical_distribution(t, n, origin);
            panels.push_back({"c", "DTQW distribution, (|0> + i|1>)/sqrt2 start, with classical walk",
                              detail::centred_distribution(run(r, ir), &classical), meta});
        }
        const VarianceSeries vs = variance_series(theta, Complex{1.0 / std::numbers::sqrt2, 0.0},
                                                  Complex{0.0, 1.0 / std::numbers::sqrt2}, kFig5VarianceSteps);
        CsvTable td{{"t", "sigma2_quantum", "sigma2_classical"}, {}};
        for (std::size_t i = 0; i < vs.t.size(); ++i) td.add({vs.t[i], vs.quantum[i], vs.classical[i]});
        panels.push_back({"d", "variance against step count, quantum and classical", std::move(td),
                          Json{{"theta", theta}, {"t_max", kFig5VarianceSteps}}});
    } else if (id == "fig6") {
        const char* names = "abcdef";
        int k = 0;
        for (double delta : {0.0, std::numbers::pi / 2}) {
            for (std::size_t t = 1; t <= 3; ++t) {
                WalkConfig cfg = with_steps(base, t);
                cfg.delta = delta;
                panels.push_back(detail::state_panel(std::string(1, names[k++]), cfg, "state after small step counts"));
            }
        }
    } else if (id == "fig7") {
        const std::vector<std::size_t> ts{4, 8, 12, 16, 24};
        std::vector<RunArtifacts> runs;
        for (std::size_t t : ts) runs.push_back(run_pipeline(with_steps(base, t)));
        const char* names = "abcdefghijklmno";
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const Json meta{{"config", to_json(with_steps(base, ts[i]))}, {"run", detail::run_summary(runs[i])}};
            panels.push_back({std::string(1, names[i]), "state after " + std::to_string(ts[i]) + " steps",
                              state_table(runs[i].final_state), meta});
            panels.push_back({std::string(1, names[5 + i]), "local coherent amplitudes",
                              detail::alpha_table(runs[i].est1, runs[i].est2), meta});
            panels.push_back({std::string(1, names[10 + i]), "generated against target states",
                              detail::comparison_table(runs[i]), meta});
        }
    } else {
        std::string known;
        for (const auto& f : figure_ids()) known += (known.empty() ? "" : ", ") + f;
        throw ConfigError("unknown figure id '" + id + "' (known: " + known + ")");
    }
    return panels;
}

/// Writes <id><panel>.csv for every panel and <id>_manifest.json listing them.
inline Json cmd_figure(const std::string& id, const std::filesystem::path& out_dir, const WalkConfig& base = {},
                       std::size_t workers = 0) {
    const auto panels = build_figure(id, base, workers);
    std::filesystem::create_directories(out_dir);
    Json manifest{{"figure", id}, {"panels", Json::array()}};
    for (const auto& p : panels) {
        const std::string file = id + p.panel + ".csv";
        p.table.write(out_dir / file);
        Json entry{{"panel", p.panel}, {"file", file}, {"description", p.description}, {"columns", p.table.columns}};
        for (const auto& [k, v] : p.meta.items()) entry[k] = v;
        manifest["panels"].push_back(std::move(entry));
    }
    write_text(out_dir / (id + "_manifest.json"), manifest.dump(2) + "\n");
    return manifest;
}

}  // namespace hewalk
