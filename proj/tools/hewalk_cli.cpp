#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hewalk/hewalk.hpp"

namespace {

struct ConfigFlags {
    std::string config_path;
    std::optional<std::size_t> n_sites, steps, window;
    std::optional<double> alpha0, leakage_tol;
    std::optional<std::string> delta, theta1, theta2, axis, boundary;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file; flags below override its fields");
        cmd->add_option("--n-sites", n_sites, "lattice size N");
        cmd->add_option("--alpha0", alpha0, "initial coherent amplitude");
        cmd->add_option("--delta", delta, "coin phase, number or multiple of pi (e.g. 0.5pi)");
        cmd->add_option("--theta1", theta1, "first rotation angle");
        cmd->add_option("--theta2", theta2, "second rotation angle");
        cmd->add_option("--axis", axis, "rotation axis: x, y or z");
        cmd->add_option("--steps", steps, "number of walk steps");
        cmd->add_option("--boundary", boundary, "cyclic or hard-wall");
        cmd->add_option("--window", window, "estimator window size");
        cmd->add_option("--leakage-tol", leakage_tol, "boundary leakage tolerance (inf disables the monitor)");
    }

    hewalk::WalkConfig resolve() const {
        hewalk::WalkConfig c;
        if (!config_path.empty()) c = hewalk::load_config(config_path, c);
        if (n_sites) c.n_sites = *n_sites;
        if (alpha0) c.alpha0 = *alpha0;
        if (delta) c.delta = hewalk::parse_angle(*delta);
        if (theta1) c.theta1 = hewalk::parse_angle(*theta1);
        if (theta2) c.theta2 = hewalk::parse_angle(*theta2);
        if (axis) c.axis = hewalk::parse_axis(*axis);
        if (steps) c.steps = *steps;
        if (boundary) c.boundary = hewalk::parse_boundary(*boundary);
        if (window) c.window = *window;
        if (leakage_tol) c.leakage_tol = *leakage_tol;
        c.validate();
        return c;
    }
};

void emit(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-") std::cout << text;
    else hewalk::write_text(out, text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hybrid-entangled state generation with split-step quantum walks"};
    app.require_subcommand(1);

    ConfigFlags gen_flags;
    bool symmetrize = false, with_states = false;
    std::string gen_out, gen_csv;
    auto* gen = app.add_subcommand("generate", "run one walk and write its RunRecord as JSON");
    gen_flags.attach(gen);
    gen->add_flag("--symmetrize", symmetrize, "displace both branches to +-alpha_sym");
    gen->add_flag("--with-states", with_states, "embed the final state in the record");
    gen->add_option("--out", gen_out, "output path for the record (default stdout)");
    gen->add_option("--csv", gen_csv, "also write the final state as CSV");

    ConfigFlags sweep_flags;
    std::string over, sweep_out;
    std::vector<double> values;
    std::size_t workers = 0;
    auto* sweep = app.add_subcommand("sweep", "independent runs over alpha0 or steps; writes a JSON array");
    sweep_flags.attach(sweep);
    sweep->add_option("--over", over, "alpha0 or steps")->required();
    sweep->add_option("--values", values, "values to sweep")->required()->delimiter(',');
    sweep->add_option("--workers", workers, "worker threads (default HEWALK_WORKERS or hardware concurrency)");
    sweep->add_option("--out", sweep_out, "output path (default stdout)");

    ConfigFlags fig_flags;
    std::string fig_id, out_dir = ".";
    auto* fig = app.add_subcommand("figure", "write the CSV panels and manifest of one figure");
    fig_flags.attach(fig);
    fig->add_option("id", fig_id, "fig2, fig3, fig4, fig5, fig5d, fig6 or fig7")->required();
    fig->add_option("--out-dir", out_dir, "directory for the CSV panels and manifest");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            const hewalk::WalkConfig cfg = gen_flags.resolve();
            const hewalk::RunRecord rec = hewalk::cmd_generate(cfg, {symmetrize, with_states});
            emit(hewalk::serialize(rec), gen_out);
            if (!gen_csv.empty()) {
                const auto s = hewalk::evolve(hewalk::make_initial(cfg), hewalk::StepUnitary::from_config(cfg), cfg.steps);
                hewalk::state_table(s).write(gen_csv);
            }
        } else if (*sweep) {
            const auto recs = hewalk::cmd_sweep(sweep_flags.resolve(), hewalk::parse_sweep_axis(over), values, workers);
            hewalk::Json arr = hewalk::Json::array();
            int failed = 0;
            for (const auto& r : recs) {
                arr.push_back(hewalk::to_json(r));
                if (r.error) {
                    ++failed;
                    std::cerr << "hewalk: sweep point failed: " << *r.error << "\n";
                }
            }
            emit(arr.dump(2) + "\n", sweep_out);
            if (failed == static_cast<int>(recs.size())) return 1;
        } else if (*fig) {
            const auto manifest = hewalk::cmd_figure(fig_id, out_dir, fig_flags.resolve(), workers);
            std::cout << "wrote " << manifest["panels"].size() << " panels for " << fig_id << " to " << out_dir << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "hewalk: error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
