// Command-line front end: simulate | converge | sweep | optimize | analytic.

#include "swimmer/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

struct Overrides {
    std::optional<std::string> scheme;
    std::optional<std::vector<int>> n_list;
    std::optional<std::string> method;
    std::optional<int> steps_per_period;
    std::optional<std::string> axis;
    std::optional<double> from;
    std::optional<double> to;
    std::optional<int> points;
    bool log = false;
    bool linear = false;
    std::vector<double> bracket;
    std::optional<int> m_quad;
    std::optional<int> samples;
    std::optional<std::string> mode;
    std::optional<double> t_end;
    std::optional<double> k_omega;
    std::optional<double> eps_tilde;
    std::optional<int> n_springs;
};

std::string one_line(std::string s)
{
    for (char& c : s) {
        if (c == '\n' || c == '\r') {
            c = ' ';
        }
    }
    return s;
}

void apply(const Overrides& o, swimmer::RunConfig& c)
{
    if (o.scheme) c.scheme = *o.scheme;
    if (o.n_list) c.n_list = *o.n_list;
    if (o.method) c.method = *o.method;
    if (o.steps_per_period) c.steps_per_period = *o.steps_per_period;
    if (o.axis) c.axis = *o.axis;
    if (o.from) c.from = *o.from;
    if (o.to) c.to = *o.to;
    if (o.points) c.points = *o.points;
    if (o.log) c.log_spacing = true;
    if (o.linear) c.log_spacing = false;
    if (o.bracket.size() == 2) {
        c.bracket_lo = o.bracket[0];
        c.bracket_hi = o.bracket[1];
    }
    if (o.m_quad) c.m_quad = *o.m_quad;
    if (o.samples) c.samples = *o.samples;
    if (o.mode) c.mode = *o.mode;
    if (o.t_end) c.t_end = *o.t_end;
    if (o.eps_tilde) c.eps_tilde = *o.eps_tilde;
    if (o.n_springs) c.params.n_springs = *o.n_springs;
    if (o.k_omega) c.params = swimmer::with_k_omega(c.params, c.forcing(), *o.k_omega);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Elastic-tail low-Reynolds-number swimmer: simulation, convergence and stroke optimization"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_dir = ".";
    unsigned seed = 0;
    app.add_option("--config", config_path, "JSON parameter file");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "reserved; every computation is deterministic");

    Overrides o;
    auto* simulate = app.add_subcommand("simulate", "elongation and sphere-position time series");
    simulate->add_option("--mode", o.mode, "analytic | transient");
    simulate->add_option("--scheme", o.scheme, "mass variant for transient runs");
    simulate->add_option("--samples", o.samples, "time samples per period");
    simulate->add_option("--t-end", o.t_end, "transient horizon [s]");
    simulate->add_option("--steps-per-period", o.steps_per_period);

    auto* converge = app.add_subcommand("converge", "error vs N against the continuous solution");
    converge->add_option("--scheme", o.scheme, "nspring | lumped | galerkin");
    converge->add_option("--n-list", o.n_list)->delimiter(',');
    converge->add_option("--method", o.method, "periodic | transient");
    converge->add_option("--steps-per-period", o.steps_per_period);

    auto* sweep = app.add_subcommand("sweep", "displacement per stroke along one parameter");
    sweep->add_option("--axis", o.axis, "k_omega | eps_tilde");
    sweep->add_option("--from", o.from);
    sweep->add_option("--to", o.to);
    sweep->add_option("--points", o.points);
    sweep->add_flag("--log", o.log, "log-spaced values");
    sweep->add_flag("--linear", o.linear, "equispaced values");
    sweep->add_option("--m-quad", o.m_quad);

    auto* optimize = app.add_subcommand("optimize", "golden-section search for the optimal K_omega");
    optimize->add_option("--bracket", o.bracket)->expected(2);
    optimize->add_option("--m-quad", o.m_quad);

    auto* analytic = app.add_subcommand("analytic", "closed-form periodic node values");
    analytic->add_option("--samples", o.samples, "time samples per period");
    analytic->add_option("--t-end", o.t_end);

    for (auto* sub : {simulate, converge, sweep, optimize, analytic}) {
        sub->add_option("--eps-tilde", o.eps_tilde);
        sub->add_option("--n-springs", o.n_springs);
    }
    for (auto* sub : {simulate, sweep, analytic}) {
        sub->add_option("--k-omega", o.k_omega, "sets k_tilde so that K/omega matches");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        swimmer::RunConfig config = config_path.empty() ? swimmer::RunConfig{}
                                                        : swimmer::load_config(config_path);
        apply(o, config);
        config.validate();

        namespace cli = swimmer::cli;
        if (*simulate) {
            cli::cmd_simulate(config, out_dir);
        } else if (*converge) {
            cli::cmd_converge(config, out_dir);
        } else if (*sweep) {
            cli::cmd_sweep(config, out_dir);
        } else if (*optimize) {
            cli::cmd_optimize(config, out_dir);
        } else if (*analytic) {
            cli::cmd_analytic(config, out_dir);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: invalid_config: " << one_line(e.what()) << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: runtime: " << one_line(e.what()) << '\n';
        return 1;
    }
    return 0;
}
