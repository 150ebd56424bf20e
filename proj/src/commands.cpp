#include "swimmer/commands.hpp"

#include "swimmer/analytic.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace swimmer::cli {

namespace {

using nlohmann::json;

std::ofstream open_output(const std::filesystem::path& path)
{
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path)
{
    out.flush();
    if (!out) {
        throw std::runtime_error("failed while writing " + path.string());
    }
}

void write_json(const std::filesystem::path& path, const json& j)
{
    auto out = open_output(path);
    out << j.dump(2) << '\n';
    finish(out, path);
}

void write_row(std::ostream& out, double first, std::span<const double> rest)
{
    out << format_number(first);
    for (double v : rest) {
        out << ',' << format_number(v);
    }
    out << '\n';
}

json params_json(const RunConfig& c)
{
    return json{{"a_tilde", c.params.a_tilde}, {"a1", c.params.a1},
                {"Lambda", c.params.Lambda},   {"L", c.params.L},
                {"k_tilde", c.params.k_tilde}, {"mu", c.params.mu},
                {"n_springs", c.params.n_springs}, {"eps_tilde", c.eps_tilde},
                {"omega", c.omega}};
}

json rate_json(const RateEstimate& r)
{
    return json{{"slope", r.slope}, {"intercept", r.intercept}, {"r_squared", r.r_squared},
                {"points", r.points}};
}

json report_json(const RateReport& r)
{
    json j = rate_json(r.full);
    if (r.without_coarsest) {
        j["without_coarsest"] = rate_json(*r.without_coarsest);
    }
    j["reported_slope"] = r.best().slope;
    return j;
}

ErrorRecord max_record(ErrorRecord a, const ErrorRecord& b)
{
    a.l2_error = std::max(a.l2_error, b.l2_error);
    a.h1_error = std::max(a.h1_error, b.h1_error);
    return a;
}

ElongationField periodic_field(const UniformGrid& grid, const std::vector<Complex>& amps, double omega,
                               double t)
{
    std::vector<double> v(static_cast<std::size_t>(grid.n) + 1, 0.0);
    const Complex phase = std::polar(1.0, omega * t);
    for (std::size_t i = 0; i < static_cast<std::size_t>(grid.n); ++i) {
        v[i] = (amps[i] * phase).real();
    }
    return ElongationField(grid, std::move(v));
}

}  // namespace

ErrorRecord convergence_point(const RunConfig& config, MassVariant scheme, int n)
{
    SwimmerParams p = config.params;
    p.n_springs = n;
    const Forcing forcing = config.forcing();
    const auto exact = build_continuous_mode(p, forcing);
    const double period = forcing.period();
    const AssembledSystem system(p, forcing, scheme);
    constexpr int kErrorSamples = 16;

    if (config.method == "periodic") {
        std::vector<Complex> amps;
        if (scheme == MassVariant::PaperLumped) {
            amps = build_discrete_mode(p, forcing).amplitudes();
        } else {
            amps = periodic_response(system);
        }
        if (!config.error_max_over_period) {
            return error_vs_analytic(periodic_field(system.grid(), amps, forcing.omega(), period),
                                     exact, period);
        }
        ErrorRecord worst{n, p.spacing(), 0.0, 0.0};
        for (int k = 0; k < kErrorSamples; ++k) {
            const double t = period * k / kErrorSamples;
            worst = max_record(
                worst, error_vs_analytic(periodic_field(system.grid(), amps, forcing.omega(), t), exact, t));
        }
        return worst;
    }

    const double dt = period / config.steps_per_period;
    const CrankNicolsonStepper stepper(system, dt);
    const ElongationField start = interpolate(exact, system.grid(), 0.0);
    std::vector<double> state(start.unknowns().begin(), start.unknowns().end());
    const long steps = config.steps_per_period;
    long done = 0;
    for (int k = 0; k < config.burn_in_periods; ++k) {
        integrate(stepper, state, static_cast<double>(done) * dt, steps);
        done += steps;
    }
    if (!config.error_max_over_period) {
        integrate(stepper, state, static_cast<double>(done) * dt, steps);
        done += steps;
        const double t = static_cast<double>(done) * dt;
        return error_vs_analytic(ElongationField::from_unknowns(system.grid(), state), exact, t);
    }
    ErrorRecord worst{n, p.spacing(), 0.0, 0.0};
    const long chunk = steps / kErrorSamples;
    for (int k = 0; k < kErrorSamples; ++k) {
        integrate(stepper, state, static_cast<double>(done) * dt, chunk);
        done += chunk;
        const double t = static_cast<double>(done) * dt;
        worst = max_record(worst, error_vs_analytic(ElongationField::from_unknowns(system.grid(), state),
                                                    exact, t));
    }
    return worst;
}

ConvergenceStudy run_convergence(const RunConfig& config)
{
    config.validate();
    ConvergenceStudy study;
    study.scheme = parse_mass_variant(config.scheme);
    study.records.resize(config.n_list.size());

    std::vector<std::string> failures(config.n_list.size());
    {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < config.n_list.size(); ++i) {
            pool.emplace_back([&, i] {
                try {
                    study.records[i] = convergence_point(config, study.scheme, config.n_list[i]);
                } catch (const std::exception& e) {
                    failures[i] = e.what();
                }
            });
        }
    }
    for (std::size_t i = 0; i < failures.size(); ++i) {
        if (!failures[i].empty()) {
            throw std::runtime_error("convergence run failed at N=" + std::to_string(config.n_list[i])
                                     + ": " + failures[i]);
        }
    }
    study.l2 = fit_rate_report(study.records, ErrorNorm::L2);
    study.h1 = fit_rate_report(study.records, ErrorNorm::H1);
    return study;
}

std::vector<double> sweep_values(const RunConfig& config)
{
    std::vector<double> v(static_cast<std::size_t>(config.points));
    if (config.points == 1) {
        v[0] = config.from;
        return v;
    }
    for (int i = 0; i < config.points; ++i) {
        const double s = static_cast<double>(i) / (config.points - 1);
        if (config.log_spacing) {
            v[static_cast<std::size_t>(i)] =
                std::pow(10.0, std::log10(config.from) + s * (std::log10(config.to) - std::log10(config.from)));
        } else {
            v[static_cast<std::size_t>(i)] = config.from + s * (config.to - config.from);
        }
    }
    v.front() = config.from;
    v.back() = config.to;
    return v;
}

void cmd_simulate(const RunConfig& config, const std::filesystem::path& out_dir)
{
    config.validate();
    const auto& p = config.params;
    const Forcing forcing = config.forcing();
    const UniformGrid grid(p.n_springs, p.Lambda);
    const double period = forcing.period();

    std::vector<double> times;
    std::vector<std::vector<double>> states;
    std::vector<double> x1;

    if (config.mode == "analytic") {
        const auto mode = build_discrete_mode(p, forcing);
        const auto head = head_trajectory(p, forcing, mode, config.samples);
        for (int m = 0; m < config.samples; ++m) {
            times.push_back(head.times[static_cast<std::size_t>(m)]);
            states.push_back(eval_discrete_nodes(mode, times.back()));
            x1.push_back(head.x1[static_cast<std::size_t>(m)]);
        }
    } else {
        if (config.steps_per_period % config.samples != 0) {
            throw std::invalid_argument("steps_per_period must be a multiple of samples");
        }
        const AssembledSystem system(p, forcing, parse_mass_variant(config.scheme));
        const double t_end = config.t_end > 0.0 ? config.t_end : period;
        const auto traj = solve_transient(system, ElongationField::zero(grid), t_end,
                                          period / config.steps_per_period, period / config.samples);
        double prev_v = 0.0;
        for (std::size_t k = 0; k < traj.times.size(); ++k) {
            times.push_back(traj.times[k]);
            states.push_back(traj.states[k].values);
            const double v = instantaneous_v1(p, forcing, states.back(), times.back());
            x1.push_back(k == 0 ? 0.0 : x1.back() + 0.5 * (prev_v + v) * (times[k] - times[k - 1]));
            prev_v = v;
        }
    }

    const auto elong_path = out_dir / kElongationsCsv;
    auto elong = open_output(elong_path);
    elong << 't';
    for (int j = 1; j <= grid.n + 1; ++j) {
        elong << ',' << format_number(grid.node(j));
    }
    elong << '\n';
    for (std::size_t k = 0; k < times.size(); ++k) {
        write_row(elong, times[k], states[k]);
    }
    finish(elong, elong_path);

    const auto pos_path = out_dir / kPositionsCsv;
    auto pos = open_output(pos_path);
    pos << 't';
    for (int j = 1; j <= grid.n + 2; ++j) {
        pos << ",x_" << j;
    }
    pos << '\n';
    for (std::size_t k = 0; k < times.size(); ++k) {
        write_row(pos, times[k], sphere_positions(p, forcing, states[k], times[k], x1[k]));
    }
    finish(pos, pos_path);
}

void cmd_converge(const RunConfig& config, const std::filesystem::path& out_dir)
{
    const auto study = run_convergence(config);

    const auto csv_path = out_dir / kConvergenceCsv;
    auto csv = open_output(csv_path);
    csv << "n,h,l2_error,h1_error\n";
    for (const auto& r : study.records) {
        csv << r.n << ',' << format_number(r.h) << ',' << format_number(r.l2_error) << ','
            << format_number(r.h1_error) << '\n';
    }
    finish(csv, csv_path);

    json j;
    j["scheme"] = std::string(to_string(study.scheme));
    j["method"] = config.method;
    if (config.method == "transient") {
        j["steps_per_period"] = config.steps_per_period;
        j["burn_in_periods"] = config.burn_in_periods;
    }
    j["error_time"] = config.error_max_over_period ? "max_over_period" : "end_of_period";
    j["n_list"] = config.n_list;
    j["parameters"] = params_json(config);
    j["l2"] = report_json(study.l2);
    j["h1"] = report_json(study.h1);
    write_json(out_dir / kConvergenceJson, j);
}

void cmd_sweep(const RunConfig& config, const std::filesystem::path& out_dir)
{
    config.validate();
    const auto values = sweep_values(config);
    const SweepAxis axis = parse_sweep_axis(config.axis);
    const auto table = sweep(config.params, config.forcing(), axis, values, {config.m_quad, 0});

    const auto csv_path = out_dir / kSweepCsv;
    auto csv = open_output(csv_path);
    csv << "parameter,displacement_m\n";
    for (const auto& pt : table.points) {
        csv << format_number(pt.value) << ',' << format_number(pt.displacement) << '\n';
    }
    finish(csv, csv_path);

    json j;
    j["axis"] = std::string(to_string(axis));
    j["n"] = table.n;
    j["m_quad"] = table.m_quad;
    j["parameters"] = params_json(config);
    json pts = json::array();
    std::vector<double> ok_x;
    std::vector<double> ok_y;
    for (const auto& pt : table.points) {
        json e{{"parameter", pt.value}};
        if (pt.error) {
            e["displacement_m"] = nullptr;
            e["error"] = *pt.error;
        } else {
            e["displacement_m"] = pt.displacement;
            ok_x.push_back(pt.value);
            ok_y.push_back(pt.displacement);
        }
        pts.push_back(e);
    }
    j["points"] = pts;
    if (!ok_x.empty()) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < ok_y.size(); ++i) {
            if (std::abs(ok_y[i]) > std::abs(ok_y[best])) {
                best = i;
            }
        }
        j["argmax_abs_displacement"] = ok_x[best];
        j["max_abs_displacement_m"] = ok_y[best];
    }
    if (axis == SweepAxis::EpsTilde && ok_x.size() >= 2 && ok_x.front() > 0.0) {
        j["log_log_slope"] = log_log_slope(ok_x, ok_y);
    }
    write_json(out_dir / kSweepJson, j);
}

void cmd_optimize(const RunConfig& config, const std::filesystem::path& out_dir)
{
    config.validate();
    const auto opt = optimize_k_omega(config.params, config.forcing(), config.bracket_lo,
                                      config.bracket_hi, 1e-4, config.m_quad);
    json j{{"k_omega_opt", opt.k_omega_opt},
           {"k_tilde_equiv", opt.k_tilde_equiv},
           {"displacement_m", opt.displacement},
           {"iterations", opt.iterations},
           {"bracket", {config.bracket_lo, config.bracket_hi}},
           {"parameters", params_json(config)}};
    write_json(out_dir / kOptimumJson, j);
}

void cmd_analytic(const RunConfig& config, const std::filesystem::path& out_dir)
{
    config.validate();
    const Forcing forcing = config.forcing();
    const auto mode = build_discrete_mode(config.params, forcing);
    const int n = config.params.n_springs;
    const double t_end = config.t_end > 0.0 ? config.t_end : forcing.period();
    const double dt = forcing.period() / config.samples;
    const long rows = std::lround(std::floor(t_end / dt + 1e-9));

    const auto path = out_dir / kAnalyticCsv;
    auto out = open_output(path);
    out << 't';
    for (int j = 1; j <= n + 1; ++j) {
        out << ",y_" << j;
    }
    out << '\n';
    for (long k = 0; k < rows; ++k) {
        const double t = static_cast<double>(k) * dt;
        write_row(out, t, eval_discrete_nodes(mode, t));
    }
    finish(out, path);
}

}  // namespace swimmer::cli
