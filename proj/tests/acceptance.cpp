// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include "swimmer/analytic.hpp"
#include "swimmer/commands.hpp"
#include "swimmer/displacement.hpp"
#include "swimmer/fem.hpp"
#include "swimmer/metrics.hpp"

#include "oracles.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace {

using namespace swimmer;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& body)
{
    const auto start = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (!o.pass) {
        ++failures;
    }
    std::printf("%s [%d] %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
}

bool within(double x, double lo, double hi) { return x >= lo && x <= hi; }

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

const std::vector<int> kNList{25, 50, 100, 200, 400, 800};

Outcome nspring_order()
{
    const auto t0 = Clock::now();
    RunConfig c;
    c.n_list = kNList;
    c.scheme = "nspring";
    c.method = "periodic";
    const auto s = cli::run_convergence(c);
    const double l2 = s.l2.best().slope;
    const double h1 = s.h1.best().slope;
    const double secs = seconds_since(t0);
    const bool ok = within(l2, 0.85, 1.15) && within(h1, 0.85, 1.15) && secs < 10.0;
    return {ok, fmt::format("L2 slope {:.4f}, H1 slope {:.4f}, runtime {:.2f} s", l2, h1, secs)};
}

Outcome second_order_schemes()
{
    const auto t0 = Clock::now();
    std::string detail;
    bool ok = true;
    for (const char* scheme : {"lumped", "galerkin"}) {
        RunConfig c;
        c.n_list = kNList;
        c.scheme = scheme;
        c.method = "transient";
        c.steps_per_period = 16384;
        const auto coarse = cli::run_convergence(c);
        c.steps_per_period = 32768;
        const auto fine = cli::run_convergence(c);
        double change = 0.0;
        for (std::size_t i = 0; i < kNList.size(); ++i) {
            const auto& a = coarse.records[i];
            const auto& b = fine.records[i];
            change = std::max({change, std::abs(a.l2_error - b.l2_error) / b.l2_error,
                               std::abs(a.h1_error - b.h1_error) / b.h1_error});
        }
        const double slope = fine.l2.best().slope;
        ok = ok && within(slope, 1.8, 2.2) && change < 0.01;
        detail += fmt::format("{} L2 slope {:.4f} (max dt-halving change {:.3f}%); ", scheme, slope, 100.0 * change);
    }
    const double secs = seconds_since(t0);
    ok = ok && secs < 60.0;
    return {ok, detail + fmt::format("runtime {:.2f} s", secs)};
}

const Forcing kForcing(0.7, 1.0, 3e-5);
double g_optimal_k_omega = 0.0;

Outcome optimal_k_omega()
{
    const auto t0 = Clock::now();
    const SwimmerParams p;  // N = 2000
    RunConfig c;
    c.from = 1e-2;
    c.to = 1e2;
    c.points = 100;
    c.log_spacing = true;
    const auto values = cli::sweep_values(c);
    const auto table = sweep(p, kForcing, SweepAxis::KOmega, values);
    std::size_t best = 0;
    for (std::size_t i = 1; i < table.points.size(); ++i) {
        if (std::abs(table.points[i].displacement) > std::abs(table.points[best].displacement)) {
            best = i;
        }
    }
    const double argmax = values[best];
    const auto opt = optimize_k_omega(p, kForcing, 1e-2, 1e2);
    g_optimal_k_omega = opt.k_omega_opt;
    const double cell = std::log(values[1] / values[0]);
    const bool agree = std::abs(std::log(opt.k_omega_opt / argmax)) <= cell;
    const double secs = seconds_since(t0);
    const bool ok = within(argmax, 0.35, 0.41) && agree && secs < 120.0;
    return {ok, fmt::format("sweep argmax {:.5f} (target [0.35, 0.41]), optimizer {:.5f}, "
                            "|log ratio| {:.4f} vs cell {:.4f}, runtime {:.2f} s",
                            argmax, opt.k_omega_opt, std::abs(std::log(opt.k_omega_opt / argmax)), cell, secs)};
}

Outcome amplitude_scaling()
{
    const SwimmerParams p = with_k_omega(SwimmerParams{}, kForcing, 0.3765);
    std::vector<double> eps{0.05, 0.1, 0.2, 0.4};
    std::vector<double> dx;
    for (double e : eps) {
        const Forcing f(e, 1.0, p.L);
        dx.push_back(stroke_displacement_discrete(p, f, build_discrete_mode(p, f)).displacement);
    }
    const double slope = log_log_slope(eps, dx);
    return {within(slope, 1.9, 2.1), fmt::format("slope {:.4f}", slope)};
}

Outcome backward_swimming()
{
    const SwimmerParams p;
    const double dx = stroke_displacement_discrete(p, kForcing, build_discrete_mode(p, kForcing)).displacement;
    return {dx < 0.0, fmt::format("displacement per stroke {:.6e} m", dx)};
}

Outcome analytic_residuals()
{
    const Complex I{0.0, 1.0};
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<int> n_dist(1, 5000);
    std::uniform_real_distribution<double> lg(-2.0, 2.0);
    double worst_discrete = 0.0;
    double worst_continuous = 0.0;
    double worst_identity = 0.0;
    for (int draw = 0; draw < 100; ++draw) {
        const double kw = std::pow(10.0, lg(rng));
        SwimmerParams p = with_k_omega(SwimmerParams{}, kForcing, kw);
        p.n_springs = n_dist(rng);
        const int n = p.n_springs;
        const double h = p.spacing();
        const double K = p.relaxation_rate();
        const double w = kForcing.omega();
        const double c = p.Lambda * p.Lambda * K / h;

        const auto m = build_discrete_mode(p, kForcing);
        const auto l = m.amplitudes();
        auto row = [&](Complex value, double scale) {
            worst_discrete = std::max(worst_discrete, std::abs(value) / scale);
        };
        {
            const Complex a = I * w * h * l[0];
            const Complex b = c * (l.size() > 1 ? l[1] - l[0] : -l[0]);
            const Complex r = p.Lambda * K * p.head_ratio() * l[0];
            const Complex f = 0.5 * p.Lambda * I * w * kForcing.amplitude();
            row(a - b + r + f, std::abs(a) + std::abs(c * l[0]) + std::abs(r) + std::abs(f));
        }
        for (int j = 2; j <= n; ++j) {
            const auto k = static_cast<std::size_t>(j - 1);
            const Complex a = I * w * h * l[k];
            const Complex b = c * (l[k + 1] - 2.0 * l[k] + l[k - 1]);
            row(a - b, std::abs(a) + c * (std::abs(l[k + 1]) + 2.0 * std::abs(l[k]) + std::abs(l[k - 1])));
        }
        row(l.back(), std::abs(l[0]));

        const auto cm = build_continuous_mode(p, kForcing);
        const double L = p.Lambda;
        for (double s : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const Complex lhs = I * w * cm.amplitude(s * L);
            const Complex rhs = L * L * K * cm.second_derivative(s * L);
            const double scale = std::abs(I * w * cm.alpha * std::exp(cm.r * s * L))
                                 + std::abs(I * w * cm.beta * std::exp(-cm.r * s * L));
            worst_continuous = std::max(worst_continuous, std::abs(lhs - rhs) / scale);
        }
        const Complex robin = L * L * K * cm.derivative(0.0) - L * K * p.head_ratio() * cm.amplitude(0.0);
        const Complex load = 0.5 * L * I * w * kForcing.amplitude();
        worst_continuous = std::max(worst_continuous, std::abs(robin - load) / std::abs(load));
        const double end_scale = std::abs(cm.alpha * std::exp(cm.r * L)) + std::abs(cm.beta * std::exp(-cm.r * L));
        worst_continuous = std::max(worst_continuous, std::abs(cm.amplitude(L)) / end_scale);

        worst_identity = std::max(worst_identity, std::abs(m.gamma_plus * m.gamma_minus - 1.0));
        const Complex r2 = I / (L * L * kw);
        worst_identity = std::max(worst_identity, std::abs(cm.r * cm.r - r2) / std::abs(r2));
    }
    const bool ok = worst_discrete < 1e-9 && worst_continuous < 1e-9 && worst_identity < 1e-12;
    return {ok, fmt::format("discrete residual {:.2e}, continuous residual {:.2e}, identities {:.2e}",
                            worst_discrete, worst_continuous, worst_identity)};
}

Outcome dense_oracle()
{
    double worst = 0.0;
    for (double kw : {0.01, 0.3765, 100.0}) {
        SwimmerParams p = with_k_omega(SwimmerParams{}, kForcing, kw);
        p.n_springs = 4;
        const auto m = build_discrete_mode(p, kForcing);
        const auto dense = oracle::boundary_recurrence(p, kForcing);
        double scale = 0.0;
        for (const auto& d : dense) scale = std::max(scale, std::abs(d));
        for (int j = 1; j <= 5; ++j) {
            worst = std::max(worst, std::abs(m.amplitude(j) - dense[static_cast<std::size_t>(j - 1)]) / scale);
        }
    }
    return {worst < 1e-10, fmt::format("max relative difference {:.2e}", worst)};
}

Outcome norm_equivalence()
{
    std::mt19937_64 rng(1000);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> mag(-6.0, 6.0);
    int bad = 0;
    int total = 0;
    for (int n : {3, 10, 100}) {
        for (int k = 0; k < 1000; ++k) {
            std::vector<double> v(static_cast<std::size_t>(n) + 1, 0.0);
            const double s = std::pow(10.0, mag(rng));
            for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] = s * g(rng);
            const auto r = norm_equivalence_check(ElongationField(UniformGrid(n, 4e-4), v));
            bad += (r.lhs_ok && r.rhs_ok) ? 0 : 1;
            ++total;
        }
    }
    return {bad == 0, fmt::format("{} of {} random fields violate a bound", bad, total)};
}

Outcome crank_nicolson_consistency()
{
    SwimmerParams p;
    p.n_springs = 200;
    const auto mode = build_discrete_mode(p, kForcing);
    const AssembledSystem system(p, kForcing, MassVariant::PaperLumped);
    const double T = kForcing.period();
    constexpr int kChecks = 16;
    auto max_error = [&](int steps) {
        const double dt = T / steps;
        const auto start = eval_discrete_nodes(mode, 0.0);
        std::vector<double> x(start.begin(), start.end() - 1);
        const CrankNicolsonStepper stepper(system, dt);
        double worst = 0.0;
        long done = 0;
        for (int k = 1; k <= kChecks; ++k) {
            integrate(stepper, x, static_cast<double>(done) * dt, steps / kChecks);
            done += steps / kChecks;
            const auto exact = eval_discrete_nodes(mode, static_cast<double>(done) * dt);
            double e2 = 0.0;
            for (std::size_t j = 0; j < x.size(); ++j) e2 += p.spacing() * (x[j] - exact[j]) * (x[j] - exact[j]);
            worst = std::max(worst, std::sqrt(e2));
        }
        return worst;
    };
    const double coarse = max_error(256);
    const double fine = max_error(512);
    const double ratio = coarse / fine;
    return {within(ratio, 3.5, 4.5),
            fmt::format("max error {:.3e} (dt=T/256), {:.3e} (dt=T/512), ratio {:.3f}", coarse, fine, ratio)};
}

Outcome continuous_limit()
{
    double kw = g_optimal_k_omega;
    if (!(kw > 0.0)) {
        kw = optimize_k_omega(SwimmerParams{}, kForcing, 1e-2, 1e2).k_omega_opt;
    }
    SwimmerParams p = with_k_omega(SwimmerParams{}, kForcing, kw);
    p.n_springs = 4000;
    const double d = stroke_displacement_discrete(p, kForcing, build_discrete_mode(p, kForcing)).displacement;
    const double c = stroke_displacement_continuous(p, kForcing, build_continuous_mode(p, kForcing)).displacement;
    const double gap = std::abs(d - c) / std::abs(c);
    return {gap < 0.01, fmt::format("K_omega {:.5f}: discrete {:.6e} m, continuous {:.6e} m, relative gap {:.2e}",
                                    kw, d, c, gap)};
}

}  // namespace

int main()
{
    report(1, "N-spring convergence order", nspring_order);
    report(2, "lumped and Galerkin convergence order", second_order_schemes);
    report(3, "optimal K_omega", optimal_k_omega);
    report(4, "eps_tilde squared scaling", amplitude_scaling);
    report(5, "backward swimming", backward_swimming);
    report(6, "analytic residuals", analytic_residuals);
    report(7, "dense oracle at N=4", dense_oracle);
    report(8, "norm equivalence", norm_equivalence);
    report(9, "Crank-Nicolson consistency", crank_nicolson_consistency);
    report(10, "continuous limit", continuous_limit);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
