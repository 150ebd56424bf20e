#include "swimmer/displacement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace swimmer {

namespace {

void require_state(const SwimmerParams& params, std::span<const double> state)
{
    if (state.size() != static_cast<std::size_t>(params.n_springs) + 1) {
        throw std::invalid_argument("state must hold N+1 node values");
    }
}

/// sum_{j=1}^{N} (l_j - l_{j+1}) / (L0 + L_1 + ... + L_j), L_i = l_i/N + h
double interaction_sum(const SwimmerParams& params, double active_length, std::span<const double> l)
{
    const double n = params.n_springs;
    const double h = params.spacing();
    double cumulative = active_length;
    double sum = 0.0;
    for (std::size_t j = 0; j + 1 < l.size(); ++j) {
        cumulative += l[j] / n + h;
        if (!(cumulative > 0.0)) {
            throw std::domain_error("non-positive cumulative arm length: unphysical state");
        }
        sum += (l[j] - l[j + 1]) / cumulative;
    }
    return sum;
}

}  // namespace

double instantaneous_v1(const SwimmerParams& params, const Forcing& forcing,
                        std::span<const double> state, double t)
{
    require_state(params, state);
    const double L0 = forcing.length(t);
    const double dL0 = forcing.rate(t);
    if (!(L0 > 0.0)) {
        throw std::domain_error("non-positive active arm length");
    }
    const double K = params.relaxation_rate();
    const double l1 = state[0];
    return 0.5 * dL0 - params.head_ratio() * K * l1 - 3.0 * params.a1 * dL0 / (4.0 * L0)
           + drift_integrand(params, forcing, state, t);
}

double drift_integrand(const SwimmerParams& params, const Forcing& forcing,
                       std::span<const double> state, double t)
{
    require_state(params, state);
    const double L0 = forcing.length(t);
    if (!(L0 > 0.0)) {
        throw std::domain_error("non-positive active arm length");
    }
    const double Ka = params.relaxation_rate() * params.a_tilde;
    return -3.0 * Ka * state[0] / (4.0 * L0) + 1.5 * Ka * interaction_sum(params, L0, state);
}

StrokeResult stroke_displacement_discrete(const SwimmerParams& params, const Forcing& forcing,
                                          const DiscreteModeShape& mode, int m_quad)
{
    if (m_quad < 64) {
        throw std::invalid_argument("m_quad must be at least 64");
    }
    if (mode.n != params.n_springs) {
        throw std::invalid_argument("mode was built for a different N");
    }
    StrokeResult out{0.0, forcing.eps_tilde(), mode.k_omega, forcing.omega(), mode.n, m_quad};
    if (forcing.eps_tilde() == 0.0) {
        return out;
    }

    const auto amps = mode.amplitudes();
    std::vector<double> state(amps.size());
    const double period = forcing.period();
    double sum = 0.0;
    for (int m = 0; m < m_quad; ++m) {
        const double t = period * m / m_quad;
        const Complex phase = std::polar(1.0, forcing.omega() * t);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            state[i] = (amps[i] * phase).real();
        }
        sum += drift_integrand(params, forcing, state, t);
    }
    out.displacement = sum * period / m_quad;
    return out;
}

namespace {

struct TailSample {
    std::vector<double> y;
    std::vector<double> value;
    std::vector<double> slope;
    std::vector<double> chi;
};

TailSample sample_tail(const SwimmerParams& params, const Forcing& forcing,
                       const ContinuousModeShape& mode, double t, int m_space,
                       const std::vector<Complex>& amp, const std::vector<Complex>& damp)
{
    const auto points = static_cast<std::size_t>(m_space) + 1;
    const double dy = params.Lambda / m_space;
    const Complex phase = std::polar(1.0, mode.omega * t);
    const double L0 = forcing.length(t);

    TailSample s;
    s.y.resize(points);
    s.value.resize(points);
    s.slope.resize(points);
    s.chi.resize(points);
    double integral = 0.0;
    for (std::size_t k = 0; k < points; ++k) {
        s.y[k] = k == points - 1 ? params.Lambda : static_cast<double>(k) * dy;
        s.value[k] = (amp[k] * phase).real();
        s.slope[k] = (damp[k] * phase).real();
        if (k > 0) {
            integral += 0.5 * (s.value[k - 1] + s.value[k]) * dy;
        }
        const double denom = L0 + s.y[k] + integral / params.Lambda;
        if (!(denom > 0.0)) {
            throw std::domain_error("non-positive chi denominator: unphysical state");
        }
        s.chi[k] = 1.0 / denom;
    }
    return s;
}

void tail_amplitudes(const ContinuousModeShape& mode, double Lambda, int m_space,
                     std::vector<Complex>& amp, std::vector<Complex>& damp)
{
    const auto points = static_cast<std::size_t>(m_space) + 1;
    amp.resize(points);
    damp.resize(points);
    for (std::size_t k = 0; k < points; ++k) {
        const double y = k == points - 1 ? Lambda : static_cast<double>(k) * Lambda / m_space;
        amp[k] = mode.amplitude(y);
        damp[k] = mode.derivative(y);
    }
}

}  // namespace

std::vector<double> continuous_chi(const SwimmerParams& params, const Forcing& forcing,
                                   const ContinuousModeShape& mode, double t, int m_space)
{
    if (m_space < 1) {
        throw std::invalid_argument("m_space must be positive");
    }
    std::vector<Complex> amp;
    std::vector<Complex> damp;
    tail_amplitudes(mode, params.Lambda, m_space, amp, damp);
    return sample_tail(params, forcing, mode, t, m_space, amp, damp).chi;
}

StrokeResult stroke_displacement_continuous(const SwimmerParams& params, const Forcing& forcing,
                                            const ContinuousModeShape& mode, int m_quad, int m_space)
{
    if (m_quad < 64) {
        throw std::invalid_argument("m_quad must be at least 64");
    }
    if (m_space < 128) {
        throw std::invalid_argument("m_space must be at least 128");
    }
    StrokeResult out{0.0, forcing.eps_tilde(), mode.k_omega, forcing.omega(), 0, m_quad};
    if (forcing.eps_tilde() == 0.0) {
        return out;
    }

    std::vector<Complex> amp;
    std::vector<Complex> damp;
    tail_amplitudes(mode, params.Lambda, m_space, amp, damp);

    const double Ka = params.relaxation_rate() * params.a_tilde;
    const double dy = params.Lambda / m_space;
    const double period = forcing.period();
    double sum = 0.0;
    for (int m = 0; m < m_quad; ++m) {
        const double t = period * m / m_quad;
        const auto s = sample_tail(params, forcing, mode, t, m_space, amp, damp);
        double inner = 0.0;
        for (std::size_t k = 0; k + 1 < s.y.size(); ++k) {
            inner += 0.5 * (s.slope[k] * s.chi[k] + s.slope[k + 1] * s.chi[k + 1]) * dy;
        }
        sum += -1.5 * Ka * inner - 3.0 * Ka * s.value[0] / (4.0 * forcing.length(t));
    }
    out.displacement = sum * period / m_quad;
    return out;
}

HeadTrajectory head_trajectory(const SwimmerParams& params, const Forcing& forcing,
                               const DiscreteModeShape& mode, int samples)
{
    if (samples < 2) {
        throw std::invalid_argument("need at least two samples per period");
    }
    const auto amps = mode.amplitudes();
    std::vector<double> state(amps.size());
    const double period = forcing.period();

    HeadTrajectory out;
    out.times.resize(static_cast<std::size_t>(samples) + 1);
    out.x1.resize(out.times.size());
    double prev_v = 0.0;
    for (std::size_t m = 0; m < out.times.size(); ++m) {
        const double t = period * static_cast<double>(m) / samples;
        const Complex phase = std::polar(1.0, forcing.omega() * t);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            state[i] = (amps[i] * phase).real();
        }
        const double v = instantaneous_v1(params, forcing, state, t);
        out.times[m] = t;
        out.x1[m] = m == 0 ? 0.0 : out.x1[m - 1] + 0.5 * (prev_v + v) * (period / samples);
        prev_v = v;
    }
    return out;
}

std::vector<double> sphere_positions(const SwimmerParams& params, const Forcing& forcing,
                                     std::span<const double> state, double t, double x1)
{
    require_state(params, state);
    const double n = params.n_springs;
    const double h = params.spacing();
    std::vector<double> x(state.size() + 1);
    x[0] = x1;
    x[1] = x1 + forcing.length(t);
    for (std::size_t j = 0; j + 1 < state.size(); ++j) {
        x[j + 2] = x[j + 1] + state[j] / n + h;
    }
    return x;
}

std::string_view to_string(SweepAxis axis)
{
    return axis == SweepAxis::EpsTilde ? "eps_tilde" : "k_omega";
}

SweepAxis parse_sweep_axis(std::string_view name)
{
    if (name == "eps_tilde") {
        return SweepAxis::EpsTilde;
    }
    if (name == "k_omega") {
        return SweepAxis::KOmega;
    }
    throw std::invalid_argument("unknown sweep axis '" + std::string(name)
                                + "' (expected eps_tilde or k_omega)");
}

double displacement_at_k_omega(const SwimmerParams& params, const Forcing& forcing, double k_omega,
                               int m_quad)
{
    const SwimmerParams tuned = with_k_omega(params, forcing, k_omega);
    const auto mode = build_discrete_mode(tuned, forcing);
    return stroke_displacement_discrete(tuned, forcing, mode, m_quad).displacement;
}

namespace {

double displacement_at(const SwimmerParams& params, const Forcing& forcing, SweepAxis axis,
                       double value, int m_quad)
{
    if (axis == SweepAxis::KOmega) {
        return displacement_at_k_omega(params, forcing, value, m_quad);
    }
    const Forcing f(value, forcing.omega(), forcing.rest_length());
    const auto mode = build_discrete_mode(params, f);
    return stroke_displacement_discrete(params, f, mode, m_quad).displacement;
}

}  // namespace

SweepTable sweep(const SwimmerParams& params, const Forcing& forcing, SweepAxis axis,
                 std::span<const double> values, const SweepOptions& options)
{
    params.validate();
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (!(values[i] > values[i - 1])) {
            throw std::invalid_argument("sweep values must be strictly increasing");
        }
    }

    SweepTable table;
    table.axis = axis;
    table.n = params.n_springs;
    table.m_quad = options.m_quad;
    table.points.resize(values.size());

    auto evaluate = [&](std::size_t i) {
        SweepPoint& p = table.points[i];
        p.value = values[i];
        try {
            p.displacement = displacement_at(params, forcing, axis, values[i], options.m_quad);
        } catch (const std::exception& e) {
            p.displacement = std::numeric_limits<double>::quiet_NaN();
            p.error = e.what();
        }
    };

    unsigned workers = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
    workers = std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(std::max<std::size_t>(values.size(), 1)));
    if (workers == 1) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            evaluate(i);
        }
        return table;
    }
    // each worker owns a fixed stride of indices; results land by index
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < values.size(); i += workers) {
                evaluate(i);
            }
        });
    }
    pool.clear();
    return table;
}

OptimumResult optimize_k_omega(const SwimmerParams& params, const Forcing& forcing, double lo,
                               double hi, double rel_tol, int m_quad)
{
    if (!(lo > 0.0) || !(hi > lo)) {
        throw std::invalid_argument("bracket must satisfy 0 < lo < hi");
    }
    if (!(rel_tol > 0.0)) {
        throw std::invalid_argument("tolerance must be positive");
    }
    auto objective = [&](double log_k) {
        return -std::abs(displacement_at_k_omega(params, forcing, std::exp(log_k), m_quad));
    };

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = std::log(lo);
    double b = std::log(hi);
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = objective(c);
    double fd = objective(d);
    int iterations = 0;
    // |delta log K| < rel_tol is a relative tolerance on K
    while (b - a > rel_tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = objective(d);
        }
        ++iterations;
    }
    const double log_opt = 0.5 * (a + b);
    const double span = std::log(hi) - std::log(lo);
    if (log_opt - std::log(lo) < 2.0 * rel_tol * span || std::log(hi) - log_opt < 2.0 * rel_tol * span) {
        throw std::runtime_error("no interior extremum of |displacement| in the bracket");
    }

    OptimumResult out;
    out.k_omega_opt = std::exp(log_opt);
    out.k_tilde_equiv = with_k_omega(params, forcing, out.k_omega_opt).k_tilde;
    out.displacement = displacement_at_k_omega(params, forcing, out.k_omega_opt, m_quad);
    out.iterations = iterations;
    return out;
}

double log_log_slope(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("log-log slope needs matching arrays of length >= 2");
    }
    const double m = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(std::abs(y[i]));
    }
    mx /= m;
    my /= m;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(std::abs(y[i])) - my);
    }
    return sxy / sxx;
}

}  // namespace swimmer
