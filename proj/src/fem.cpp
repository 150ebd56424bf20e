#include "swimmer/fem.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace swimmer {

UniformGrid::UniformGrid(int n_cells, double total_length) : n(n_cells), length(total_length)
{
    if (n_cells < 1) {
        throw std::invalid_argument("grid needs at least one cell");
    }
    if (!(total_length > 0.0)) {
        throw std::invalid_argument("grid length must be positive");
    }
}

double UniformGrid::node(int j) const
{
    if (j < 1 || j > n + 1) {
        throw std::out_of_range("grid node " + std::to_string(j) + " outside 1.."
                                + std::to_string(n + 1));
    }
    if (j == n + 1) {
        return length;
    }
    return (j - 1) * length / n;
}

std::string_view to_string(MassVariant variant)
{
    switch (variant) {
    case MassVariant::Consistent:
        return "galerkin";
    case MassVariant::PaperLumped:
        return "nspring";
    case MassVariant::ClassicalLumped:
        return "lumped";
    }
    return "unknown";
}

MassVariant parse_mass_variant(std::string_view name)
{
    if (name == "galerkin" || name == "consistent") {
        return MassVariant::Consistent;
    }
    if (name == "nspring" || name == "paper") {
        return MassVariant::PaperLumped;
    }
    if (name == "lumped" || name == "classical") {
        return MassVariant::ClassicalLumped;
    }
    throw std::invalid_argument("unknown scheme '" + std::string(name)
                                + "' (expected nspring, lumped or galerkin)");
}

double Tridiagonal::at(std::size_t i, std::size_t j) const
{
    if (i == j) {
        return diag.at(i);
    }
    if (i == j + 1) {
        return lower.at(j);
    }
    if (j == i + 1) {
        return upper.at(i);
    }
    return 0.0;
}

void Tridiagonal::multiply(std::span<const double> x, std::span<double> y) const
{
    const std::size_t n = size();
    if (x.size() != n || y.size() != n) {
        throw std::invalid_argument("tridiagonal multiply: size mismatch");
    }
    for (std::size_t i = 0; i < n; ++i) {
        double acc = diag[i] * x[i];
        if (i > 0) {
            acc += lower[i - 1] * x[i - 1];
        }
        if (i + 1 < n) {
            acc += upper[i] * x[i + 1];
        }
        y[i] = acc;
    }
}

std::vector<double> Tridiagonal::multiply(std::span<const double> x) const
{
    std::vector<double> y(size());
    multiply(x, y);
    return y;
}

Tridiagonal combine(double a, const Tridiagonal& A, double b, const Tridiagonal& B)
{
    if (A.size() != B.size()) {
        throw std::invalid_argument("combine: size mismatch");
    }
    Tridiagonal out = A;
    for (std::size_t i = 0; i < out.diag.size(); ++i) {
        out.diag[i] = a * A.diag[i] + b * B.diag[i];
    }
    for (std::size_t i = 0; i < out.lower.size(); ++i) {
        out.lower[i] = a * A.lower[i] + b * B.lower[i];
        out.upper[i] = a * A.upper[i] + b * B.upper[i];
    }
    return out;
}

template <typename T>
TridiagonalFactorization<T>::TridiagonalFactorization(const std::vector<T>& lower,
                                                      const std::vector<T>& diag,
                                                      const std::vector<T>& upper)
    : lower_(lower), upper_(upper), pivot_(diag.size())
{
    const std::size_t n = diag.size();
    if (n == 0 || lower.size() + 1 != n || upper.size() + 1 != n) {
        throw std::invalid_argument("tridiagonal factorization: inconsistent band sizes");
    }
    pivot_[0] = diag[0];
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(pivot_[i - 1]) == 0.0) {
            throw std::runtime_error("tridiagonal factorization: zero pivot at row "
                                     + std::to_string(i - 1));
        }
        // store the multiplier in place of the sub-diagonal
        lower_[i - 1] = lower[i - 1] / pivot_[i - 1];
        pivot_[i] = diag[i] - lower_[i - 1] * upper[i - 1];
    }
    if (std::abs(pivot_[n - 1]) == 0.0) {
        throw std::runtime_error("tridiagonal factorization: zero pivot at row "
                                 + std::to_string(n - 1));
    }
}

template <typename T>
void TridiagonalFactorization<T>::solve(std::span<T> rhs) const
{
    const std::size_t n = pivot_.size();
    if (rhs.size() != n) {
        throw std::invalid_argument("tridiagonal solve: size mismatch");
    }
    for (std::size_t i = 1; i < n; ++i) {
        rhs[i] -= lower_[i - 1] * rhs[i - 1];
    }
    rhs[n - 1] /= pivot_[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        rhs[i] = (rhs[i] - upper_[i] * rhs[i + 1]) / pivot_[i];
    }
}

template class TridiagonalFactorization<double>;
template class TridiagonalFactorization<std::complex<double>>;

namespace {

Tridiagonal assemble_stiffness(const SwimmerParams& p)
{
    const auto n = static_cast<std::size_t>(p.n_springs);
    const double h = p.spacing();
    const double K = p.relaxation_rate();
    const double bulk = p.Lambda * p.Lambda * K / h;

    Tridiagonal k;
    k.diag.assign(n, 2.0 * bulk);
    k.lower.assign(n - 1, -bulk);
    k.upper.assign(n - 1, -bulk);
    // head row: half stencil plus the Robin contribution
    k.diag[0] = bulk + p.Lambda * K * p.head_ratio();
    return k;
}

Tridiagonal assemble_mass(const SwimmerParams& p, MassVariant variant)
{
    const auto n = static_cast<std::size_t>(p.n_springs);
    const double h = p.spacing();
    Tridiagonal m;
    switch (variant) {
    case MassVariant::Consistent:
        m.diag.assign(n, 2.0 * h / 3.0);
        m.diag[0] = h / 3.0;
        m.lower.assign(n - 1, h / 6.0);
        m.upper.assign(n - 1, h / 6.0);
        break;
    case MassVariant::PaperLumped:
        m.diag.assign(n, h);
        m.lower.assign(n - 1, 0.0);
        m.upper.assign(n - 1, 0.0);
        break;
    case MassVariant::ClassicalLumped:
        m.diag.assign(n, h);
        m.diag[0] = h / 2.0;
        m.lower.assign(n - 1, 0.0);
        m.upper.assign(n - 1, 0.0);
        break;
    }
    return m;
}

}  // namespace

AssembledSystem::AssembledSystem(const SwimmerParams& params, const Forcing& forcing,
                                 MassVariant variant)
    : params_(params), forcing_(forcing), variant_(variant)
{
    params_.validate();
    grid_ = UniformGrid(params_.n_springs, params_.Lambda);
    stiffness_ = assemble_stiffness(params_);
    mass_ = assemble_mass(params_, variant_);
}

double AssembledSystem::load_head(double t) const
{
    return -0.5 * params_.Lambda * forcing_.rate(t);
}

std::vector<double> AssembledSystem::load(double t) const
{
    std::vector<double> f(size(), 0.0);
    f[0] = load_head(t);
    return f;
}

AssembledSystem assemble(const SwimmerParams& params, const Forcing& forcing, MassVariant variant)
{
    return AssembledSystem(params, forcing, variant);
}

ElongationField::ElongationField(UniformGrid g, std::vector<double> v)
    : grid(g), values(std::move(v))
{
    if (values.size() != static_cast<std::size_t>(grid.n) + 1) {
        throw std::invalid_argument("elongation field needs N+1 node values");
    }
    for (double x : values) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument("elongation field has non-finite values");
        }
    }
    if (values.back() != 0.0) {
        throw std::invalid_argument("elongation field must vanish at the last node");
    }
}

ElongationField ElongationField::from_unknowns(const UniformGrid& g, std::span<const double> unknowns)
{
    std::vector<double> v(unknowns.begin(), unknowns.end());
    v.push_back(0.0);
    return ElongationField(g, std::move(v));
}

ElongationField ElongationField::zero(const UniformGrid& g)
{
    return ElongationField(g, std::vector<double>(static_cast<std::size_t>(g.n) + 1, 0.0));
}

CrankNicolsonStepper::CrankNicolsonStepper(const AssembledSystem& system, double dt)
    : forcing_(system.forcing()), Lambda_(system.params().Lambda), dt_(dt)
{
    if (!(dt > 0.0)) {
        throw std::invalid_argument("time step must be positive");
    }
    explicit_part_ = combine(1.0, system.mass(), -0.5 * dt, system.stiffness());
    const Tridiagonal lhs = combine(1.0, system.mass(), 0.5 * dt, system.stiffness());
    implicit_part_ = TridiagonalFactorization<double>(lhs.lower, lhs.diag, lhs.upper);
}

void CrankNicolsonStepper::step(std::span<double> state, double t) const
{
    const std::size_t n = explicit_part_.size();
    if (state.size() != n) {
        throw std::invalid_argument("state size does not match the system");
    }
    // in-place tridiagonal product, keeping the previous entry around
    double prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double acc = explicit_part_.diag[i] * state[i];
        if (i > 0) {
            acc += explicit_part_.lower[i - 1] * prev;
        }
        if (i + 1 < n) {
            acc += explicit_part_.upper[i] * state[i + 1];
        }
        prev = state[i];
        state[i] = acc;
    }
    const double f0 = -0.5 * Lambda_ * forcing_.rate(t);
    const double f1 = -0.5 * Lambda_ * forcing_.rate(t + dt_);
    state[0] += 0.5 * dt_ * (f0 + f1);
    implicit_part_.solve(state);
}

std::vector<double> step_crank_nicolson(const AssembledSystem& system, std::span<const double> state,
                                        double t, double dt)
{
    CrankNicolsonStepper stepper(system, dt);
    std::vector<double> next(state.begin(), state.end());
    stepper.step(next, t);
    return next;
}

void integrate(const CrankNicolsonStepper& stepper, std::span<double> state, double t0, long steps)
{
    for (long s = 0; s < steps; ++s) {
        // recompute t from the step count so rounding does not accumulate
        stepper.step(state, t0 + static_cast<double>(s) * stepper.dt());
    }
}

Trajectory solve_transient(const AssembledSystem& system, const ElongationField& initial,
                           double t_end, double dt, double sample_interval)
{
    if (!(initial.grid == system.grid())) {
        throw std::invalid_argument("initial field lives on a different grid");
    }
    if (!(t_end >= 0.0) || !(sample_interval > 0.0)) {
        throw std::invalid_argument("t_end must be non-negative and the sample interval positive");
    }
    const double ratio = sample_interval / dt;
    const long steps_per_sample = std::lround(ratio);
    if (steps_per_sample < 1 || std::abs(ratio - static_cast<double>(steps_per_sample)) > 1e-9 * ratio) {
        throw std::invalid_argument("dt must divide the sampling interval");
    }
    const long samples = std::lround(std::floor(t_end / sample_interval + 1e-9));

    CrankNicolsonStepper stepper(system, dt);
    std::vector<double> state(initial.unknowns().begin(), initial.unknowns().end());

    Trajectory out;
    out.times.push_back(0.0);
    out.states.push_back(initial);
    long step_index = 0;
    for (long k = 1; k <= samples; ++k) {
        integrate(stepper, state, static_cast<double>(step_index) * dt, steps_per_sample);
        step_index += steps_per_sample;
        out.times.push_back(static_cast<double>(step_index) * dt);
        out.states.push_back(ElongationField::from_unknowns(system.grid(), state));
    }
    return out;
}

std::vector<std::complex<double>> periodic_response(const AssembledSystem& system)
{
    using C = std::complex<double>;
    const double omega = system.forcing().omega();
    const std::size_t n = system.size();
    const auto& K = system.stiffness();
    const auto& M = system.mass();

    std::vector<C> lower(n - 1);
    std::vector<C> diag(n);
    std::vector<C> upper(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = C(K.diag[i], omega * M.diag[i]);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        lower[i] = C(K.lower[i], omega * M.lower[i]);
        upper[i] = C(K.upper[i], omega * M.upper[i]);
    }
    std::vector<C> rhs(n, C{});
    // L0 - L = Re[eps e^{i omega t}]  =>  dL0/dt <-> i omega eps
    rhs[0] = -0.5 * system.params().Lambda * C(0.0, omega * system.forcing().amplitude());
    TridiagonalFactorization<C>(lower, diag, upper).solve(rhs);
    return rhs;
}

}  // namespace swimmer
