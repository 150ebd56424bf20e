#include "swimmer/analytic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace swimmer {

namespace {

constexpr Complex I{0.0, 1.0};

Complex ipow(Complex base, int exponent)
{
    Complex result{1.0, 0.0};
    while (exponent > 0) {
        if (exponent & 1) {
            result *= base;
        }
        base *= base;
        exponent >>= 1;
    }
    return result;
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

DiscreteModeShape build_discrete_mode(const SwimmerParams& params, const Forcing& forcing)
{
    params.validate();
    const auto groups = derive_groups(params, forcing);
    const int n = params.n_springs;
    const double kw = groups.K_omega;
    const double nn = static_cast<double>(n);

    DiscreteModeShape mode;
    mode.n = n;
    mode.k_omega = kw;
    mode.omega = forcing.omega();

    // gamma^2 - (2 + i/(Kw N^2)) gamma + 1 = 0
    const Complex shift = I / (kw * nn * nn);
    mode.delta = -1.0 / (kw * kw * nn * nn * nn * nn) + 4.0 * I / (kw * nn * nn);
    const Complex root = std::sqrt(mode.delta);
    Complex gp = (2.0 + shift + root) / 2.0;
    Complex gm = (2.0 + shift - root) / 2.0;
    // 1 - gamma, formed without cancellation since gamma is close to 1 for large N
    Complex one_minus_gp = (-shift - root) / 2.0;
    Complex one_minus_gm = (-shift + root) / 2.0;
    if (std::abs(gp) < std::abs(gm)) {
        std::swap(gp, gm);
        std::swap(one_minus_gp, one_minus_gm);
    }
    // the smaller root cancels for small N K_w; take it from gamma_+ gamma_- = 1
    gm = 1.0 / gp;
    one_minus_gm = -one_minus_gp / gp;
    mode.gamma_plus = gp;
    mode.gamma_minus = gm;

    // Only |gamma_-/gamma_+|^N < 1 is ever exponentiated.
    const Complex ratio_n = ipow(gm / gp, n);
    const Complex denom_n = 1.0 - ratio_n;
    if (std::abs(denom_n) < 1e-300 || !finite(ratio_n)) {
        throw std::runtime_error("discrete mode: gamma_+^N - gamma_-^N vanishes (K_omega="
                                 + std::to_string(kw) + ", N=" + std::to_string(n) + ")");
    }
    mode.z_d = (gm - ratio_n * gp) / denom_n;
    const Complex one_minus_z = (one_minus_gm - ratio_n * one_minus_gp) / denom_n;

    const double eps = forcing.amplitude();
    const Complex denom_b = I / nn + nn * kw * one_minus_z + kw * params.head_ratio();
    if (std::abs(denom_b) == 0.0 || !finite(denom_b)) {
        throw std::runtime_error("discrete mode: singular first-node equation");
    }
    mode.b_d = -(eps * I / 2.0) / denom_b;
    mode.beta_d = mode.b_d / denom_n;
    mode.alpha_d = -ratio_n * mode.beta_d;
    return mode;
}

Complex DiscreteModeShape::amplitude(int j) const
{
    if (j < 1 || j > n + 1) {
        throw std::out_of_range("node index " + std::to_string(j) + " outside 1.."
                                + std::to_string(n + 1));
    }
    // alpha_d gamma_+^{j-1} = -beta_d gamma_-^N gamma_+^{-(N+1-j)}
    const Complex decaying = ipow(gamma_minus, j - 1);
    const Complex reflected = ipow(gamma_minus, n) * ipow(1.0 / gamma_plus, n + 1 - j);
    return beta_d * (decaying - reflected);
}

std::vector<Complex> DiscreteModeShape::amplitudes() const
{
    std::vector<Complex> out(static_cast<std::size_t>(n) + 1);
    for (int j = 1; j <= n + 1; ++j) {
        out[static_cast<std::size_t>(j - 1)] = amplitude(j);
    }
    return out;
}

double eval_discrete(const DiscreteModeShape& mode, int j, double t)
{
    return real_at(mode.amplitude(j), mode.omega, t);
}

std::vector<double> eval_discrete_nodes(const DiscreteModeShape& mode, double t)
{
    const auto amps = mode.amplitudes();
    std::vector<double> out(amps.size());
    const Complex phase = std::polar(1.0, mode.omega * t);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        out[i] = (amps[i] * phase).real();
    }
    return out;
}

ContinuousModeShape build_continuous_mode(const SwimmerParams& params, const Forcing& forcing)
{
    params.validate();
    const auto groups = derive_groups(params, forcing);
    const double kw = groups.K_omega;

    ContinuousModeShape mode;
    mode.Lambda = params.Lambda;
    mode.k_omega = kw;
    mode.omega = forcing.omega();
    mode.r = Complex(1.0, 1.0) / (params.Lambda * std::sqrt(2.0 * kw));

    const Complex e2 = std::exp(2.0 * mode.r * params.Lambda);
    const Complex denom = 2.0 * kw
                          * (params.head_ratio() * (e2 - 1.0)
                             + params.Lambda * mode.r * (e2 + 1.0));
    if (!finite(e2) || !finite(denom) || std::abs(denom) == 0.0) {
        throw std::runtime_error("continuous mode: boundary system is singular or overflows (K_omega="
                                 + std::to_string(kw) + ")");
    }
    mode.alpha = I * forcing.amplitude() / denom;
    mode.beta = -e2 * mode.alpha;
    return mode;
}

Complex ContinuousModeShape::amplitude(double y) const
{
    return alpha * std::exp(r * y) + beta * std::exp(-r * y);
}

Complex ContinuousModeShape::derivative(double y) const
{
    return r * (alpha * std::exp(r * y) - beta * std::exp(-r * y));
}

Complex ContinuousModeShape::second_derivative(double y) const
{
    return r * r * amplitude(y);
}

double eval_continuous(const ContinuousModeShape& mode, double y, double t)
{
    if (!(y >= 0.0 && y <= mode.Lambda)) {
        throw std::out_of_range("position " + std::to_string(y) + " outside [0, Lambda]");
    }
    return real_at(mode.amplitude(y), mode.omega, t);
}

}  // namespace swimmer
