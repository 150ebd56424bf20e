#pragma once

#include "swimmer/model.hpp"

#include <complex>
#include <vector>

namespace swimmer {

using Complex = std::complex<double>;

/// Time-periodic solution of the N-spring system, l_j(t) = Re[lbar_j e^{i omega t}]
/// with lbar_j = alpha_d gamma_+^{j-1} + beta_d gamma_-^{j-1}.
struct DiscreteModeShape {
    Complex gamma_plus;
    Complex gamma_minus;
    Complex delta;
    Complex alpha_d;
    Complex beta_d;
    Complex b_d;
    Complex z_d;
    int n = 0;
    double k_omega = 0.0;
    double omega = 0.0;

    /// Complex amplitude at node j (1-based, 1..N+1).
    [[nodiscard]] Complex amplitude(int j) const;
    /// All N+1 complex nodal amplitudes; the last one is the enforced zero.
    [[nodiscard]] std::vector<Complex> amplitudes() const;
};

DiscreteModeShape build_discrete_mode(const SwimmerParams& params, const Forcing& forcing);

/// Physical elongation of node j at time t. Throws std::out_of_range for j outside 1..N+1.
double eval_discrete(const DiscreteModeShape& mode, int j, double t);

/// Elongations of all N+1 nodes at time t.
std::vector<double> eval_discrete_nodes(const DiscreteModeShape& mode, double t);

/// Periodic solution of the continuous tail, l(y,t) = Re[(alpha e^{ry} + beta e^{-ry}) e^{i omega t}].
struct ContinuousModeShape {
    Complex r;
    Complex alpha;
    Complex beta;
    double Lambda = 0.0;
    double k_omega = 0.0;
    double omega = 0.0;

    [[nodiscard]] Complex amplitude(double y) const;
    [[nodiscard]] Complex derivative(double y) const;
    [[nodiscard]] Complex second_derivative(double y) const;
};

ContinuousModeShape build_continuous_mode(const SwimmerParams& params, const Forcing& forcing);

/// Throws std::out_of_range for y outside [0, Lambda].
double eval_continuous(const ContinuousModeShape& mode, double y, double t);

/// Re[a e^{i omega t}]
inline double real_at(Complex a, double omega, double t)
{
    return (a * std::polar(1.0, omega * t)).real();
}

}  // namespace swimmer
