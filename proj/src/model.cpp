#include "swimmer/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace swimmer {

namespace {

void require_positive(double value, const char* name)
{
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument(std::string(name) + " must be strictly positive and finite");
    }
}

}  // namespace

void SwimmerParams::validate() const
{
    require_positive(a_tilde, "a_tilde");
    require_positive(a1, "a1");
    require_positive(Lambda, "Lambda");
    require_positive(L, "L");
    require_positive(k_tilde, "k_tilde");
    require_positive(mu, "mu");
    if (n_springs < 1) {
        throw std::invalid_argument("n_springs must be >= 1");
    }
}

Forcing::Forcing(double eps_tilde, double omega, double L_ref)
    : eps_tilde_(eps_tilde), omega_(omega), L_ref_(L_ref)
{
    // eps_tilde = 1 would let the active arm collapse to zero length
    if (!(eps_tilde >= 0.0 && eps_tilde < 1.0)) {
        throw std::invalid_argument("eps_tilde must lie in [0, 1)");
    }
    require_positive(omega, "omega");
    require_positive(L_ref, "L");
}

double Forcing::length(double t) const
{
    return L_ref_ * (1.0 + eps_tilde_ * std::cos(omega_ * t));
}

double Forcing::rate(double t) const
{
    return -L_ref_ * eps_tilde_ * omega_ * std::sin(omega_ * t);
}

DimensionlessGroups derive_groups(const SwimmerParams& params, const Forcing& forcing)
{
    require_positive(params.mu, "mu");
    require_positive(params.a_tilde, "a_tilde");
    require_positive(params.k_tilde, "k_tilde");
    require_positive(forcing.omega(), "omega");
    const double K = params.relaxation_rate();
    return {K, K / forcing.omega()};
}

SwimmerParams with_k_omega(SwimmerParams params, const Forcing& forcing, double k_omega)
{
    require_positive(k_omega, "K_omega");
    params.k_tilde = k_omega * forcing.omega() * 6.0 * std::numbers::pi * params.mu * params.a_tilde;
    return params;
}

}  // namespace swimmer
