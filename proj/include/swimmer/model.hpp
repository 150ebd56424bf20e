#pragma once

#include <numbers>

namespace swimmer {

/// Physical description of the N-spring swimmer, SI units throughout.
///
/// The tail is made of N springs of rest length h = Lambda/N joining spheres
/// of radius a_tilde/N; each spring has stiffness k_tilde*N so that the tail's
/// elastic response does not depend on N.
struct SwimmerParams {
    double a_tilde = 1e-5;   ///< reference small-sphere radius [m]
    double a1 = 1e-5;        ///< radius of the two head spheres [m]
    double Lambda = 4e-4;    ///< rest length of the tail [m]
    double L = 3e-5;         ///< rest length of the active arm [m]
    double k_tilde = 1e-8;   ///< reference spring constant [N/m]
    double mu = 8.9e-4;      ///< dynamic viscosity [Pa s]
    int n_springs = 2000;

    /// Throws std::invalid_argument unless every field is strictly positive.
    void validate() const;

    [[nodiscard]] double spacing() const { return Lambda / n_springs; }
    [[nodiscard]] double sphere_radius() const { return a_tilde / n_springs; }
    [[nodiscard]] double spring_constant() const { return k_tilde * n_springs; }

    /// K = k_tilde / (6 pi mu a_tilde) [1/s].
    [[nodiscard]] double relaxation_rate() const
    {
        return k_tilde / (6.0 * std::numbers::pi * mu * a_tilde);
    }

    /// ratio a_tilde / (2 a1) entering the head boundary condition
    [[nodiscard]] double head_ratio() const { return a_tilde / (2.0 * a1); }
};

/// Prescribed active-arm length L0(t) = L (1 + eps_tilde cos(omega t)).
class Forcing {
public:
    Forcing() = default;
    /// Throws std::invalid_argument for eps_tilde outside [0, 1), omega <= 0 or L_ref <= 0.
    Forcing(double eps_tilde, double omega, double L_ref);

    [[nodiscard]] double eps_tilde() const { return eps_tilde_; }
    [[nodiscard]] double omega() const { return omega_; }
    [[nodiscard]] double rest_length() const { return L_ref_; }
    /// eps = L eps_tilde
    [[nodiscard]] double amplitude() const { return L_ref_ * eps_tilde_; }
    [[nodiscard]] double period() const { return 2.0 * std::numbers::pi / omega_; }

    [[nodiscard]] double length(double t) const;
    [[nodiscard]] double rate(double t) const;

private:
    double eps_tilde_ = 0.7;
    double omega_ = 1.0;
    double L_ref_ = 3e-5;
};

struct DimensionlessGroups {
    double K = 0.0;        ///< [1/s]
    double K_omega = 0.0;  ///< K / omega
};

DimensionlessGroups derive_groups(const SwimmerParams& params, const Forcing& forcing);

/// Returns a copy of params whose k_tilde realizes the requested K_omega at
/// the forcing's frequency.
SwimmerParams with_k_omega(SwimmerParams params, const Forcing& forcing, double k_omega);

}  // namespace swimmer
