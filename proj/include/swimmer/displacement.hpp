#pragma once

#include "swimmer/analytic.hpp"
#include "swimmer/model.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace swimmer {

/// Velocity of the head sphere given the node elongations l_1..l_{N+1}
/// (last entry zero) at time t. Throws std::domain_error when a cumulative
/// arm length is not positive.
double instantaneous_v1(const SwimmerParams& params, const Forcing& forcing,
                        std::span<const double> state, double t);

/// Part of V1 with a non-zero period average: the head-sphere drag term
/// -3 K a_tilde l_1 / (4 L0) and the hydrodynamic interaction sum.
double drift_integrand(const SwimmerParams& params, const Forcing& forcing,
                       std::span<const double> state, double t);

struct StrokeResult {
    double displacement = 0.0;  ///< [m], signed; negative is backwards
    double eps_tilde = 0.0;
    double k_omega = 0.0;
    double omega = 0.0;
    int n = 0;
    int quadrature_points = 0;
};

/// Net displacement over one period of the N-spring swimmer, periodic
/// trapezoid rule on m_quad >= 64 equispaced times.
StrokeResult stroke_displacement_discrete(const SwimmerParams& params, const Forcing& forcing,
                                          const DiscreteModeShape& mode, int m_quad = 256);

/// Net displacement over one period of the continuous tail. m_space is the
/// number of trapezoid intervals along the tail (>= 128).
StrokeResult stroke_displacement_continuous(const SwimmerParams& params, const Forcing& forcing,
                                            const ContinuousModeShape& mode, int m_quad = 256,
                                            int m_space = 1024);

/// chi(y_s, t) = 1 / (L0(t) + y + int_0^y l / Lambda) on m_space+1 equispaced points.
std::vector<double> continuous_chi(const SwimmerParams& params, const Forcing& forcing,
                                   const ContinuousModeShape& mode, double t, int m_space);

/// Head position x_1(t) over one period, x_1(0) = 0, by cumulative trapezoid of V1.
struct HeadTrajectory {
    std::vector<double> times;
    std::vector<double> x1;
};

HeadTrajectory head_trajectory(const SwimmerParams& params, const Forcing& forcing,
                               const DiscreteModeShape& mode, int samples);

/// Sphere centers x_1..x_{N+2} from the head position and the arm lengths.
std::vector<double> sphere_positions(const SwimmerParams& params, const Forcing& forcing,
                                     std::span<const double> state, double t, double x1);

enum class SweepAxis { EpsTilde, KOmega };

std::string_view to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(std::string_view name);

struct SweepPoint {
    double value = 0.0;
    double displacement = 0.0;  ///< NaN when the point failed
    std::optional<std::string> error;
};

struct SweepTable {
    SweepAxis axis = SweepAxis::KOmega;
    std::vector<SweepPoint> points;
    int n = 0;
    int m_quad = 0;
};

struct SweepOptions {
    int m_quad = 256;
    unsigned threads = 0;  ///< 0 = hardware concurrency
};

/// Displacement of the N-spring swimmer at each value along the axis. K_omega
/// is realized by adjusting k_tilde at the forcing's omega. Per-point failures
/// are recorded and the sweep continues; values must be strictly increasing.
SweepTable sweep(const SwimmerParams& params, const Forcing& forcing, SweepAxis axis,
                 std::span<const double> values, const SweepOptions& options = {});

/// Displacement of the N-spring swimmer at a given K_omega.
double displacement_at_k_omega(const SwimmerParams& params, const Forcing& forcing, double k_omega,
                               int m_quad = 256);

struct OptimumResult {
    double k_omega_opt = 0.0;
    double k_tilde_equiv = 0.0;
    double displacement = 0.0;
    int iterations = 0;
};

/// Golden-section search for the K_omega maximizing |displacement| in
/// log(K_omega), to relative tolerance rel_tol. Throws std::runtime_error if
/// the maximizer sits on the bracket boundary.
OptimumResult optimize_k_omega(const SwimmerParams& params, const Forcing& forcing, double lo,
                               double hi, double rel_tol = 1e-4, int m_quad = 256);

/// log(|y|) vs log(x) least-squares slope.
double log_log_slope(std::span<const double> x, std::span<const double> y);

}  // namespace swimmer
