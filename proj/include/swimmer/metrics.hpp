#pragma once

#include "swimmer/analytic.hpp"
#include "swimmer/fem.hpp"

#include <optional>
#include <span>
#include <stdexcept>

namespace swimmer {

/// Exact L2 inner product of two piecewise-linear fields on the same grid.
double l2_inner(const ElongationField& u, const ElongationField& v);
double l2_norm(const ElongationField& f);
/// Exact L2 inner product of the (piecewise-constant) derivatives.
double h1_inner(const ElongationField& u, const ElongationField& v);
double h1_seminorm(const ElongationField& f);

/// Mass-lumped inner products and the quadrature error of the N-spring lumping.
struct DiscreteInnerProducts {
    double paren_h = 0.0;  ///< h sum_{j=1}^{N} u_j v_j
    double angle_h = 0.0;  ///< (h/2) u_1 v_1 + h sum_{j=2}^{N} u_j v_j
    double delta_h = 0.0;  ///< paren_h - (u, v)
};

/// Throws std::invalid_argument when u and v live on different grids.
DiscreteInnerProducts discrete_inner_products(const ElongationField& u, const ElongationField& v);

struct ErrorRecord {
    int n = 0;
    double h = 0.0;
    double l2_error = 0.0;
    double h1_error = 0.0;
};

/// Nodal interpolant of the continuous periodic solution at time t.
ElongationField interpolate(const ContinuousModeShape& mode, const UniformGrid& grid, double t);

/// L2 and H1 norms of numeric minus the nodal interpolant of the analytic solution.
ErrorRecord error_vs_analytic(const ElongationField& numeric, const ContinuousModeShape& mode, double t);

enum class ErrorNorm { L2, H1 };

struct RateEstimate {
    double slope = 0.0;      ///< order p in error ~ C h^p
    double intercept = 0.0;  ///< log C
    double r_squared = 0.0;
    int points = 0;
};

/// Raised when every error in the table is zero, so no slope exists.
class DegenerateFitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Least-squares slope of log(error) against log(h). Requires at least three
/// records with distinct N.
RateEstimate fit_rate(std::span<const ErrorRecord> records, ErrorNorm which);

/// Full fit, plus a refit without the coarsest N whenever the full fit has
/// r^2 < 0.99 and at least four points are available.
struct RateReport {
    RateEstimate full;
    std::optional<RateEstimate> without_coarsest;

    [[nodiscard]] const RateEstimate& best() const
    {
        return without_coarsest ? *without_coarsest : full;
    }
};

RateReport fit_rate_report(std::span<const ErrorRecord> records, ErrorNorm which);

struct NormEquivalence {
    bool lhs_ok = false;  ///< (1/6)(v,v)_h <= (v,v) <= (v,v)_h
    bool rhs_ok = false;  ///< h v(y_1)^2 <= ||v||_h^2 <= 6 ||v||^2
};

NormEquivalence norm_equivalence_check(const ElongationField& v);

}  // namespace swimmer
