#pragma once

#include "swimmer/model.hpp"

#include <complex>
#include <span>
#include <string_view>
#include <vector>

namespace swimmer {

/// Uniform partition of (0, Lambda) with nodes y_j = (j-1) h, j = 1..N+1.
struct UniformGrid {
    int n = 0;
    double length = 0.0;

    UniformGrid() = default;
    UniformGrid(int n_cells, double total_length);

    [[nodiscard]] double h() const { return length / n; }
    /// 1-based node coordinate; the last node is exactly Lambda.
    [[nodiscard]] double node(int j) const;
    [[nodiscard]] bool operator==(const UniformGrid&) const = default;
};

enum class MassVariant { Consistent, PaperLumped, ClassicalLumped };

std::string_view to_string(MassVariant variant);
/// Accepts "galerkin"/"consistent", "nspring"/"paper", "lumped"/"classical".
MassVariant parse_mass_variant(std::string_view name);

/// Tridiagonal matrix with sub-, main- and super-diagonal.
struct Tridiagonal {
    std::vector<double> lower;  ///< size n-1, entry (i+1, i)
    std::vector<double> diag;   ///< size n
    std::vector<double> upper;  ///< size n-1, entry (i, i+1)

    [[nodiscard]] std::size_t size() const { return diag.size(); }
    [[nodiscard]] double at(std::size_t i, std::size_t j) const;
    [[nodiscard]] bool is_symmetric() const { return lower == upper; }

    void multiply(std::span<const double> x, std::span<double> y) const;
    [[nodiscard]] std::vector<double> multiply(std::span<const double> x) const;
};

/// a*A + b*B for two matrices of equal size.
Tridiagonal combine(double a, const Tridiagonal& A, double b, const Tridiagonal& B);

/// LU factors of a tridiagonal matrix without pivoting (Thomas algorithm).
/// Throws std::runtime_error when a pivot vanishes.
template <typename T>
class TridiagonalFactorization {
public:
    TridiagonalFactorization() = default;
    explicit TridiagonalFactorization(const std::vector<T>& lower, const std::vector<T>& diag,
                                      const std::vector<T>& upper);

    /// Solves in place.
    void solve(std::span<T> rhs) const;
    [[nodiscard]] std::size_t size() const { return pivot_.size(); }

private:
    std::vector<T> lower_;
    std::vector<T> upper_;
    std::vector<T> pivot_;
};

extern template class TridiagonalFactorization<double>;
extern template class TridiagonalFactorization<std::complex<double>>;

/// Semi-discrete system  M dL/dt + K_h L = f(t)  on the nodes 1..N.
class AssembledSystem {
public:
    AssembledSystem(const SwimmerParams& params, const Forcing& forcing, MassVariant variant);

    [[nodiscard]] const Tridiagonal& stiffness() const { return stiffness_; }
    [[nodiscard]] const Tridiagonal& mass() const { return mass_; }
    [[nodiscard]] MassVariant variant() const { return variant_; }
    [[nodiscard]] const UniformGrid& grid() const { return grid_; }
    [[nodiscard]] const SwimmerParams& params() const { return params_; }
    [[nodiscard]] const Forcing& forcing() const { return forcing_; }
    [[nodiscard]] std::size_t size() const { return mass_.size(); }

    /// Only the first component of the load is non-zero: -(Lambda/2) dL0/dt.
    [[nodiscard]] double load_head(double t) const;
    [[nodiscard]] std::vector<double> load(double t) const;

private:
    SwimmerParams params_;
    Forcing forcing_;
    MassVariant variant_;
    UniformGrid grid_;
    Tridiagonal stiffness_;
    Tridiagonal mass_;
};

AssembledSystem assemble(const SwimmerParams& params, const Forcing& forcing, MassVariant variant);

/// Continuous piecewise-linear field on the grid; values has N+1 entries, the last is zero.
struct ElongationField {
    UniformGrid grid;
    std::vector<double> values;

    /// Throws std::invalid_argument on size mismatch, non-finite values or a
    /// non-zero last node.
    ElongationField(UniformGrid g, std::vector<double> v);
    /// Appends the Dirichlet zero to the N interior/head unknowns.
    static ElongationField from_unknowns(const UniformGrid& g, std::span<const double> unknowns);
    static ElongationField zero(const UniformGrid& g);

    [[nodiscard]] std::span<const double> unknowns() const
    {
        return std::span<const double>(values).first(values.size() - 1);
    }
};

/// Crank-Nicolson integrator with the factorization of (M + dt/2 K_h) cached.
class CrankNicolsonStepper {
public:
    CrankNicolsonStepper(const AssembledSystem& system, double dt);

    /// Advances state from t to t + dt in place.
    void step(std::span<double> state, double t) const;
    [[nodiscard]] double dt() const { return dt_; }

private:
    Forcing forcing_;
    double Lambda_;
    double dt_;
    Tridiagonal explicit_part_;
    TridiagonalFactorization<double> implicit_part_;
};

/// One Crank-Nicolson step; builds a fresh factorization.
std::vector<double> step_crank_nicolson(const AssembledSystem& system, std::span<const double> state,
                                        double t, double dt);

struct Trajectory {
    std::vector<double> times;
    std::vector<ElongationField> states;
};

/// Integrates from t0 = 0 to t_end, recording the state every sample_interval
/// (which must be an integer multiple of dt) including the initial one.
Trajectory solve_transient(const AssembledSystem& system, const ElongationField& initial,
                           double t_end, double dt, double sample_interval);

/// Advances state over [t0, t0 + steps*dt] without recording.
void integrate(const CrankNicolsonStepper& stepper, std::span<double> state, double t0, long steps);

/// Exact time-periodic response of the semi-discrete system to the harmonic
/// forcing: solves (i omega M + K_h) U = F with F_1 = -(Lambda/2) i omega eps.
std::vector<std::complex<double>> periodic_response(const AssembledSystem& system);

}  // namespace swimmer
