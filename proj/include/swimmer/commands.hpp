#pragma once

#include "swimmer/config.hpp"
#include "swimmer/displacement.hpp"
#include "swimmer/fem.hpp"
#include "swimmer/metrics.hpp"

#include <filesystem>
#include <vector>

namespace swimmer::cli {

struct ConvergenceStudy {
    MassVariant scheme = MassVariant::PaperLumped;
    std::vector<ErrorRecord> records;
    RateReport l2;
    RateReport h1;
};

/// Error of the chosen scheme against the continuous periodic solution for
/// every N in config.n_list.
///
/// method = "periodic": exact periodic response of the semi-discrete system
///   (the closed-form discrete mode for the N-spring scheme).
/// method = "transient": Crank-Nicolson from the interpolated analytic state
///   at t = 0, burn_in_periods periods, then one more period; errors at the
///   end of that period (or the max over 16 times within it).
ConvergenceStudy run_convergence(const RunConfig& config);

/// Errors of one scheme at one N, following the same rules.
ErrorRecord convergence_point(const RunConfig& config, MassVariant scheme, int n);

/// Equispaced (or log-spaced) values from config.from to config.to.
std::vector<double> sweep_values(const RunConfig& config);

/// Output file names, relative to the output directory.
inline constexpr const char* kElongationsCsv = "elongations.csv";
inline constexpr const char* kPositionsCsv = "positions.csv";
inline constexpr const char* kAnalyticCsv = "analytic.csv";
inline constexpr const char* kConvergenceCsv = "convergence.csv";
inline constexpr const char* kConvergenceJson = "convergence.json";
inline constexpr const char* kSweepCsv = "sweep.csv";
inline constexpr const char* kSweepJson = "sweep.json";
inline constexpr const char* kOptimumJson = "optimum.json";

void cmd_simulate(const RunConfig& config, const std::filesystem::path& out_dir);
void cmd_converge(const RunConfig& config, const std::filesystem::path& out_dir);
void cmd_sweep(const RunConfig& config, const std::filesystem::path& out_dir);
void cmd_optimize(const RunConfig& config, const std::filesystem::path& out_dir);
void cmd_analytic(const RunConfig& config, const std::filesystem::path& out_dir);

}  // namespace swimmer::cli
