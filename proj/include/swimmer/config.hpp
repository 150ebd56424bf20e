#pragma once

#include "swimmer/model.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace swimmer {

/// Everything a CLI command needs. Physical keys follow the parameter file
/// schema; the rest are command options. Defaults reproduce the reference
/// experiments (baseline swimmer, eps_tilde = 0.7, omega = 1, N = 2000).
struct RunConfig {
    SwimmerParams params;
    double eps_tilde = 0.7;
    double omega = 1.0;

    // converge
    std::string scheme = "nspring";
    std::vector<int> n_list{25, 50, 100, 200, 400, 800};
    std::string method = "periodic";  ///< periodic | transient
    int steps_per_period = 2048;
    int burn_in_periods = 10;
    bool error_max_over_period = false;  ///< max over 16 times instead of t = 2 pi / omega

    // sweep / optimize
    std::string axis = "k_omega";
    double from = 1e-2;
    double to = 1e2;
    int points = 100;
    bool log_spacing = true;
    double bracket_lo = 1e-2;
    double bracket_hi = 1e2;
    int m_quad = 256;
    int m_space = 1024;

    // simulate / analytic
    std::string mode = "analytic";  ///< analytic | transient
    int samples = 64;               ///< time samples per period
    double t_end = 0.0;             ///< transient horizon; 0 means one period

    [[nodiscard]] Forcing forcing() const { return Forcing(eps_tilde, omega, params.L); }

    /// Throws std::invalid_argument describing the first bad option.
    void validate() const;
};

/// Parses a JSON object; unknown keys are rejected with std::invalid_argument.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& path);

/// Fixed 17-significant-digit rendering used by every CSV writer.
std::string format_number(double x);

}  // namespace swimmer
