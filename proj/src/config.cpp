#include "swimmer/config.hpp"

#include "swimmer/displacement.hpp"
#include "swimmer/fem.hpp"

#include <json.hpp>

#include <fmt/format.h>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace swimmer {

namespace {

using nlohmann::json;

template <typename T>
void read(const json& j, const char* key, T& target)
{
    if (auto it = j.find(key); it != j.end()) {
        try {
            target = it->get<T>();
        } catch (const json::exception&) {
            throw std::invalid_argument(std::string("config key '") + key + "' has the wrong type");
        }
    }
}

}  // namespace

void RunConfig::validate() const
{
    params.validate();
    (void)forcing();
    (void)parse_mass_variant(scheme);
    (void)parse_sweep_axis(axis);
    if (method != "periodic" && method != "transient") {
        throw std::invalid_argument("method must be 'periodic' or 'transient'");
    }
    if (mode != "analytic" && mode != "transient") {
        throw std::invalid_argument("mode must be 'analytic' or 'transient'");
    }
    if (n_list.size() < 3) {
        throw std::invalid_argument("n_list needs at least three entries");
    }
    for (int n : n_list) {
        if (n < 1) {
            throw std::invalid_argument("n_list entries must be >= 1");
        }
    }
    if (steps_per_period < 1 || burn_in_periods < 0) {
        throw std::invalid_argument("steps_per_period must be >= 1 and burn_in_periods >= 0");
    }
    if (error_max_over_period && steps_per_period % 16 != 0) {
        throw std::invalid_argument("steps_per_period must be a multiple of 16 for max-over-period errors");
    }
    if (points < 1) {
        throw std::invalid_argument("points must be >= 1");
    }
    if (!(to >= from) || (points > 1 && !(to > from))) {
        throw std::invalid_argument("sweep range must satisfy from < to");
    }
    if (log_spacing && !(from > 0.0)) {
        throw std::invalid_argument("log sweeps need a positive lower bound");
    }
    if (!(bracket_lo > 0.0) || !(bracket_hi > bracket_lo)) {
        throw std::invalid_argument("bracket must satisfy 0 < lo < hi");
    }
    if (m_quad < 64 || m_space < 128) {
        throw std::invalid_argument("m_quad must be >= 64 and m_space >= 128");
    }
    if (samples < 1 || !(t_end >= 0.0)) {
        throw std::invalid_argument("samples must be >= 1 and t_end >= 0");
    }
}

RunConfig parse_config(const std::string& json_text)
{
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw std::invalid_argument("config must be a JSON object");
    }

    static const char* const known[] = {
        "a_tilde", "a1", "Lambda", "L", "k_tilde", "mu", "n_springs", "eps_tilde", "omega",
        "scheme", "n_list", "method", "steps_per_period", "burn_in_periods", "error_max_over_period",
        "axis", "from", "to", "points", "log", "bracket", "m_quad", "m_space",
        "mode", "samples", "t_end",
    };
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : known) {
            ok = ok || item.key() == k;
        }
        if (!ok) {
            throw std::invalid_argument("unknown config key '" + item.key() + "'");
        }
    }

    RunConfig c;
    read(j, "a_tilde", c.params.a_tilde);
    read(j, "a1", c.params.a1);
    read(j, "Lambda", c.params.Lambda);
    read(j, "L", c.params.L);
    read(j, "k_tilde", c.params.k_tilde);
    read(j, "mu", c.params.mu);
    read(j, "n_springs", c.params.n_springs);
    read(j, "eps_tilde", c.eps_tilde);
    read(j, "omega", c.omega);
    read(j, "scheme", c.scheme);
    read(j, "n_list", c.n_list);
    read(j, "method", c.method);
    read(j, "steps_per_period", c.steps_per_period);
    read(j, "burn_in_periods", c.burn_in_periods);
    read(j, "error_max_over_period", c.error_max_over_period);
    read(j, "axis", c.axis);
    read(j, "from", c.from);
    read(j, "to", c.to);
    read(j, "points", c.points);
    read(j, "log", c.log_spacing);
    read(j, "m_quad", c.m_quad);
    read(j, "m_space", c.m_space);
    read(j, "mode", c.mode);
    read(j, "samples", c.samples);
    read(j, "t_end", c.t_end);
    if (auto it = j.find("bracket"); it != j.end()) {
        std::vector<double> b;
        read(j, "bracket", b);
        if (b.size() != 2) {
            throw std::invalid_argument("bracket must be a two-element array");
        }
        c.bracket_lo = b[0];
        c.bracket_hi = b[1];
    }
    c.validate();
    return c;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config file " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string format_number(double x)
{
    return fmt::format("{:.17g}", x);
}

}  // namespace swimmer
