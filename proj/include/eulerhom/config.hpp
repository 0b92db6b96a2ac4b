#pragma once

#include <cstdint>
#include <string>

#include "eulerhom/classify.hpp"

namespace eulerhom {

enum class OutputFormat { JSON, CSV };

struct RunConfig {
    double quadrature_tol = 1e-10;
    double root_tol = 1e-10;
    double ode_tol = 1e-10;
    int points_per_arc = 512;
    OutputFormat format = OutputFormat::JSON;
    std::string output;  // empty: standard output
    std::uint64_t seed = 20240501;

    SolveOptions solve_options() const;
};

// Keys as in RunConfig; missing keys keep their defaults. Unknown keys and
// bad values throw std::invalid_argument.
RunConfig config_from_json(const std::string& text, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});
std::string config_to_json(const RunConfig& c);

}  // namespace eulerhom
