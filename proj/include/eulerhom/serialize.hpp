#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eulerhom/assemble.hpp"

namespace eulerhom {

inline constexpr int kSchemaVersion = 1;

struct Diagnostics {
    double flux = 0.0;
    double residual_max = 0.0;
    std::vector<double> weak_residuals;
    double h1_norm = 0.0;
};

Diagnostics diagnose(const GlobalSolution& g);

struct SolutionDocument {
    GlobalSolution solution;
    std::optional<Diagnostics> diagnostics;
};

// Infinite values are written as the strings "Infinity" / "-Infinity" and
// NaN as "NaN"; everything else as shortest round-trip decimals.
std::string to_json(const SolutionDocument& doc, int indent = 2);
// Rebuilds arc shapes from the stored samples.
SolutionDocument from_json(const std::string& text);

// Field-by-field equality of the stored data (shapes are not compared).
bool same_data(const GlobalSolution& a, const GlobalSolution& b);
bool same_data(const Diagnostics& a, const Diagnostics& b);

}  // namespace eulerhom
