#ifndef DTLURE_TOOLS_SPEC_INPUT_HPP
#define DTLURE_TOOLS_SPEC_INPUT_HPP

#include <optional>
#include <string>
#include <vector>

#include <dtlure/exact.hpp>
#include <dtlure/lure.hpp>

#include "json.hpp"

namespace dtlure::tools {

/// One initial-state entry: always carries a float value; in exact mode a
/// field-element literal may be given instead of a plain number.
struct X0Entry {
    double value = 0.0;
    std::optional<std::string> exact_literal;
};

/**
 * Parsed input document. Parsing is strict: unknown keys anywhere are
 * rejected, naming the offending key.
 */
struct SystemSpec {
    std::vector<double> num;
    std::vector<double> den;
    double alpha = 0.0;
    std::optional<std::vector<X0Entry>> x0;
    std::optional<int> horizon;
    std::string mode = "float";
    long long exact_d = 0;
    Tolerances tolerances;
};

/// Throws std::invalid_argument with a descriptive message on any schema
/// violation.
SystemSpec parse_system_spec(const nlohmann::json& doc);

/// Reads a whole file, or stdin when path is "-".
std::string slurp_input(const std::string& path);

}  // namespace dtlure::tools

#endif
