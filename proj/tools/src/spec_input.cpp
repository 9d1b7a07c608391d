#include "spec_input.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dtlure::tools {

namespace {

void reject_unknown_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!allowed.count(key))
            throw std::invalid_argument("unknown key \"" + key + "\" in " + where);
    }
}

std::vector<double> number_list(const nlohmann::json& arr, const std::string& name) {
    if (!arr.is_array() || arr.empty())
        throw std::invalid_argument("\"" + name + "\" must be a nonempty array of numbers");
    std::vector<double> out;
    for (const auto& v : arr) {
        if (!v.is_number())
            throw std::invalid_argument("\"" + name + "\" must contain numbers only");
        out.push_back(v.get<double>());
    }
    return out;
}

}  // namespace

SystemSpec parse_system_spec(const nlohmann::json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("input document must be a JSON object");
    reject_unknown_keys(doc, {"num", "den", "alpha", "x0", "horizon", "mode", "exact_d",
                              "tolerances"},
                        "input document");

    SystemSpec spec;
    if (!doc.contains("num") || !doc.contains("den") || !doc.contains("alpha"))
        throw std::invalid_argument("input document requires \"num\", \"den\" and \"alpha\"");
    spec.num = number_list(doc.at("num"), "num");
    spec.den = number_list(doc.at("den"), "den");
    if (!doc.at("alpha").is_number())
        throw std::invalid_argument("\"alpha\" must be a number");
    spec.alpha = doc.at("alpha").get<double>();

    if (doc.contains("x0")) {
        const auto& arr = doc.at("x0");
        if (!arr.is_array()) throw std::invalid_argument("\"x0\" must be an array");
        std::vector<X0Entry> entries;
        for (const auto& v : arr) {
            X0Entry e;
            if (v.is_number()) {
                e.value = v.get<double>();
            } else if (v.is_string()) {
                e.exact_literal = v.get<std::string>();
                e.value = exact::parse_quadrat(*e.exact_literal).to_double();
            } else {
                throw std::invalid_argument("\"x0\" entries must be numbers or exact strings");
            }
            entries.push_back(std::move(e));
        }
        spec.x0 = std::move(entries);
    }

    if (doc.contains("horizon")) {
        if (!doc.at("horizon").is_number_integer() || doc.at("horizon").get<long long>() < 1)
            throw std::invalid_argument("\"horizon\" must be a positive integer");
        spec.horizon = doc.at("horizon").get<int>();
    }

    if (doc.contains("mode")) {
        spec.mode = doc.at("mode").get<std::string>();
        if (spec.mode != "float" && spec.mode != "exact")
            throw std::invalid_argument("\"mode\" must be \"float\" or \"exact\"");
    }

    if (doc.contains("exact_d")) {
        if (!doc.at("exact_d").is_number_integer() || doc.at("exact_d").get<long long>() < 0)
            throw std::invalid_argument("\"exact_d\" must be a nonnegative integer");
        spec.exact_d = doc.at("exact_d").get<long long>();
    }

    if (doc.contains("tolerances")) {
        const auto& tol = doc.at("tolerances");
        if (!tol.is_object()) throw std::invalid_argument("\"tolerances\" must be an object");
        reject_unknown_keys(tol, {"conv_tol", "osc_threshold", "period_tol", "offX_tol", "window"},
                            "tolerances");
        if (tol.contains("conv_tol")) spec.tolerances.conv_tol = tol.at("conv_tol").get<double>();
        if (tol.contains("osc_threshold"))
            spec.tolerances.osc_threshold = tol.at("osc_threshold").get<double>();
        if (tol.contains("period_tol"))
            spec.tolerances.period_tol = tol.at("period_tol").get<double>();
        if (tol.contains("offX_tol")) spec.tolerances.offX_tol = tol.at("offX_tol").get<double>();
        if (tol.contains("window")) spec.tolerances.window = tol.at("window").get<int>();
        if (spec.tolerances.conv_tol <= 0 || spec.tolerances.osc_threshold <= 0 ||
            spec.tolerances.period_tol <= 0 || spec.tolerances.offX_tol <= 0)
            throw std::invalid_argument("tolerances must be positive");
    }
    return spec;
}

std::string slurp_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file \"" + path + "\"");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace dtlure::tools
