#pragma once

#include "eqcs/circle.hpp"

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace eqcs::cli {

using Json = nlohmann::ordered_json;

struct Check {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    std::size_t samples = 1;
    bool pass() const { return residual < tolerance; }
};

struct Report {
    Json scenario = Json::object();
    std::string operation;
    Json results = Json::array();
    std::vector<Check> checks;
    Json convergence = Json::array();
    std::vector<std::string> conventions;
    std::vector<std::pair<std::string, double>> timings;

    bool pass() const;
};

enum class Format { Json, Csv };
Format format_from_string(const std::string& s);

/// x rounded to 12 significant digits.
double round12(double x);
Json rational(const mpq_class& q);
/// {"value": ..., "raw": ..., "exact": {"num", "den"}?}
Json circle(const CircleValue& v);

Json to_json(const Report& r, bool timings);
Report report_from_json(const Json& j);
/// JSON document, or one csv row per check with its residual and tolerance.
std::string emit_report(const Report& r, Format f, bool timings = false);

}
