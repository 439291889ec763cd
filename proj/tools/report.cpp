#include "report.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace eqcs::cli {

bool Report::pass() const
{
    for (const auto& c : checks)
        if (!c.pass())
            return false;
    return true;
}

Format format_from_string(const std::string& s)
{
    if (s == "json")
        return Format::Json;
    if (s == "csv")
        return Format::Csv;
    throw std::invalid_argument("unknown format '" + s + "'");
}

double round12(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

Json rational(const mpq_class& q)
{
    return Json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

Json circle(const CircleValue& v)
{
    Json j{{"value", round12(v.value())}, {"raw", round12(v.raw())}};
    if (v.exact())
        j["exact"] = rational(*v.exact());
    return j;
}

Json to_json(const Report& r, bool timings)
{
    Json j;
    j["scenario"] = r.scenario;
    j["operation"] = r.operation;
    j["results"] = r.results;
    Json checks = Json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name},
                          {"residual", round12(c.residual)},
                          {"tolerance", round12(c.tolerance)},
                          {"samples", c.samples},
                          {"pass", c.pass()}});
    j["checks"] = checks;
    j["convergence"] = r.convergence;
    j["sign_conventions"] = r.conventions;
    j["pass"] = r.pass();
    if (timings) {
        Json t = Json::object();
        for (const auto& [k, v] : r.timings)
            t[k] = round12(v);
        j["timings"] = t;
    }
    return j;
}

Report report_from_json(const Json& j)
{
    Report r;
    r.scenario = j.at("scenario");
    r.operation = j.at("operation").get<std::string>();
    r.results = j.at("results");
    for (const auto& c : j.at("checks"))
        r.checks.push_back({c.at("name").get<std::string>(), c.at("residual").get<double>(),
                            c.at("tolerance").get<double>(), c.at("samples").get<std::size_t>()});
    r.convergence = j.value("convergence", Json::array());
    r.conventions = j.value("sign_conventions", std::vector<std::string>{});
    if (j.contains("timings"))
        for (const auto& [k, v] : j.at("timings").items())
            r.timings.emplace_back(k, v.get<double>());
    return r;
}

std::string emit_report(const Report& r, Format f, bool timings)
{
    if (f == Format::Json)
        return to_json(r, timings).dump(2) + "\n";
    std::ostringstream out;
    out << "check,max_residual,tolerance,samples,pass\n";
    char buf[64];
    for (const auto& c : r.checks) {
        out << c.name << ',';
        std::snprintf(buf, sizeof buf, "%.12g", c.residual);
        out << buf << ',';
        std::snprintf(buf, sizeof buf, "%.12g", c.tolerance);
        out << buf << ',' << c.samples << ',' << (c.pass() ? "pass" : "fail") << '\n';
    }
    return out.str();
}

}
