#include "scenario.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace eqcs::cli {

namespace pt = boost::property_tree;

std::string to_string(Operation op)
{
    switch (op) {
    case Operation::Cs: return "cs";
    case Operation::Xi: return "xi";
    case Operation::Verify: return "verify";
    case Operation::Curvature: return "curvature";
    case Operation::Moment: return "moment";
    case Operation::Oracle: return "oracle";
    }
    return "?";
}

Operation operation_from_string(const std::string& s)
{
    for (auto op : {Operation::Cs, Operation::Xi, Operation::Verify, Operation::Curvature, Operation::Moment,
                    Operation::Oracle})
        if (to_string(op) == s)
            return op;
    throw ConfigError("scenario.operation: unknown operation '" + s + "'");
}

namespace {

const std::map<std::string, std::set<std::string>>& grammar()
{
    static const std::map<std::string, std::set<std::string>> g = {
        {"scenario", {"name", "operation", "group", "level", "fixture", "count", "seed", "expected", "tol"}},
        {"grid", {"n", "time"}},
        {"twist", {"winding", "generator"}},
        {"curve", {"kind", "eps", "program"}},
        {"lattice", {"n", "steps", "holonomy"}},
        {"tolerances",
         {"additivity", "base_change", "curvature", "moment", "inverse", "conjugation", "reparametrization"}},
    };
    return g;
}

template <class T>
T field(const pt::ptree& tree, const std::string& key, T fallback)
{
    auto node = tree.get_child_optional(pt::ptree::path_type(key, '.'));
    if (!node)
        return fallback;
    try {
        return node->get_value<T>();
    } catch (const pt::ptree_bad_data&) {
        throw ConfigError(key + ": cannot parse '" + node->data() + "'");
    }
}

template <class T, std::size_t N>
std::array<T, N> tuple_field(const pt::ptree& tree, const std::string& key, std::array<T, N> fallback)
{
    auto s = tree.get_optional<std::string>(key);
    if (!s)
        return fallback;
    std::istringstream in(*s);
    std::array<T, N> out{};
    for (auto& x : out)
        if (!(in >> x))
            throw ConfigError(key + ": expected " + std::to_string(N) + " numbers, got '" + *s + "'");
    std::string rest;
    if (in >> rest)
        throw ConfigError(key + ": trailing input '" + rest + "'");
    return out;
}

}

Scenario parse_scenario(const std::string& text)
{
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("line " + std::to_string(e.line()) + ": " + e.message());
    }
    for (const auto& [section, body] : tree) {
        auto it = grammar().find(section);
        if (it == grammar().end())
            throw ConfigError(section + ": unknown section");
        for (const auto& [key, v] : body)
            if (!it->second.count(key))
                throw ConfigError(section + "." + key + ": unknown key");
    }

    Scenario s;
    if (!tree.get_optional<std::string>("scenario.group"))
        throw ConfigError("scenario.group: missing required field");
    try {
        s.group = group_from_string(tree.get<std::string>("scenario.group"));
    } catch (const std::invalid_argument&) {
        throw ConfigError("scenario.group: unknown group '" + tree.get<std::string>("scenario.group") + "'");
    }
    if (auto op = tree.get_optional<std::string>("scenario.operation"))
        s.operation = operation_from_string(*op);
    s.name = field<std::string>(tree, "scenario.name", s.name);
    s.level = field<int>(tree, "scenario.level", s.level);
    s.fixture = field<std::string>(tree, "scenario.fixture", s.fixture);
    s.count = field<std::size_t>(tree, "scenario.count", s.count);
    s.seed = field<std::uint64_t>(tree, "scenario.seed", s.seed);
    if (tree.get_optional<std::string>("scenario.expected"))
        s.expected = field<double>(tree, "scenario.expected", 0.0);
    s.tol = field<double>(tree, "scenario.tol", s.tol);
    s.grid = field<int>(tree, "grid.n", s.grid);
    s.time_nodes = field<int>(tree, "grid.time", s.time_nodes);
    s.winding = tuple_field<int, 2>(tree, "twist.winding", s.winding);
    s.generator = tuple_field<double, 3>(tree, "twist.generator", s.generator);
    s.curve = field<std::string>(tree, "curve.kind", s.curve);
    s.eps = field<double>(tree, "curve.eps", s.eps);
    if (auto prog = tree.get_optional<std::string>("curve.program")) {
        std::istringstream ps(*prog);
        for (std::string w; ps >> w;)
            s.program.push_back(w);
    }
    s.lattice_n = field<int>(tree, "lattice.n", s.lattice_n);
    s.lattice_steps = field<int>(tree, "lattice.steps", s.lattice_steps);
    s.holonomy = field<std::string>(tree, "lattice.holonomy", s.holonomy);
    if (auto t = tree.get_child_optional("tolerances"))
        for (const auto& [key, v] : *t)
            s.tolerances[key] = field<double>(*t, key, 0.0);

    if (s.grid < 8)
        throw InvalidScenario("grid.n: must be at least 8");
    if (s.lattice_n < 2 || s.lattice_steps < 1)
        throw InvalidScenario("lattice: n must be at least 2 and steps at least 1");
    if (s.level < 1)
        throw InvalidScenario("scenario.level: must be positive");
    if (s.tol <= 0.0)
        throw InvalidScenario("scenario.tol: must be positive");
    for (const auto& [k, v] : s.tolerances)
        if (v <= 0.0)
            throw InvalidScenario("tolerances." + k + ": must be positive");
    if (s.eps <= 0.0)
        throw InvalidScenario("curve.eps: must be positive");
    if (s.time_nodes < 5 || s.time_nodes % 2 == 0)
        throw InvalidScenario("grid.time: must be odd and at least 5");
    static const std::set<std::string> curves = {"constant", "linear", "loop-square", "concat"};
    if (!curves.count(s.curve))
        throw ConfigError("curve.kind: unknown curve '" + s.curve + "'");
    if (s.curve == "concat" && s.program.empty())
        throw ConfigError("curve.program: required for concat curves");
    return s;
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(path + ": cannot open");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

}
