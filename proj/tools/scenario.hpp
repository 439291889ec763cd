#pragma once

#include "eqcs/lie.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqcs::cli {

/// Config that does not parse against the grammar; exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parsed but inconsistent input; exit code 3.
class InvalidScenario : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Operation { Cs, Xi, Verify, Curvature, Moment, Oracle };
std::string to_string(Operation op);
Operation operation_from_string(const std::string& s);

struct Scenario {
    std::string name = "scenario";
    Operation operation = Operation::Xi;
    GroupId group = GroupId::SU2;
    int level = 1;
    /// F1, F2, flat-twisted, atiyah-bott, t3, translation, random-lattice.
    std::string fixture = "F2";
    std::size_t count = 12;
    std::uint64_t seed = 0;
    int grid = 32;
    int time_nodes = 49;

    std::array<int, 2> winding{0, 0};
    std::array<double, 3> generator{0.0, 0.0, 0.0};

    /// constant | linear | loop-square | concat
    std::string curve = "linear";
    double eps = 0.25;
    std::vector<std::string> program;

    int lattice_n = 16;
    int lattice_steps = 16;
    std::string holonomy = "1/3";

    std::optional<double> expected;
    double tol = 1e-6;
    std::map<std::string, double> tolerances;
};

/// INI grammar: sections [scenario], [grid], [twist], [curve], [lattice], [tolerances].
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

}
