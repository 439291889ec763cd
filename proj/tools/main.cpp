#include "report.hpp"
#include "run.hpp"
#include "scenario.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace cli = eqcs::cli;

namespace {

struct Flags {
    std::string config;
    std::string input;
    std::string output;
    std::string format = "json";
    std::optional<int> grid;
    std::optional<double> tol;
    bool parallel = false;
    bool timings = false;
};

void write(const std::string& text, const std::string& path)
{
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error(path + ": cannot write");
    out << text;
}

int run(const Flags& f, std::optional<cli::Operation> op)
{
    const auto format = cli::format_from_string(f.format);
    cli::Report rep;
    if (!f.input.empty()) {
        std::ifstream in(f.input);
        if (!in)
            throw cli::ConfigError(f.input + ": cannot open");
        try {
            rep = cli::report_from_json(cli::Json::parse(in));
        } catch (const cli::Json::exception& e) {
            throw cli::ConfigError(f.input + ": " + e.what());
        }
    } else {
        if (f.config.empty())
            throw cli::ConfigError("--config: required");
        auto s = cli::load_scenario(f.config);
        if (op)
            s.operation = *op;
        cli::RunOptions ro;
        ro.parallel = f.parallel;
        ro.grid = f.grid;
        ro.tol = f.tol;
        rep = cli::run_scenario(s, ro);
    }
    write(cli::emit_report(rep, format, f.timings), f.output);
    return rep.pass() ? 0 : 1;
}

}

int main(int argc, char** argv)
{
    CLI::App app{"Equivariant Chern-Simons characters: evaluation, verification batteries and lattice oracle"};
    app.require_subcommand(1);
    Flags flags;
    std::optional<cli::Operation> chosen;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config,-c", flags.config, "scenario file (INI)");
        sub->add_option("--grid", flags.grid, "override the spatial grid size");
        sub->add_option("--tol", flags.tol, "override the scenario tolerance");
        sub->add_option("--format", flags.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--output,-o", flags.output, "write the report to a file");
        sub->add_flag("--parallel", flags.parallel, "evaluate battery items on CSCHAR_THREADS workers");
        sub->add_flag("--timings", flags.timings, "include wall-clock timings");
    };
    const std::pair<const char*, cli::Operation> ops[] = {
        {"cs", cli::Operation::Cs},           {"xi", cli::Operation::Xi},
        {"verify", cli::Operation::Verify},   {"curvature", cli::Operation::Curvature},
        {"moment", cli::Operation::Moment},   {"oracle", cli::Operation::Oracle},
    };
    for (const auto& [name, op] : ops) {
        auto* sub = app.add_subcommand(name, "run the scenario as '" + std::string(name) + "'");
        common(sub);
        sub->callback([&chosen, op = op] { chosen = op; });
    }
    auto* rep = app.add_subcommand("report", "run a scenario with its own operation, or re-emit a saved JSON report");
    common(rep);
    rep->add_option("--input,-i", flags.input, "saved JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        return run(flags, chosen);
    } catch (const cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 3;
    } catch (const cli::InvalidScenario& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 1;
    }
}
