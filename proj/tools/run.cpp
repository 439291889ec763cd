#include "run.hpp"

#include "eqcs/abelian_oracle.hpp"
#include "eqcs/cschar.hpp"
#include "eqcs/equivariant.hpp"
#include "eqcs/fixtures.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>

namespace eqcs::cli {

unsigned thread_count_from_env()
{
    if (const char* env = std::getenv("CSCHAR_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0)
            return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<std::string> sign_conventions()
{
    return {
        "p(X1,X2) = -k/(8 pi^2) Re tr(X1 X2) on su(2)",
        "p(X1,X2) = -k/(4 pi^2) X1 X2 on u(1) = iR",
        "CS(A) = -int_M Tp(A, A0) mod Z",
        "Xi(phi, gamma) = -int_{M x S^1} Tp in the orientation (x, y, s)",
        "int_gamma lambda = -int_{M x I} Tp(A^gamma, A0)",
        "omega(a, b) = r(r-1) int_M p(a, b, F, ..., F)",
        "mu(X) = -r int_M p(v_A(X), F, ..., F)",
        "alpha_phi(A) = int_segment lambda - Xi(phi, segment)",
    };
}

namespace {

using Clock = std::chrono::steady_clock;

Json echo(const Scenario& s)
{
    Json j;
    j["name"] = s.name;
    j["operation"] = to_string(s.operation);
    j["group"] = to_string(s.group);
    j["level"] = s.level;
    j["fixture"] = s.fixture;
    j["count"] = s.count;
    j["seed"] = s.seed;
    j["grid"] = s.grid;
    j["time_nodes"] = s.time_nodes;
    j["winding"] = s.winding;
    j["generator"] = {round12(s.generator[0]), round12(s.generator[1]), round12(s.generator[2])};
    j["curve"] = s.curve;
    j["eps"] = round12(s.eps);
    j["program"] = s.program;
    j["lattice"] = {{"n", s.lattice_n}, {"steps", s.lattice_steps}, {"holonomy", s.holonomy}};
    j["expected"] = s.expected ? Json(round12(*s.expected)) : Json(nullptr);
    j["tol"] = round12(s.tol);
    Json t = Json::object();
    for (const auto& [k, v] : s.tolerances)
        t[k] = round12(v);
    j["tolerances"] = t;
    return j;
}

XiOptions xi_options(const Scenario& s)
{
    XiOptions o;
    o.n_space = s.grid;
    o.n_time = s.time_nodes;
    o.lattice_n = s.lattice_n;
    o.lattice_steps = s.lattice_steps;
    return o;
}

VerifyOptions verify_options(const Scenario& s)
{
    VerifyOptions v;
    auto get = [&](const char* k, double& dst) {
        if (auto it = s.tolerances.find(k); it != s.tolerances.end())
            dst = it->second;
    };
    get("additivity", v.tol_additivity);
    get("base_change", v.tol_base_change);
    get("curvature", v.tol_curvature);
    get("moment", v.tol_moment);
    get("inverse", v.tol_inverse);
    get("conjugation", v.tol_conjugation);
    get("reparametrization", v.tol_reparametrization);
    return v;
}

std::vector<Fixture<GaugeSpace>> gauge_battery(const Scenario& s)
{
    const std::uint64_t seed = s.seed ? s.seed : kDefaultSeed;
    if (s.fixture == "F2") {
        if (s.group != GroupId::SU2)
            throw InvalidScenario("scenario.fixture: F2 needs group SU2");
        return su2_battery(s.count, seed);
    }
    if (s.fixture == "F1") {
        if (s.group != GroupId::U1)
            throw InvalidScenario("scenario.fixture: F1 needs group U1");
        return u1_battery(s.count, seed);
    }
    throw InvalidScenario("scenario.fixture: '" + s.fixture + "' is not a connection battery");
}

GaugeMap twist_map(const Scenario& s)
{
    if (s.group == GroupId::SU2) {
        if (s.winding != std::array<int, 2>{0, 0})
            throw InvalidScenario("twist.winding: SU(2) twists on T^2 have no winding");
        const auto& g = s.generator;
        return GaugeMap::exp(AlgebraField::constant(AlgebraElement::su2(g[0], g[1], g[2])), 2);
    }
    return GaugeMap::u1(2, s.winding[0], s.winding[1],
                        AlgebraField::constant(AlgebraElement::u1(s.generator[0])));
}

void add_expectation(Report& r, const Scenario& s, const CircleValue& v)
{
    if (s.expected)
        r.checks.push_back({"expected value", v.distance(CircleValue(*s.expected)), s.tol});
}

Report run_cs(const Scenario& s)
{
    Report r;
    const auto p = CharacteristicPair::builtin(s.group, s.level);
    Connection A = Connection::product(s.group, 3);
    if (s.fixture == "t3" && s.group == GroupId::SU2) {
        A = su2_t3_fixture();
    } else if (s.fixture == "random") {
        Rng rng(s.seed ? s.seed : kDefaultSeed);
        A = random_connection(rng, s.group, 3, 3, 0.5);
    } else if (s.fixture != "product") {
        throw InvalidScenario("scenario.fixture: cs accepts t3 (SU2), random or product");
    }
    const CircleValue v = cs_action(A, p, Grid::torus(3, s.grid));
    r.results.push_back({{"fixture", s.fixture}, {"cs", circle(v)}});
    add_expectation(r, s, v);
    return r;
}

Report run_xi(const Scenario& s)
{
    Report r;
    const auto p = CharacteristicPair::builtin(s.group, s.level);
    GaugeSpace space(s.group, 2);
    Scenario one = s;
    one.count = 1;
    const auto bat = gauge_battery(one);
    const Fixture<GaugeSpace>& f = bat.front();
    const GaugeMap phi = twist_map(s);
    auto piece = [&](const std::string& kind, const Connection& A) -> FamilyCurve {
        if (kind == "constant")
            return FamilyCurve::constant(A);
        if (kind == "linear")
            return space.segment(A, phi);
        if (kind == "orbit") {
            if (s.group != GroupId::SU2)
                throw InvalidScenario("curve.program: orbit pieces need group SU2");
            const auto& g = s.generator;
            return space.orbit(A, AlgebraField::constant(AlgebraElement::su2(g[0], g[1], g[2])), 1.0);
        }
        if (kind == "loop-square")
            return space.square_loop(A, f.a, f.b, s.eps);
        throw ConfigError("curve.program: unknown piece '" + kind + "'");
    };
    FamilyCurve gamma = s.curve == "concat" ? piece(s.program.front(), f.A) : piece(s.curve, f.A);
    if (s.curve == "concat")
        for (std::size_t i = 1; i < s.program.size(); ++i)
            gamma = space.concat(gamma, piece(s.program[i], gamma.end()));
    const XiResult v = xi(gamma.twist(), gamma, p, xi_options(s));
    Json res{{"curve", s.curve}, {"route", to_string(v.route)}, {"xi", circle(v.value)}};
    if (v.value.exact())
        res["exact"] = rational(*v.value.exact());
    r.results.push_back(res);
    if (s.curve == "constant")
        r.checks.push_back({"constant curve", v.value.distance(CircleValue(0.0)), s.tol});
    add_expectation(r, s, v.value);
    return r;
}

void merge_axioms(Report& r, const std::vector<CharacterReport>& parts, const std::vector<std::string>& names)
{
    std::vector<Check> merged;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        Json row{{"fixture", names[i]}};
        Json ax = Json::object();
        for (const auto& a : parts[i].axioms) {
            ax[a.name] = round12(a.residual);
            auto it = std::find_if(merged.begin(), merged.end(), [&](const Check& c) { return c.name == a.name; });
            if (it == merged.end()) {
                merged.push_back({a.name, a.residual, a.tolerance, a.samples});
            } else {
                it->residual = std::max(it->residual, a.residual);
                it->samples += a.samples;
            }
        }
        row["axioms"] = ax;
        r.results.push_back(row);
    }
    r.checks = merged;
}

Report run_verify(const Scenario& s, const RunOptions& opt)
{
    Report r;
    const VerifyOptions vo = verify_options(s);
    if (s.fixture == "translation") {
        TranslationSpace space;
        const auto bat = translation_battery(s.count, s.seed ? s.seed : kDefaultSeed);
        const auto chi = translation_character(s.winding[0], s.winding[1]);
        std::vector<CharacterReport> parts;
        std::vector<std::string> names;
        for (const auto& f : bat) {
            parts.push_back(verify_character(space, chi, {f}, vo));
            names.push_back(f.name);
        }
        merge_axioms(r, parts, names);
        return r;
    }
    const auto p = CharacteristicPair::builtin(s.group, s.level);
    GaugeSpace space(s.group, 2);
    const auto bat = gauge_battery(s);
    const auto chi = xi_character(p, xi_options(s));
    std::function<CharacterReport(std::size_t)> one = [&](std::size_t i) {
        return verify_character(space, chi, {bat[i]}, vo);
    };
    const auto parts = ordered_map(bat.size(), one, opt.parallel, opt.threads);
    std::vector<std::string> names;
    for (const auto& f : bat)
        names.push_back(f.name);
    merge_axioms(r, parts, names);
    return r;
}

Report run_curvature(const Scenario& s, const RunOptions& opt)
{
    Report r;
    const auto p = CharacteristicPair::builtin(s.group, s.level);
    if (s.fixture == "atiyah-bott") {
        if (s.group != GroupId::SU2)
            throw InvalidScenario("scenario.fixture: atiyah-bott needs group SU2");
        const auto ab = atiyah_bott_fixture();
        const double w = curvature_two_form(ab.A, ab.a, ab.b, p, s.grid);
        const double ref = s.level / (2.0 * std::numbers::pi * std::numbers::pi);
        r.results.push_back({{"fixture", "atiyah-bott"}, {"omega", round12(w)}, {"reference", round12(ref)}});
        r.checks.push_back({"atiyah-bott value", std::abs(w - ref), s.tol});
        return r;
    }
    GaugeSpace space(s.group, 2);
    const auto bat = gauge_battery(s);
    const auto chi = xi_character(p, xi_options(s));
    const double tol = s.tolerances.count("curvature") ? s.tolerances.at("curvature") : 1e-5;
    std::function<std::pair<double, double>(std::size_t)> one = [&](std::size_t i) {
        const auto& f = bat[i];
        const double w = chi.curvature(f.A, f.a, f.b);
        const double loop = signed_difference(chi.eval(space.identity(), space.square_loop(f.A, f.a, f.b, s.eps)),
                                              CircleValue(0.0));
        return std::pair{w, loop};
    };
    const auto vals = ordered_map(bat.size(), one, opt.parallel, opt.threads);
    Check c{"curvature", 0.0, tol, 0};
    for (std::size_t i = 0; i < bat.size(); ++i) {
        const auto [w, loop] = vals[i];
        const double flux = square_flux(space, chi, bat[i].A, bat[i].a, bat[i].b, s.eps, 3);
        r.results.push_back({{"fixture", bat[i].name},
                             {"omega", round12(w)},
                             {"square_flux", round12(flux)},
                             {"loop", round12(loop)}});
        c.residual = std::max(c.residual, std::abs(loop - flux));
        ++c.samples;
    }
    r.checks.push_back(c);
    if (!bat.empty()) {
        const auto& f = bat.front();
        const double w = chi.curvature(f.A, f.a, f.b);
        for (double e : {0.125, 0.0625, 0.03125}) {
            const double loop =
                signed_difference(chi.eval(space.identity(), space.square_loop(f.A, f.a, f.b, e)), CircleValue(0.0));
            r.convergence.push_back(
                {{"eps", round12(e)}, {"ratio", round12(loop / (e * e))}, {"error", round12(std::abs(loop / (e * e) - w))}});
        }
    }
    return r;
}

Report run_moment(const Scenario& s, const RunOptions& opt)
{
    Report r;
    const auto p = CharacteristicPair::builtin(s.group, s.level);
    const auto chi = xi_character(p, xi_options(s));
    if (s.fixture == "flat" || s.fixture == "curved") {
        if (s.group != GroupId::U1)
            throw InvalidScenario("scenario.fixture: flat and curved families need group U1");
        const std::uint64_t seed = s.seed ? s.seed : kDefaultSeed;
        const FlatFamily fam = s.fixture == "flat" ? flat_u1_family(s.count, seed) : curved_u1_family(s.count, seed);
        const auto pr = projectability_check(chi, fam.generators, fam.points, s.tol);
        r.results.push_back({{"fixture", s.fixture}, {"projectable", pr.projectable}, {"residual", round12(pr.residual)}});
        if (s.fixture == "flat")
            r.checks.push_back({"projectability", pr.residual, s.tol, fam.points.size()});
        return r;
    }
    GaugeSpace space(s.group, 2);
    const auto bat = gauge_battery(s);
    const double h = 0.05;
    const double tol = s.tolerances.count("moment") ? s.tolerances.at("moment") : 1e-4;
    std::function<std::pair<double, double>(std::size_t)> one = [&](std::size_t i) {
        const auto& f = bat[i];
        const double mu = chi.moment(f.A, f.X);
        const CircleValue vp = chi.eval(space.exp(f.X, h), space.orbit(f.A, f.X, h));
        const CircleValue vm = chi.eval(space.exp(f.X, -h), space.orbit(f.A, f.X, -h));
        return std::pair{mu, signed_difference(vp, vm) / (2.0 * h)};
    };
    const auto vals = ordered_map(bat.size(), one, opt.parallel, opt.threads);
    Check c{"moment", 0.0, tol, 0};
    for (std::size_t i = 0; i < bat.size(); ++i) {
        r.results.push_back({{"fixture", bat[i].name}, {"mu", round12(vals[i].first)}, {"difference", round12(vals[i].second)}});
        c.residual = std::max(c.residual, std::abs(vals[i].first - vals[i].second));
        ++c.samples;
    }
    r.checks.push_back(c);
    return r;
}

Report run_oracle(const Scenario& s, const RunOptions& opt)
{
    Report r;
    if (s.group != GroupId::U1)
        throw InvalidScenario("scenario.group: the lattice oracle is abelian");
    if (s.fixture == "flat-twisted") {
        mpq_class q;
        try {
            q = mpq_class(s.holonomy);
        } catch (const std::invalid_argument&) {
            throw ConfigError("lattice.holonomy: cannot parse '" + s.holonomy + "'");
        }
        q.canonicalize();
        const CircleValue v1 = exact_xi_u1(flat_twisted_path(s.lattice_n, s.lattice_steps, q, s.winding), s.level);
        const CircleValue v2 =
            exact_xi_u1(flat_twisted_path(2 * s.lattice_n, 2 * s.lattice_steps, q, s.winding), s.level);
        r.results.push_back({{"n", s.lattice_n}, {"xi", circle(v1)}});
        r.results.push_back({{"n", 2 * s.lattice_n}, {"xi", circle(v2)}});
        const mpq_class d = abs(*v1.exact() - *v2.exact());
        r.checks.push_back({"resolution independence", d.get_d(), s.tol});
        return r;
    }
    if (s.fixture == "random-lattice") {
        Rng rng(s.seed ? s.seed : kDefaultSeed);
        static const std::array<std::array<int, 2>, 5> windings = {{{0, 0}, {1, 0}, {2, -1}, {0, 1}, {-1, 2}}};
        std::vector<std::pair<LatticePath, LatticePath>> fixtures;
        for (std::size_t i = 0; i < s.count; ++i) {
            auto g1 = random_lattice_path(rng, s.lattice_n, s.lattice_steps, windings[i % windings.size()]);
            auto g2 = random_lattice_path(rng, s.lattice_n, s.lattice_steps, windings[(i + 2) % windings.size()],
                                          &g1.samples.back());
            fixtures.emplace_back(std::move(g1), std::move(g2));
        }
        std::function<std::pair<mpq_class, mpq_class>(std::size_t)> one = [&](std::size_t i) {
            const auto& [g1, g2] = fixtures[i];
            const auto x1 = *exact_xi_u1(g1, s.level).exact();
            const auto x2 = *exact_xi_u1(g2, s.level).exact();
            const auto x12 = *exact_xi_u1(concat(g1, g2), s.level).exact();
            const auto xr = *exact_xi_u1(reverse(g1), s.level).exact();
            return std::pair{reduce_mod1(mpq_class(x12 - x1 - x2)), reduce_mod1(mpq_class(x1 + xr))};
        };
        const auto vals = ordered_map(fixtures.size(), one, opt.parallel, opt.threads);
        Check add{"additivity (exact)", 0.0, s.tol, 0}, inv{"inverse (exact)", 0.0, s.tol, 0};
        for (std::size_t i = 0; i < vals.size(); ++i) {
            const auto& t = fixtures[i].first.twist;
            r.results.push_back({{"fixture", i},
                                 {"winding", {t.wx, t.wy}},
                                 {"additivity_defect", rational(vals[i].first)},
                                 {"inverse_defect", rational(vals[i].second)}});
            add.residual = std::max(add.residual, vals[i].first.get_d());
            inv.residual = std::max(inv.residual, vals[i].second.get_d());
            ++add.samples;
            ++inv.samples;
        }
        add.tolerance = inv.tolerance = std::numeric_limits<double>::min();
        r.checks.push_back(add);
        r.checks.push_back(inv);
        return r;
    }
    if (s.fixture == "cross") {
        const auto cf = u1_cross_fixture();
        const auto p = CharacteristicPair::builtin(GroupId::U1, s.level);
        XiOptions o = xi_options(s);
        o.n_time = std::max(o.n_time, 97);
        const CircleValue ref = xi(cf.phi, cf.gamma, p, o).value;
        const CircleValue lat = exact_xi_u1(sample_u1_curve(cf.gamma, s.lattice_n, s.lattice_steps), s.level);
        r.results.push_back({{"quadrature", circle(ref)}, {"lattice", circle(lat)}, {"n", s.lattice_n}});
        r.checks.push_back({"cross-pipeline", lat.distance(ref), s.tol});
        return r;
    }
    throw InvalidScenario("scenario.fixture: oracle accepts flat-twisted, random-lattice or cross");
}

}

Report run_scenario(Scenario s, const RunOptions& opt)
{
    if (opt.grid) {
        if (*opt.grid < 8)
            throw InvalidScenario("--grid: must be at least 8");
        s.grid = *opt.grid;
    }
    if (opt.tol) {
        if (*opt.tol <= 0.0)
            throw InvalidScenario("--tol: must be positive");
        s.tol = *opt.tol;
    }
    RunOptions o = opt;
    if (o.threads == 0)
        o.threads = thread_count_from_env();
    const auto t0 = Clock::now();
    Report r;
    switch (s.operation) {
    case Operation::Cs: r = run_cs(s); break;
    case Operation::Xi: r = run_xi(s); break;
    case Operation::Verify: r = run_verify(s, o); break;
    case Operation::Curvature: r = run_curvature(s, o); break;
    case Operation::Moment: r = run_moment(s, o); break;
    case Operation::Oracle: r = run_oracle(s, o); break;
    }
    r.scenario = echo(s);
    r.operation = to_string(s.operation);
    r.conventions = sign_conventions();
    r.timings.emplace_back("wall_seconds", std::chrono::duration<double>(Clock::now() - t0).count());
    return r;
}

}
