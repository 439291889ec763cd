#include "eqcs/boundary.hpp"
#include "eqcs/fixtures.hpp"
#include "oracles.hpp"
#include "run.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <set>
#include <string>

using namespace eqcs;
using cli::ordered_map;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const char* fmt, auto... args)
    {
        char buf[256];
        std::snprintf(buf, sizeof buf, fmt, args...);
        if (!detail.empty())
            detail += "; ";
        detail += buf;
        if (!ok) {
            detail += " [x]";
            pass = false;
        }
    }
};

unsigned threads()
{
    return cli::thread_count_from_env();
}

const char* kScenarioDir = SCENARIO_DIR;

Outcome classical_formula()
{
    Outcome o;
    const auto t0 = Clock::now();
    const auto modes = oracle::t3_modes();
    const double ref = oracle::classical_cs(modes, 24);
    const CircleValue cs = cs_action(su2_t3_fixture(), CharacteristicPair::su2(1), Grid::torus(3, 24));
    const double dt = seconds_since(t0);
    o.require(cs.distance(CircleValue(ref)) < 1e-8, "cs %.12f, classical %.12f, distance %.3g < 1e-8", cs.value(),
              CircleValue(ref).value(), cs.distance(CircleValue(ref)));
    o.require(dt < 10.0, "%.2f s < 10 s", dt);
    return o;
}

Outcome axiom_suite()
{
    Outcome o;
    const auto t0 = Clock::now();
    const auto p = CharacteristicPair::su2(1);
    XiOptions xo;
    xo.n_space = 32;
    const auto chi = xi_character(p, xo);
    const GaugeSpace space(GroupId::SU2, 2);
    const auto battery = su2_battery(12);
    std::function<CharacterReport(std::size_t)> one = [&](std::size_t i) {
        return verify_character(space, chi, {battery[i]});
    };
    const auto parts = ordered_map(battery.size(), one, threads() > 1, threads());
    const double dt = seconds_since(t0);
    o.require(battery.size() >= 12, "%zu fixtures", battery.size());
    for (const auto& axiom : parts.front().axioms) {
        double worst = 0.0;
        for (const auto& part : parts)
            worst = std::max(worst, part.axiom(axiom.name).residual);
        o.require(worst < axiom.tolerance, "%s %.3g < %.0e", axiom.name.c_str(), worst, axiom.tolerance);
    }
    o.require(dt < 300.0, "%.1f s < 300 s", dt);
    return o;
}

/// Errors of Xi(square_eps)/eps^2 against omega; second order or already at the quadrature floor.
void loop_convergence(Outcome& o, const char* label, const Connection& A, const Connection& a, const Connection& b)
{
    const auto p = CharacteristicPair::su2(1);
    XiOptions xo;
    xo.n_time = 97;
    const GaugeSpace space(GroupId::SU2, 2);
    const double w = curvature_two_form(A, a, b, p, xo.n_space);
    std::vector<double> err;
    for (double e : {1.0 / 8, 1.0 / 16, 1.0 / 32}) {
        const auto loop = xi(GaugeMap::identity(GroupId::SU2, 2), space.square_loop(A, a, b, e), p, xo).value;
        err.push_back(std::abs(signed_difference(loop, CircleValue(0.0)) / (e * e) - w));
    }
    constexpr double floor = 1e-9;
    for (std::size_t i = 0; i + 1 < err.size(); ++i) {
        const double order = std::log2(err[i] / err[i + 1]);
        o.require(order >= 2.0 || err[i + 1] <= floor, "%s err %.2e -> %.2e (order %.2f, floor %.0e)", label, err[i],
                  err[i + 1], order, floor);
    }
}

Outcome curvature_formulas()
{
    Outcome o;
    const auto ab = atiyah_bott_fixture();
    const double w = curvature_two_form(ab.A, ab.a, ab.b, CharacteristicPair::su2(1));
    const double ref = 1.0 / (2 * std::numbers::pi * std::numbers::pi);
    o.require(std::abs(w - ref) < 1e-8, "|omega - 1/(2 pi^2)| = %.3g < 1e-8", std::abs(w - ref));
    loop_convergence(o, "atiyah-bott", ab.A, ab.a, ab.b);
    const auto f = su2_battery(1).front();
    loop_convergence(o, f.name.c_str(), f.A, f.a, f.b);
    return o;
}

Outcome cocycle_round_trip()
{
    Outcome o;
    const auto p = CharacteristicPair::su2(1);
    XiOptions xo;
    const GaugeSpace space(GroupId::SU2, 2);
    const auto chi = xi_character(p, xo);
    const auto battery = su2_battery(12);
    const auto c = build_cocycle(space, chi, lambda_form(p, xo), battery);
    std::function<std::array<double, 3>(std::size_t)> one = [&](std::size_t i) {
        const auto& f = battery[i];
        return std::array<double, 3>{
            holonomy_from_cocycle(space, c, f.phi, f.gamma).distance(chi.eval(f.phi, f.gamma)),
            cocycle_identity_residual(space, c, f.phi, f.phi2, f.A),
            path_independence_residual(space, chi, c, f.phi, f.A, f.a)};
    };
    const auto vals = ordered_map(battery.size(), one, threads() > 1, threads());
    std::array<double, 3> worst{};
    for (const auto& v : vals)
        for (int k = 0; k < 3; ++k)
            worst[k] = std::max(worst[k], v[k]);
    o.require(worst[0] < 1e-6, "holonomy vs xi %.3g < 1e-6", worst[0]);
    o.require(worst[1] < 1e-6, "cocycle identity %.3g < 1e-6", worst[1]);
    o.require(worst[2] < 1e-6, "path independence %.3g < 1e-6", worst[2]);
    return o;
}

Outcome abelian_exactness()
{
    Outcome o;
    Rng rng(kDefaultSeed);
    const std::array<std::array<int, 2>, 5> windings{{{0, 0}, {1, 0}, {2, -1}, {0, 1}, {-1, 2}}};
    std::size_t exact = 0, total = 0;
    std::set<std::array<int, 2>> seen;
    for (std::size_t i = 0; i < 20; ++i) {
        const auto w = windings[i % windings.size()];
        const LatticePath g1 = random_lattice_path(rng, 16, 8, w);
        const LatticePath g2 = random_lattice_path(rng, 16, 8, windings[(i + 2) % windings.size()], &g1.samples.back());
        const mpq_class x1 = *exact_xi_u1(g1, 1).exact(), x2 = *exact_xi_u1(g2, 1).exact();
        const mpq_class x12 = *exact_xi_u1(concat(g1, g2), 1).exact();
        const mpq_class xr = *exact_xi_u1(reverse(g1), 1).exact();
        exact += reduce_mod1(mpq_class(x12 - x1 - x2)) == 0;
        exact += reduce_mod1(mpq_class(x1 + xr)) == 0;
        total += 2;
        seen.insert(w);
    }
    o.require(exact == total && seen.count({1, 0}) && seen.count({2, -1}), "%zu/%zu exact identities on 20 fixtures",
              exact, total);

    const auto cf = u1_cross_fixture();
    XiOptions xo;
    xo.n_time = 97;
    const CircleValue ref = xi(cf.phi, cf.gamma, CharacteristicPair::u1(1), xo).value;
    std::array<double, 3> err{};
    const std::array<int, 3> ns{16, 32, 64};
    for (int k = 0; k < 3; ++k)
        err[k] = exact_xi_u1(sample_u1_curve(cf.gamma, ns[k], ns[k]), 1).distance(ref);
    o.require(err[1] < 1e-5, "N=32 cross error %.3g < 1e-5", err[1]);
    const double order = std::log2(err[1] / err[2]);
    o.require(order >= 2.0, "order at N=64 %.4f >= 2 (errors %.4g %.4g %.4g)", order, err[0], err[1], err[2]);
    return o;
}

Outcome boundary_identity()
{
    Outcome o;
    const auto t0 = Clock::now();
    const auto p = CharacteristicPair::su2(1);
    XiOptions xo;
    xo.n_space = 12;
    const BoundaryOptions bo{12, 12, 12};
    const GaugeSpace slab(GroupId::SU2, 3);
    const UnionSpace faces(GaugeSpace(GroupId::SU2, 2));
    const auto battery = slab_battery(3);
    std::vector<std::pair<GaugeMap, Connection>> probes;
    for (const auto& f : battery)
        probes.emplace_back(f.phi, f.A);
    const auto chi = pullback_character(slab, faces, boundary_character(p, xo), boundary_restriction(), probes);
    std::function<double(std::size_t)> one = [&](std::size_t i) {
        const auto& f = battery[i];
        return chi.eval(f.phi, f.gamma).distance(CircleValue(mapping_torus_chern_weil(f.gamma, p, bo)));
    };
    double worst = 0.0;
    for (double v : ordered_map(battery.size(), one, threads() > 1, threads()))
        worst = std::max(worst, v);
    o.require(worst < 1e-3, "|pullback - int p(F)| %.3g < 1e-3", worst);

    std::vector<std::pair<GaugeMap, FamilyCurve>> pairs;
    for (const auto& f : battery)
        pairs.emplace_back(f.phi, f.gamma);
    const double triv = triviality_residual(chi, fiber_form(p, bo), pairs);
    o.require(triv < 1e-3, "triviality %.3g < 1e-3", triv);
    const double dt = seconds_since(t0);
    o.require(dt < 600.0, "%.1f s < 600 s", dt);
    return o;
}

Outcome projectability()
{
    Outcome o;
    XiOptions xo;
    const auto chi = xi_character(CharacteristicPair::u1(1), xo);
    const auto flat = flat_u1_family();
    const auto pf = projectability_check(chi, flat.generators, flat.points, 1e-10);
    o.require(pf.projectable, "flat residual %.3g < 1e-10", pf.residual);

    using oracle::u1;
    const std::array<oracle::Field, 2> a{oracle::Field{{{0, 1, 0}, u1(0.8), u1(-0.3)}, {{1, 1, 0}, u1(0.2), u1(0.1)}},
                                         oracle::Field{{{1, 0, 0}, u1(-0.5), u1(0.6)}, {{1, -1, 0}, u1(0.3), u1(0)}}};
    const oracle::Field xi{{{0, 0, 0}, u1(0.4), u1(0)}, {{1, 0, 0}, u1(0.7), u1(0.2)}, {{0, 1, 0}, u1(0), u1(-0.5)}};
    const Connection A = oracle::to_connection(GroupId::U1, {a[0], a[1]});
    const AlgebraField X = oracle::to_field(GroupId::U1, xi);
    const double ref = oracle::u1_moment(a, xi, 1, 32);
    const auto pc = projectability_check(chi, {X}, {A}, 1e-10);
    o.require(!pc.projectable, "curved fixture not projectable (residual %.3g)", pc.residual);
    o.require(std::abs(chi.moment(A, X) - ref) < 1e-6, "|mu - closed form| %.3g < 1e-6", std::abs(chi.moment(A, X) - ref));
    return o;
}

Outcome lerman_malkin()
{
    Outcome o;
    const auto p = CharacteristicPair::su2(1);
    XiOptions xo;
    const GaugeSpace space(GroupId::SU2, 2);
    const auto chi = xi_character(p, xo);
    const auto battery = su2_battery(3);
    std::function<std::array<double, 3>(std::size_t)> one = [&](std::size_t i) {
        const auto& f = battery[i];
        const EquivariantCycle<GaugeSpace> single{{{f.phi.inverse(), f.gamma}}};
        const CircleValue eta = lerman_malkin_eval(space, chi, single);
        TauChoice<GaugeSpace> detour = [&](const Connection& P, const GaugeMap& g, std::size_t) {
            return space.path({P, space.shift(P, f.b, 1.0), space.act(g, P)}, g);
        };
        const CircleValue eta2 = lerman_malkin_eval(space, chi, single, detour);
        const EquivariantCycle<GaugeSpace> back{
            {{f.phi, f.zeta}, {f.phi.inverse(), space.conjugate(f.phi, space.reverse(f.zeta))}}};
        return std::array<double, 3>{eta.distance(chi.eval(f.phi, f.gamma)), eta.distance(eta2),
                                     lerman_malkin_eval(space, chi, back).distance(CircleValue(0.0))};
    };
    std::array<double, 3> worst{};
    for (const auto& v : ordered_map(battery.size(), one, threads() > 1, threads()))
        for (int k = 0; k < 3; ++k)
            worst[k] = std::max(worst[k], v[k]);
    o.require(worst[0] < 1e-6, "one segment %.3g < 1e-6", worst[0]);
    o.require(worst[1] < 1e-6, "tau independence %.3g < 1e-6", worst[1]);
    o.require(worst[2] < 1e-6, "condition a) %.3g < 1e-6", worst[2]);
    return o;
}

std::vector<cli::Scenario> suite()
{
    std::vector<cli::Scenario> out;
    for (const char* f : {"xi_constant.ini", "verify_su2.ini", "oracle_flat_twisted.ini", "atiyah_bott.ini"})
        out.push_back(cli::load_scenario(std::string(kScenarioDir) + "/" + f));
    out.push_back(cli::parse_scenario("[scenario]\nname = lattice\noperation = oracle\ngroup = U1\n"
                                      "fixture = random-lattice\ncount = 20\ntol = 1e-300\n[lattice]\nn = 16\nsteps = 8\n"));
    out.push_back(cli::parse_scenario("[scenario]\nname = t3\noperation = cs\ngroup = SU2\nfixture = t3\n"
                                      "[grid]\nn = 16\n"));
    out.push_back(cli::parse_scenario("[scenario]\nname = flat\noperation = moment\ngroup = U1\nfixture = flat\n"
                                      "count = 6\ntol = 1e-10\n"));
    out.push_back(cli::parse_scenario("[scenario]\nname = mu\noperation = moment\ngroup = SU2\nfixture = F2\n"
                                      "count = 4\n[grid]\nn = 16\n"));
    return out;
}

Outcome determinism()
{
    Outcome o;
    auto run_all = [](const cli::RunOptions& opt) {
        std::string all;
        for (const auto& s : suite())
            all += cli::emit_report(cli::run_scenario(s, opt), cli::Format::Json);
        return all;
    };
    cli::RunOptions serial, parallel;
    parallel.parallel = true;
    parallel.threads = 4;
    const std::string a = run_all(serial), b = run_all(parallel), c = run_all(serial);
    o.require(a == b && a == c, "%zu scenarios, %zu bytes, serial/parallel/serial identical", suite().size(), a.size());
    return o;
}

}

int main(int argc, char** argv)
{
    struct Criterion {
        int id;
        const char* name;
        Outcome (*run)();
    };
    const Criterion all[] = {
        {1, "classical-formula agreement", classical_formula},
        {2, "character axiom suite", axiom_suite},
        {3, "curvature and moment formulas", curvature_formulas},
        {4, "cocycle round trip", cocycle_round_trip},
        {5, "abelian exactness", abelian_exactness},
        {6, "boundary identity", boundary_identity},
        {7, "projectability", projectability},
        {8, "Lerman-Malkin consistency", lerman_malkin},
        {9, "determinism", determinism},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i)
        only.insert(std::atoi(argv[i]));
    int failed = 0;
    for (const auto& c : all) {
        if (!only.empty() && !only.count(c.id))
            continue;
        const auto t0 = Clock::now();
        Outcome r;
        try {
            r = c.run();
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        std::printf("%s %d %s (%.1f s): %s\n", r.pass ? "PASS" : "FAIL", c.id, c.name, seconds_since(t0),
                    r.detail.c_str());
        std::fflush(stdout);
        failed += !r.pass;
    }
    return failed ? 1 : 0;
}
