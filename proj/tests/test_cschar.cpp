#include "eqcs/abelian_oracle.hpp"
#include "eqcs/cschar.hpp"
#include "eqcs/fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace eqcs;

namespace {

constexpr double pi = std::numbers::pi;

AlgebraField su2f(double a, double b, double c, std::array<double, 3> k, bool sine = false)
{
    const Mat2 m = AlgebraElement::su2(a, b, c).matrix();
    return AlgebraField(GroupId::SU2, {AlgebraField::Mode{k, sine ? Mat2(Mat2::Zero()) : m, sine ? m : Mat2(Mat2::Zero())}});
}

struct Setup {
    CharacteristicPair p = CharacteristicPair::su2(1);
    Connection A = Connection::trig(GroupId::SU2, 2,
                                    {su2f(0.7, 0.2, -0.3, {0, 1, 0}) + su2f(0.3, 0.1, 0.2, {0, 0, 0}),
                                     su2f(-0.4, 0.5, 0.1, {1, 0, 0}, true) + su2f(0.2, -0.6, 0.3, {1, 1, 0})});
    AlgebraField xf = su2f(0.5, 0.3, -0.4, {1, 0, 0}) + su2f(0.2, 0.1, 0.3, {0, 1, 0}, true);
    AlgebraField xg = su2f(-0.3, 0.6, 0.2, {0, 1, 0}) + su2f(0.4, 0.1, 0.1, {1, 1, 0}, true);
    Connection a = Connection::trig(GroupId::SU2, 2, {su2f(0.3, -0.2, 0.5, {1, 0, 0}), su2f(0.1, 0.4, -0.2, {0, 1, 0}, true)});
    Connection b = Connection::trig(GroupId::SU2, 2, {su2f(-0.2, 0.3, 0.1, {0, 1, 0}, true), su2f(0.5, 0.2, 0.3, {1, 1, 0})});
    GaugeMap phi = GaugeMap::exp(xf, 2);
    GaugeMap psi = GaugeMap::exp(xg, 2);
};

}

TEST_CASE("smoothing profile")
{
    SmoothingProfile u(0.1);
    CHECK(u(0.0) == 0.0);
    CHECK(u(0.05) == 0.0);
    CHECK(u(1.0) == 1.0);
    CHECK(u(0.97) == 1.0);
    CHECK(u(0.5) == doctest::Approx(0.5).epsilon(1e-14));
    double prev = 0.0;
    for (int i = 1; i <= 200; ++i) {
        const double t = i / 200.0;
        CHECK(u(t) >= prev);
        prev = u(t);
    }
    CHECK(u.derivative(0.1) == doctest::Approx(0.0).epsilon(1e-12));
    const double h = 1e-6;
    CHECK(u.derivative(0.4) == doctest::Approx((u(0.4 + h) - u(0.4 - h)) / (2 * h)).epsilon(1e-6));
}

TEST_CASE("transgression vanishes on the diagonal and matches the abelian closed form")
{
    const Grid g = Grid::torus(3, 10);
    Rng rng(2);
    const auto p = CharacteristicPair::u1(1);
    const Connection A = random_connection(rng, GroupId::U1, 3, 2, 0.5);
    const Connection B = random_connection(rng, GroupId::U1, 3, 2, 0.5);
    CHECK(transgression(A, A, p, g).max_abs() < 1e-15);
    // Tp(A, B) = -k/(4 pi^2) a ^ (F_A + F_B) with a = A - B
    const AlgebraForm a = (A - B).sample(g);
    const AlgebraForm FF = curvature(A, g) + curvature(B, g);
    const RealForm ref = p_wedge(p, a, FF);
    CHECK((transgression(A, B, p, g) - ref).max_abs() < 1e-12);
}

TEST_CASE("cs_action: product connection and the classical formula")
{
    const auto p = CharacteristicPair::su2(1);
    CHECK(cs_action(Connection::product(GroupId::SU2, 3), p, Grid::torus(3, 8)).value() == 0.0);
    const auto modes = oracle::t3_modes();
    const Connection A = oracle::to_connection(GroupId::SU2, {modes[0], modes[1], modes[2]});
    const double ref = oracle::classical_cs(modes, 16);
    CHECK(cs_action(A, p, Grid::torus(3, 16)).distance(CircleValue(ref)) < 1e-8);
    CHECK_THROWS_AS(cs_action(Connection::product(GroupId::SU2, 2), p, Grid::torus(2, 8)), WrongDimension);
}

TEST_CASE("cs_action changes by integers under null-homotopic gauge maps")
{
    const auto p = CharacteristicPair::su2(1);
    const auto modes = oracle::t3_modes();
    const Connection A = oracle::to_connection(GroupId::SU2, {modes[0], modes[1], modes[2]});
    const oracle::Field f{{{1, 0, 1}, oracle::su2(0.4, -0.2, 0.3), oracle::zero()},
                          {{0, 1, 0}, oracle::zero(), oracle::su2(-0.1, 0.5, 0.2)}};
    const GaugeMap phi = GaugeMap::exp(oracle::to_field(GroupId::SU2, f), 3);
    const Grid g = Grid::torus(3, 20);
    CHECK(cs_action(gauge_transform(phi, A), p, g).distance(cs_action(A, p, g)) < 1e-6);
}

TEST_CASE("mapping torus assembly")
{
    Setup s;
    const SmoothingProfile u(0.1);
    const auto flat = assemble_mapping_torus(FamilyCurve::constant(s.A), GaugeMap::identity(GroupId::SU2, 2), u, 8, 9, true);
    CHECK(flat.glue_residual < 1e-12);
    CHECK(flat.end_slice_residual < 1e-12);

    Rng rng(5);
    const Connection B = random_connection(rng, GroupId::U1, 2, 3, 0.5);
    const GaugeMap phi = GaugeMap::u1(2, 0, 0, random_field(rng, GroupId::U1, 2, 2, 0.5));
    const auto tw = assemble_mapping_torus(FamilyCurve::segment(B, phi), phi, u, 8, 9, true);
    CHECK(tw.end_slice_residual < 1e-8);

    const GaugeMap wind = GaugeMap::u1(2, 1, 0, AlgebraField(GroupId::U1));
    CHECK_THROWS(assemble_mapping_torus(FamilyCurve::segment(B, wind), wind, u, 8, 9, true));
    XiOptions o;
    o.lattice_n = 8;
    o.lattice_steps = 8;
    CHECK(xi(wind, FamilyCurve::segment(B, wind), CharacteristicPair::u1(1), o).route == XiRoute::Lattice);
}

TEST_CASE("xi: constant curves, inverses and the lattice route on a flat line")
{
    Setup s;
    XiOptions o;
    o.n_space = 16;
    CHECK(xi(GaugeMap::identity(GroupId::SU2, 2), FamilyCurve::constant(s.A), s.p, o).value.distance(CircleValue(0.0)) <
          1e-14);
    const FamilyCurve g = FamilyCurve::segment(s.A, s.phi);
    const CircleValue x = xi(s.phi, g, s.p, o).value;
    const CircleValue xr = xi(s.phi.inverse(), reverse(g), s.p, o).value;
    CHECK((x + xr).distance(CircleValue(0.0)) < 1e-6);

    // A = 2 pi i q dy, twist exp(2 pi i x)
    const mpq_class q(1, 3);
    const Connection A = Connection::trig(
        GroupId::U1, 2, {AlgebraField(GroupId::U1), AlgebraField::constant(AlgebraElement::u1(2 * pi * q.get_d()))});
    const GaugeMap wind = GaugeMap::u1(2, 1, 0, AlgebraField(GroupId::U1));
    o.lattice_n = 8;
    o.lattice_steps = 8;
    const CircleValue smooth = xi(wind, FamilyCurve::segment(A, wind), CharacteristicPair::u1(1), o).value;
    const CircleValue exact = exact_xi_u1(flat_twisted_path(8, 8, q, {1, 0}), 1);
    CHECK(smooth.distance(exact) < 1e-6);
}

TEST_CASE("curvature two-form reference values")
{
    const auto ps = CharacteristicPair::su2(1);
    const auto ab = atiyah_bott_fixture();
    CHECK(curvature_two_form(ab.A, ab.a, ab.a, ps, 16) == doctest::Approx(0.0));
    const oracle::M2 X = oracle::su2(1, 0, 0), Z = oracle::zero();
    const double ref = oracle::atiyah_bott({X, Z}, {Z, X});
    CHECK(ref == doctest::Approx(1.0 / (2 * pi * pi)).epsilon(1e-14));
    CHECK(std::abs(curvature_two_form(ab.A, ab.a, ab.b, ps, 16) - ref) < 1e-12);

    const auto pu = CharacteristicPair::u1(1);
    const AlgebraField zero(GroupId::U1), two_pi = AlgebraField::constant(AlgebraElement::u1(2 * pi));
    const Connection a = Connection::trig(GroupId::U1, 2, {two_pi, zero});
    const Connection b = Connection::trig(GroupId::U1, 2, {zero, two_pi});
    CHECK(curvature_two_form(Connection::product(GroupId::U1, 2), a, b, pu, 8) == doctest::Approx(2.0).epsilon(1e-14));
    Setup s;
    CHECK(curvature_two_form(s.A, s.a, s.b, s.p) == doctest::Approx(-curvature_two_form(s.A, s.b, s.a, s.p)).epsilon(1e-12));
}

TEST_CASE("moment: flat and zero directions, finite differences")
{
    Setup s;
    CHECK(moment(Connection::product(GroupId::SU2, 2), s.xg, s.p) == doctest::Approx(0.0));
    CHECK(moment(s.A, AlgebraField(GroupId::SU2), s.p) == 0.0);
    XiOptions o;
    const double h = 0.05;
    auto f = [&](double t) { return xi(GaugeMap::exp(s.xg, 2, t), FamilyCurve::orbit(s.A, s.xg, t), s.p, o).value; };
    const double fd = signed_difference(f(h), f(-h)) / (2 * h);
    CHECK(std::abs(fd - moment(s.A, s.xg, s.p)) < 1e-4);
}

TEST_CASE("abelian moment against the closed-form integral")
{
    Rng rng(40);
    std::array<oracle::Field, 2> A;
    oracle::Field xi;
    auto rnd = [&] { return rng.uniform(-0.5, 0.5); };
    for (auto* f : {&A[0], &A[1], &xi})
        for (int m = 0; m < 3; ++m)
            f->push_back({{double(rng.integer(-1, 1)), double(rng.integer(-1, 1)), 0.0}, oracle::u1(rnd()), oracle::u1(rnd())});
    const Connection C = oracle::to_connection(GroupId::U1, {A[0], A[1]});
    const double ref = oracle::u1_moment(A, xi, 1, 24);
    CHECK(std::abs(moment(C, oracle::to_field(GroupId::U1, xi), CharacteristicPair::u1(1), 24) - ref) < 1e-12);
}

TEST_CASE("lambda: constant curves, square loops and additivity")
{
    Setup s;
    XiOptions o;
    const Connection A0 = Connection::product(GroupId::SU2, 2);
    CHECK(integrate_lambda(FamilyCurve::constant(s.A), A0, s.p, o) == 0.0);
    // omega does not depend on A for SU(2), so the loop integral is eps^2 omega exactly
    const double w = curvature_two_form(s.A, s.a, s.b, s.p);
    XiOptions fine = o;
    fine.n_time = 97;
    for (double e : {0.25, 0.125, 0.0625}) {
        const FamilyCurve sq =
            FamilyCurve::polygon({s.A, s.A + s.a.scaled(e), s.A + s.a.scaled(e) + s.b.scaled(e), s.A + s.b.scaled(e)});
        CHECK(std::abs(integrate_lambda(sq, A0, s.p, fine) / (e * e) - w) < 1e-9);
    }

    const FamilyCurve g1 = FamilyCurve::segment(s.A, s.phi);
    const FamilyCurve g2 = FamilyCurve::segment(g1.end(), s.psi);
    const double l1 = integrate_lambda(g1, A0, s.p, o), l2 = integrate_lambda(g2, A0, s.p, o);
    CHECK(std::abs(integrate_lambda(concat(g1, g2), A0, s.p, o) - l1 - l2) < 1e-10);
    CHECK_THROWS_AS(integrate_lambda(g1, s.A, s.p, o), std::invalid_argument);
}

TEST_CASE("pointwise lambda integrates to the line integral")
{
    Setup s;
    XiOptions o;
    const FamilyCurve g = FamilyCurve::segment(s.A, s.phi);
    const auto& gl = gauss_legendre(8);
    double line = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i)
        line += gl.weights[i] * lambda_one_form(g.at(gl.nodes[i]), g.velocity(gl.nodes[i]), s.p);
    CHECK(std::abs(line - integrate_lambda(g, Connection::product(GroupId::SU2, 2), s.p, o)) < 1e-7);
}

TEST_CASE("cocycle from lambda agrees with the cylinder construction")
{
    Setup s;
    XiOptions o;
    o.n_time = 97;
    const FamilyCurve g = FamilyCurve::segment(s.A, s.phi);
    const CircleValue alpha =
        CircleValue(integrate_lambda(g, Connection::product(GroupId::SU2, 2), s.p, o)) - xi(s.phi, g, s.p, o).value;
    const double rsw = rsw_cocycle(s.phi, s.A, s.p, o);
    CHECK(alpha.distance(CircleValue(rsw)) < 1e-6);
    CHECK(rsw == doctest::Approx(-0.0079342226).epsilon(1e-6));
}
