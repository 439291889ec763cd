#include "eqcs/fields.hpp"
#include "eqcs/gauge.hpp"
#include "eqcs/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace eqcs;

namespace {

constexpr double pi = std::numbers::pi;

bool is(const MultiIndex& I, std::initializer_list<int> v)
{
    return I == MultiIndex(v);
}

AlgebraForm constant_one_form(const Grid& g, GroupId grp, std::vector<AlgebraElement> comps)
{
    std::vector<AlgebraField> fs;
    for (const auto& c : comps)
        fs.push_back(AlgebraField::constant(c));
    return Connection::trig(grp, g.dim(), fs).sample(g);
}

double coefficient(const RealForm& w, std::size_t pt = 0)
{
    return w.at(0, pt);
}

}

TEST_CASE("integrate: unit area, symmetry and a closed-form integral")
{
    const Grid g = Grid::torus(2, 32);
    CHECK(integrate(real_form(g, 2, [](const MultiIndex&, const GridPoint&) { return 1.0; })) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(integrate(real_form(g, 2, [](const MultiIndex&, const GridPoint& x) {
              return std::cos(2 * pi * x[1]);
          }))) < 1e-15);
    const double s2 = integrate(real_form(g, 2, [](const MultiIndex&, const GridPoint& x) {
        return std::pow(std::sin(2 * pi * x[0]), 2);
    }));
    CHECK(std::abs(s2 - 0.5) < 1e-12);
    CHECK_THROWS_AS(integrate(real_form(g, 1, [](const MultiIndex&, const GridPoint&) { return 1.0; })), DegreeError);
}

TEST_CASE("trig polynomials of low degree integrate exactly")
{
    const Grid g = Grid::torus(2, 16);
    // |k| <= 7 < N/2; exact integral is 0.25 from the constant term of cos^2 cos^2
    const double v = integrate(real_form(g, 2, [](const MultiIndex&, const GridPoint& x) {
        return std::pow(std::cos(2 * pi * x[0]) * std::cos(6 * pi * x[1]), 2) + std::sin(14 * pi * x[0]);
    }));
    CHECK(std::abs(v - 0.25) < 1e-13);
}

TEST_CASE("exterior derivative of sin(2 pi y) dx")
{
    const Grid g = Grid::torus(2, 24);
    auto value = [](const MultiIndex& I, const GridPoint& x) { return I[0] == 0 ? std::sin(2 * pi * x[1]) : 0.0; };
    auto partial = [](const MultiIndex& I, int axis, const GridPoint& x) {
        return I[0] == 0 && axis == 1 ? 2 * pi * std::cos(2 * pi * x[1]) : 0.0;
    };
    for (bool analytic : {true, false}) {
        const RealForm w = analytic ? real_form(g, 1, value, partial) : real_form(g, 1, value);
        const RealForm dw = exterior_derivative(w);
        REQUIRE(dw.degree() == 2);
        double err = 0.0;
        for (std::size_t p = 0; p < g.points(); ++p)
            err = std::max(err, std::abs(dw.at(0, p) + 2 * pi * std::cos(2 * pi * g.point(p)[1])));
        CHECK(err < 1e-10);
    }
}

TEST_CASE("d of a constant form vanishes and d d = 0 on the spectral path")
{
    const Grid g = Grid::torus(2, 20);
    const RealForm dx = real_form(g, 1, [](const MultiIndex& I, const GridPoint&) { return I[0] == 0 ? 1.0 : 0.0; });
    CHECK(exterior_derivative(dx).max_abs() < 1e-14);
    const RealForm f = real_form(g, 0, [](const MultiIndex&, const GridPoint& x) {
        return std::cos(2 * pi * x[0]) * std::sin(2 * pi * x[1]);
    });
    CHECK(exterior_derivative(exterior_derivative(f)).max_abs() < 1e-10);
    CHECK_THROWS_AS(exterior_derivative(exterior_derivative(exterior_derivative(f))), DegreeError);
}

TEST_CASE("Stokes on T^2 x I")
{
    const Grid g = Grid::slab(16, 13);
    auto value = [](const MultiIndex& I, const GridPoint& x) {
        if (is(I, {0, 1}))
            return x[2] * x[2] * std::cos(2 * pi * x[0]) + x[2] * x[2] * x[2] + 0.3;
        if (is(I, {0, 2}))
            return x[2] * std::sin(2 * pi * x[1]);
        return std::cos(2 * pi * (x[0] + x[1])) * (1 - x[2]);
    };
    auto partial = [](const MultiIndex& I, int axis, const GridPoint& x) {
        const double z = x[2];
        if (is(I, {0, 1})) {
            if (axis == 0)
                return -2 * pi * z * z * std::sin(2 * pi * x[0]);
            if (axis == 2)
                return 2 * z * std::cos(2 * pi * x[0]) + 3 * z * z;
            return 0.0;
        }
        if (is(I, {0, 2})) {
            if (axis == 1)
                return 2 * pi * z * std::cos(2 * pi * x[1]);
            if (axis == 2)
                return std::sin(2 * pi * x[1]);
            return 0.0;
        }
        if (axis == 2)
            return -std::cos(2 * pi * (x[0] + x[1]));
        return -2 * pi * std::sin(2 * pi * (x[0] + x[1])) * (1 - z);
    };
    for (bool analytic : {true, false}) {
        const RealForm w = analytic ? real_form(g, 2, value, partial) : real_form(g, 2, value);
        const double bulk = integrate(exterior_derivative(w));
        const RealForm top = restrict_to_slice(w, 2, g.size(2) - 1);
        const RealForm bottom = restrict_to_slice(w, 2, 0);
        CHECK(bulk == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(std::abs(bulk - (integrate(top) - integrate(bottom))) < 1e-8);
    }
}

TEST_CASE("p_wedge reference values")
{
    const Grid g = Grid::torus(2, 8);
    const auto pu = CharacteristicPair::u1(1);
    const auto a = constant_one_form(g, GroupId::U1, {AlgebraElement::u1(2 * pi), AlgebraElement::zero(GroupId::U1)});
    const auto b = constant_one_form(g, GroupId::U1, {AlgebraElement::zero(GroupId::U1), AlgebraElement::u1(2 * pi)});
    CHECK(coefficient(p_wedge(pu, a, b)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(integrate(p_wedge(pu, a, b)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(coefficient(p_wedge(pu, b, a)) == doctest::Approx(-1.0).epsilon(1e-14));

    const auto ps = CharacteristicPair::su2(1);
    const auto X = AlgebraElement::su2(1, 0, 0), Z = AlgebraElement::zero(GroupId::SU2);
    const auto xa = constant_one_form(g, GroupId::SU2, {X, Z}), xb = constant_one_form(g, GroupId::SU2, {Z, X});
    CHECK(coefficient(p_wedge(ps, xa, xb)) == doctest::Approx(1.0 / (4 * pi * pi)).epsilon(1e-14));
    const auto zero = constant_one_form(g, GroupId::SU2, {Z, Z});
    CHECK(p_wedge(ps, zero, xb).max_abs() == 0.0);
}

TEST_CASE("p_wedge graded symmetry")
{
    const Grid g4({8, 8, 8, 8}, {AxisKind::Periodic, AxisKind::Periodic, AxisKind::Periodic, AxisKind::Periodic});
    const Grid g2 = Grid::torus(2, 10);
    auto field = [](double a, double b, double c, std::array<double, 3> k) {
        const Mat2 m = AlgebraElement::su2(a, b, c).matrix();
        return AlgebraField(GroupId::SU2, {AlgebraField::Mode{k, m, Mat2(0.5 * m)}});
    };
    const Connection A = Connection::trig(GroupId::SU2, 2, {field(0.3, 0.1, -0.2, {1, 0, 0}), field(0.2, -0.5, 0.1, {0, 1, 0})});
    const Connection B = Connection::trig(GroupId::SU2, 2, {field(-0.4, 0.2, 0.3, {1, 1, 0}), field(0.1, 0.1, 0.6, {0, 1, 0})});
    const auto p = CharacteristicPair::su2(1);
    const auto a = A.sample(g2), b = B.sample(g2);
    CHECK((p_wedge(p, a, b) + p_wedge(p, b, a)).max_abs() < 1e-12);

    auto two_form = [&](double s) {
        return AlgebraForm::from_generator(g4, 2, GroupId::SU2,
                                           FormGenerator<Mat2>{[s](const MultiIndex& I, const GridPoint& x) {
                                                                   const double w = I[0] + 2.0 * I[1] + s;
                                                                   return AlgebraElement::su2(std::cos(2 * pi * x[I[0]]) * w,
                                                                                              s, std::sin(2 * pi * x[3]))
                                                                       .matrix();
                                                               },
                                                               {},
                                                               {}});
    };
    const auto F = two_form(0.3), G = two_form(-1.2);
    CHECK((p_wedge(p, F, G) - p_wedge(p, G, F)).max_abs() < 1e-12);
    CHECK_THROWS_AS(p_wedge(p, {&F, &G, &F}), std::invalid_argument);
}

TEST_CASE("wedge of a one-form with itself is the bracket")
{
    const Grid g = Grid::torus(2, 8);
    const auto X = AlgebraElement::su2(0.3, 0.4, -0.1), Y = AlgebraElement::su2(-0.2, 0.7, 0.5);
    const auto A = constant_one_form(g, GroupId::SU2, {X, Y});
    const auto AA = wedge(A, A);
    REQUIRE(AA.degree() == 2);
    CHECK((AA.at(0, 3) - mat::bracket(X.matrix(), Y.matrix())).norm() < 1e-15);
}

TEST_CASE("grid mismatches are refused")
{
    const auto a = Connection::product(GroupId::SU2, 2).sample(Grid::torus(2, 8));
    const auto b = Connection::product(GroupId::SU2, 2).sample(Grid::torus(2, 10));
    CHECK_THROWS_AS(wedge(a, b), GridMismatch);
}

TEST_CASE("quadrature rules")
{
    const auto& gl = gauss_legendre(5);
    double m = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i)
        m += gl.weights[i] * std::pow(gl.nodes[i], 9);
    CHECK(m == doctest::Approx(0.1).epsilon(1e-14));
    for (int n : {5, 6, 9}) {
        const auto w = simpson_weights(n);
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            s += w[i] * std::pow(double(i) / (n - 1), 3);
        CHECK(s == doctest::Approx(0.25).epsilon(1e-14));
    }
    std::vector<double> xs(1000, 0.1);
    CHECK(pairwise_sum(xs) == doctest::Approx(100.0).epsilon(1e-14));
}
