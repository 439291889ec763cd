#include "eqcs/abelian_oracle.hpp"
#include "eqcs/fixtures.hpp"

#include <doctest.h>

using namespace eqcs;

namespace {

mpq_class small_rational(Rng& rng)
{
    return mpq_class(rng.integer(-100, 100), 4096);
}

LatticeU1Field random_field3(Rng& rng, int n)
{
    LatticeU1Field f(n, n, n);
    for (int mu = 0; mu < 3; ++mu)
        for (std::size_t v = 0; v < f.vertices(); ++v)
            f.link(mu, v) = small_rational(rng);
    f.fix_plaquettes();
    return f;
}

}

TEST_CASE("zero and pure-gauge lattice fields have zero action")
{
    LatticeU1Field f(4, 4, 4);
    CHECK(lattice_action(f) == 0);
    CHECK(exact_cs_u1(f, 1).exact().value() == 0);
    Rng rng(1);
    std::vector<mpq_class> chi(f.vertices());
    for (auto& c : chi)
        c = small_rational(rng);
    f.gauge(chi);
    f.fix_plaquettes();
    CHECK(f.cube_defect() == 0);
    CHECK(exact_cs_u1(f, 1).exact().value() == 0);
}

TEST_CASE("lattice action is exactly gauge invariant mod 1")
{
    Rng rng(7);
    LatticeU1Field f = random_field3(rng, 4);
    REQUIRE(f.cube_defect() == 0);
    const CircleValue before = exact_cs_u1(f, 1);
    REQUIRE(before.exact());

    std::vector<mpq_class> chi(f.vertices());
    for (auto& c : chi)
        c = small_rational(rng);
    f.gauge(chi);
    CHECK(exact_cs_u1(f, 1).exact().value() == before.exact().value());

    std::vector<long> k(f.vertices());
    for (auto& x : k)
        x = rng.integer(-2, 2);
    f.integer_shift(k, 1);
    CHECK(f.cube_defect() == 0);
    CHECK(exact_cs_u1(f, 1).exact().value() == before.exact().value());
    CHECK(exact_cs_u1(f, 3).exact().value() == reduce_mod1(mpq_class(3 * before.exact().value())));
}

TEST_CASE("inconsistent plaquette integers are refused")
{
    Rng rng(9);
    LatticeU1Field f = random_field3(rng, 3);
    f.plaquette(0, 0) += 1;
    CHECK(f.cube_defect() > 0);
    CHECK_THROWS_AS(exact_cs_u1(f, 1), InconsistentLattice);
    CHECK_THROWS_AS(LatticeU1Field(0, 2, 2), InconsistentLattice);
    CHECK_THROWS_AS(f.gauge(std::vector<mpq_class>(2)), InconsistentLattice);
}

TEST_CASE("lattice paths validate their endpoint relation")
{
    Rng rng(3);
    LatticePath p = random_lattice_path(rng, 8, 4, {1, 0});
    CHECK_NOTHROW(p.validate());
    LatticePath broken = p;
    broken.samples.back().bx[0] += mpq_class(1, 7);
    CHECK_THROWS_AS(broken.validate(), InconsistentLattice);
    LatticePath single = p;
    single.samples.resize(1);
    CHECK_THROWS_AS(single.validate(), InconsistentLattice);
    CHECK_THROWS_AS(concat(p, p), InconsistentLattice);
}

TEST_CASE("twists compose as a group")
{
    Rng rng(4);
    const LatticePath p = random_lattice_path(rng, 8, 3, {2, -1});
    const LatticeTwist& t = p.twist;
    const LatticeConfig& b = p.samples.front();
    CHECK((t * t.inverse()).act(b) == b);
    CHECK((t * t).act(b) == t.act(t.act(b)));
}

TEST_CASE("exact xi is additive and odd under reversal")
{
    Rng rng(11);
    for (std::array<int, 2> w : {std::array<int, 2>{0, 0}, {1, 0}, {2, -1}}) {
        const LatticePath g1 = random_lattice_path(rng, 8, 4, w);
        const LatticeConfig end = g1.samples.back();
        const LatticePath g2 = random_lattice_path(rng, 8, 3, {0, 1}, &end);
        const auto x1 = exact_xi_u1(g1, 1), x2 = exact_xi_u1(g2, 1), x12 = exact_xi_u1(concat(g1, g2), 1);
        CHECK(x12.exact().value() == reduce_mod1(mpq_class(x1.exact().value() + x2.exact().value())));
        const auto xr = exact_xi_u1(reverse(g1), 1);
        CHECK(reduce_mod1(mpq_class(x1.exact().value() + xr.exact().value())) == 0);
    }
}

TEST_CASE("flat twisted lines give twice the holonomy at every resolution")
{
    for (const mpq_class q : {mpq_class(1, 3), mpq_class(2, 5)}) {
        const auto a = exact_xi_u1(flat_twisted_path(6, 6, q, {1, 0}), 1);
        const auto b = exact_xi_u1(flat_twisted_path(12, 12, q, {1, 0}), 1);
        CHECK(a.exact().value() == reduce_mod1(mpq_class(2 * q)));
        CHECK(b.exact().value() == a.exact().value());
    }
}

TEST_CASE("dyadic rounding")
{
    CHECK(dyadic(0.5) == mpq_class(1, 2));
    CHECK(dyadic(-0.25) == mpq_class(-1, 4));
    const double x = 0.123456789;
    CHECK(std::abs(dyadic(x).get_d() - x) < 1e-12);
    CHECK(dyadic(x).get_den() <= mpz_class(1) << 40);
}
