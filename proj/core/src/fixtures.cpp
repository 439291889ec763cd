#include "eqcs/fixtures.hpp"

#include <cmath>

namespace eqcs {

namespace {

constexpr double kTwoPi = 6.283185307179586;

Mat2 random_element(Rng& rng, GroupId g, double amplitude)
{
    if (g == GroupId::U1)
        return AlgebraElement::u1(rng.uniform(-amplitude, amplitude)).matrix();
    return AlgebraElement::su2(rng.uniform(-amplitude, amplitude), rng.uniform(-amplitude, amplitude),
                               rng.uniform(-amplitude, amplitude))
        .matrix();
}

std::array<double, 3> random_wave(Rng& rng, int dim)
{
    std::array<double, 3> k{0.0, 0.0, 0.0};
    k[0] = rng.integer(-1, 1);
    k[1] = rng.integer(-1, 1);
    if (dim == 3)
        k[2] = 0.25 * rng.integer(0, 2);
    return k;
}

mpq_class random_rational(Rng& rng, double range, long den = 1024)
{
    mpq_class q(static_cast<long>(std::floor(rng.uniform(-range, range) * den)), den);
    q.canonicalize();
    return q;
}

LatticeConfig random_config(Rng& rng, int n)
{
    auto c = LatticeConfig::zero(n);
    for (auto& x : c.bx)
        x = random_rational(rng, 0.05);
    for (auto& x : c.by)
        x = random_rational(rng, 0.05);
    return c;
}

template <class Space>
Fixture<GaugeSpace> gauge_fixture(Rng& rng, const Space& space, GroupId g, int dim, std::size_t i,
                                  double amp, const std::string& prefix)
{
    const Connection A = random_connection(rng, g, dim, 3, amp);
    const AlgebraField xi = random_field(rng, g, dim, 3, amp);
    GaugeMap phi = space.exp(xi, 1.0);
    FamilyCurve gamma = space.segment(A, phi);
    if (i % 3 == 1) {
        gamma = space.orbit(A, xi, 1.0);
        phi = space.twist(gamma);
    } else if (i % 3 == 2) {
        const Connection mid = A + random_connection(rng, g, dim, 2, 0.5 * amp);
        gamma = space.path({A, mid, space.act(phi, A)}, phi);
    }
    const GaugeMap phi2 = space.exp(random_field(rng, g, dim, 2, amp), 1.0);
    const FamilyCurve gamma2 = space.segment(space.end(gamma), phi2);
    const FamilyCurve zeta = space.segment(A, space.exp(random_field(rng, g, dim, 2, amp), 1.0));
    const Connection a = random_connection(rng, g, dim, 2, amp);
    const Connection b = random_connection(rng, g, dim, 2, amp);
    const AlgebraField X = random_field(rng, g, dim, 2, amp);
    return {prefix + "-" + std::to_string(i), A, gamma, phi, gamma2, phi2, zeta, a, b, X, 0.25};
}

}

AlgebraField random_field(Rng& rng, GroupId g, int dim, int modes, double amplitude)
{
    std::vector<AlgebraField::Mode> out;
    for (int m = 0; m < modes; ++m) {
        AlgebraField::Mode mode;
        mode.k = random_wave(rng, dim);
        mode.c = random_element(rng, g, amplitude);
        mode.s = random_element(rng, g, amplitude);
        out.push_back(mode);
    }
    return AlgebraField(g, std::move(out));
}

Connection random_connection(Rng& rng, GroupId g, int dim, int modes, double amplitude)
{
    std::vector<AlgebraField> comps;
    for (int i = 0; i < dim; ++i)
        comps.push_back(random_field(rng, g, dim, modes, amplitude));
    return Connection::trig(g, dim, std::move(comps));
}

std::vector<Fixture<GaugeSpace>> su2_battery(std::size_t count, std::uint64_t seed)
{
    Rng rng(seed);
    GaugeSpace space(GroupId::SU2, 2);
    std::vector<Fixture<GaugeSpace>> out;
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(gauge_fixture(rng, space, GroupId::SU2, 2, i, 0.5, "su2"));
    return out;
}

std::vector<Fixture<GaugeSpace>> u1_battery(std::size_t count, std::uint64_t seed)
{
    Rng rng(seed + 1);
    GaugeSpace space(GroupId::U1, 2);
    std::vector<Fixture<GaugeSpace>> out;
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(gauge_fixture(rng, space, GroupId::U1, 2, i, 0.5, "u1"));
    return out;
}

std::vector<Fixture<GaugeSpace>> slab_battery(std::size_t count, std::uint64_t seed)
{
    Rng rng(seed + 2);
    GaugeSpace space(GroupId::SU2, 3);
    std::vector<Fixture<GaugeSpace>> out;
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(gauge_fixture(rng, space, GroupId::SU2, 3, i, 0.4, "slab"));
    return out;
}

std::vector<Fixture<TranslationSpace>> translation_battery(std::size_t count, std::uint64_t seed)
{
    Rng rng(seed + 3);
    TranslationSpace space;
    auto pt = [&] { return std::array<double, 2>{rng.uniform(-1, 1), rng.uniform(-1, 1)}; };
    std::vector<Fixture<TranslationSpace>> out;
    for (std::size_t i = 0; i < count; ++i) {
        Fixture<TranslationSpace> f;
        f.name = "translation-" + std::to_string(i);
        f.A = pt();
        f.phi = pt();
        if (i % 2 == 0)
            f.gamma = space.segment(f.A, f.phi);
        else
            f.gamma = space.path({f.A, space.shift(f.A, pt(), 1.0), space.act(f.phi, f.A)}, f.phi);
        f.phi2 = pt();
        f.gamma2 = space.segment(space.end(f.gamma), f.phi2);
        f.zeta = space.segment(f.A, pt());
        f.a = pt();
        f.b = pt();
        f.X = pt();
        out.push_back(f);
    }
    return out;
}

AtiyahBottFixture atiyah_bott_fixture()
{
    const AlgebraField X = AlgebraField::constant(AlgebraElement::su2(1.0, 0.0, 0.0));
    const AlgebraField zero(GroupId::SU2);
    return {Connection::product(GroupId::SU2, 2), Connection::trig(GroupId::SU2, 2, {X, zero}),
            Connection::trig(GroupId::SU2, 2, {zero, X})};
}

Connection su2_t3_fixture()
{
    auto mode = [](std::array<double, 3> k, double a, double b, double c, bool sine) {
        const Mat2 m = AlgebraElement::su2(a, b, c).matrix();
        return AlgebraField(GroupId::SU2, {AlgebraField::Mode{k, sine ? Mat2(Mat2::Zero()) : m,
                                                             sine ? m : Mat2(Mat2::Zero())}});
    };
    return Connection::trig(GroupId::SU2, 3,
                            {mode({0, 1, 0}, 0.7, 0.2, -0.3, false) + mode({0, 0, 1}, 0.3, -0.4, 0.2, true),
                             mode({0, 0, 1}, -0.4, 0.5, 0.1, false) + mode({1, 0, 0}, 0.2, 0.3, 0.6, true),
                             mode({1, 0, 0}, 0.5, -0.2, 0.3, false) + mode({0, 1, 0}, 0.1, 0.6, -0.2, true)});
}

FlatFamily flat_u1_family(std::size_t count, std::uint64_t seed)
{
    Rng rng(seed + 4);
    FlatFamily f;
    for (std::size_t i = 0; i < count; ++i) {
        const auto cx = AlgebraField::constant(AlgebraElement::u1(kTwoPi * rng.uniform(-0.5, 0.5)));
        const auto cy = AlgebraField::constant(AlgebraElement::u1(kTwoPi * rng.uniform(-0.5, 0.5)));
        f.points.push_back(Connection::trig(GroupId::U1, 2, {cx, cy}));
        f.generators.push_back(AlgebraField::constant(AlgebraElement::u1(rng.uniform(-1, 1))));
    }
    return f;
}

FlatFamily curved_u1_family(std::size_t count, std::uint64_t seed)
{
    Rng rng(seed + 5);
    FlatFamily f;
    for (std::size_t i = 0; i < count; ++i) {
        f.points.push_back(random_connection(rng, GroupId::U1, 2, 3, 0.5));
        f.generators.push_back(random_field(rng, GroupId::U1, 2, 2, 0.5));
    }
    return f;
}

LatticePath random_lattice_path(Rng& rng, int n, int steps, std::array<int, 2> winding,
                                const LatticeConfig* start)
{
    LatticePath p;
    p.twist = LatticeTwist::identity(n);
    p.twist.wx = winding[0];
    p.twist.wy = winding[1];
    for (auto& x : p.twist.chi0)
        x = random_rational(rng, 0.05);
    p.samples.push_back(start ? *start : random_config(rng, n));
    for (int i = 1; i < steps; ++i)
        p.samples.push_back(random_config(rng, n));
    p.samples.push_back(p.twist.act(p.samples.front()));
    return p;
}

LatticePath flat_twisted_path(int n, int steps, const mpq_class& q, std::array<int, 2> winding)
{
    LatticePath p;
    p.twist = LatticeTwist::identity(n);
    p.twist.wx = winding[0];
    p.twist.wy = winding[1];
    auto b0 = LatticeConfig::zero(n);
    for (auto& y : b0.by)
        y = q / n;
    const LatticeConfig b1 = p.twist.act(b0);
    for (int s = 0; s <= steps; ++s) {
        const mpq_class t(s, steps);
        auto c = LatticeConfig::zero(n);
        for (std::size_t v = 0; v < c.bx.size(); ++v) {
            c.bx[v] = b0.bx[v] + t * (b1.bx[v] - b0.bx[v]);
            c.by[v] = b0.by[v] + t * (b1.by[v] - b0.by[v]);
        }
        p.samples.push_back(std::move(c));
    }
    p.samples.back() = b1;
    return p;
}

CrossFixture u1_cross_fixture()
{
    const double s = kTwoPi * 0.05;
    auto mode = [](double a, std::array<double, 3> k, bool sine) {
        const Mat2 m = AlgebraElement::u1(a).matrix();
        return AlgebraField(GroupId::U1, {AlgebraField::Mode{k, sine ? Mat2(Mat2::Zero()) : m,
                                                            sine ? m : Mat2(Mat2::Zero())}});
    };
    const Connection A = Connection::trig(
        GroupId::U1, 2,
        {mode(0.7 * s, {0, 1, 0}, false) + mode(0.3 * s, {0, 0, 0}, false),
         mode(-0.5 * s, {1, 0, 0}, true) + mode(0.4 * s, {1, 1, 0}, false)});
    const AlgebraField xf = mode(0.4 * s, {1, 0, 0}, false) + mode(0.3 * s, {0, 1, 0}, true) +
                            mode(0.5 * s, {0, 0, 0}, false);
    const GaugeMap phi = GaugeMap::u1(2, 0, 0, xf);
    return {phi, FamilyCurve::segment(A, phi)};
}

}
