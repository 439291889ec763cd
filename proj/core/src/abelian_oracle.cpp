#include "eqcs/abelian_oracle.hpp"
#include "eqcs/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <optional>

namespace eqcs {

namespace {

int wrap(int i, int n) { return ((i % n) + n) % n; }

constexpr int kPlaneAxes[3][2] = {{0, 1}, {0, 2}, {1, 2}};

__int128 floor_div(__int128 a, __int128 b)
{
    __int128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

mpz_class to_mpz(__int128 x)
{
    bool neg = x < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(x) : static_cast<unsigned __int128>(x);
    mpz_class r(static_cast<unsigned long>(u >> 64));
    r <<= 64;
    r += mpz_class(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
    return neg ? mpz_class(-r) : r;
}

std::optional<__int128> to_i128(const mpz_class& x)
{
    if (mpz_sizeinbase(x.get_mpz_t(), 2) > 120)
        return std::nullopt;
    mpz_class m = abs(x);
    unsigned __int128 u = static_cast<unsigned __int128>(mpz_getlimbn(m.get_mpz_t(), 1)) << 64;
    u |= mpz_getlimbn(m.get_mpz_t(), 0);
    __int128 r = static_cast<__int128>(u);
    return sgn(x) < 0 ? -r : r;
}

mpz_class common_denominator(const LatticeU1Field& f)
{
    mpz_class D(1);
    for (int mu = 0; mu < 3; ++mu)
        for (std::size_t v = 0; v < f.vertices(); ++v)
            mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), f.link(mu, v).get_den_mpz_t());
    return D;
}

/// Links as integers over a common denominator, when every cup-product sum fits in 128 bits.
struct ScaledLinks {
    __int128 D;
    std::array<std::vector<__int128>, 3> a;
};

std::optional<ScaledLinks> scaled_links(const LatticeU1Field& f)
{
    mpz_class D = common_denominator(f);
    mpz_class big(0);
    ScaledLinks s;
    for (int mu = 0; mu < 3; ++mu) {
        s.a[mu].resize(f.vertices());
        for (std::size_t v = 0; v < f.vertices(); ++v) {
            mpz_class x = f.link(mu, v).get_num() * (D / f.link(mu, v).get_den());
            if (abs(x) > big)
                big = abs(x);
            auto y = to_i128(x);
            if (!y)
                return std::nullopt;
            s.a[mu][v] = *y;
        }
        for (int p = 0; p < 3; ++p)
            for (std::size_t v = 0; v < f.vertices(); ++v) {
                mpz_class x = D * std::labs(f.plaquette(p, v));
                if (x > big)
                    big = x;
            }
    }
    // Six products per vertex, each bounded by (5 big)^2.
    mpz_class bound = 5 * big + 5 * D;
    bound = bound * bound * 6 * f.vertices();
    if (mpz_sizeinbase(bound.get_mpz_t(), 2) > 125)
        return std::nullopt;
    s.D = *to_i128(D);
    return s;
}

}

mpq_class dyadic(double x)
{
    mpq_class q(static_cast<long>(std::llround(std::ldexp(x, 40))));
    q /= mpq_class(mpz_class(1) << 40);
    q.canonicalize();
    return q;
}

LatticeConfig LatticeConfig::zero(int n)
{
    LatticeConfig c;
    c.n = n;
    c.bx.assign(static_cast<std::size_t>(n) * n, mpq_class(0));
    c.by = c.bx;
    return c;
}

LatticeTwist LatticeTwist::identity(int n)
{
    LatticeTwist t;
    t.n = n;
    t.chi0.assign(static_cast<std::size_t>(n) * n, mpq_class(0));
    return t;
}

mpq_class LatticeTwist::chi(int i, int j) const
{
    mpq_class r(wx * i + wy * j, n);
    r.canonicalize();
    return r + chi0[static_cast<std::size_t>(wrap(i, n) + n * wrap(j, n))];
}

LatticeTwist LatticeTwist::operator*(const LatticeTwist& o) const
{
    if (n != o.n)
        throw InconsistentLattice("composing lattice twists of different sizes");
    LatticeTwist r = *this;
    r.wx += o.wx;
    r.wy += o.wy;
    for (std::size_t k = 0; k < chi0.size(); ++k)
        r.chi0[k] += o.chi0[k];
    return r;
}

LatticeTwist LatticeTwist::inverse() const
{
    LatticeTwist r = *this;
    r.wx = -wx;
    r.wy = -wy;
    for (auto& c : r.chi0)
        c = -c;
    return r;
}

LatticeConfig LatticeTwist::act(const LatticeConfig& b) const
{
    if (b.n != n)
        throw InconsistentLattice("twist and configuration have different sizes");
    LatticeConfig r = b;
    mpq_class rx(wx, n), ry(wy, n);
    rx.canonicalize();
    ry.canonicalize();
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            std::size_t v = static_cast<std::size_t>(i + n * j);
            const mpq_class& c = chi0[v];
            r.bx[v] -= rx + chi0[static_cast<std::size_t>(wrap(i + 1, n) + n * j)] - c;
            r.by[v] -= ry + chi0[static_cast<std::size_t>(i + n * wrap(j + 1, n))] - c;
        }
    }
    return r;
}

void LatticePath::validate() const
{
    if (samples.size() < 2)
        throw InconsistentLattice("a lattice path needs at least two samples");
    for (const auto& s : samples)
        if (s.n != twist.n)
            throw InconsistentLattice("lattice path samples have mixed sizes");
    if (!(samples.back() == twist.act(samples.front())))
        throw InconsistentLattice("last sample is not the twist of the first");
}

LatticePath concat(const LatticePath& a, const LatticePath& b)
{
    if (!(a.samples.back() == b.samples.front()))
        throw InconsistentLattice("lattice paths do not meet");
    LatticePath r;
    r.samples = a.samples;
    r.samples.insert(r.samples.end(), b.samples.begin() + 1, b.samples.end());
    r.twist = b.twist * a.twist;
    return r;
}

LatticePath reverse(const LatticePath& a)
{
    LatticePath r;
    r.samples.assign(a.samples.rbegin(), a.samples.rend());
    r.twist = a.twist.inverse();
    return r;
}

LatticeU1Field::LatticeU1Field(int nx, int ny, int nt) : dims_{nx, ny, nt}
{
    if (nx < 1 || ny < 1 || nt < 1)
        throw InconsistentLattice("lattice sizes must be positive");
    for (auto& l : links_)
        l.assign(vertices(), mpq_class(0));
    for (auto& p : plaq_)
        p.assign(vertices(), 0);
}

std::size_t LatticeU1Field::index(int i, int j, int t) const
{
    return static_cast<std::size_t>(wrap(i, dims_[0]))
        + static_cast<std::size_t>(dims_[0]) * (wrap(j, dims_[1]) + static_cast<std::size_t>(dims_[1]) * wrap(t, dims_[2]));
}

std::size_t LatticeU1Field::shift(std::size_t v, int axis) const
{
    int i = static_cast<int>(v % dims_[0]);
    int j = static_cast<int>((v / dims_[0]) % dims_[1]);
    int t = static_cast<int>(v / (static_cast<std::size_t>(dims_[0]) * dims_[1]));
    if (axis == 0)
        ++i;
    else if (axis == 1)
        ++j;
    else
        ++t;
    return index(i, j, t);
}

mpq_class LatticeU1Field::curl(int p, std::size_t v) const
{
    int mu = kPlaneAxes[p][0], nu = kPlaneAxes[p][1];
    return links_[mu][v] + links_[nu][shift(v, mu)] - links_[mu][shift(v, nu)] - links_[nu][v];
}

void LatticeU1Field::fix_plaquettes()
{
    if (auto sc = scaled_links(*this)) {
        const __int128 D = sc->D;
        for (int p = 0; p < 3; ++p) {
            int mu = kPlaneAxes[p][0], nu = kPlaneAxes[p][1];
            for (std::size_t v = 0; v < vertices(); ++v) {
                __int128 c = sc->a[mu][v] + sc->a[nu][shift(v, mu)] - sc->a[mu][shift(v, nu)] - sc->a[nu][v];
                plaq_[p][v] = -static_cast<long>(floor_div(2 * c + D, 2 * D));
            }
        }
        return;
    }
    for (int p = 0; p < 3; ++p) {
        for (std::size_t v = 0; v < vertices(); ++v) {
            mpq_class c = curl(p, v);
            mpz_class r;
            mpz_fdiv_q(r.get_mpz_t(), mpz_class(2 * c.get_num() + c.get_den()).get_mpz_t(),
                       mpz_class(2 * c.get_den()).get_mpz_t());
            plaq_[p][v] = -r.get_si();
        }
    }
}

long LatticeU1Field::cube_defect() const
{
    long worst = 0;
    for (std::size_t v = 0; v < vertices(); ++v) {
        long d = plaq_[2][shift(v, 0)] - plaq_[2][v] - plaq_[1][shift(v, 1)] + plaq_[1][v] + plaq_[0][shift(v, 2)]
            - plaq_[0][v];
        worst = std::max(worst, std::labs(d));
    }
    return worst;
}

mpq_class LatticeU1Field::flux(int p) const
{
    int mu = kPlaneAxes[p][0], nu = kPlaneAxes[p][1];
    mpq_class s(0);
    for (int a = 0; a < dims_[mu]; ++a) {
        for (int b = 0; b < dims_[nu]; ++b) {
            std::array<int, 3> c{0, 0, 0};
            c[mu] = a;
            c[nu] = b;
            std::size_t v = index(c[0], c[1], c[2]);
            s += curl(p, v) + plaq_[p][v];
        }
    }
    return s;
}

void LatticeU1Field::gauge(const std::vector<mpq_class>& chi)
{
    if (chi.size() != vertices())
        throw InconsistentLattice("gauge function has the wrong size");
    for (int mu = 0; mu < 3; ++mu)
        for (std::size_t v = 0; v < vertices(); ++v)
            links_[mu][v] += chi[shift(v, mu)] - chi[v];
}

void LatticeU1Field::integer_shift(const std::vector<long>& k, int mu)
{
    if (k.size() != vertices())
        throw InconsistentLattice("integer cochain has the wrong size");
    for (std::size_t v = 0; v < vertices(); ++v)
        links_[mu][v] += k[v];
    for (int p = 0; p < 3; ++p) {
        int a = kPlaneAxes[p][0], b = kPlaneAxes[p][1];
        for (std::size_t v = 0; v < vertices(); ++v) {
            if (a == mu)
                plaq_[p][v] -= k[v] - k[shift(v, b)];
            else if (b == mu)
                plaq_[p][v] -= k[shift(v, a)] - k[v];
        }
    }
}

namespace {

template <class T>
T cup_sum(const LatticeU1Field& f, const std::array<std::vector<T>, 3>& a, const T& D)
{
    const std::size_t nv = f.vertices();
    auto sh = [&](std::size_t v, int ax) { return f.shift(v, ax); };
    // D-scaled da + n, and D-scaled n.
    std::array<std::vector<T>, 3> F, n;
    for (int p = 0; p < 3; ++p) {
        int mu = kPlaneAxes[p][0], nu = kPlaneAxes[p][1];
        F[p].resize(nv);
        n[p].resize(nv);
        for (std::size_t v = 0; v < nv; ++v) {
            n[p][v] = D * T(f.plaquette(p, v));
            F[p][v] = a[mu][v] + a[nu][sh(v, mu)] - a[mu][sh(v, nu)] - a[nu][v] + n[p][v];
        }
    }
    T total(0);
    for (std::size_t v = 0; v < nv; ++v) {
        std::size_t v0 = sh(v, 0), v1 = sh(v, 1), v2 = sh(v, 2);
        total += a[0][v] * F[2][v0];
        total -= a[1][v] * F[1][v1];
        total += a[2][v] * F[0][v2];
        total += n[0][v] * a[2][sh(v0, 1)];
        total -= n[1][v] * a[1][sh(v0, 2)];
        total += n[2][v] * a[0][sh(v1, 2)];
    }
    return total;
}

}

mpq_class lattice_action(const LatticeU1Field& f)
{
    if (auto sc = scaled_links(f)) {
        mpq_class s(to_mpz(cup_sum(f, sc->a, sc->D)), to_mpz(sc->D * sc->D));
        s.canonicalize();
        return s;
    }
    const std::size_t nv = f.vertices();
    mpz_class D = common_denominator(f);
    std::array<std::vector<mpz_class>, 3> a;
    for (int mu = 0; mu < 3; ++mu) {
        a[mu].resize(nv);
        for (std::size_t v = 0; v < nv; ++v)
            a[mu][v] = f.link(mu, v).get_num() * (D / f.link(mu, v).get_den());
    }
    mpq_class s(cup_sum(f, a, D), D * D);
    s.canonicalize();
    return s;
}

CircleValue exact_cs_u1(const LatticeU1Field& f, int k)
{
    if (f.cube_defect() != 0)
        throw InconsistentLattice("plaquette integers are not closed");
    return CircleValue(mpq_class(-k * lattice_action(f)));
}

LatticeU1Field assemble_lattice_torus(const LatticePath& path)
{
    path.validate();
    const int n = path.twist.n;
    const std::size_t steps = path.samples.size() - 1;
    LatticeU1Field f(n, n, static_cast<int>(3 * steps));
    auto put = [&](int t, const std::vector<mpq_class>& bx, const std::vector<mpq_class>& by) {
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                std::size_t v = f.index(i, j, t);
                std::size_t s = static_cast<std::size_t>(i + n * j);
                f.link(0, v) = bx[s];
                f.link(1, v) = by[s];
            }
    };
    for (std::size_t s = 0; s < steps; ++s) {
        const auto& u = path.samples[s];
        const auto& w = path.samples[s + 1];
        std::vector<mpq_class> mid(u.bx.size());
        for (std::size_t k = 0; k < mid.size(); ++k)
            mid[k] = (u.bx[k] + w.bx[k]) / 2;
        int t = static_cast<int>(3 * s);
        put(t, u.bx, u.by);
        put(t + 1, mid, u.by);
        put(t + 2, mid, w.by);
    }
    const int last = f.size(2) - 1;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            f.link(2, f.index(i, j, last)) = path.twist.chi(i, j);
    f.fix_plaquettes();
    return f;
}

CircleValue exact_xi_u1(const LatticePath& path, int k)
{
    return exact_cs_u1(assemble_lattice_torus(path), k);
}

LatticePath sample_u1_curve(const FamilyCurve& gamma, int n, int steps_per_piece)
{
    if (gamma.group() != GroupId::U1 || gamma.dim() != 2)
        throw GroupMismatch("lattice sampling needs a U(1) curve on T^2");
    if (n < 2 || steps_per_piece < 1)
        throw InconsistentLattice("lattice sampling needs n >= 2 and at least one step");
    const auto& gl = gauss_legendre(4);
    const double h = 1.0 / n;
    const double to_a = 1.0 / (2.0 * std::numbers::pi);
    auto sample = [&](const PiecePtr& piece, double s) {
        LatticeConfig c = LatticeConfig::zero(n);
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) {
                double ix = 0.0, iy = 0.0;
                for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
                    double o = (i + gl.nodes[q]) * h;
                    ix += gl.weights[q] * piece->jet(s, {o, j * h, 0.0}).A.A[0](0, 0).imag();
                    double oy = (j + gl.nodes[q]) * h;
                    iy += gl.weights[q] * piece->jet(s, {i * h, oy, 0.0}).A.A[1](0, 0).imag();
                }
                std::size_t v = static_cast<std::size_t>(i + n * j);
                c.bx[v] = dyadic(ix * h * to_a);
                c.by[v] = dyadic(iy * h * to_a);
            }
        }
        return c;
    };

    LatticePath path;
    const GaugeMap& phi = gamma.twist();
    path.twist = LatticeTwist::identity(n);
    path.twist.wx = phi.winding()[0];
    path.twist.wy = phi.winding()[1];
    if (const auto& xi = phi.u1_exponent()) {
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                path.twist.chi0[static_cast<std::size_t>(i + n * j)]
                    = dyadic(xi->value({i * h, j * h, 0.0})(0, 0).imag() * to_a);
    }
    for (const auto& piece : gamma.pieces())
        for (int k = 0; k < steps_per_piece; ++k)
            path.samples.push_back(sample(piece, static_cast<double>(k) / steps_per_piece));
    LatticeConfig end = sample(gamma.pieces().back(), 1.0);
    LatticeConfig exact = path.twist.act(path.samples.front());
    double gap = 0.0;
    for (std::size_t v = 0; v < end.bx.size(); ++v) {
        gap = std::max(gap, std::abs(mpq_class(end.bx[v] - exact.bx[v]).get_d()));
        gap = std::max(gap, std::abs(mpq_class(end.by[v] - exact.by[v]).get_d()));
    }
    if (gap > 1e-8)
        throw InconsistentLattice("sampled endpoint disagrees with the twisted start by " + std::to_string(gap));
    path.samples.push_back(std::move(exact));
    return path;
}

}
