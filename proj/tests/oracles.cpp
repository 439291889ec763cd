#include "oracles.hpp"

#include <cmath>

namespace oracle {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

M2 zero()
{
    return {{{C(0), C(0)}, {C(0), C(0)}}};
}

M2 add(const M2& a, const M2& b)
{
    M2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r[i][j] = a[i][j] + b[i][j];
    return r;
}

M2 scale(const M2& a, double s)
{
    M2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r[i][j] = a[i][j] * s;
    return r;
}

M2 mul(const M2& a, const M2& b)
{
    M2 r = zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                r[i][j] += a[i][k] * b[k][j];
    return r;
}

C trace(const M2& a)
{
    return a[0][0] + a[1][1];
}

M2 su2(double a, double b, double c)
{
    const C i(0, 1);
    // a i diag(1,-1) + b i [[0,-i],[i,0]] + c i [[0,1],[1,0]]
    return {{{i * a, b + i * c}, {-b + i * c, -i * a}}};
}

M2 u1(double theta)
{
    M2 r = zero();
    r[0][0] = C(0, theta);
    return r;
}

M2 value(const Field& f, const std::array<double, 3>& x)
{
    M2 r = zero();
    for (const auto& m : f) {
        const double ph = 2 * kPi * (m.k[0] * x[0] + m.k[1] * x[1] + m.k[2] * x[2]);
        r = add(r, add(scale(m.c, std::cos(ph)), scale(m.s, std::sin(ph))));
    }
    return r;
}

M2 partial(const Field& f, int axis, const std::array<double, 3>& x)
{
    M2 r = zero();
    for (const auto& m : f) {
        const double ph = 2 * kPi * (m.k[0] * x[0] + m.k[1] * x[1] + m.k[2] * x[2]);
        const double w = 2 * kPi * m.k[axis];
        r = add(r, add(scale(m.c, -w * std::sin(ph)), scale(m.s, w * std::cos(ph))));
    }
    return r;
}

eqcs::AlgebraField to_field(eqcs::GroupId g, const Field& f)
{
    auto conv = [](const M2& m) {
        eqcs::Mat2 r;
        r << m[0][0], m[0][1], m[1][0], m[1][1];
        return r;
    };
    std::vector<eqcs::AlgebraField::Mode> modes;
    for (const auto& m : f)
        modes.push_back({m.k, conv(m.c), conv(m.s)});
    return eqcs::AlgebraField(g, std::move(modes));
}

eqcs::Connection to_connection(eqcs::GroupId g, const std::vector<Field>& comps)
{
    std::vector<eqcs::AlgebraField> fs;
    for (const auto& c : comps)
        fs.push_back(to_field(g, c));
    return eqcs::Connection::trig(g, static_cast<int>(comps.size()), std::move(fs));
}

double classical_cs(const std::array<Field, 3>& a, int n)
{
    static const int eps[6][4] = {{0, 1, 2, 1}, {1, 2, 0, 1}, {2, 0, 1, 1}, {0, 2, 1, -1}, {2, 1, 0, -1}, {1, 0, 2, -1}};
    double total = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) {
                const std::array<double, 3> x{(i + 0.5) / n, (j + 0.5) / n, (l + 0.5) / n};
                std::array<M2, 3> A;
                for (int q = 0; q < 3; ++q)
                    A[q] = value(a[q], x);
                C density(0);
                for (const auto& e : eps) {
                    const M2 dA = partial(a[e[2]], e[1], x);
                    const M2 cube = mul(mul(A[e[0]], A[e[1]]), A[e[2]]);
                    density += double(e[3]) * (trace(mul(A[e[0]], dA)) + (2.0 / 3.0) * trace(cube));
                }
                total += density.real();
            }
    return total / (double(n) * n * n) / (8 * kPi * kPi);
}

double atiyah_bott(const std::array<M2, 2>& a, const std::array<M2, 2>& b)
{
    // (a ^ b)_{xy} = a_x b_y - a_y b_x
    const C t = trace(mul(a[0], b[1])) - trace(mul(a[1], b[0]));
    return -t.real() / (4 * kPi * kPi);
}

double u1_moment(const std::array<Field, 2>& a, const Field& xi, int k, int n)
{
    double total = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const std::array<double, 3> x{(i + 0.25) / n, (j + 0.75) / n, 0.0};
            const double fxy = partial(a[1], 0, x)[0][0].imag() - partial(a[0], 1, x)[0][0].imag();
            const double f = value(xi, x)[0][0].imag();
            // p(i f, i F) = -k/(4 pi^2) (i f)(i F) = k f F / (4 pi^2)
            total += k * f * fxy / (4 * kPi * kPi);
        }
    return -2.0 * total / (double(n) * n);
}

std::array<Field, 3> t3_modes()
{
    auto m = [](std::array<double, 3> k, double a, double b, double c, bool sine) {
        return sine ? Mode{k, zero(), su2(a, b, c)} : Mode{k, su2(a, b, c), zero()};
    };
    return {Field{m({0, 1, 0}, 0.7, 0.2, -0.3, false), m({0, 0, 1}, 0.3, -0.4, 0.2, true)},
            Field{m({0, 0, 1}, -0.4, 0.5, 0.1, false), m({1, 0, 0}, 0.2, 0.3, 0.6, true)},
            Field{m({1, 0, 0}, 0.5, -0.2, 0.3, false), m({0, 1, 0}, 0.1, 0.6, -0.2, true)}};
}

}
