#include "eqcs/equivariant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace eqcs {

FamilyCurve GaugeSpace::square_loop(const Point& A, const Tangent& a, const Tangent& b, double eps) const
{
    Point Pa = shift(A, a, eps);
    return FamilyCurve::polygon({A, Pa, shift(Pa, b, eps), shift(A, b, eps)});
}

std::array<double, 2> TranslationCurve::at(double t) const
{
    double u = std::clamp(sigma ? sigma(t) : t, 0.0, 1.0);
    const std::size_t n = vertices.size() - 1;
    std::size_t k = std::min(static_cast<std::size_t>(u * n), n - 1);
    double s = u * n - k;
    return {(1 - s) * vertices[k][0] + s * vertices[k + 1][0], (1 - s) * vertices[k][1] + s * vertices[k + 1][1]};
}

double TranslationSpace::distance(const Point& A, const Point& B) const
{
    return std::max(std::abs(A[0] - B[0]), std::abs(A[1] - B[1]));
}

TranslationCurve TranslationSpace::path(const std::vector<Point>& v, const Group& g) const
{
    if (v.size() < 2)
        throw std::invalid_argument("a path needs at least two vertices");
    if (distance(v.back(), act(g, v.front())) > 1e-12)
        throw EndpointMismatch("translation path does not end at the translated start");
    return {v, g, {}};
}

TranslationCurve TranslationSpace::square_loop(const Point& A, const Tangent& a, const Tangent& b, double eps) const
{
    Point Pa = shift(A, a, eps);
    return path({A, Pa, shift(Pa, b, eps), shift(A, b, eps), A}, identity());
}

TranslationCurve TranslationSpace::concat(const Curve& a, const Curve& b) const
{
    if (distance(end(a), start(b)) > 1e-12)
        throw EndpointMismatch("translation curves do not meet");
    std::vector<Point> v = a.vertices;
    v.insert(v.end(), b.vertices.begin() + 1, b.vertices.end());
    return {v, compose(b.twist, a.twist), {}};
}

TranslationCurve TranslationSpace::reverse(const Curve& c) const
{
    Curve r{std::vector<Point>(c.vertices.rbegin(), c.vertices.rend()), inverse(c.twist), {}};
    if (c.sigma)
        r.sigma = [s = c.sigma](double t) { return 1.0 - s(1.0 - t); };
    return r;
}

TranslationCurve TranslationSpace::reparam(const Curve& c, const Reparametrization& r) const
{
    Curve out = c;
    out.sigma = c.sigma ? std::function<double(double)>([s = c.sigma, f = r.sigma](double t) { return s(f(t)); })
                        : r.sigma;
    return out;
}

TranslationCurve TranslationSpace::conjugate(const Group& psi, const Curve& c) const
{
    Curve out = c;
    for (auto& v : out.vertices)
        v = act(psi, v);
    return out;
}

TranslationCurve TranslationSpace::retwist(const Curve& c, const Group& g) const
{
    if (distance(end(c), act(g, start(c))) > 1e-12)
        throw EndpointMismatch("curve does not close under the requested translation");
    Curve out = c;
    out.twist = g;
    return out;
}

bool CharacterReport::pass() const
{
    return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.pass(); });
}

const AxiomResult& CharacterReport::axiom(const std::string& name) const
{
    for (const auto& a : axioms)
        if (a.name == name)
            return a;
    throw std::out_of_range("no axiom named " + name);
}

Reparametrization VerifyOptions::default_reparametrization()
{
    constexpr double pi = std::numbers::pi;
    return {[](double t) { return t - (0.25 / pi) * std::sin(2.0 * pi * t); },
            [](double t) { return 1.0 - 0.5 * std::cos(2.0 * pi * t); }};
}

Character<GaugeSpace> xi_character(const CharacteristicPair& p, const XiOptions& opt)
{
    Character<GaugeSpace> c;
    c.provenance = "xi";
    c.eval = [p, opt](const GaugeMap& phi, const FamilyCurve& g) { return xi(phi, g, p, opt).value; };
    c.curvature = [p, opt](const Connection& A, const Connection& a, const Connection& b) {
        return curvature_two_form(A, a, b, p, opt.n_space);
    };
    c.moment = [p, opt](const Connection& A, const AlgebraField& X) { return moment(A, X, p, opt.n_space); };
    return c;
}

OneForm<GaugeSpace> lambda_form(const CharacteristicPair& p, const XiOptions& opt)
{
    OneForm<GaugeSpace> f;
    f.value = [p, opt](const Connection& A, const Connection& a) { return lambda_one_form(A, a, p, opt.n_space); };
    f.line = [p, opt](const FamilyCurve& g) {
        return integrate_lambda(g, Connection::product(g.group(), g.dim()), p, opt);
    };
    f.differential = finite_difference_differential(GaugeSpace(p.group(), 2), f.value);
    return f;
}

Character<UnionSpace> boundary_character(const CharacteristicPair& p, const XiOptions& opt)
{
    Character<GaugeSpace> face = xi_character(p, opt);
    Character<UnionSpace> c;
    c.provenance = "boundary_xi";
    c.eval = [face](const UnionSpace::Group& g, const UnionSpace::Curve& k) {
        return face.eval(g.first, k.first) - face.eval(g.second, k.second);
    };
    c.curvature = [face](const UnionSpace::Point& A, const UnionSpace::Tangent& a, const UnionSpace::Tangent& b) {
        return face.curvature(A.first, a.first, b.first) - face.curvature(A.second, a.second, b.second);
    };
    c.moment = [face](const UnionSpace::Point& A, const UnionSpace::Direction& X) {
        return face.moment(A.first, X.first) - face.moment(A.second, X.second);
    };
    return c;
}

PullbackMap<GaugeSpace, UnionSpace> boundary_restriction()
{
    PullbackMap<GaugeSpace, UnionSpace> m;
    m.point = [](const Connection& A) {
        return UnionSpace::Point{face_restriction(A, 1.0), face_restriction(A, 0.0)};
    };
    m.tangent = m.point;
    m.group = [](const GaugeMap& g) {
        return UnionSpace::Group{face_restriction(g, 1.0), face_restriction(g, 0.0)};
    };
    m.direction = [](const AlgebraField& X) {
        return UnionSpace::Direction{face_restriction(X, 1.0), face_restriction(X, 0.0)};
    };
    m.curve = [](const FamilyCurve& g) {
        return UnionSpace::Curve{face_restriction(g, 1.0), face_restriction(g, 0.0)};
    };
    return m;
}

OneForm<GaugeSpace> fiber_form(const CharacteristicPair& p, const BoundaryOptions& opt)
{
    OneForm<GaugeSpace> f;
    f.value = [p, opt](const Connection& A, const Connection& a) { return fiber_one_form(A, a, p, opt); };
    f.line = [p, opt](const FamilyCurve& g) { return integrate_fiber_one_form(g, p, opt); };
    f.differential = finite_difference_differential(GaugeSpace(p.group(), 3), f.value);
    return f;
}

Character<TranslationSpace> translation_character(int m, int n)
{
    Character<TranslationSpace> c;
    c.provenance = "homomorphism";
    c.eval = [m, n](const TranslationSpace::Group& s, const TranslationCurve&) {
        return CircleValue(m * s[0] + n * s[1]);
    };
    c.curvature = [](const TranslationSpace::Point&, const TranslationSpace::Tangent&,
                     const TranslationSpace::Tangent&) { return 0.0; };
    c.moment = [m, n](const TranslationSpace::Point&, const TranslationSpace::Direction& X) {
        return m * X[0] + n * X[1];
    };
    return c;
}

}
