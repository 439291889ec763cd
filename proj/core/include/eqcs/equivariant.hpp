#pragma once

#include "eqcs/boundary.hpp"
#include "eqcs/circle.hpp"
#include "eqcs/cschar.hpp"
#include "eqcs/curve.hpp"
#include "eqcs/quadrature.hpp"

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace eqcs {

/// Connections on a trivial bundle over T^d acted on by gauge maps.
class GaugeSpace {
public:
    using Point = Connection;
    using Group = GaugeMap;
    using Curve = FamilyCurve;
    using Tangent = Connection;
    using Direction = AlgebraField;

    GaugeSpace(GroupId g, int dim) : group_(g), dim_(dim) {}
    GroupId group() const { return group_; }
    int dim() const { return dim_; }

    Group identity() const { return GaugeMap::identity(group_, dim_); }
    Group compose(const Group& a, const Group& b) const { return a * b; }
    Group inverse(const Group& a) const { return a.inverse(); }
    Group exp(const Direction& X, double t) const { return GaugeMap::exp(X, dim_, t); }
    Point act(const Group& g, const Point& A) const { return gauge_transform(g, A); }
    Point shift(const Point& A, const Tangent& a, double s) const { return A + a.scaled(s); }
    Tangent generator(const Point& A, const Direction& X) const { return infinitesimal_action(X, A); }

    Curve segment(const Point& A, const Group& g) const { return FamilyCurve::segment(A, g); }
    Curve path(const std::vector<Point>& v, const Group& g) const { return FamilyCurve::path(v, g); }
    Curve orbit(const Point& A, const Direction& X, double t) const { return FamilyCurve::orbit(A, X, t); }
    /// Boundary of the square A + eps (s a + t b), counterclockwise in (a, b).
    Curve square_loop(const Point& A, const Tangent& a, const Tangent& b, double eps) const;
    Curve concat(const Curve& a, const Curve& b) const { return eqcs::concat(a, b); }
    Curve reverse(const Curve& c) const { return eqcs::reverse(c); }
    Curve reparam(const Curve& c, const Reparametrization& r) const { return reparametrize(c, r); }
    Curve conjugate(const Group& psi, const Curve& c) const { return eqcs::act(psi, c); }
    Curve retwist(const Curve& c, const Group& g) const { return c.with_twist(g); }

    Point start(const Curve& c) const { return c.start(); }
    Point end(const Curve& c) const { return c.end(); }
    Group twist(const Curve& c) const { return c.twist(); }
    Point at(const Curve& c, double t) const { return c.at(t); }
    Tangent velocity(const Curve& c, double t) const { return c.velocity(t); }
    const std::vector<double>& breaks(const Curve& c) const { return c.breaks(); }

    double distance(const Point& A, const Point& B) const { return sup_distance(A, B); }
    double group_distance(const Group& a, const Group& b) const { return sup_distance(a, b); }

private:
    GroupId group_;
    int dim_;
};

/// Two copies of a space, used for the two boundary tori of T^2 x [0,1].
template <class S>
class PairSpace {
public:
    using Point = std::pair<typename S::Point, typename S::Point>;
    using Group = std::pair<typename S::Group, typename S::Group>;
    using Curve = std::pair<typename S::Curve, typename S::Curve>;
    using Tangent = std::pair<typename S::Tangent, typename S::Tangent>;
    using Direction = std::pair<typename S::Direction, typename S::Direction>;

    explicit PairSpace(S s) : s_(std::move(s)) {}
    const S& factor() const { return s_; }

    Group identity() const { return {s_.identity(), s_.identity()}; }
    Group compose(const Group& a, const Group& b) const
    {
        return {s_.compose(a.first, b.first), s_.compose(a.second, b.second)};
    }
    Group inverse(const Group& a) const { return {s_.inverse(a.first), s_.inverse(a.second)}; }
    Group exp(const Direction& X, double t) const { return {s_.exp(X.first, t), s_.exp(X.second, t)}; }
    Point act(const Group& g, const Point& A) const { return {s_.act(g.first, A.first), s_.act(g.second, A.second)}; }
    Point shift(const Point& A, const Tangent& a, double s) const
    {
        return {s_.shift(A.first, a.first, s), s_.shift(A.second, a.second, s)};
    }
    Tangent generator(const Point& A, const Direction& X) const
    {
        return {s_.generator(A.first, X.first), s_.generator(A.second, X.second)};
    }

    Curve segment(const Point& A, const Group& g) const
    {
        return {s_.segment(A.first, g.first), s_.segment(A.second, g.second)};
    }
    Curve path(const std::vector<Point>& v, const Group& g) const
    {
        std::vector<typename S::Point> a, b;
        for (const auto& p : v) {
            a.push_back(p.first);
            b.push_back(p.second);
        }
        return {s_.path(a, g.first), s_.path(b, g.second)};
    }
    Curve orbit(const Point& A, const Direction& X, double t) const
    {
        return {s_.orbit(A.first, X.first, t), s_.orbit(A.second, X.second, t)};
    }
    Curve square_loop(const Point& A, const Tangent& a, const Tangent& b, double eps) const
    {
        return {s_.square_loop(A.first, a.first, b.first, eps), s_.square_loop(A.second, a.second, b.second, eps)};
    }
    Curve concat(const Curve& a, const Curve& b) const
    {
        return {s_.concat(a.first, b.first), s_.concat(a.second, b.second)};
    }
    Curve reverse(const Curve& c) const { return {s_.reverse(c.first), s_.reverse(c.second)}; }
    Curve reparam(const Curve& c, const Reparametrization& r) const
    {
        return {s_.reparam(c.first, r), s_.reparam(c.second, r)};
    }
    Curve conjugate(const Group& psi, const Curve& c) const
    {
        return {s_.conjugate(psi.first, c.first), s_.conjugate(psi.second, c.second)};
    }
    Curve retwist(const Curve& c, const Group& g) const
    {
        return {s_.retwist(c.first, g.first), s_.retwist(c.second, g.second)};
    }

    Point start(const Curve& c) const { return {s_.start(c.first), s_.start(c.second)}; }
    Point end(const Curve& c) const { return {s_.end(c.first), s_.end(c.second)}; }
    Group twist(const Curve& c) const { return {s_.twist(c.first), s_.twist(c.second)}; }

    double distance(const Point& A, const Point& B) const
    {
        return std::max(s_.distance(A.first, B.first), s_.distance(A.second, B.second));
    }
    double group_distance(const Group& a, const Group& b) const
    {
        return std::max(s_.group_distance(a.first, b.first), s_.group_distance(a.second, b.second));
    }

private:
    S s_;
};

using UnionSpace = PairSpace<GaugeSpace>;

/// Broken line in R^2 with endpoint relation end = start + twist, optionally reparametrized.
struct TranslationCurve {
    std::vector<std::array<double, 2>> vertices;
    std::array<double, 2> twist{0.0, 0.0};
    std::function<double(double)> sigma;

    std::array<double, 2> at(double t) const;
};

/// Constant flat U(1) connections 2 pi i (c_x dx + c_y dy), coordinates c in R^2,
/// acted on by translations of the holonomy coordinates.
class TranslationSpace {
public:
    using Point = std::array<double, 2>;
    using Group = std::array<double, 2>;
    using Curve = TranslationCurve;
    using Tangent = std::array<double, 2>;
    using Direction = std::array<double, 2>;

    Group identity() const { return {0.0, 0.0}; }
    Group compose(const Group& a, const Group& b) const { return {a[0] + b[0], a[1] + b[1]}; }
    Group inverse(const Group& a) const { return {-a[0], -a[1]}; }
    Group exp(const Direction& X, double t) const { return {t * X[0], t * X[1]}; }
    Point act(const Group& g, const Point& A) const { return {A[0] + g[0], A[1] + g[1]}; }
    Point shift(const Point& A, const Tangent& a, double s) const { return {A[0] + s * a[0], A[1] + s * a[1]}; }
    Tangent generator(const Point&, const Direction& X) const { return X; }

    Curve segment(const Point& A, const Group& g) const { return path({A, act(g, A)}, g); }
    Curve path(const std::vector<Point>& v, const Group& g) const;
    Curve orbit(const Point& A, const Direction& X, double t) const { return segment(A, exp(X, t)); }
    Curve square_loop(const Point& A, const Tangent& a, const Tangent& b, double eps) const;
    Curve concat(const Curve& a, const Curve& b) const;
    Curve reverse(const Curve& c) const;
    Curve reparam(const Curve& c, const Reparametrization& r) const;
    Curve conjugate(const Group& psi, const Curve& c) const;
    Curve retwist(const Curve& c, const Group& g) const;

    Point start(const Curve& c) const { return c.at(0.0); }
    Point end(const Curve& c) const { return c.at(1.0); }
    Group twist(const Curve& c) const { return c.twist; }

    double distance(const Point& A, const Point& B) const;
    double group_distance(const Group& a, const Group& b) const { return distance(a, b); }
};

/// (phi, gamma) -> R/Z with curvature and moment evaluators.
template <class S>
struct Character {
    std::string provenance;
    std::function<CircleValue(const typename S::Group&, const typename S::Curve&)> eval;
    std::function<double(const typename S::Point&, const typename S::Tangent&, const typename S::Tangent&)>
        curvature;
    std::function<double(const typename S::Point&, const typename S::Direction&)> moment;
};

/// 1-form on the parameter space: pointwise values, line integrals and exterior derivative.
template <class S>
struct OneForm {
    std::function<double(const typename S::Point&, const typename S::Tangent&)> value;
    std::function<double(const typename S::Curve&)> line;
    std::function<double(const typename S::Point&, const typename S::Tangent&, const typename S::Tangent&)>
        differential;
};

/// Data for one run of the axiom battery.
template <class S>
struct Fixture {
    std::string name;
    typename S::Point A;
    /// gamma in C^phi starting at A.
    typename S::Curve gamma;
    typename S::Group phi;
    /// gamma2 in C^phi2 starting at gamma(1).
    typename S::Curve gamma2;
    typename S::Group phi2;
    /// Starts at A; used for the base-point change.
    typename S::Curve zeta;
    typename S::Tangent a, b;
    typename S::Direction X;
    double eps = 0.25;
};

struct AxiomResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    std::size_t samples = 0;
    bool pass() const { return residual < tolerance; }
};

struct CharacterReport {
    std::string provenance;
    std::vector<AxiomResult> axioms;

    bool pass() const;
    const AxiomResult& axiom(const std::string& name) const;
};

struct VerifyOptions {
    double tol_additivity = 1e-6;
    double tol_base_change = 1e-6;
    double tol_curvature = 1e-5;
    double tol_moment = 1e-4;
    double tol_inverse = 1e-6;
    double tol_conjugation = 1e-6;
    double tol_reparametrization = 1e-6;
    double fd_step = 0.05;
    int square_nodes = 3;
    Reparametrization reparam = default_reparametrization();

    static Reparametrization default_reparametrization();
};

class CurvatureMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class EquivarianceViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class NonClosedCycle : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// eps^2 times the n x n Gauss-Legendre average of omega over the square A + eps (s a + t b).
template <class S>
double square_flux(const S& space, const Character<S>& chi, const typename S::Point& A, const typename S::Tangent& a,
                   const typename S::Tangent& b, double eps, int n)
{
    const auto& gl = gauss_legendre(n);
    double total = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i)
        for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
            auto P = space.shift(space.shift(A, a, eps * gl.nodes[i]), b, eps * gl.nodes[j]);
            total += gl.weights[i] * gl.weights[j] * chi.curvature(P, a, b);
        }
    return eps * eps * total;
}

template <class S>
CharacterReport verify_character(const S& space, const Character<S>& chi, const std::vector<Fixture<S>>& battery,
                                 const VerifyOptions& opt = {})
{
    CharacterReport rep;
    rep.provenance = chi.provenance;
    AxiomResult add{"additivity", 0.0, opt.tol_additivity};
    AxiomResult base{"base_change", 0.0, opt.tol_base_change};
    AxiomResult curv{"curvature", 0.0, opt.tol_curvature};
    AxiomResult mom{"moment", 0.0, opt.tol_moment};
    AxiomResult inv{"inverse", 0.0, opt.tol_inverse};
    AxiomResult conj{"conjugation", 0.0, opt.tol_conjugation};
    AxiomResult rep_{"reparametrization", 0.0, opt.tol_reparametrization};
    auto record = [](AxiomResult& r, double v) {
        r.residual = std::max(r.residual, v);
        ++r.samples;
    };
    for (const auto& f : battery) {
        CircleValue x1 = chi.eval(f.phi, f.gamma);
        CircleValue x2 = chi.eval(f.phi2, f.gamma2);
        CircleValue x12 = chi.eval(space.compose(f.phi2, f.phi), space.concat(f.gamma, f.gamma2));
        record(add, x12.distance(x1 + x2));

        auto moved = space.concat(space.concat(space.reverse(f.zeta), f.gamma), space.conjugate(f.phi, f.zeta));
        record(base, chi.eval(f.phi, moved).distance(x1));

        auto loop = space.square_loop(f.A, f.a, f.b, f.eps);
        double flux = square_flux(space, chi, f.A, f.a, f.b, f.eps, opt.square_nodes);
        record(curv, chi.eval(space.identity(), loop).distance(CircleValue(flux)));

        const double h = opt.fd_step;
        CircleValue vp = chi.eval(space.exp(f.X, h), space.orbit(f.A, f.X, h));
        CircleValue vm = chi.eval(space.exp(f.X, -h), space.orbit(f.A, f.X, -h));
        record(mom, std::abs(signed_difference(vp, vm) / (2.0 * h) - chi.moment(f.A, f.X)));

        record(inv, (x1 + chi.eval(space.inverse(f.phi), space.reverse(f.gamma))).distance(CircleValue(0.0)));

        auto psi = f.phi2;
        CircleValue xc = chi.eval(space.compose(space.compose(psi, f.phi), space.inverse(psi)),
                                  space.conjugate(psi, f.gamma));
        record(conj, xc.distance(x1));

        record(rep_, chi.eval(f.phi, space.reparam(f.gamma, opt.reparam)).distance(x1));
    }
    rep.axioms = {add, base, curv, mom, inv, conj, rep_};
    return rep;
}

/// The same character shifted by a constant; every additive identity then fails by that constant.
template <class S>
Character<S> with_offset(const Character<S>& chi, double offset)
{
    Character<S> r = chi;
    r.provenance = chi.provenance + "+offset";
    r.eval = [e = chi.eval, offset](const typename S::Group& g, const typename S::Curve& c) {
        return e(g, c) + CircleValue(offset);
    };
    return r;
}

/// Sum over pieces of Gauss-Legendre integrals of beta(gamma(t), gamma'(t)).
template <class S>
double line_integral(const S& space, const std::function<double(const typename S::Point&, const typename S::Tangent&)>& beta,
                     const typename S::Curve& c, int nodes = 8)
{
    const auto& gl = gauss_legendre(nodes);
    const auto& b = space.breaks(c);
    std::vector<double> parts;
    for (std::size_t k = 0; k + 1 < b.size(); ++k) {
        double len = b[k + 1] - b[k];
        for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
            double t = b[k] + len * gl.nodes[q];
            parts.push_back(gl.weights[q] * len * beta(space.at(c, t), space.velocity(c, t)));
        }
    }
    return pairwise_sum(parts);
}

/// d beta(a, b) at A by central differences of beta along a and b.
template <class S>
auto finite_difference_differential(const S& space,
                                    std::function<double(const typename S::Point&, const typename S::Tangent&)> beta,
                                    double h = 1e-3)
{
    return [space, beta, h](const typename S::Point& A, const typename S::Tangent& a, const typename S::Tangent& b) {
        double da_b = beta(space.shift(A, a, h), b) - beta(space.shift(A, a, -h), b);
        double db_a = beta(space.shift(A, b, h), a) - beta(space.shift(A, b, -h), a);
        return (da_b - db_a) / (2.0 * h);
    };
}

/// Varsigma(beta)(phi, gamma) = int_gamma beta; curvature d beta, moment beta(X_A).
template <class S>
Character<S> varsigma(const S& space, const OneForm<S>& beta)
{
    Character<S> r;
    r.provenance = "varsigma";
    r.eval = [line = beta.line](const typename S::Group&, const typename S::Curve& c) {
        return CircleValue(line(c));
    };
    r.curvature = beta.differential;
    r.moment = [space, value = beta.value](const typename S::Point& A, const typename S::Direction& X) {
        return value(A, space.generator(A, X));
    };
    return r;
}

/// Parameter map f with tangent map df, homomorphism rho with derivative drho.
template <class S, class T>
struct PullbackMap {
    std::function<typename T::Point(const typename S::Point&)> point;
    std::function<typename T::Tangent(const typename S::Tangent&)> tangent;
    std::function<typename T::Group(const typename S::Group&)> group;
    std::function<typename T::Direction(const typename S::Direction&)> direction;
    std::function<typename T::Curve(const typename S::Curve&)> curve;
};

/// Largest |f(phi . A) - rho(phi) . f(A)| over the probes.
template <class S, class T>
double equivariance_residual(const S& s, const T& t, const PullbackMap<S, T>& m,
                             const std::vector<std::pair<typename S::Group, typename S::Point>>& probes)
{
    double r = 0.0;
    for (const auto& [g, A] : probes)
        r = std::max(r, t.distance(m.point(s.act(g, A)), t.act(m.group(g), m.point(A))));
    return r;
}

/// (f, rho)^* chi; refuses maps that are not equivariant within tol on the probes.
template <class S, class T>
Character<S> pullback_character(const S& s, const T& t, const Character<T>& chi, const PullbackMap<S, T>& m,
                                const std::vector<std::pair<typename S::Group, typename S::Point>>& probes,
                                double tol = 1e-8)
{
    double r = equivariance_residual(s, t, m, probes);
    if (!(r <= tol))
        throw EquivarianceViolation("parameter map is not equivariant: residual " + std::to_string(r));
    Character<S> out;
    out.provenance = "pullback(" + chi.provenance + ")";
    out.eval = [chi, m](const typename S::Group& g, const typename S::Curve& c) {
        return chi.eval(m.group(g), m.curve(c));
    };
    out.curvature = [chi, m](const typename S::Point& A, const typename S::Tangent& a, const typename S::Tangent& b) {
        return chi.curvature(m.point(A), m.tangent(a), m.tangent(b));
    };
    out.moment = [chi, m](const typename S::Point& A, const typename S::Direction& X) {
        return chi.moment(m.point(A), m.direction(X));
    };
    return out;
}

/// alpha_phi(A) and the line integrator of the connection Theta = theta - 2 pi i lambda.
template <class S>
struct BundleCocycle {
    std::function<CircleValue(const typename S::Group&, const typename S::Point&)> alpha;
    std::function<double(const typename S::Curve&)> lambda;
};

/// Largest |int_{square} lambda - int_square curv(chi)| over the battery squares.
template <class S>
double lambda_curvature_residual(const S& space, const Character<S>& chi, const OneForm<S>& lambda,
                                 const std::vector<Fixture<S>>& battery, int nodes = 3)
{
    double r = 0.0;
    for (const auto& f : battery) {
        double l = lambda.line(space.square_loop(f.A, f.a, f.b, f.eps));
        r = std::max(r, std::abs(l - square_flux(space, chi, f.A, f.a, f.b, f.eps, nodes)));
    }
    return r;
}

/// alpha_phi(A) = int_gamma lambda - chi(phi, gamma) along the segment from A to phi . A.
template <class S>
BundleCocycle<S> build_cocycle(const S& space, const Character<S>& chi, const OneForm<S>& lambda,
                               const std::vector<Fixture<S>>& probes, double tol = 1e-5)
{
    double r = lambda_curvature_residual(space, chi, lambda, probes);
    if (!(r <= tol))
        throw CurvatureMismatch("d lambda differs from the curvature of the character by " + std::to_string(r));
    BundleCocycle<S> c;
    c.lambda = lambda.line;
    c.alpha = [space, chi, line = lambda.line](const typename S::Group& g, const typename S::Point& A) {
        auto seg = space.segment(A, g);
        return CircleValue(line(seg)) - chi.eval(g, seg);
    };
    return c;
}

/// hol(phi, gamma) = int_gamma lambda - alpha_phi(gamma(0)).
template <class S>
CircleValue holonomy_from_cocycle(const S& space, const BundleCocycle<S>& c, const typename S::Group& phi,
                                  const typename S::Curve& gamma, double tol = 1e-8)
{
    if (!(space.group_distance(phi, space.twist(gamma)) <= tol))
        throw EndpointMismatch("curve is not twisted by the given group element");
    return CircleValue(c.lambda(gamma)) - c.alpha(phi, space.start(gamma));
}

/// |alpha_{phi2 phi}(A) - alpha_phi(A) - alpha_phi2(phi . A)|.
template <class S>
double cocycle_identity_residual(const S& space, const BundleCocycle<S>& c, const typename S::Group& phi,
                                 const typename S::Group& phi2, const typename S::Point& A)
{
    CircleValue lhs = c.alpha(space.compose(phi2, phi), A);
    return lhs.distance(c.alpha(phi, A) + c.alpha(phi2, space.act(phi, A)));
}

/// Difference of alpha_phi(A) computed along the segment and along A -> A + delta -> phi . A.
template <class S>
double path_independence_residual(const S& space, const Character<S>& chi, const BundleCocycle<S>& c,
                                  const typename S::Group& phi, const typename S::Point& A,
                                  const typename S::Tangent& delta)
{
    auto detour = space.path({A, space.shift(A, delta, 1.0), space.act(phi, A)}, phi);
    CircleValue other = CircleValue(c.lambda(detour)) - chi.eval(phi, detour);
    return other.distance(c.alpha(phi, A));
}

/// Finite sequence of (phi_i, gamma_i) with phi_i . gamma_i(1) = gamma_{i+1}(0) cyclically.
template <class S>
struct EquivariantCycle {
    std::vector<std::pair<typename S::Group, typename S::Curve>> segments;

    double closure_residual(const S& space) const
    {
        double r = 0.0;
        for (std::size_t i = 0; i < segments.size(); ++i) {
            const auto& [g, c] = segments[i];
            const auto& next = segments[(i + 1) % segments.size()].second;
            r = std::max(r, space.distance(space.act(g, space.end(c)), space.start(next)));
        }
        return r;
    }
};

/// Auxiliary curve in C^phi from a point; the default is the straight segment.
template <class S>
using TauChoice = std::function<typename S::Curve(const typename S::Point&, const typename S::Group&, std::size_t)>;

/// eta(z) = chi(e, gamma_1 * tau_1 * ... * gamma_n * tau_n) - sum chi(phi_i, tau_i).
template <class S>
CircleValue lerman_malkin_eval(const S& space, const Character<S>& chi, const EquivariantCycle<S>& z,
                               TauChoice<S> tau = {}, double tol = 1e-8)
{
    if (z.segments.empty())
        throw NonClosedCycle("empty equivariant cycle");
    double r = z.closure_residual(space);
    if (!(r <= tol))
        throw NonClosedCycle("equivariant cycle does not close: residual " + std::to_string(r));
    if (!tau)
        tau = [&space](const typename S::Point& P, const typename S::Group& g, std::size_t) {
            return space.segment(P, g);
        };
    CircleValue corr(0.0);
    std::optional<typename S::Curve> loop;
    for (std::size_t i = 0; i < z.segments.size(); ++i) {
        const auto& [g, c] = z.segments[i];
        auto t = tau(space.end(c), g, i);
        corr = corr + chi.eval(g, t);
        auto piece = space.concat(c, t);
        loop = loop ? space.concat(*loop, piece) : piece;
    }
    return chi.eval(space.identity(), space.retwist(*loop, space.identity())) - corr;
}

struct ProjectabilityResult {
    bool projectable = false;
    double residual = 0.0;
};

/// max |mu(A, xi_j)| over the points; projectable when below tol.
template <class S>
ProjectabilityResult projectability_check(const Character<S>& chi,
                                          const std::vector<typename S::Direction>& generators,
                                          const std::vector<typename S::Point>& points, double tol = 1e-6)
{
    ProjectabilityResult r;
    for (const auto& A : points)
        for (const auto& X : generators)
            r.residual = std::max(r.residual, std::abs(chi.moment(A, X)));
    r.projectable = r.residual < tol;
    return r;
}

/// max over the pairs of the circle distance between chi(phi, gamma) and int_gamma beta.
template <class S>
double triviality_residual(const Character<S>& chi, const OneForm<S>& beta,
                           const std::vector<std::pair<typename S::Group, typename S::Curve>>& pairs)
{
    double r = 0.0;
    for (const auto& [g, c] : pairs)
        r = std::max(r, chi.eval(g, c).distance(CircleValue(beta.line(c))));
    return r;
}

/// Xi on connections over T^2 with curvature omega and moment mu.
Character<GaugeSpace> xi_character(const CharacteristicPair& p, const XiOptions& opt);
/// lambda normalized against the product connection.
OneForm<GaugeSpace> lambda_form(const CharacteristicPair& p, const XiOptions& opt);
/// Top-minus-bottom Xi on the two boundary tori of T^2 x [0,1].
Character<UnionSpace> boundary_character(const CharacteristicPair& p, const XiOptions& opt);
/// Restriction of T^2 x [0,1] data to the faces z = 1 and z = 0.
PullbackMap<GaugeSpace, UnionSpace> boundary_restriction();
/// Fiber integral of p(F) over T^2 x [0,1] as a 1-form on connections.
OneForm<GaugeSpace> fiber_form(const CharacteristicPair& p, const BoundaryOptions& opt);
/// chi(s, gamma) = m s_x + n s_y on translations of flat U(1) holonomies.
Character<TranslationSpace> translation_character(int m, int n);

}
