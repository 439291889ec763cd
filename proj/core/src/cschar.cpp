#include "eqcs/cschar.hpp"
#include "eqcs/abelian_oracle.hpp"
#include "eqcs/quadrature.hpp"

#include <cmath>

namespace eqcs {

SmoothingProfile::SmoothingProfile(double e) : eps(e)
{
    if (!(eps > 0.0 && eps < 0.5))
        throw std::invalid_argument("smoothing profile needs 0 < eps < 1/2");
}

namespace {

double psi(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }
double dpsi(double s) { return s > 0.0 ? std::exp(-1.0 / s) / (s * s) : 0.0; }

double step(double s)
{
    if (s <= 0.0)
        return 0.0;
    if (s >= 1.0)
        return 1.0;
    double a = psi(s), b = psi(1.0 - s);
    return a / (a + b);
}

double dstep(double s)
{
    if (s <= 0.0 || s >= 1.0)
        return 0.0;
    double a = psi(s), b = psi(1.0 - s);
    double da = dpsi(s), db = -dpsi(1.0 - s);
    return (da * b - a * db) / ((a + b) * (a + b));
}

Mat2 comm(const Mat2& a, const Mat2& b) { return a * b - b * a; }

}

double SmoothingProfile::operator()(double t) const
{
    return step((t - eps) / (1.0 - 2.0 * eps));
}

double SmoothingProfile::derivative(double t) const
{
    return dstep((t - eps) / (1.0 - 2.0 * eps)) / (1.0 - 2.0 * eps);
}

std::string to_string(XiRoute r)
{
    return r == XiRoute::Quadrature ? "quadrature" : "lattice";
}

RealForm transgression(const Connection& A, const Connection& A2, const CharacteristicPair& p, const Grid& grid,
                       int gl_nodes)
{
    if (A.group() != A2.group() || A.group() != p.group())
        throw GroupMismatch("transgression inputs have different groups");
    if (A.dim() != A2.dim() || A.dim() != grid.dim())
        throw GridMismatch("transgression inputs live on different manifolds");
    const int r = p.degree();
    const int q = 2 * r - 1;
    RealForm out(grid, q);
    if (q > grid.dim())
        return out;
    AlgebraForm a = (A - A2).sample(grid);
    AlgebraForm a2 = A2.sample(grid);
    AlgebraForm da = exterior_derivative(a);
    AlgebraForm F2 = curvature(A2, grid);
    AlgebraForm a2a = wedge(a2, a) + wedge(a, a2);
    AlgebraForm aa = wedge(a, a);
    const auto& gl = gauss_legendre(std::max(gl_nodes, r + 1));
    for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
        double t = gl.nodes[k];
        AlgebraForm Ft = F2 + (da + a2a).scaled(t) + aa.scaled(t * t);
        std::vector<const AlgebraForm*> args{&a};
        for (int j = 1; j < r; ++j)
            args.push_back(&Ft);
        out = out + p_wedge(p, args).scaled(r * gl.weights[k]);
    }
    return out;
}

CircleValue cs_action(const Connection& A, const CharacteristicPair& p, const Grid& grid)
{
    if (grid.dim() != 2 * p.degree() - 1)
        throw WrongDimension("cs_action needs a grid of dimension 2r-1");
    return CircleValue(-integrate(transgression(A, Connection::product(A.group(), A.dim()), p, grid)));
}

namespace {

/// Gauge transformation applied to the slab connection, with its derivatives in x and s.
struct GaugeFrame {
    Mat2 G;
    std::array<Mat2, 3> dG;
    Mat2 dGs;
    bool identity;
};

/// Tp(G . B, 0)_{xys} with B spatial, V = dB/ds, r = 2.
double slab_kernel(const CurveJet& c, const GaugeFrame& g, const CharacteristicPair& p, const QuadratureRule& gl)
{
    Mat2 At[2], Ats, Ft01, Fts[2];
    Mat2 F01 = c.A.curvature(0, 1);
    if (g.identity) {
        At[0] = c.A.A[0];
        At[1] = c.A.A[1];
        Ats = Mat2::Zero();
        Ft01 = F01;
        Fts[0] = -c.V[0];
        Fts[1] = -c.V[1];
    } else {
        Mat2 Gi = g.G.adjoint();
        for (int i = 0; i < 2; ++i) {
            At[i] = g.G * c.A.A[i] * Gi - g.dG[i] * Gi;
            Fts[i] = -(g.G * c.V[i] * Gi);
        }
        Ats = -g.dGs * Gi;
        Ft01 = g.G * F01 * Gi;
    }
    Mat2 B01 = comm(At[0], At[1]);
    Mat2 B0s = comm(At[0], Ats);
    Mat2 B1s = comm(At[1], Ats);
    Mat2 d01 = Ft01 - B01;
    Mat2 d0s = Fts[0] - B0s;
    Mat2 d1s = Fts[1] - B1s;
    double tp = 0.0;
    for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
        double t = gl.nodes[k];
        double t2 = t * t;
        double v = p.bilinear(At[0], t * d1s + t2 * B1s) - p.bilinear(At[1], t * d0s + t2 * B0s)
            + p.bilinear(Ats, t * d01 + t2 * B01);
        tp += gl.weights[k] * v;
    }
    return 2.0 * tp;
}

using SlabEval = std::function<void(std::size_t node, std::size_t point, CurveJet&, GaugeFrame&)>;

/// int over s-nodes and the periodic N x N grid of the slab kernel, oriented dx dy ds.
double slab_integral(const std::vector<double>& weights, int n, const SlabEval& eval, const CharacteristicPair& p)
{
    if (p.degree() != 2 || !p.is_trace_form())
        throw WrongDimension("the mapping-torus integral is implemented for quadratic trace forms on T^2");
    const auto& gl = gauss_legendre(3);
    const std::size_t npts = static_cast<std::size_t>(n) * n;
    std::vector<double> slices(weights.size(), 0.0);
    std::vector<double> terms(npts);
    CurveJet c;
    GaugeFrame g;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        if (weights[k] == 0.0)
            continue;
        for (std::size_t pt = 0; pt < npts; ++pt) {
            eval(k, pt, c, g);
            terms[pt] = slab_kernel(c, g, p, gl);
        }
        slices[k] = weights[k] * pairwise_sum(terms) / static_cast<double>(npts);
    }
    return pairwise_sum(slices);
}

Point grid_point(std::size_t pt, int n)
{
    return {static_cast<double>(pt % n) / n, static_cast<double>(pt / n) / n, 0.0};
}

GaugeFrame identity_frame()
{
    GaugeFrame g;
    g.identity = true;
    return g;
}

/// -int over M x [0,1] of Tp, piece by piece with the smoothing profile; trivialized on request.
double mapping_torus_tp(const FamilyCurve& gamma, const CharacteristicPair& p, const XiOptions& opt, bool trivialize)
{
    if (gamma.dim() != 2)
        throw WrongDimension("Xi is evaluated over T^2");
    const int n = opt.n_space;
    const std::size_t npts = static_cast<std::size_t>(n) * n;
    const auto sw = simpson_weights(opt.n_time);
    const GaugeMap& phi = gamma.twist();
    std::vector<double> u(opt.n_time), du(opt.n_time);
    for (int j = 0; j < opt.n_time; ++j) {
        double s = static_cast<double>(j) / (opt.n_time - 1);
        u[j] = opt.profile(s);
        du[j] = opt.profile.derivative(s);
    }
    std::vector<double> w(opt.n_time);
    for (int j = 0; j < opt.n_time; ++j)
        w[j] = du[j] == 0.0 ? 0.0 : sw[j];

    std::vector<GaugeFrame> later(trivialize ? npts : 0);
    if (trivialize) {
        for (std::size_t pt = 0; pt < npts; ++pt) {
            GaugeJet gj = phi.jet(grid_point(pt, n));
            GaugeFrame& f = later[pt];
            f.G = gj.g.adjoint();
            for (int i = 0; i < 3; ++i)
                f.dG[i] = -f.G * gj.dg[i] * f.G;
            f.dGs = Mat2::Zero();
            f.identity = false;
        }
    }

    std::vector<double> pieces;
    for (std::size_t k = 0; k < gamma.pieces().size(); ++k) {
        const auto& piece = gamma.pieces()[k];
        SlabEval eval = [&](std::size_t j, std::size_t pt, CurveJet& c, GaugeFrame& g) {
            Point x = grid_point(pt, n);
            c = piece->jet(u[j], x);
            for (auto& v : c.V)
                v *= du[j];
            if (!trivialize) {
                g = identity_frame();
            } else if (k > 0) {
                g = later[pt];
            } else {
                auto h = phi.homotopy(x, 1.0 - u[j]);
                if (!h)
                    throw MissingWitness("twist has no nullhomotopy; the mapping torus cannot be trivialized");
                g.G = h->g.adjoint();
                for (int i = 0; i < 3; ++i)
                    g.dG[i] = -g.G * h->dg[i] * g.G;
                g.dGs = du[j] * (g.G * h->dtau * g.G);
                g.identity = false;
            }
        };
        pieces.push_back(slab_integral(w, n, eval, p));
    }
    return -pairwise_sum(pieces);
}

}

MappingTorusConnection assemble_mapping_torus(const FamilyCurve& gamma, const GaugeMap& phi,
                                              const SmoothingProfile& u, int n_space, int n_time, bool trivialize)
{
    if (gamma.dim() != 2)
        throw WrongDimension("mapping tori are assembled over T^2");
    if (sup_distance(phi, gamma.twist()) > 1e-8)
        throw EndpointMismatch("curve twist differs from the requested gauge map");
    if (trivialize && !phi.null_homotopic())
        throw MissingWitness("twist has no nullhomotopy; route through the lattice oracle");
    Grid g({n_space, n_space, n_time}, {AxisKind::Periodic, AxisKind::Periodic, AxisKind::Interval});
    AlgebraForm field(g, 1, gamma.group());
    for (std::size_t pt = 0; pt < g.points(); ++pt) {
        GridPoint gp = g.point(pt);
        Point x{gp[0], gp[1], 0.0};
        double uu = u(gp[2]);
        CurveJet c = gamma.jet(uu, x);
        for (auto& v : c.V)
            v *= u.derivative(gp[2]);
        Mat2 A[3] = {c.A.A[0], c.A.A[1], Mat2::Zero()};
        if (trivialize) {
            auto h = phi.homotopy(x, 1.0 - uu);
            Mat2 G = h->g.adjoint();
            for (int i = 0; i < 2; ++i)
                A[i] = G * c.A.A[i] * G.adjoint() + G * h->dg[i];
            A[2] = -u.derivative(gp[2]) * (G * h->dtau);
        }
        for (int i = 0; i < 3; ++i)
            field.at(static_cast<std::size_t>(i), pt) = A[i];
    }
    double glue = 0.0, ends = 0.0;
    for (int j = 0; j < n_space; ++j) {
        for (int i = 0; i < n_space; ++i) {
            Point x{static_cast<double>(i) / n_space, static_cast<double>(j) / n_space, 0.0};
            ConnJet a0 = gamma.start().jet(x), a1 = gamma.end().jet(x);
            ConnJet pa0 = transform_jet(phi.jet(x), a0);
            std::size_t f0 = g.flatten({i, j, 0, 0}), f1 = g.flatten({i, j, n_time - 1, 0});
            for (int k = 0; k < 2; ++k) {
                glue = std::max(glue, mat::norm(a1.A[k] - pa0.A[k]));
                if (trivialize)
                    ends = std::max(ends, mat::norm(field.at(k, f1) - field.at(k, f0)));
            }
        }
    }
    return {g, std::move(field), trivialize, glue, ends};
}

XiResult xi(const GaugeMap& phi, const FamilyCurve& gamma, const CharacteristicPair& p, const XiOptions& opt)
{
    if (gamma.group() != p.group() || phi.group() != p.group())
        throw GroupMismatch("xi inputs have different groups");
    if (gamma.dim() != 2 * p.degree() - 2)
        throw WrongDimension("xi needs dim M = 2r - 2");
    if (sup_distance(phi, gamma.twist()) > 1e-8)
        throw EndpointMismatch("curve twist differs from the requested gauge map");
    if (!phi.null_homotopic()) {
        if (phi.group() != GroupId::U1)
            throw MissingWitness("non-abelian twist without nullhomotopy");
        auto path = sample_u1_curve(gamma, opt.lattice_n, opt.lattice_steps);
        return {exact_xi_u1(path, p.level()), XiRoute::Lattice};
    }
    return {CircleValue(mapping_torus_tp(gamma, p, opt, true)), XiRoute::Quadrature};
}

double curvature_two_form(const Connection& A, const Connection& a, const Connection& b, const CharacteristicPair& p,
                          int n)
{
    const int r = p.degree();
    if (A.dim() != 2 * r - 2)
        throw WrongDimension("curvature_two_form needs dim M = 2r - 2");
    Grid g = Grid::torus(A.dim(), n);
    AlgebraForm fa = a.sample(g), fb = b.sample(g), F = curvature(A, g);
    std::vector<const AlgebraForm*> args{&fa, &fb};
    for (int j = 2; j < r; ++j)
        args.push_back(&F);
    return r * (r - 1) * integrate(p_wedge(p, args));
}

double moment(const Connection& A, const AlgebraField& xi, const CharacteristicPair& p, int n)
{
    const int r = p.degree();
    if (A.dim() != 2 * r - 2)
        throw WrongDimension("moment needs dim M = 2r - 2");
    Grid g = Grid::torus(A.dim(), n);
    AlgebraForm v = vertical_generator(A, xi, g), F = curvature(A, g);
    std::vector<const AlgebraForm*> args{&v};
    for (int j = 1; j < r; ++j)
        args.push_back(&F);
    return -r * integrate(p_wedge(p, args));
}

double integrate_lambda(const FamilyCurve& gamma, const Connection& A0, const CharacteristicPair& p,
                        const XiOptions& opt)
{
    if (!A0.is_product())
        throw std::invalid_argument("integrate_lambda is normalized against the product connection");
    return mapping_torus_tp(gamma, p, opt, false);
}

double lambda_one_form(const Connection& A, const Connection& a, const CharacteristicPair& p, int n)
{
    if (A.dim() != 2 || a.dim() != 2)
        throw WrongDimension("lambda is evaluated over T^2");
    SlabEval eval = [&](std::size_t, std::size_t pt, CurveJet& c, GaugeFrame& g) {
        Point x = grid_point(pt, n);
        c.A = A.jet(x);
        c.V = a.jet(x).A;
        g = identity_frame();
    };
    return -slab_integral({1.0}, n, eval, p);
}

double rsw_cocycle(const GaugeMap& phi, const Connection& A, const CharacteristicPair& p, const XiOptions& opt)
{
    if (A.dim() != 2)
        throw WrongDimension("the cylinder cocycle is evaluated over T^2");
    const int n = opt.n_space;
    const auto& rule = gauss_legendre(opt.n_time);
    auto jet_at = [&](double z, const Point& x) {
        ConnJet a = A.jet(x);
        CurveJet c;
        for (int i = 0; i < 3; ++i) {
            c.A.A[i] = z * a.A[i];
            c.V[i] = a.A[i];
            for (int k = 0; k < 3; ++k)
                c.A.dA[i][k] = z * a.dA[i][k];
        }
        return c;
    };
    SlabEval plain = [&](std::size_t j, std::size_t pt, CurveJet& c, GaugeFrame& g) {
        c = jet_at(rule.nodes[j], grid_point(pt, n));
        g = identity_frame();
    };
    SlabEval moved = [&](std::size_t j, std::size_t pt, CurveJet& c, GaugeFrame& g) {
        Point x = grid_point(pt, n);
        c = jet_at(rule.nodes[j], x);
        auto h = phi.homotopy(x, 1.0 - rule.nodes[j]);
        if (!h)
            throw MissingWitness("twist has no nullhomotopy");
        g.G = h->g;
        g.dG = h->dg;
        g.dGs = -h->dtau;
        g.identity = false;
    };
    double cs_moved = -slab_integral(rule.weights, n, moved, p);
    double cs_plain = -slab_integral(rule.weights, n, plain, p);
    return cs_moved - cs_plain;
}

}
