#include "eqcs/curve.hpp"

#include <algorithm>
#include <cmath>

namespace eqcs {

namespace {

Mat2 comm(const Mat2& a, const Mat2& b) { return a * b - b * a; }

class LinearPiece : public CurvePiece {
public:
    LinearPiece(std::shared_ptr<const ConnectionNode> a0, std::shared_ptr<const ConnectionNode> a1)
        : a0_(std::move(a0)), a1_(std::move(a1))
    {
    }
    CurveJet jet(double s, const Point& x) const override
    {
        ConnJet p = a0_->jet(x), q = a1_->jet(x);
        CurveJet r;
        for (int i = 0; i < 3; ++i) {
            r.A.A[i] = (1.0 - s) * p.A[i] + s * q.A[i];
            r.V[i] = q.A[i] - p.A[i];
            for (int k = 0; k < 3; ++k)
                r.A.dA[i][k] = (1.0 - s) * p.dA[i][k] + s * q.dA[i][k];
        }
        return r;
    }

private:
    std::shared_ptr<const ConnectionNode> a0_, a1_;
};

class OrbitPiece : public CurvePiece {
public:
    OrbitPiece(std::shared_ptr<const ConnectionNode> a, AlgebraField xi, double t)
        : a_(std::move(a)), xi_(std::move(xi)), t_(t)
    {
    }
    CurveJet jet(double s, const Point& x) const override
    {
        Mat2 v;
        std::array<Mat2, 3> d;
        xi_.jet(x, v, d);
        CurveJet r;
        r.A = transform_jet(exp_jet(xi_.group(), v, d, s * t_), a_->jet(x));
        for (int i = 0; i < 3; ++i)
            r.V[i] = t_ * (comm(v, r.A.A[i]) - d[i]);
        return r;
    }

private:
    std::shared_ptr<const ConnectionNode> a_;
    AlgebraField xi_;
    double t_;
};

class GaugeImagePiece : public CurvePiece {
public:
    GaugeImagePiece(std::shared_ptr<const GaugeMapNode> phi, PiecePtr p) : phi_(std::move(phi)), p_(std::move(p)) {}
    CurveJet jet(double s, const Point& x) const override
    {
        GaugeJet g = phi_->jet(x);
        CurveJet c = p_->jet(s, x);
        CurveJet r;
        r.A = transform_jet(g, c.A);
        Mat2 gi = g.g.adjoint();
        for (int i = 0; i < 3; ++i)
            r.V[i] = g.g * c.V[i] * gi;
        return r;
    }

private:
    std::shared_ptr<const GaugeMapNode> phi_;
    PiecePtr p_;
};

class ReversePiece : public CurvePiece {
public:
    explicit ReversePiece(PiecePtr p) : p_(std::move(p)) {}
    CurveJet jet(double s, const Point& x) const override
    {
        CurveJet c = p_->jet(1.0 - s, x);
        for (auto& v : c.V)
            v = -v;
        return c;
    }

private:
    PiecePtr p_;
};

class SubPiece : public CurvePiece {
public:
    SubPiece(PiecePtr p, std::function<double(double)> f, std::function<double(double)> df)
        : p_(std::move(p)), f_(std::move(f)), df_(std::move(df))
    {
    }
    CurveJet jet(double s, const Point& x) const override
    {
        CurveJet c = p_->jet(f_(s), x);
        double k = df_(s);
        for (auto& v : c.V)
            v *= k;
        return c;
    }

private:
    PiecePtr p_;
    std::function<double(double)> f_, df_;
};

class FacePiece : public CurvePiece {
public:
    FacePiece(PiecePtr p, double z0) : p_(std::move(p)), z0_(z0) {}
    CurveJet jet(double s, const Point& x) const override
    {
        CurveJet c = p_->jet(s, {x[0], x[1], z0_});
        CurveJet r;
        r.A = ConnJet::zero();
        for (int i = 0; i < 2; ++i) {
            r.A.A[i] = c.A.A[i];
            r.V[i] = c.V[i];
        }
        r.V[2] = Mat2::Zero();
        r.A.dA[0][1] = c.A.dA[0][1];
        r.A.dA[1][0] = c.A.dA[1][0];
        return r;
    }

private:
    PiecePtr p_;
    double z0_;
};

class VelocityConnection : public ConnectionNode {
public:
    VelocityConnection(PiecePtr p, double s, double scale) : p_(std::move(p)), s_(s), scale_(scale) {}
    ConnJet jet(const Point& x) const override
    {
        const double h = 1e-5;
        double lo = std::max(0.0, s_ - h), hi = std::min(1.0, s_ + h);
        CurveJet c = p_->jet(s_, x), a = p_->jet(lo, x), b = p_->jet(hi, x);
        ConnJet r = ConnJet::zero();
        for (int i = 0; i < 3; ++i) {
            r.A[i] = scale_ * c.V[i];
            for (int k = 0; k < 3; ++k)
                r.dA[i][k] = (scale_ / (hi - lo)) * (b.A.dA[i][k] - a.A.dA[i][k]);
        }
        return r;
    }

private:
    PiecePtr p_;
    double s_, scale_;
};

class SliceConnection : public ConnectionNode {
public:
    SliceConnection(PiecePtr p, double s) : p_(std::move(p)), s_(s) {}
    ConnJet jet(const Point& x) const override { return p_->jet(s_, x).A; }

private:
    PiecePtr p_;
    double s_;
};

}

FamilyCurve::FamilyCurve(std::vector<PiecePtr> pieces, std::vector<double> breaks, GaugeMap twist, GroupId g,
                         int dim, double tol)
    : pieces_(std::move(pieces)), breaks_(std::move(breaks)), twist_(std::move(twist)), group_(g), dim_(dim)
{
    if (pieces_.empty() || breaks_.size() != pieces_.size() + 1)
        throw std::invalid_argument("curve needs one more break than pieces");
    if (twist_.group() != g)
        throw GroupMismatch("curve twist has the wrong group");
    if (twist_.dim() != dim)
        throw GridMismatch("curve twist lives on a different manifold");
    double r = endpoint_residual();
    if (!(r <= tol))
        throw EndpointMismatch("curve endpoint relation gamma(1) = phi . gamma(0) violated by "
                               + std::to_string(r));
}

FamilyCurve FamilyCurve::linear(const Connection& A0, const Connection& A1, const GaugeMap& twist)
{
    if (A0.group() != A1.group())
        throw GroupMismatch("segment endpoints have different groups");
    return FamilyCurve({std::make_shared<LinearPiece>(A0.node(), A1.node())}, {0.0, 1.0}, twist, A0.group(),
                       A0.dim());
}

FamilyCurve FamilyCurve::segment(const Connection& A, const GaugeMap& phi)
{
    return linear(A, gauge_transform(phi, A), phi);
}

FamilyCurve FamilyCurve::constant(const Connection& A)
{
    return linear(A, A, GaugeMap::identity(A.group(), A.dim()));
}

FamilyCurve FamilyCurve::orbit(const Connection& A, const AlgebraField& xi, double t)
{
    return FamilyCurve({std::make_shared<OrbitPiece>(A.node(), xi, t)}, {0.0, 1.0}, GaugeMap::exp(xi, A.dim(), t),
                       A.group(), A.dim());
}

FamilyCurve FamilyCurve::polygon(const std::vector<Connection>& vertices)
{
    if (vertices.size() < 2)
        throw std::invalid_argument("polygon needs at least two vertices");
    std::vector<PiecePtr> pieces;
    std::vector<double> breaks;
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        pieces.push_back(std::make_shared<LinearPiece>(vertices[i].node(), vertices[(i + 1) % n].node()));
        breaks.push_back(static_cast<double>(i) / n);
    }
    breaks.push_back(1.0);
    const auto& A = vertices[0];
    return FamilyCurve(std::move(pieces), std::move(breaks), GaugeMap::identity(A.group(), A.dim()), A.group(),
                       A.dim());
}

FamilyCurve FamilyCurve::path(const std::vector<Connection>& vertices, const GaugeMap& twist)
{
    if (vertices.size() < 2)
        throw std::invalid_argument("a path needs at least two vertices");
    std::vector<PiecePtr> pieces;
    std::vector<double> breaks;
    const std::size_t n = vertices.size() - 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (vertices[i].group() != vertices[i + 1].group())
            throw GroupMismatch("path vertices have different groups");
        pieces.push_back(std::make_shared<LinearPiece>(vertices[i].node(), vertices[i + 1].node()));
        breaks.push_back(static_cast<double>(i) / n);
    }
    breaks.push_back(1.0);
    const auto& A = vertices[0];
    return FamilyCurve(std::move(pieces), std::move(breaks), twist, A.group(), A.dim());
}

FamilyCurve FamilyCurve::with_twist(const GaugeMap& twist, double tol) const
{
    return FamilyCurve(pieces_, breaks_, twist, group_, dim_, tol);
}

Connection FamilyCurve::velocity(double t) const
{
    t = std::clamp(t, 0.0, 1.0);
    std::size_t k = 0;
    while (k + 1 < pieces_.size() && t >= breaks_[k + 1])
        ++k;
    double len = breaks_[k + 1] - breaks_[k];
    return Connection(std::make_shared<VelocityConnection>(pieces_[k], (t - breaks_[k]) / len, 1.0 / len), group_,
                      dim_);
}

Connection FamilyCurve::at(double t) const
{
    t = std::clamp(t, 0.0, 1.0);
    std::size_t k = 0;
    while (k + 1 < pieces_.size() && t >= breaks_[k + 1])
        ++k;
    double s = (t - breaks_[k]) / (breaks_[k + 1] - breaks_[k]);
    return Connection(std::make_shared<SliceConnection>(pieces_[k], s), group_, dim_);
}

CurveJet FamilyCurve::jet(double t, const Point& x) const
{
    t = std::clamp(t, 0.0, 1.0);
    std::size_t k = 0;
    while (k + 1 < pieces_.size() && t >= breaks_[k + 1])
        ++k;
    double len = breaks_[k + 1] - breaks_[k];
    CurveJet c = pieces_[k]->jet((t - breaks_[k]) / len, x);
    for (auto& v : c.V)
        v /= len;
    return c;
}

double FamilyCurve::endpoint_residual() const
{
    Connection a0(std::make_shared<SliceConnection>(pieces_.front(), 0.0), group_, dim_);
    Connection a1(std::make_shared<SliceConnection>(pieces_.back(), 1.0), group_, dim_);
    return sup_distance(a1, gauge_transform(twist_, a0));
}

FamilyCurve concat(const FamilyCurve& g1, const FamilyCurve& g2, double tol)
{
    if (g1.group() != g2.group())
        throw GroupMismatch("concatenating curves with different groups");
    double gap = sup_distance(g1.end(), g2.start());
    if (!(gap <= tol))
        throw EndpointMismatch("concatenation endpoints differ by " + std::to_string(gap));
    std::vector<PiecePtr> pieces = g1.pieces();
    pieces.insert(pieces.end(), g2.pieces().begin(), g2.pieces().end());
    std::vector<double> breaks;
    for (double b : g1.breaks())
        breaks.push_back(0.5 * b);
    for (std::size_t i = 1; i < g2.breaks().size(); ++i)
        breaks.push_back(0.5 + 0.5 * g2.breaks()[i]);
    return FamilyCurve(std::move(pieces), std::move(breaks), g2.twist() * g1.twist(), g1.group(), g1.dim(),
                       2.0 * tol + 1e-12);
}

FamilyCurve reverse(const FamilyCurve& g)
{
    std::vector<PiecePtr> pieces;
    for (auto it = g.pieces().rbegin(); it != g.pieces().rend(); ++it)
        pieces.push_back(std::make_shared<ReversePiece>(*it));
    std::vector<double> breaks;
    for (auto it = g.breaks().rbegin(); it != g.breaks().rend(); ++it)
        breaks.push_back(1.0 - *it);
    return FamilyCurve(std::move(pieces), std::move(breaks), g.twist().inverse(), g.group(), g.dim());
}

FamilyCurve reparametrize(const FamilyCurve& g, const Reparametrization& r)
{
    auto inverse = [&](double b) {
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
            double mid = 0.5 * (lo + hi);
            (r.sigma(mid) < b ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    const auto& b = g.breaks();
    std::vector<double> tau(b.size());
    tau.front() = 0.0;
    tau.back() = 1.0;
    for (std::size_t k = 1; k + 1 < b.size(); ++k)
        tau[k] = inverse(b[k]);
    std::vector<PiecePtr> pieces;
    for (std::size_t k = 0; k < g.pieces().size(); ++k) {
        double t0 = tau[k], t1 = tau[k + 1], b0 = b[k], b1 = b[k + 1];
        auto sigma = r.sigma;
        auto dsigma = r.dsigma;
        auto f = [=](double s) { return std::clamp((sigma(t0 + s * (t1 - t0)) - b0) / (b1 - b0), 0.0, 1.0); };
        auto df = [=](double s) { return dsigma(t0 + s * (t1 - t0)) * (t1 - t0) / (b1 - b0); };
        pieces.push_back(std::make_shared<SubPiece>(g.pieces()[k], f, df));
    }
    return FamilyCurve(std::move(pieces), std::move(tau), g.twist(), g.group(), g.dim());
}

FamilyCurve act(const GaugeMap& psi, const FamilyCurve& g)
{
    std::vector<PiecePtr> pieces;
    for (const auto& p : g.pieces())
        pieces.push_back(std::make_shared<GaugeImagePiece>(psi.node(), p));
    return FamilyCurve(std::move(pieces), g.breaks(), psi * g.twist() * psi.inverse(), g.group(), g.dim());
}

FamilyCurve face_restriction(const FamilyCurve& g, double z0)
{
    if (g.dim() != 3)
        throw GridMismatch("face restriction needs a curve on a 3-manifold");
    std::vector<PiecePtr> pieces;
    for (const auto& p : g.pieces())
        pieces.push_back(std::make_shared<FacePiece>(p, z0));
    return FamilyCurve(std::move(pieces), g.breaks(), face_restriction(g.twist(), z0), g.group(), 2);
}

}
