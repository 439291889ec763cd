#include "eqcs/gauge.hpp"

#include <cmath>
#include <numbers>

namespace eqcs {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

Mat2 comm(const Mat2& a, const Mat2& b) { return a * b - b * a; }

}

AlgebraField::AlgebraField(GroupId g, std::vector<Mode> modes) : group_(g), modes_(std::move(modes)) {}

AlgebraField AlgebraField::constant(const AlgebraElement& x)
{
    return AlgebraField(x.group(), {Mode{{0, 0, 0}, x.matrix(), Mat2::Zero()}});
}

bool AlgebraField::is_constant() const
{
    for (const auto& m : modes_)
        if (m.k[0] != 0 || m.k[1] != 0 || m.k[2] != 0)
            return false;
    return true;
}

Mat2 AlgebraField::value(const Point& x) const
{
    Mat2 v = Mat2::Zero();
    for (const auto& m : modes_) {
        double a = two_pi * (m.k[0] * x[0] + m.k[1] * x[1] + m.k[2] * x[2]);
        v += std::cos(a) * m.c + std::sin(a) * m.s;
    }
    return v;
}

void AlgebraField::jet(const Point& x, Mat2& v, std::array<Mat2, 3>& d) const
{
    v = Mat2::Zero();
    d = {Mat2::Zero(), Mat2::Zero(), Mat2::Zero()};
    for (const auto& m : modes_) {
        double a = two_pi * (m.k[0] * x[0] + m.k[1] * x[1] + m.k[2] * x[2]);
        double ca = std::cos(a), sa = std::sin(a);
        v += ca * m.c + sa * m.s;
        Mat2 dd = ca * m.s - sa * m.c;
        for (int i = 0; i < 3; ++i)
            if (m.k[i] != 0)
                d[i] += (two_pi * m.k[i]) * dd;
    }
}

AlgebraField AlgebraField::operator+(const AlgebraField& o) const
{
    if (group_ != o.group_)
        throw GroupMismatch("sum of algebra fields with different groups");
    auto m = modes_;
    m.insert(m.end(), o.modes_.begin(), o.modes_.end());
    return AlgebraField(group_, std::move(m));
}

AlgebraField AlgebraField::scaled(double s) const
{
    auto m = modes_;
    for (auto& x : m) {
        x.c *= s;
        x.s *= s;
    }
    return AlgebraField(group_, std::move(m));
}

ConnJet ConnJet::zero()
{
    ConnJet j;
    for (int i = 0; i < 3; ++i) {
        j.A[i] = Mat2::Zero();
        for (int k = 0; k < 3; ++k)
            j.dA[i][k] = Mat2::Zero();
    }
    return j;
}

namespace {

class ZeroConnection : public ConnectionNode {
public:
    ConnJet jet(const Point&) const override { return ConnJet::zero(); }
};

class TrigConnection : public ConnectionNode {
public:
    explicit TrigConnection(std::vector<AlgebraField> c) : comps_(std::move(c)) {}
    ConnJet jet(const Point& x) const override
    {
        ConnJet j = ConnJet::zero();
        std::array<std::array<Mat2, 3>, 3> partial;
        for (int i = 0; i < 3; ++i)
            partial[i] = {Mat2::Zero(), Mat2::Zero(), Mat2::Zero()};
        for (std::size_t i = 0; i < comps_.size(); ++i)
            comps_[i].jet(x, j.A[i], partial[i]);
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k)
                j.dA[i][k] = partial[k][i] - partial[i][k];
        return j;
    }

private:
    std::vector<AlgebraField> comps_;
};

class CombinationConnection : public ConnectionNode {
public:
    explicit CombinationConnection(std::vector<std::pair<double, std::shared_ptr<const ConnectionNode>>> t)
        : terms_(std::move(t))
    {
    }
    ConnJet jet(const Point& x) const override
    {
        ConnJet j = ConnJet::zero();
        for (const auto& [c, n] : terms_) {
            if (c == 0.0)
                continue;
            ConnJet t = n->jet(x);
            for (int i = 0; i < 3; ++i) {
                j.A[i] += c * t.A[i];
                for (int k = 0; k < 3; ++k)
                    j.dA[i][k] += c * t.dA[i][k];
            }
        }
        return j;
    }

private:
    std::vector<std::pair<double, std::shared_ptr<const ConnectionNode>>> terms_;
};

class GaugeImageConnection : public ConnectionNode {
public:
    GaugeImageConnection(std::shared_ptr<const GaugeMapNode> phi, std::shared_ptr<const ConnectionNode> a)
        : phi_(std::move(phi)), a_(std::move(a))
    {
    }
    ConnJet jet(const Point& x) const override { return transform_jet(phi_->jet(x), a_->jet(x)); }

private:
    std::shared_ptr<const GaugeMapNode> phi_;
    std::shared_ptr<const ConnectionNode> a_;
};

class FaceConnection : public ConnectionNode {
public:
    FaceConnection(std::shared_ptr<const ConnectionNode> a, double z0) : a_(std::move(a)), z0_(z0) {}
    ConnJet jet(const Point& x) const override
    {
        ConnJet a = a_->jet({x[0], x[1], z0_});
        ConnJet r = ConnJet::zero();
        r.A[0] = a.A[0];
        r.A[1] = a.A[1];
        r.dA[0][1] = a.dA[0][1];
        r.dA[1][0] = a.dA[1][0];
        return r;
    }

private:
    std::shared_ptr<const ConnectionNode> a_;
    double z0_;
};

class InfinitesimalConnection : public ConnectionNode {
public:
    InfinitesimalConnection(AlgebraField xi, std::shared_ptr<const ConnectionNode> a)
        : xi_(std::move(xi)), a_(std::move(a))
    {
    }
    ConnJet jet(const Point& x) const override
    {
        Mat2 v;
        std::array<Mat2, 3> d;
        xi_.jet(x, v, d);
        ConnJet a = a_->jet(x);
        ConnJet r;
        for (int i = 0; i < 3; ++i)
            r.A[i] = comm(v, a.A[i]) - d[i];
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k)
                r.dA[i][k] = comm(d[i], a.A[k]) - comm(d[k], a.A[i]) + comm(v, a.dA[i][k]);
        return r;
    }

private:
    AlgebraField xi_;
    std::shared_ptr<const ConnectionNode> a_;
};

}

Connection::Connection(std::shared_ptr<const ConnectionNode> node, GroupId g, int dim, bool product)
    : node_(std::move(node)), group_(g), dim_(dim), product_(product)
{
    if (dim_ < 1 || dim_ > 3)
        throw std::invalid_argument("connections live on manifolds of dimension 1 to 3");
}

Connection Connection::product(GroupId g, int dim)
{
    return Connection(std::make_shared<ZeroConnection>(), g, dim, true);
}

Connection Connection::trig(GroupId g, int dim, std::vector<AlgebraField> components)
{
    if (static_cast<int>(components.size()) > dim)
        throw std::invalid_argument("more connection components than dimensions");
    for (const auto& c : components)
        if (c.group() != g)
            throw GroupMismatch("connection component has the wrong group");
    return Connection(std::make_shared<TrigConnection>(std::move(components)), g, dim);
}

Connection Connection::combination(const std::vector<std::pair<double, Connection>>& terms)
{
    if (terms.empty())
        throw std::invalid_argument("empty combination of connections");
    std::vector<std::pair<double, std::shared_ptr<const ConnectionNode>>> t;
    for (const auto& [c, A] : terms) {
        if (A.group() != terms[0].second.group())
            throw GroupMismatch("combination of connections with different groups");
        if (A.dim() != terms[0].second.dim())
            throw GridMismatch("combination of connections on different manifolds");
        t.emplace_back(c, A.node());
    }
    return Connection(std::make_shared<CombinationConnection>(std::move(t)), terms[0].second.group(),
                      terms[0].second.dim());
}

Connection Connection::operator+(const Connection& o) const
{
    return combination({{1.0, *this}, {1.0, o}});
}

Connection Connection::operator-(const Connection& o) const
{
    return combination({{1.0, *this}, {-1.0, o}});
}

Connection Connection::scaled(double s) const
{
    return combination({{s, *this}});
}

AlgebraForm Connection::sample(const Grid& grid) const
{
    if (grid.dim() != dim_)
        throw GridMismatch("connection dimension differs from the grid");
    auto node = node_;
    FormGenerator<Mat2> gen;
    gen.value = [node](const MultiIndex& I, const GridPoint& p) {
        return node->jet({p[0], p[1], p[2]}).A[I[0]];
    };
    gen.exterior = [node](const MultiIndex& J, const GridPoint& p) {
        return node->jet({p[0], p[1], p[2]}).dA[J[0]][J[1]];
    };
    return AlgebraForm::from_generator(grid, 1, group_, std::move(gen));
}

namespace {

class IdentityMap : public GaugeMapNode {
public:
    explicit IdentityMap(GroupId g) : e_(mat::identity(g)) {}
    GaugeJet jet(const Point&) const override { return {e_, {Mat2::Zero(), Mat2::Zero(), Mat2::Zero()}}; }
    std::optional<HomotopyJet> homotopy(const Point&, double) const override
    {
        return HomotopyJet{e_, {Mat2::Zero(), Mat2::Zero(), Mat2::Zero()}, Mat2::Zero()};
    }

private:
    Mat2 e_;
};

class U1Map : public GaugeMapNode {
public:
    U1Map(int m, int n, AlgebraField xi) : m_(m), n_(n), xi_(std::move(xi)) {}
    GaugeJet jet(const Point& x) const override
    {
        Mat2 v;
        std::array<Mat2, 3> d;
        xi_.jet(x, v, d);
        cd e = std::exp(cd(0.0, two_pi * (m_ * x[0] + n_ * x[1])) + v(0, 0));
        GaugeJet j;
        j.g = Mat2::Zero();
        j.g(0, 0) = e;
        const double w[3] = {static_cast<double>(m_), static_cast<double>(n_), 0.0};
        for (int i = 0; i < 3; ++i) {
            j.dg[i] = Mat2::Zero();
            j.dg[i](0, 0) = (cd(0.0, two_pi * w[i]) + d[i](0, 0)) * e;
        }
        return j;
    }
    std::optional<HomotopyJet> homotopy(const Point& x, double tau) const override
    {
        if (m_ != 0 || n_ != 0)
            return std::nullopt;
        Mat2 v;
        std::array<Mat2, 3> d;
        xi_.jet(x, v, d);
        cd e = std::exp((1.0 - tau) * v(0, 0));
        HomotopyJet h;
        h.g = Mat2::Zero();
        h.g(0, 0) = e;
        for (int i = 0; i < 3; ++i) {
            h.dg[i] = Mat2::Zero();
            h.dg[i](0, 0) = (1.0 - tau) * d[i](0, 0) * e;
        }
        h.dtau = Mat2::Zero();
        h.dtau(0, 0) = -v(0, 0) * e;
        return h;
    }

private:
    int m_, n_;
    AlgebraField xi_;
};

class ExpMap : public GaugeMapNode {
public:
    ExpMap(AlgebraField xi, double t) : xi_(std::move(xi)), t_(t) {}
    GaugeJet jet(const Point& x) const override { return at(x, t_); }
    std::optional<HomotopyJet> homotopy(const Point& x, double tau) const override
    {
        GaugeJet j = at(x, (1.0 - tau) * t_);
        Mat2 v = xi_.value(x);
        return HomotopyJet{j.g, j.dg, -t_ * v * j.g};
    }

private:
    GaugeJet at(const Point& x, double s) const
    {
        Mat2 v;
        std::array<Mat2, 3> d;
        xi_.jet(x, v, d);
        return exp_jet(xi_.group(), v, d, s);
    }
    AlgebraField xi_;
    double t_;
};

class ProductMap : public GaugeMapNode {
public:
    ProductMap(std::shared_ptr<const GaugeMapNode> a, std::shared_ptr<const GaugeMapNode> b)
        : a_(std::move(a)), b_(std::move(b))
    {
    }
    GaugeJet jet(const Point& x) const override
    {
        GaugeJet a = a_->jet(x), b = b_->jet(x);
        GaugeJet r;
        r.g = a.g * b.g;
        for (int i = 0; i < 3; ++i)
            r.dg[i] = a.dg[i] * b.g + a.g * b.dg[i];
        return r;
    }
    std::optional<HomotopyJet> homotopy(const Point& x, double tau) const override
    {
        auto a = a_->homotopy(x, tau);
        auto b = b_->homotopy(x, tau);
        if (!a || !b)
            return std::nullopt;
        HomotopyJet r;
        r.g = a->g * b->g;
        for (int i = 0; i < 3; ++i)
            r.dg[i] = a->dg[i] * b->g + a->g * b->dg[i];
        r.dtau = a->dtau * b->g + a->g * b->dtau;
        return r;
    }

private:
    std::shared_ptr<const GaugeMapNode> a_, b_;
};

class InverseMap : public GaugeMapNode {
public:
    explicit InverseMap(std::shared_ptr<const GaugeMapNode> a) : a_(std::move(a)) {}
    GaugeJet jet(const Point& x) const override
    {
        GaugeJet a = a_->jet(x);
        GaugeJet r;
        r.g = a.g.adjoint();
        for (int i = 0; i < 3; ++i)
            r.dg[i] = -r.g * a.dg[i] * r.g;
        return r;
    }
    std::optional<HomotopyJet> homotopy(const Point& x, double tau) const override
    {
        auto a = a_->homotopy(x, tau);
        if (!a)
            return std::nullopt;
        HomotopyJet r;
        r.g = a->g.adjoint();
        for (int i = 0; i < 3; ++i)
            r.dg[i] = -r.g * a->dg[i] * r.g;
        r.dtau = -r.g * a->dtau * r.g;
        return r;
    }

private:
    std::shared_ptr<const GaugeMapNode> a_;
};

class FaceMap : public GaugeMapNode {
public:
    FaceMap(std::shared_ptr<const GaugeMapNode> a, double z0) : a_(std::move(a)), z0_(z0) {}
    GaugeJet jet(const Point& x) const override
    {
        GaugeJet j = a_->jet({x[0], x[1], z0_});
        j.dg[2] = Mat2::Zero();
        return j;
    }
    std::optional<HomotopyJet> homotopy(const Point& x, double tau) const override
    {
        auto h = a_->homotopy({x[0], x[1], z0_}, tau);
        if (h)
            h->dg[2] = Mat2::Zero();
        return h;
    }

private:
    std::shared_ptr<const GaugeMapNode> a_;
    double z0_;
};

}

AlgebraField face_restriction(const AlgebraField& xi, double z0)
{
    std::vector<AlgebraField::Mode> out;
    for (const auto& m : xi.modes()) {
        double b = two_pi * m.k[2] * z0;
        double cb = std::cos(b), sb = std::sin(b);
        out.push_back({{m.k[0], m.k[1], 0.0}, cb * m.c + sb * m.s, cb * m.s - sb * m.c});
    }
    return AlgebraField(xi.group(), std::move(out));
}

GaugeMap::GaugeMap(std::shared_ptr<const GaugeMapNode> node, GroupId g, int dim, std::array<int, 2> winding)
    : node_(std::move(node)), group_(g), dim_(dim), winding_(winding)
{
    if (g == GroupId::SU2 && (winding[0] != 0 || winding[1] != 0))
        throw std::invalid_argument("SU(2) maps on a torus carry no winding integers");
}

GaugeMap make_u1_map(int dim, int m, int n, const AlgebraField& xi)
{
    if (xi.group() != GroupId::U1)
        throw GroupMismatch("U(1) gauge map needs a u(1) exponent");
    GaugeMap phi(std::make_shared<U1Map>(m, n, xi), GroupId::U1, dim, {m, n});
    phi.u1_xi_ = xi;
    return phi;
}

GaugeMap GaugeMap::identity(GroupId g, int dim)
{
    if (g == GroupId::U1)
        return make_u1_map(dim, 0, 0, AlgebraField(GroupId::U1));
    return GaugeMap(std::make_shared<IdentityMap>(g), g, dim);
}

GaugeMap GaugeMap::exp(const AlgebraField& xi, int dim, double t)
{
    if (xi.group() == GroupId::U1)
        return make_u1_map(dim, 0, 0, xi.scaled(t));
    return GaugeMap(std::make_shared<ExpMap>(xi, t), xi.group(), dim);
}

GaugeMap GaugeMap::u1(int dim, int m, int n, const AlgebraField& xi)
{
    return make_u1_map(dim, m, n, xi);
}

bool GaugeMap::null_homotopic() const
{
    return node_->homotopy({0.0, 0.0, 0.0}, 0.5).has_value();
}

GaugeMap GaugeMap::operator*(const GaugeMap& o) const
{
    if (group_ != o.group_)
        throw GroupMismatch("product of gauge maps with different groups");
    if (dim_ != o.dim_)
        throw GridMismatch("product of gauge maps on different manifolds");
    if (u1_xi_ && o.u1_xi_)
        return make_u1_map(dim_, winding_[0] + o.winding_[0], winding_[1] + o.winding_[1], *u1_xi_ + *o.u1_xi_);
    return GaugeMap(std::make_shared<ProductMap>(node_, o.node_), group_, dim_);
}

GaugeMap GaugeMap::inverse() const
{
    if (u1_xi_)
        return make_u1_map(dim_, -winding_[0], -winding_[1], u1_xi_->scaled(-1.0));
    return GaugeMap(std::make_shared<InverseMap>(node_), group_, dim_);
}

double GaugeMap::numerical_winding(int axis, int samples) const
{
    if (group_ != GroupId::U1)
        return 0.0;
    double total = 0.0;
    Point x{0.0, 0.0, 0.0};
    cd prev = value(x)(0, 0);
    for (int i = 1; i <= samples; ++i) {
        x[axis] = static_cast<double>(i) / samples;
        cd cur = value(x)(0, 0);
        total += std::arg(cur / prev);
        prev = cur;
    }
    return total / two_pi;
}

double GaugeMap::witness_endpoint_residual(int samples) const
{
    double r = 0.0;
    const Mat2 e = mat::identity(group_);
    for (int i = 0; i < samples; ++i) {
        for (int j = 0; j < samples; ++j) {
            Point x{(i + 0.5) / samples, (j + 0.5) / samples, 0.5};
            auto h0 = homotopy(x, 0.0);
            auto h1 = homotopy(x, 1.0);
            if (!h0 || !h1)
                throw MissingWitness("gauge map has no nullhomotopy");
            r = std::max(r, mat::norm(h0->g - value(x)));
            r = std::max(r, mat::norm(h1->g - e));
        }
    }
    return r;
}

ConnJet transform_jet(const GaugeJet& g, const ConnJet& a)
{
    Mat2 gi = g.g.adjoint();
    ConnJet r;
    for (int i = 0; i < 3; ++i)
        r.A[i] = g.g * a.A[i] * gi - g.dg[i] * gi;
    for (int i = 0; i < 3; ++i) {
        r.dA[i][i] = Mat2::Zero();
        for (int k = i + 1; k < 3; ++k) {
            r.dA[i][k] = g.g * a.curvature(i, k) * gi - comm(r.A[i], r.A[k]);
            r.dA[k][i] = -r.dA[i][k];
        }
    }
    return r;
}

GaugeJet exp_jet(GroupId grp, const Mat2& v, const std::array<Mat2, 3>& d, double s)
{
    Mat2 X = s * v;
    GaugeJet j;
    j.g = mat::exp(grp, X);
    for (int i = 0; i < 3; ++i)
        j.dg[i] = mat::dexp(grp, X, j.g, s * d[i]);
    return j;
}

Connection gauge_transform(const GaugeMap& phi, const Connection& A)
{
    if (phi.group() != A.group())
        throw GroupMismatch("gauge transform across different groups");
    if (phi.dim() != A.dim())
        throw GridMismatch("gauge map and connection live on different manifolds");
    return Connection(std::make_shared<GaugeImageConnection>(phi.node(), A.node()), A.group(), A.dim());
}

Connection infinitesimal_action(const AlgebraField& xi, const Connection& A)
{
    if (xi.group() != A.group())
        throw GroupMismatch("infinitesimal action across different groups");
    return Connection(std::make_shared<InfinitesimalConnection>(xi, A.node()), A.group(), A.dim());
}

Connection face_restriction(const Connection& A, double z0)
{
    if (A.dim() != 3)
        throw GridMismatch("face restriction needs a connection on a 3-manifold");
    return Connection(std::make_shared<FaceConnection>(A.node(), z0), A.group(), 2, A.is_product());
}

GaugeMap face_restriction(const GaugeMap& phi, double z0)
{
    if (phi.dim() != 3)
        throw GridMismatch("face restriction needs a gauge map on a 3-manifold");
    if (phi.u1_exponent())
        return GaugeMap::u1(2, phi.winding()[0], phi.winding()[1], face_restriction(*phi.u1_exponent(), z0));
    return GaugeMap(std::make_shared<FaceMap>(phi.node(), z0), phi.group(), 2);
}

AlgebraForm curvature(const Connection& A, const Grid& grid)
{
    if (grid.dim() != A.dim())
        throw GridMismatch("connection dimension differs from the grid");
    auto node = A.node();
    FormGenerator<Mat2> gen;
    gen.value = [node](const MultiIndex& I, const GridPoint& p) {
        return node->jet({p[0], p[1], p[2]}).curvature(I[0], I[1]);
    };
    return AlgebraForm::from_generator(grid, 2, A.group(), std::move(gen));
}

AlgebraForm sample_field(const AlgebraField& xi, const Grid& grid)
{
    FormGenerator<Mat2> gen;
    gen.value = [xi](const MultiIndex&, const GridPoint& p) { return xi.value({p[0], p[1], p[2]}); };
    gen.exterior = [xi](const MultiIndex& J, const GridPoint& p) {
        Mat2 v;
        std::array<Mat2, 3> d;
        xi.jet({p[0], p[1], p[2]}, v, d);
        return d[J[0]];
    };
    return AlgebraForm::from_generator(grid, 0, xi.group(), std::move(gen));
}

AlgebraForm vertical_generator(const Connection& A, const AlgebraField& xi, const Grid& grid)
{
    if (xi.group() != A.group())
        throw GroupMismatch("vertical generator across different groups");
    return sample_field(xi, grid);
}

const std::vector<Point>& probe_points(int dim)
{
    static const std::vector<Point> p2 = [] {
        std::vector<Point> v;
        for (int i = 0; i < 12; ++i)
            for (int j = 0; j < 12; ++j)
                v.push_back({(i + 0.37) / 12.0, (j + 0.61) / 12.0, 0.0});
        return v;
    }();
    static const std::vector<Point> p3 = [] {
        std::vector<Point> v;
        for (int i = 0; i < 7; ++i)
            for (int j = 0; j < 7; ++j)
                for (int k = 0; k <= 6; ++k)
                    v.push_back({(i + 0.37) / 7.0, (j + 0.61) / 7.0, k / 6.0});
        return v;
    }();
    return dim == 3 ? p3 : p2;
}

double sup_distance(const Connection& A, const Connection& B)
{
    if (A.dim() != B.dim())
        throw GridMismatch("comparing connections on different manifolds");
    double r = 0.0;
    for (const auto& x : probe_points(A.dim())) {
        ConnJet a = A.jet(x), b = B.jet(x);
        for (int i = 0; i < A.dim(); ++i)
            r = std::max(r, mat::norm(a.A[i] - b.A[i]));
    }
    return r;
}

double sup_distance(const GaugeMap& phi, const GaugeMap& psi)
{
    double r = 0.0;
    for (const auto& x : probe_points(phi.dim()))
        r = std::max(r, mat::norm(phi.value(x) - psi.value(x)));
    return r;
}

double EquivariantFamily::invariance_residual(const std::vector<std::vector<double>>& samples) const
{
    double r = 0.0;
    for (std::size_t j = 0; j < generators.size(); ++j)
        for (const auto& t : samples)
            r = std::max(r, sup_distance(gauge_transform(generators[j], B(t)), B(act(static_cast<int>(j), t))));
    return r;
}

}
