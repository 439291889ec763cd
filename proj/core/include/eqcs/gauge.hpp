#pragma once

#include "eqcs/fields.hpp"
#include "eqcs/lie.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace eqcs {

/// Point of the base manifold; unused trailing coordinates are ignored.
using Point = std::array<double, 3>;

/// Trigonometric g-valued function sum_k C_k cos(2 pi k.x) + S_k sin(2 pi k.x).
class AlgebraField {
public:
    struct Mode {
        std::array<double, 3> k;
        Mat2 c;
        Mat2 s;
    };

    explicit AlgebraField(GroupId g, std::vector<Mode> modes = {});
    static AlgebraField constant(const AlgebraElement& x);

    GroupId group() const { return group_; }
    const std::vector<Mode>& modes() const { return modes_; }
    bool is_zero() const { return modes_.empty(); }
    /// True when every mode has k = 0.
    bool is_constant() const;

    Mat2 value(const Point& x) const;
    void jet(const Point& x, Mat2& v, std::array<Mat2, 3>& d) const;

    AlgebraField operator+(const AlgebraField& o) const;
    AlgebraField scaled(double s) const;

private:
    GroupId group_;
    std::vector<Mode> modes_;
};

/// Value of a connection (or g-valued 1-form) and its exterior derivative at a point.
struct ConnJet {
    std::array<Mat2, 3> A;
    /// dA[i][j] = d_i A_j - d_j A_i.
    std::array<std::array<Mat2, 3>, 3> dA;

    Mat2 curvature(int i, int j) const { return dA[i][j] + A[i] * A[j] - A[j] * A[i]; }
    static ConnJet zero();
};

class ConnectionNode {
public:
    virtual ~ConnectionNode() = default;
    virtual ConnJet jet(const Point& x) const = 0;
};

/// g-valued 1-form on T^d (d = 2 or 3); connections and tangent vectors share this type.
class Connection {
public:
    Connection(std::shared_ptr<const ConnectionNode> node, GroupId g, int dim, bool product = false);

    static Connection product(GroupId g, int dim);
    /// A_i given by trigonometric fields; missing components are zero.
    static Connection trig(GroupId g, int dim, std::vector<AlgebraField> components);
    /// sum_k c_k A_k.
    static Connection combination(const std::vector<std::pair<double, Connection>>& terms);

    ConnJet jet(const Point& x) const { return node_->jet(x); }
    GroupId group() const { return group_; }
    int dim() const { return dim_; }
    bool is_product() const { return product_; }
    const std::shared_ptr<const ConnectionNode>& node() const { return node_; }

    Connection operator+(const Connection& o) const;
    Connection operator-(const Connection& o) const;
    Connection scaled(double s) const;

    /// Degree-1 form on the grid with the exact exterior derivative attached.
    AlgebraForm sample(const Grid& grid) const;

private:
    std::shared_ptr<const ConnectionNode> node_;
    GroupId group_;
    int dim_;
    bool product_;
};

struct GaugeJet {
    Mat2 g;
    std::array<Mat2, 3> dg;
};

struct HomotopyJet {
    Mat2 g;
    std::array<Mat2, 3> dg;
    Mat2 dtau;
};

class GaugeMapNode {
public:
    virtual ~GaugeMapNode() = default;
    virtual GaugeJet jet(const Point& x) const = 0;
    /// Nullhomotopy g(x, tau) with g(., 0) = phi and g(., 1) = e.
    virtual std::optional<HomotopyJet> homotopy(const Point& x, double tau) const = 0;
};

class MissingWitness : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// G-valued map on T^d with homotopy data.
/// U(1) maps are kept in the normal form exp(2 pi i (m x + n y)) exp(xi).
class GaugeMap {
public:
    GaugeMap(std::shared_ptr<const GaugeMapNode> node, GroupId g, int dim,
             std::array<int, 2> winding = {0, 0});

    static GaugeMap identity(GroupId g, int dim);
    static GaugeMap exp(const AlgebraField& xi, int dim, double t = 1.0);
    static GaugeMap u1(int dim, int m, int n, const AlgebraField& xi);

    GaugeJet jet(const Point& x) const { return node_->jet(x); }
    Mat2 value(const Point& x) const { return node_->jet(x).g; }
    std::optional<HomotopyJet> homotopy(const Point& x, double tau) const { return node_->homotopy(x, tau); }
    bool null_homotopic() const;

    GroupId group() const { return group_; }
    int dim() const { return dim_; }
    std::array<int, 2> winding() const { return winding_; }
    /// U(1) normal-form exponent, when this is a U(1) map.
    const std::optional<AlgebraField>& u1_exponent() const { return u1_xi_; }
    const std::shared_ptr<const GaugeMapNode>& node() const { return node_; }

    GaugeMap operator*(const GaugeMap& o) const;
    GaugeMap inverse() const;

    /// (1/2 pi i) integral of phi^{-1} d_axis phi along the axis through x = 0.
    double numerical_winding(int axis, int samples = 256) const;
    /// Largest deviation of the witness from phi at tau = 0 and from e at tau = 1.
    double witness_endpoint_residual(int samples = 16) const;

private:
    std::shared_ptr<const GaugeMapNode> node_;
    GroupId group_;
    int dim_;
    std::array<int, 2> winding_;
    std::optional<AlgebraField> u1_xi_;
    friend GaugeMap make_u1_map(int, int, int, const AlgebraField&);
};

/// Pointwise gauge action on a jet: A' = g A g^{-1} - dg g^{-1}, dA' = g F g^{-1} - A' ^ A'.
ConnJet transform_jet(const GaugeJet& g, const ConnJet& a);
/// exp(s xi) and its spatial derivatives from the value v and derivatives d of xi.
GaugeJet exp_jet(GroupId grp, const Mat2& v, const std::array<Mat2, 3>& d, double s);

/// phi . A = Ad_phi A - (d phi) phi^{-1}.
Connection gauge_transform(const GaugeMap& phi, const Connection& A);
/// Linearized action [xi, A] - d xi, the tangent of t -> exp(t xi) . A at t = 0.
Connection infinitesimal_action(const AlgebraField& xi, const Connection& A);
/// Restriction of a connection on T^2 x I to the torus z = z0.
Connection face_restriction(const Connection& A, double z0);
/// Restriction of an algebra field on T^2 x I to the torus z = z0.
AlgebraField face_restriction(const AlgebraField& xi, double z0);
/// Restriction of a gauge map on T^2 x I to the torus z = z0.
GaugeMap face_restriction(const GaugeMap& phi, double z0);

/// Curvature sampled on a grid.
AlgebraForm curvature(const Connection& A, const Grid& grid);
/// v_A(X) for a gauge direction: the field xi itself under the trivialization.
AlgebraForm vertical_generator(const Connection& A, const AlgebraField& xi, const Grid& grid);
/// Degree-0 form of an algebra field.
AlgebraForm sample_field(const AlgebraField& xi, const Grid& grid);

/// Fixed sample set used by sup-norm comparisons.
const std::vector<Point>& probe_points(int dim);
/// Sup norm of A - B over the probe points.
double sup_distance(const Connection& A, const Connection& B);
/// Sup norm of phi - psi over the probe points.
double sup_distance(const GaugeMap& phi, const GaugeMap& psi);

class EndpointMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Finite-dimensional family B(t) of connections with a declared group action on parameters.
struct EquivariantFamily {
    int param_dim;
    std::function<Connection(const std::vector<double>&)> B;
    std::vector<GaugeMap> generators;
    /// Parameter image of t under generator j.
    std::function<std::vector<double>(int, const std::vector<double>&)> act;
    std::vector<AlgebraField> directions;

    /// max over samples and generators of |phi_j . B(t) - B(act(j, t))|.
    double invariance_residual(const std::vector<std::vector<double>>& samples) const;
};

}
