#pragma once

#include "eqcs/gauge.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace eqcs {

/// Connection jet of A(s) at x together with the velocity V = dA/ds.
struct CurveJet {
    ConnJet A;
    std::array<Mat2, 3> V;
};

/// Smooth path s in [0,1] -> A(s).
class CurvePiece {
public:
    virtual ~CurvePiece() = default;
    virtual CurveJet jet(double s, const Point& x) const = 0;
};

using PiecePtr = std::shared_ptr<const CurvePiece>;

/// Monotone reparametrization of [0,1] with its derivative.
struct Reparametrization {
    std::function<double(double)> sigma;
    std::function<double(double)> dsigma;
};

/// Piecewise-smooth curve of connections with gamma(1) = phi . gamma(0).
class FamilyCurve {
public:
    /// Pieces occupy [breaks[k], breaks[k+1]] of the global parameter.
    FamilyCurve(std::vector<PiecePtr> pieces, std::vector<double> breaks, GaugeMap twist, GroupId g, int dim,
                double tol = 1e-8);

    static FamilyCurve linear(const Connection& A0, const Connection& A1, const GaugeMap& twist);
    /// Straight segment from A to phi . A.
    static FamilyCurve segment(const Connection& A, const GaugeMap& phi);
    static FamilyCurve constant(const Connection& A);
    /// nu_t(s) = exp(s t xi) . A, twisted by exp(t xi).
    static FamilyCurve orbit(const Connection& A, const AlgebraField& xi, double t);
    /// Closed polygon through the given connections, untwisted.
    static FamilyCurve polygon(const std::vector<Connection>& vertices);
    /// Broken line through the vertices; the last must equal twist . first.
    static FamilyCurve path(const std::vector<Connection>& vertices, const GaugeMap& twist);

    /// Same pieces with another twist, for closed curves read in a different C^phi.
    FamilyCurve with_twist(const GaugeMap& twist, double tol = 1e-8) const;

    const GaugeMap& twist() const { return twist_; }
    GroupId group() const { return group_; }
    int dim() const { return dim_; }
    const std::vector<PiecePtr>& pieces() const { return pieces_; }
    const std::vector<double>& breaks() const { return breaks_; }

    /// Connection at global parameter t.
    Connection at(double t) const;
    Connection start() const { return at(0.0); }
    Connection end() const { return at(1.0); }
    /// Jet at global parameter t (velocity with respect to t).
    CurveJet jet(double t, const Point& x) const;
    /// dA/dt at global parameter t as a g-valued 1-form.
    Connection velocity(double t) const;
    /// Sup-norm residual of gamma(1) = phi . gamma(0).
    double endpoint_residual() const;

private:
    std::vector<PiecePtr> pieces_;
    std::vector<double> breaks_;
    GaugeMap twist_;
    GroupId group_;
    int dim_;
};

/// gamma1 then gamma2; the twist composes to phi2 phi1.
FamilyCurve concat(const FamilyCurve& g1, const FamilyCurve& g2, double tol = 1e-8);
/// gamma traversed backwards, twisted by phi^{-1}.
FamilyCurve reverse(const FamilyCurve& g);
/// gamma o sigma.
FamilyCurve reparametrize(const FamilyCurve& g, const Reparametrization& r);
/// psi . gamma, twisted by psi phi psi^{-1}.
FamilyCurve act(const GaugeMap& psi, const FamilyCurve& g);
/// Restriction of a curve on T^2 x I to the face z = z0.
FamilyCurve face_restriction(const FamilyCurve& g, double z0);

}
