#pragma once

#include "eqcs/circle.hpp"
#include "eqcs/curve.hpp"
#include "eqcs/fields.hpp"
#include "eqcs/gauge.hpp"

#include <string>

namespace eqcs {

/// Smooth non-decreasing u: [0,1] -> [0,1], 0 on [0,eps], 1 on [1-eps,1].
struct SmoothingProfile {
    double eps = 0.1;

    explicit SmoothingProfile(double e = 0.1);
    double operator()(double t) const;
    double derivative(double t) const;
};

struct XiOptions {
    /// Points per periodic axis of T^2.
    int n_space = 32;
    /// Simpson nodes per smooth piece of the curve (odd).
    int n_time = 49;
    SmoothingProfile profile{0.1};
    /// Lattice used when a U(1) twist has nonzero winding.
    int lattice_n = 32;
    int lattice_steps = 32;
};

enum class XiRoute { Quadrature, Lattice };
std::string to_string(XiRoute r);

struct XiResult {
    CircleValue value;
    XiRoute route = XiRoute::Quadrature;
};

class WrongDimension : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Tp(A, A') = r int_0^1 p(a, F_t, ..., F_t) dt with a = A - A', A_t = A' + t a.
RealForm transgression(const Connection& A, const Connection& A2, const CharacteristicPair& p, const Grid& grid,
                       int gl_nodes = 8);

/// Chern-Simons action CS(A) = -int_M Tp(A, A0) on a (2r-1)-torus.
CircleValue cs_action(const Connection& A, const CharacteristicPair& p, const Grid& grid);

/// A^{gamma o u} on M x [0,1], optionally carried to M x S^1 by the nullhomotopy of the twist.
struct MappingTorusConnection {
    Grid grid;
    AlgebraForm field;
    bool trivialized;
    /// Sup over M of |A(., 1) - phi . A(., 0)| for the untrivialized field.
    double glue_residual;
    /// Sup over M of |A(., 1) - A(., 0)| after trivialization; zero when not trivialized.
    double end_slice_residual;
};

MappingTorusConnection assemble_mapping_torus(const FamilyCurve& gamma, const GaugeMap& phi,
                                              const SmoothingProfile& u, int n_space, int n_time,
                                              bool trivialize);

/// Xi(phi, gamma) = CS(A_phi^gamma).
XiResult xi(const GaugeMap& phi, const FamilyCurve& gamma, const CharacteristicPair& p, const XiOptions& opt = {});

/// r(r-1) int_M p(a, b, F_A, ..., F_A).
double curvature_two_form(const Connection& A, const Connection& a, const Connection& b,
                          const CharacteristicPair& p, int n = 32);

/// -r int_M p(v_A(X), F_A, ..., F_A).
double moment(const Connection& A, const AlgebraField& xi, const CharacteristicPair& p, int n = 32);

/// int_gamma lambda = -int_{M x I} Tp(A^gamma, A0).
double integrate_lambda(const FamilyCurve& gamma, const Connection& A0, const CharacteristicPair& p,
                        const XiOptions& opt = {});

/// lambda_A(a), the integrand of integrate_lambda at a single parameter.
double lambda_one_form(const Connection& A, const Connection& a, const CharacteristicPair& p, int n = 32);

/// CS(phi~ . zA) - CS(zA) on the cylinder M x [0,1], with phi~(x, z) = g(x, 1 - z).
double rsw_cocycle(const GaugeMap& phi, const Connection& A, const CharacteristicPair& p, const XiOptions& opt = {});

}
