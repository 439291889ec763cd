#pragma once

#include "eqcs/circle.hpp"
#include "eqcs/cschar.hpp"
#include "eqcs/curve.hpp"

namespace eqcs {

/// Resolution of M = T^2 x [0,1] and of the curve parameter for the 4D integrals.
struct BoundaryOptions {
    int n_space = 12;
    int n_depth = 12;
    /// Simpson nodes per smooth piece of the curve.
    int n_time = 12;
};

/// int over the mapping torus M_phi of p(F) for a curve of connections on T^2 x [0,1].
/// Sampled as 4D forms on (x, y, z, t) with the parameter-first orientation dt dx dy dz.
double mapping_torus_chern_weil(const FamilyCurve& gamma, const CharacteristicPair& p,
                                const BoundaryOptions& opt = {});

/// Fiber integral of p(F) over M: the 1-form a -> r int_M p(a, F_A, ..., F_A).
double fiber_one_form(const Connection& A, const Connection& a, const CharacteristicPair& p,
                      const BoundaryOptions& opt = {});

/// Line integral of the fiber one-form along gamma, Gauss-Legendre in the parameter.
double integrate_fiber_one_form(const FamilyCurve& gamma, const CharacteristicPair& p,
                                const BoundaryOptions& opt = {});

/// Xi of the top face minus Xi of the bottom face (outward orientation of the boundary).
CircleValue boundary_xi(const GaugeMap& phi, const FamilyCurve& gamma, const CharacteristicPair& p,
                        const XiOptions& opt = {});

}
