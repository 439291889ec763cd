#pragma once

#include <span>
#include <vector>

namespace eqcs {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule mapped to [0,1].
const QuadratureRule& gauss_legendre(int n);
/// Composite Simpson weights on n equispaced points of [0,1]; an even n closes with the 3/8 rule.
std::vector<double> simpson_weights(int n);
/// Periodic trapezoid weights on n points of [0,1).
std::vector<double> trapezoid_weights(int n);

/// Sum with a fixed pairwise tree; the result does not depend on thread scheduling.
double pairwise_sum(std::span<const double> xs);

}
