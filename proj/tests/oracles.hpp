#pragma once

#include "eqcs/gauge.hpp"

#include <array>
#include <complex>
#include <vector>

/// Reference evaluations written against plain std::complex arithmetic.
namespace oracle {

using C = std::complex<double>;
using M2 = std::array<std::array<C, 2>, 2>;

M2 zero();
M2 add(const M2& a, const M2& b);
M2 scale(const M2& a, double s);
M2 mul(const M2& a, const M2& b);
C trace(const M2& a);

/// a i s3 + b i s2 + c i s1.
M2 su2(double a, double b, double c);
/// i theta in the (0,0) slot.
M2 u1(double theta);

/// c cos(2 pi k.x) + s sin(2 pi k.x).
struct Mode {
    std::array<double, 3> k;
    M2 c, s;
};
using Field = std::vector<Mode>;

M2 value(const Field& f, const std::array<double, 3>& x);
M2 partial(const Field& f, int axis, const std::array<double, 3>& x);

eqcs::AlgebraField to_field(eqcs::GroupId g, const Field& f);
eqcs::Connection to_connection(eqcs::GroupId g, const std::vector<Field>& comps);

/// (1/8 pi^2) int_{T^3} tr(a ^ da + 2/3 a ^ a ^ a) on an n^3 midpoint grid, unreduced.
double classical_cs(const std::array<Field, 3>& a, int n);

/// -(1/4 pi^2) int_{T^2} tr(a ^ b) for constant-coefficient su(2) one-forms.
double atiyah_bott(const std::array<M2, 2>& a, const std::array<M2, 2>& b);

/// -2 int p(xi, F) with p = -k/(4 pi^2) X1 X2, for A = i(ax dx + ay dy) on T^2.
double u1_moment(const std::array<Field, 2>& a, const Field& xi, int k, int n);

/// Fixed SU(2) connection on T^3 used by the classical-formula comparison.
std::array<Field, 3> t3_modes();

}
