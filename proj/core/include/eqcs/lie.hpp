#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqcs {

using cd = std::complex<double>;
/// Every group and algebra value lives in a 2x2 complex matrix; U(1) uses the (0,0) slot only.
using Mat2 = Eigen::Matrix2cd;

enum class GroupId { U1, SU2 };

std::string to_string(GroupId g);
GroupId group_from_string(const std::string& s);

class GroupMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace mat {

Mat2 identity(GroupId g);
inline Mat2 zero() { return Mat2::Zero(); }
inline Mat2 bracket(const Mat2& a, const Mat2& b) { return a * b - b * a; }
inline Mat2 dagger(const Mat2& a) { return a.adjoint(); }
/// Real part of tr(ab); for anti-Hermitian arguments the imaginary part vanishes.
inline double re_trace(const Mat2& a, const Mat2& b)
{
    return (a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0) + a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1)).real();
}
double norm(const Mat2& a);

/// exp(X) for X in u(1) or su(2).
Mat2 exp(GroupId g, const Mat2& X);
/// Directional derivative of exp at X along dX.
Mat2 dexp(GroupId g, const Mat2& X, const Mat2& exp_X, const Mat2& dX);

}

class GroupElement {
public:
    GroupElement(GroupId g, const Mat2& m) : group_(g), m_(m) {}
    static GroupElement identity(GroupId g) { return {g, mat::identity(g)}; }

    GroupId group() const { return group_; }
    const Mat2& matrix() const { return m_; }
    /// 1x1 for U(1), 2x2 for SU(2).
    Eigen::MatrixXcd entries() const;
    bool valid(double tol = 1e-12) const;

    GroupElement operator*(const GroupElement& o) const;
    GroupElement inverse() const { return {group_, m_.adjoint()}; }

private:
    GroupId group_;
    Mat2 m_;
};

class AlgebraElement {
public:
    AlgebraElement(GroupId g, const Mat2& m) : group_(g), m_(m) {}
    static AlgebraElement zero(GroupId g) { return {g, Mat2::Zero()}; }
    /// U(1) element i*theta.
    static AlgebraElement u1(double theta);
    /// su(2) element a*i*s3 + b*i*s2 + c*i*s1 with Pauli matrices s_k.
    static AlgebraElement su2(double a, double b, double c);

    GroupId group() const { return group_; }
    const Mat2& matrix() const { return m_; }
    Eigen::MatrixXcd entries() const;
    bool valid(double tol = 1e-12) const;

    AlgebraElement operator+(const AlgebraElement& o) const;
    AlgebraElement operator*(double s) const { return {group_, m_ * s}; }

private:
    GroupId group_;
    Mat2 m_;
};

GroupElement exp_map(const AlgebraElement& X, double t = 1.0);
AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& X);

/// Symmetric Ad-invariant r-linear form p with its integrality level.
class CharacteristicPair {
public:
    using Form = std::function<double(std::span<const Mat2>)>;

    CharacteristicPair(int degree, GroupId g, int level, Form form, double trace_scale);

    /// -k/(4 pi^2) X1 X2 on u(1).
    static CharacteristicPair u1(int level = 1);
    /// -k/(8 pi^2) tr(X1 X2) on su(2).
    static CharacteristicPair su2(int level = 1);
    static CharacteristicPair builtin(GroupId g, int level = 1);

    int degree() const { return degree_; }
    GroupId group() const { return group_; }
    int level() const { return level_; }

    double operator()(std::span<const Mat2> xs) const;
    /// Bilinear fast path, valid for degree 2.
    double bilinear(const Mat2& a, const Mat2& b) const
    {
        return trace_scale_ * mat::re_trace(a, b);
    }
    bool is_trace_form() const { return trace_scale_ != 0.0; }

private:
    int degree_;
    GroupId group_;
    int level_;
    Form form_;
    double trace_scale_;
};

double eval_polynomial(const CharacteristicPair& p, std::span<const AlgebraElement> xs);

}
