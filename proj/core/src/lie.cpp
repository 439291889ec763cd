#include "eqcs/lie.hpp"

#include <cmath>
#include <numbers>

namespace eqcs {

std::string to_string(GroupId g)
{
    return g == GroupId::U1 ? "U1" : "SU2";
}

GroupId group_from_string(const std::string& s)
{
    if (s == "U1" || s == "u1")
        return GroupId::U1;
    if (s == "SU2" || s == "su2")
        return GroupId::SU2;
    throw std::invalid_argument("unknown group '" + s + "'");
}

namespace mat {

Mat2 identity(GroupId g)
{
    Mat2 m = Mat2::Zero();
    m(0, 0) = 1.0;
    if (g == GroupId::SU2)
        m(1, 1) = 1.0;
    return m;
}

double norm(const Mat2& a)
{
    return a.cwiseAbs().maxCoeff();
}

namespace {

// (sin t)/t and (sin t / t - cos t)/t^2, both evaluated without cancellation near 0
void sinc_pair(double th2, double& s, double& q, double& c)
{
    double th = std::sqrt(th2);
    c = std::cos(th);
    if (th2 < 1e-6) {
        s = 1.0 - th2 / 6.0 + th2 * th2 / 120.0;
        q = 1.0 / 3.0 - th2 / 30.0 + th2 * th2 / 840.0;
    } else {
        s = std::sin(th) / th;
        q = (s - c) / th2;
    }
}

double theta_sq(const Mat2& X)
{
    return std::max(0.0, -0.5 * re_trace(X, X));
}

}

Mat2 exp(GroupId g, const Mat2& X)
{
    if (g == GroupId::U1) {
        Mat2 r = Mat2::Zero();
        r(0, 0) = std::exp(X(0, 0));
        return r;
    }
    double s, q, c;
    sinc_pair(theta_sq(X), s, q, c);
    return c * Mat2::Identity() + s * X;
}

Mat2 dexp(GroupId g, const Mat2& X, const Mat2& exp_X, const Mat2& dX)
{
    if (g == GroupId::U1)
        return exp_X * dX;
    double s, q, c;
    sinc_pair(theta_sq(X), s, q, c);
    double t = re_trace(X, dX);
    return (0.5 * s * t) * Mat2::Identity() + (0.5 * q * t) * X + s * dX;
}

}

Eigen::MatrixXcd GroupElement::entries() const
{
    if (group_ == GroupId::U1)
        return m_.block(0, 0, 1, 1);
    return m_;
}

bool GroupElement::valid(double tol) const
{
    if (group_ == GroupId::U1) {
        return std::abs(std::abs(m_(0, 0)) - 1.0) <= tol && std::abs(m_(0, 1)) <= tol
            && std::abs(m_(1, 0)) <= tol && std::abs(m_(1, 1)) <= tol;
    }
    double u = (m_ * m_.adjoint() - Mat2::Identity()).cwiseAbs().maxCoeff();
    return u <= tol && std::abs(m_.determinant() - 1.0) <= tol;
}

GroupElement GroupElement::operator*(const GroupElement& o) const
{
    if (group_ != o.group_)
        throw GroupMismatch("group product across different groups");
    return {group_, m_ * o.m_};
}

AlgebraElement AlgebraElement::u1(double theta)
{
    Mat2 m = Mat2::Zero();
    m(0, 0) = cd(0.0, theta);
    return {GroupId::U1, m};
}

AlgebraElement AlgebraElement::su2(double a, double b, double c)
{
    Mat2 m;
    m << cd(0, a), cd(b, c), cd(-b, c), cd(0, -a);
    return {GroupId::SU2, m};
}

Eigen::MatrixXcd AlgebraElement::entries() const
{
    if (group_ == GroupId::U1)
        return m_.block(0, 0, 1, 1);
    return m_;
}

bool AlgebraElement::valid(double tol) const
{
    if (group_ == GroupId::U1) {
        return std::abs(m_(0, 0).real()) <= tol && std::abs(m_(0, 1)) <= tol
            && std::abs(m_(1, 0)) <= tol && std::abs(m_(1, 1)) <= tol;
    }
    return (m_ + m_.adjoint()).cwiseAbs().maxCoeff() <= tol && std::abs(m_.trace()) <= tol;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const
{
    if (group_ != o.group_)
        throw GroupMismatch("algebra sum across different groups");
    return {group_, m_ + o.m_};
}

GroupElement exp_map(const AlgebraElement& X, double t)
{
    return {X.group(), mat::exp(X.group(), t * X.matrix())};
}

AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& X)
{
    if (g.group() != X.group())
        throw GroupMismatch("adjoint action across different groups");
    if (g.group() == GroupId::U1)
        return X;
    return {X.group(), g.matrix() * X.matrix() * g.matrix().adjoint()};
}

CharacteristicPair::CharacteristicPair(int degree, GroupId g, int level, Form form, double trace_scale)
    : degree_(degree), group_(g), level_(level), form_(std::move(form)), trace_scale_(trace_scale)
{
    if (degree_ < 1)
        throw std::invalid_argument("characteristic pair degree must be positive");
}

CharacteristicPair CharacteristicPair::u1(int level)
{
    const double scale = -level / (4.0 * std::numbers::pi * std::numbers::pi);
    auto f = [scale](std::span<const Mat2> xs) {
        return scale * (xs[0](0, 0) * xs[1](0, 0)).real();
    };
    return {2, GroupId::U1, level, f, scale};
}

CharacteristicPair CharacteristicPair::su2(int level)
{
    const double scale = -level / (8.0 * std::numbers::pi * std::numbers::pi);
    auto f = [scale](std::span<const Mat2> xs) {
        return scale * 0.5 * (mat::re_trace(xs[0], xs[1]) + mat::re_trace(xs[1], xs[0]));
    };
    return {2, GroupId::SU2, level, f, scale};
}

CharacteristicPair CharacteristicPair::builtin(GroupId g, int level)
{
    return g == GroupId::U1 ? u1(level) : su2(level);
}

double CharacteristicPair::operator()(std::span<const Mat2> xs) const
{
    if (static_cast<int>(xs.size()) != degree_)
        throw std::invalid_argument("characteristic pair arity mismatch");
    return form_(xs);
}

double eval_polynomial(const CharacteristicPair& p, std::span<const AlgebraElement> xs)
{
    if (static_cast<int>(xs.size()) != p.degree())
        throw std::invalid_argument("eval_polynomial: expected " + std::to_string(p.degree())
                                    + " arguments, got " + std::to_string(xs.size()));
    std::vector<Mat2> ms;
    ms.reserve(xs.size());
    for (const auto& x : xs) {
        if (x.group() != p.group())
            throw GroupMismatch("eval_polynomial: argument group differs from the pair");
        ms.push_back(x.matrix());
    }
    return p(ms);
}

}
