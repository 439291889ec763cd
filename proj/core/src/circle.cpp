#include "eqcs/circle.hpp"

#include <cmath>

namespace eqcs {

double reduce_mod1(double x)
{
    double r = x - std::floor(x);
    return r >= 1.0 ? 0.0 : r;
}

double circle_distance(double x, double y)
{
    double d = std::abs(reduce_mod1(x) - reduce_mod1(y));
    return std::min(d, 1.0 - d);
}

mpq_class reduce_mod1(const mpq_class& q)
{
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    mpq_class r = q - mpq_class(f);
    r.canonicalize();
    return r;
}

CircleValue::CircleValue(double raw) : raw_(raw), value_(reduce_mod1(raw)) {}

CircleValue::CircleValue(const mpq_class& exact)
    : raw_(exact.get_d()), exact_(reduce_mod1(exact))
{
    value_ = exact_->get_d();
}

long CircleValue::nearest_integer() const
{
    return std::lround(raw_);
}

CircleValue CircleValue::operator+(const CircleValue& o) const
{
    if (exact_ && o.exact_)
        return CircleValue(mpq_class(*exact_ + *o.exact_));
    return CircleValue(raw_ + o.raw_);
}

CircleValue CircleValue::operator-(const CircleValue& o) const
{
    if (exact_ && o.exact_)
        return CircleValue(mpq_class(*exact_ - *o.exact_));
    return CircleValue(raw_ - o.raw_);
}

CircleValue CircleValue::operator-() const
{
    if (exact_)
        return CircleValue(mpq_class(-*exact_));
    return CircleValue(-raw_);
}

double signed_difference(const CircleValue& a, const CircleValue& b)
{
    double d = reduce_mod1(a.value() - b.value());
    return d >= 0.5 ? d - 1.0 : d;
}

}
