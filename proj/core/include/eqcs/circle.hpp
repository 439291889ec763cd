#pragma once

#include <gmpxx.h>
#include <optional>

namespace eqcs {

/// x mod 1 in [0,1).
double reduce_mod1(double x);
/// min(|x-y|, 1-|x-y|) after reduction.
double circle_distance(double x, double y);

/// Element of R/Z; keeps the unreduced real and, when available, an exact rational.
class CircleValue {
public:
    CircleValue() = default;
    explicit CircleValue(double raw);
    explicit CircleValue(const mpq_class& exact);

    double value() const { return value_; }
    double raw() const { return raw_; }
    long nearest_integer() const;
    const std::optional<mpq_class>& exact() const { return exact_; }

    CircleValue operator+(const CircleValue& o) const;
    CircleValue operator-(const CircleValue& o) const;
    CircleValue operator-() const;

    double distance(const CircleValue& o) const { return circle_distance(value_, o.value_); }

private:
    double raw_ = 0.0;
    double value_ = 0.0;
    std::optional<mpq_class> exact_;
};

/// Representative of a - b in [-1/2, 1/2).
double signed_difference(const CircleValue& a, const CircleValue& b);

/// Rational representative in [0,1).
mpq_class reduce_mod1(const mpq_class& q);

}
