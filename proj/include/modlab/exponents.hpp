#pragma once

#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "modlab/rational.hpp"

namespace modlab {

/// A Lebesgue exponent p in [1, infinity], stored exactly as the reciprocal
/// 1/p in [0, 1]. The reciprocal form keeps every region boundary of the
/// index diagram an exact rational comparison; 0 encodes p = infinity and
/// 1 encodes p = 1.
class ExtendedExponent {
public:
    ExtendedExponent() : recip_(1) {}  // p = 1

    static ExtendedExponent infinity() { return ExtendedExponent(Rational(0)); }

    /// From the exponent value itself; requires p >= 1.
    static ExtendedExponent from_value(const Rational& p);

    /// From 1/p; requires 0 <= r <= 1.
    static ExtendedExponent from_reciprocal(const Rational& r);

    /// Accepts "num/den", "num", or "infty".
    static std::optional<ExtendedExponent> parse(std::string_view text);

    const Rational& reciprocal() const { return recip_; }
    bool is_infinite() const { return recip_.is_zero(); }
    bool is_one() const { return recip_ == Rational(1); }

    /// p as a rational; throws for p = infinity.
    Rational value() const;

    double value_as_double() const {
        return is_infinite() ? std::numeric_limits<double>::infinity() : 1.0 / recip_.to_double();
    }

    /// Conjugate exponent: 1/p + 1/p' = 1.
    ExtendedExponent dual() const { return ExtendedExponent(Rational(1) - recip_); }

    std::string str() const;

    friend bool operator==(const ExtendedExponent&, const ExtendedExponent&) = default;

    /// Value order: p1 < p2 as exponents (infinity is the largest).
    friend bool operator<(const ExtendedExponent& a, const ExtendedExponent& b) {
        return a.recip_ > b.recip_;
    }
    friend bool operator<=(const ExtendedExponent& a, const ExtendedExponent& b) {
        return a.recip_ >= b.recip_;
    }
    friend bool operator>(const ExtendedExponent& a, const ExtendedExponent& b) { return b < a; }
    friend bool operator>=(const ExtendedExponent& a, const ExtendedExponent& b) { return b <= a; }

private:
    explicit ExtendedExponent(Rational recip) : recip_(std::move(recip)) {}

    Rational recip_;
};

/// Smoothness index s, in units of derivatives.
using Smoothness = Rational;

/// A point (1/p, 1/q) of the closed unit square, the coordinate system of
/// the region diagram.
struct IndexPair {
    Rational u;  // 1/p
    Rational v;  // 1/q

    IndexPair(Rational u_, Rational v_);
    IndexPair(const ExtendedExponent& p, const ExtendedExponent& q)
        : IndexPair(p.reciprocal(), q.reciprocal()) {}
};

ExtendedExponent min(const ExtendedExponent& a, const ExtendedExponent& b);
ExtendedExponent max(const ExtendedExponent& a, const ExtendedExponent& b);

}  // namespace modlab
