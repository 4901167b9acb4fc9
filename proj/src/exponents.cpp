#include "modlab/exponents.hpp"

namespace modlab {

ExtendedExponent ExtendedExponent::from_value(const Rational& p) {
    if (p < Rational(1)) throw std::domain_error("Lebesgue exponent must satisfy p >= 1, got " + p.str());
    return ExtendedExponent(Rational(1) / p);
}

ExtendedExponent ExtendedExponent::from_reciprocal(const Rational& r) {
    if (r < Rational(0) || r > Rational(1)) {
        throw std::domain_error("reciprocal exponent must lie in [0,1], got " + r.str());
    }
    return ExtendedExponent(r);
}

std::optional<ExtendedExponent> ExtendedExponent::parse(std::string_view text) {
    if (text == "infty") return infinity();
    auto r = Rational::parse(text);
    if (!r || *r < Rational(1)) return std::nullopt;
    return from_value(*r);
}

Rational ExtendedExponent::value() const {
    if (is_infinite()) throw std::domain_error("p = infty has no rational value");
    return Rational(1) / recip_;
}

std::string ExtendedExponent::str() const {
    if (is_infinite()) return "infty";
    return value().str();
}

IndexPair::IndexPair(Rational u_, Rational v_) : u(std::move(u_)), v(std::move(v_)) {
    if (u < Rational(0) || u > Rational(1) || v < Rational(0) || v > Rational(1)) {
        throw std::domain_error("index pair must lie in the closed unit square");
    }
}

ExtendedExponent min(const ExtendedExponent& a, const ExtendedExponent& b) { return a <= b ? a : b; }
ExtendedExponent max(const ExtendedExponent& a, const ExtendedExponent& b) { return a >= b ? a : b; }

}  // namespace modlab
