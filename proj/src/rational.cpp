#include "modlab/rational.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

namespace modlab {

namespace {

std::int64_t checked_cast(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) {
        throw std::overflow_error("rational arithmetic overflow");
    }
    return static_cast<std::int64_t>(v);
}

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

Rational Rational::make(__int128 num, __int128 den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    __int128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    Rational r;
    r.num_ = checked_cast(num);
    r.den_ = checked_cast(den);
    return r;
}

Rational::Rational(std::int64_t num, std::int64_t den) { *this = make(num, den); }

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::optional<Rational> Rational::parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    auto parse_int = [](std::string_view s, std::int64_t& out) {
        if (s.empty()) return false;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        return ec == std::errc{} && ptr == s.data() + s.size();
    };
    std::int64_t num = 0;
    std::int64_t den = 1;
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!parse_int(text, num)) return std::nullopt;
    } else {
        if (!parse_int(text.substr(0, slash), num)) return std::nullopt;
        if (!parse_int(text.substr(slash + 1), den)) return std::nullopt;
        if (den <= 0) return std::nullopt;
    }
    return Rational(num, den);
}

Rational Rational::from_double(double x, std::int64_t max_den) {
    if (!std::isfinite(x)) throw std::domain_error("cannot round a non-finite value to a rational");
    if (max_den < 1) throw std::domain_error("max_den must be positive");
    bool neg = x < 0;
    double v = std::fabs(x);
    // continued-fraction convergents p/q with q <= max_den
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int iter = 0; iter < 64; ++iter) {
        double fl = std::floor(frac);
        if (fl > static_cast<double>(INT64_MAX / 2)) break;
        auto a = static_cast<std::int64_t>(fl);
        __int128 p2 = static_cast<__int128>(a) * p1 + p0;
        __int128 q2 = static_cast<__int128>(a) * q1 + q0;
        if (q2 > max_den) {
            // largest admissible semiconvergent
            if (q1 > 0) {
                std::int64_t t = (max_den - q0) / q1;
                __int128 ps = static_cast<__int128>(t) * p1 + p0;
                __int128 qs = static_cast<__int128>(t) * q1 + q0;
                if (qs > 0) {
                    double best = std::fabs(v - static_cast<double>(p1) / static_cast<double>(q1));
                    double semi = std::fabs(v - static_cast<double>(static_cast<std::int64_t>(ps)) /
                                                    static_cast<double>(static_cast<std::int64_t>(qs)));
                    if (semi < best) {
                        p1 = checked_cast(ps);
                        q1 = checked_cast(qs);
                    }
                }
            }
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = checked_cast(p2);
        q1 = checked_cast(q2);
        double rem = frac - fl;
        if (rem < 1e-15 * std::max(1.0, v)) break;
        frac = 1.0 / rem;
    }
    if (q1 == 0) return Rational(0);
    return Rational(neg ? -p1 : p1, q1);
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = checked_cast(-static_cast<__int128>(num_));
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    *this = make(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                 static_cast<__int128>(den_) * o.den_);
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    *this = make(static_cast<__int128>(num_) * o.den_ - static_cast<__int128>(o.num_) * den_,
                 static_cast<__int128>(den_) * o.den_);
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    *this = make(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.num_ == 0) throw std::domain_error("rational division by zero");
    *this = make(static_cast<__int128>(num_) * o.den_, static_cast<__int128>(den_) * o.num_);
    return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Rational abs(const Rational& r) { return r.is_negative() ? -r : r; }
Rational min(const Rational& a, const Rational& b) { return a <= b ? a : b; }
Rational max(const Rational& a, const Rational& b) { return a >= b ? a : b; }

}  // namespace modlab
