#pragma once

#include <cstdint>
#include <compare>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace modlab {

/// Exact rational number on 64-bit words.
///
/// All quantities handled by the index engine are small rationals (region
/// thresholds, grid steps of 1/12, products of a handful of factors), so a
/// fixed-width representation with 128-bit intermediates is exact for the
/// whole parameter range; any overflow throws instead of wrapping.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t value) : num_(value), den_(1) {}
    Rational(std::int64_t num, std::int64_t den);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_integer() const { return den_ == 1; }

    /// "num/den", or just "num" when the denominator is 1.
    std::string str() const;

    /// Accepts "n", "-n", "n/d" with optional leading sign on the numerator.
    static std::optional<Rational> parse(std::string_view text);

    /// Nearest rational with denominator <= max_den (Stern-Brocot descent).
    static Rational from_double(double x, std::int64_t max_den = 1'000'000);

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;  // invariant: den_ > 0 and gcd(|num_|, den_) == 1

    static Rational make(__int128 num, __int128 den);
};

Rational abs(const Rational& r);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

}  // namespace modlab
