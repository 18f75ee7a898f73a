#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace geoindex {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Integer floor_of(const Rational& x);
Integer ceil_of(const Rational& x);
bool is_integer(const Rational& x);

/// Narrowing with an overflow check; throws RangeError when |x| does not fit.
std::int64_t to_int64(const Integer& x);

/// Accepts "p/q", "p", and finite decimals with optional exponent ("0.25", "-1e-13").
/// Decimals are converted exactly.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" for integers.
std::string to_string(const Rational& x);

/// Rational with the smallest denominator in the closed interval [lo, hi].
Rational simplest_rational_between(const Rational& lo, const Rational& hi);

/// A real number known only to lie in a closed interval with rational ends.
///
/// Exact rationals are the degenerate case lo == hi, so every computation
/// that is exact on rational input stays exact.
class Bounded {
public:
    Bounded() = default;
    Bounded(const Rational& exact) : lo_(exact), hi_(exact) {}  // NOLINT
    Bounded(std::int64_t exact) : lo_(exact), hi_(exact) {}     // NOLINT

    static Bounded hull(const Rational& lo, const Rational& hi);
    static Bounded around(const Rational& centre, const Rational& radius);

    const Rational& lo() const noexcept { return lo_; }
    const Rational& hi() const noexcept { return hi_; }
    bool is_exact() const noexcept { return lo_ == hi_; }
    Rational width() const { return hi_ - lo_; }
    Rational midpoint() const { return (lo_ + hi_) / 2; }

    /// Throws PrecisionError unless the value is exact.
    const Rational& exact() const;

    bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
    bool contains_integer() const;

    bool certainly_positive() const { return lo_ > 0; }
    bool certainly_less(const Bounded& other) const { return hi_ < other.lo_; }

    Bounded reciprocal() const;

    friend Bounded operator+(const Bounded& a, const Bounded& b);
    friend Bounded operator-(const Bounded& a, const Bounded& b);
    friend Bounded operator*(const Bounded& a, const Rational& c);
    friend Bounded operator*(const Rational& c, const Bounded& a) { return a * c; }
    friend Bounded operator*(const Bounded& a, const Bounded& b);
    friend Bounded operator/(const Bounded& a, const Bounded& b) { return a * b.reciprocal(); }
    Bounded operator-() const { return hull(-hi_, -lo_); }

    friend bool operator==(const Bounded& a, const Bounded& b) { return a.lo_ == b.lo_ && a.hi_ == b.hi_; }

private:
    Rational lo_{0};
    Rational hi_{0};
};

/// "p/q" when exact, "[lo, hi]" otherwise.
std::string to_string(const Bounded& x);

/// Largest distance from a point of the interval to the nearest integer.
Rational max_distance_to_integer(const Bounded& x);

}  // namespace geoindex
