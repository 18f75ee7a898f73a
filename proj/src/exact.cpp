#include "geoindex/exact.hpp"

#include <cctype>
#include <limits>

#include "geoindex/errors.hpp"

namespace geoindex {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// cpp_int reads a leading 0 as an octal prefix.
Integer decimal_integer(std::string_view digits) {
    const auto first = digits.find_first_not_of('0');
    if (first == std::string_view::npos) return Integer(0);
    return Integer(std::string(digits.substr(first)));
}

Integer pow10(std::int64_t e) {
    Integer r = 1;
    for (std::int64_t i = 0; i < e; ++i) r *= 10;
    return r;
}

[[noreturn]] void bad_number(std::string_view text) {
    throw ValidationError("not an exact number: \"" + std::string(text) + "\" (expected p/q, an integer, or a decimal)");
}

}  // namespace

Integer floor_of(const Rational& x) {
    const Integer& n = boost::multiprecision::numerator(x);
    const Integer& d = boost::multiprecision::denominator(x);
    Integer q = n / d;
    if (n % d != 0 && n < 0) q -= 1;
    return q;
}

Integer ceil_of(const Rational& x) {
    return -floor_of(-x);
}

bool is_integer(const Rational& x) {
    return boost::multiprecision::denominator(x) == 1;
}

std::int64_t to_int64(const Integer& x) {
    if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
        throw RangeError("integer " + x.str() + " exceeds the 64-bit index range");
    return x.convert_to<std::int64_t>();
}

Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) bad_number(text);

    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view num = trim(s.substr(0, slash));
        std::string_view den = trim(s.substr(slash + 1));
        if (!all_digits(num) || !all_digits(den)) bad_number(text);
        const Integer d = decimal_integer(den);
        if (d == 0) throw ValidationError("zero denominator in \"" + std::string(text) + "\"");
        value = Rational(decimal_integer(num), d);
    } else {
        std::string_view mantissa = s;
        std::int64_t exponent = 0;
        if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
            mantissa = s.substr(0, e);
            std::string_view exp_text = s.substr(e + 1);
            bool exp_negative = false;
            if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
                exp_negative = exp_text.front() == '-';
                exp_text.remove_prefix(1);
            }
            if (!all_digits(exp_text) || exp_text.size() > 6) bad_number(text);
            exponent = std::stoll(std::string(exp_text));
            if (exp_negative) exponent = -exponent;
        }
        std::string digits;
        std::int64_t fraction_digits = 0;
        if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
            std::string_view whole = mantissa.substr(0, dot);
            std::string_view frac = mantissa.substr(dot + 1);
            if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
                (whole.empty() && frac.empty()))
                bad_number(text);
            digits = std::string(whole) + std::string(frac);
            fraction_digits = static_cast<std::int64_t>(frac.size());
        } else {
            if (!all_digits(mantissa)) bad_number(text);
            digits = std::string(mantissa);
        }
        const Integer n = decimal_integer(digits);
        std::int64_t shift = exponent - fraction_digits;
        if (shift >= 0)
            value = Rational(n * pow10(shift));
        else
            value = Rational(n, pow10(-shift));
    }
    return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& x) {
    const Integer& n = boost::multiprecision::numerator(x);
    const Integer& d = boost::multiprecision::denominator(x);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

Rational simplest_rational_between(const Rational& lo, const Rational& hi) {
    if (hi < lo) return simplest_rational_between(hi, lo);
    if (lo <= 0 && hi >= 0) return Rational(0);
    if (hi < 0) return -simplest_rational_between(-hi, -lo);

    // Continued-fraction descent; both ends positive from here on.
    Integer fl = floor_of(lo);
    if (Rational(fl) == lo) return lo;
    if (Rational(fl + 1) <= hi) return Rational(fl + 1);
    Rational a = lo - Rational(fl);
    Rational b = hi - Rational(fl);
    return Rational(fl) + Rational(1) / simplest_rational_between(Rational(1) / b, Rational(1) / a);
}

Bounded Bounded::hull(const Rational& lo, const Rational& hi) {
    Bounded b;
    b.lo_ = lo < hi ? lo : hi;
    b.hi_ = lo < hi ? hi : lo;
    return b;
}

Bounded Bounded::around(const Rational& centre, const Rational& radius) {
    if (radius < 0) throw ValidationError("negative error bound " + to_string(radius));
    return hull(centre - radius, centre + radius);
}

const Rational& Bounded::exact() const {
    if (!is_exact()) throw PrecisionError("value " + to_string(*this) + " is not known exactly");
    return lo_;
}

bool Bounded::contains_integer() const {
    return ceil_of(lo_) <= floor_of(hi_);
}

Bounded Bounded::reciprocal() const {
    if (lo_ <= 0 && hi_ >= 0) throw PrecisionError("reciprocal of interval " + to_string(*this) + " containing 0");
    return hull(Rational(1) / hi_, Rational(1) / lo_);
}

Bounded operator+(const Bounded& a, const Bounded& b) {
    return Bounded::hull(a.lo_ + b.lo_, a.hi_ + b.hi_);
}

Bounded operator-(const Bounded& a, const Bounded& b) {
    return Bounded::hull(a.lo_ - b.hi_, a.hi_ - b.lo_);
}

Bounded operator*(const Bounded& a, const Rational& c) {
    if (a.is_exact()) return Bounded(a.lo_ * c);
    return Bounded::hull(a.lo_ * c, a.hi_ * c);
}

Bounded operator*(const Bounded& a, const Bounded& b) {
    if (b.is_exact()) return a * b.lo_;
    if (a.is_exact()) return b * a.lo_;
    Rational p[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
    Rational mn = p[0], mx = p[0];
    for (const auto& v : p) {
        if (v < mn) mn = v;
        if (v > mx) mx = v;
    }
    return Bounded::hull(mn, mx);
}

std::string to_string(const Bounded& x) {
    if (x.is_exact()) return to_string(x.lo());
    return "[" + to_string(x.lo()) + ", " + to_string(x.hi()) + "]";
}

Rational max_distance_to_integer(const Bounded& x) {
    const Rational half(1, 2);
    if (x.width() >= half) return half;
    Integer k = floor_of(x.midpoint() + half);
    Rational kr(k);
    if (x.lo() < kr - half || x.hi() > kr + half) return half;
    Rational d_lo = kr - x.lo();
    Rational d_hi = x.hi() - kr;
    if (d_lo < 0) d_lo = -d_lo;
    if (d_hi < 0) d_hi = -d_hi;
    return d_lo > d_hi ? d_lo : d_hi;
}

}  // namespace geoindex
