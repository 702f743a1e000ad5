#include "haarshift/rational.hpp"

#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace haarshift {

namespace {

using wide = __int128;

Rational make_normalized(wide num, wide den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    wide a = num < 0 ? -num : num;
    wide b = den;
    while (b != 0) {
        wide t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        num /= a;
        den /= a;
    }
    constexpr wide lim = INT64_MAX;
    if (num > lim || num < -lim || den > lim) throw std::overflow_error("rational overflow");
    return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace

Rational::Rational(std::int64_t num) : num_(num), den_(1) {}

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = g > 1 ? num / g : num;
    den_ = g > 1 ? den / g : den;
}

Rational Rational::from_double(double value) {
    if (!std::isfinite(value)) throw std::domain_error("rational from non-finite double");
    if (value == 0.0) return {};
    int exp = 0;
    const double mant = std::frexp(value, &exp);  // value = mant * 2^exp, |mant| in [0.5, 1)
    auto m = static_cast<std::int64_t>(std::ldexp(mant, 53));
    int shift = exp - 53;
    while (shift < 0 && (m % 2) == 0) {
        m /= 2;
        ++shift;
    }
    if (shift >= 0) {
        if (shift > 62 - 53) throw std::domain_error("rational from double: magnitude too large");
        return Rational(m * (std::int64_t{1} << shift));
    }
    if (-shift > 62) throw std::domain_error("rational from double: denominator too large");
    return Rational(m, std::int64_t{1} << (-shift));
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
    return make_normalized(wide(a.num_) * b.den_ + wide(b.num_) * a.den_, wide(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return make_normalized(wide(a.num_) * b.den_ - wide(b.num_) * a.den_, wide(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    return make_normalized(wide(a.num_) * b.num_, wide(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    return make_normalized(wide(a.num_) * b.den_, wide(a.den_) * b.num_);
}

Rational Rational::operator-() const { return Rational(-num_, den_); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return wide(a.num_) * b.den_ <=> wide(b.num_) * a.den_;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace haarshift
