#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace deltacone {

/// Exact rational number with 64-bit numerator and denominator, plus a
/// distinguished +infinity (stored as 1/0) used for exponents that blow up
/// in the convex limit.
///
/// Arithmetic is checked: any intermediate that does not fit in 64 bits after
/// reduction throws Error(invalid_input). Operations whose result is
/// undefined (inf - inf, 0 * inf, x / 0) throw Error(domain).
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT(implicit)
    Rational(std::int64_t num, std::int64_t den);

    static Rational infinity() {
        Rational r;
        r.num_ = 1;
        r.den_ = 0;
        return r;
    }

    /// Parses "p/q", an integer, or a decimal such as "0.125" or "-2.5e-1".
    /// Decimals are converted exactly.
    static Rational parse(std::string_view text);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }
    bool is_infinite() const noexcept { return den_ == 0; }
    bool is_zero() const noexcept { return num_ == 0 && den_ != 0; }
    bool is_integer() const noexcept { return den_ == 1; }

    double to_double() const noexcept;
    std::string to_string() const;

    Rational operator-() const;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.to_string();
    }

private:
    static Rational from_wide(__int128 num, __int128 den);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace deltacone
