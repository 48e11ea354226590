#include "deltacone/rational.hpp"

#include <charconv>
#include <limits>

#include "deltacone/error.hpp"

namespace deltacone {

namespace {

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

bool fits64(__int128 v) {
    return v >= std::numeric_limits<std::int64_t>::min() &&
           v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw Error(ErrorKind::domain, "rational with zero denominator");
    *this = from_wide(num, den);
}

Rational Rational::from_wide(__int128 num, __int128 den) {
    if (den == 0) throw Error(ErrorKind::domain, "division by zero");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const __int128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (!fits64(num) || !fits64(den)) {
        throw Error(ErrorKind::invalid_input, "rational overflow");
    }
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
}

Rational Rational::parse(std::string_view text) {
    auto fail = [&]() -> Rational {
        throw Error(ErrorKind::invalid_input, "cannot parse rational '" + std::string(text) + "'");
    };
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text.empty()) return fail();
    if (text == "inf" || text == "+inf") return infinity();

    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        std::int64_t p = 0;
        std::int64_t q = 0;
        const auto a = text.substr(0, slash);
        const auto b = text.substr(slash + 1);
        auto [pa, ea] = std::from_chars(a.data(), a.data() + a.size(), p);
        auto [pb, eb] = std::from_chars(b.data(), b.data() + b.size(), q);
        if (ea != std::errc{} || eb != std::errc{} || pa != a.data() + a.size() ||
            pb != b.data() + b.size() || q == 0) {
            return fail();
        }
        return Rational(p, q);
    }

    // Decimal: [sign] digits [. digits] [e[sign]digits]
    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }
    __int128 mantissa = 0;
    int scale = 0;
    bool any_digit = false;
    bool seen_point = false;
    for (; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (c >= '0' && c <= '9') {
            mantissa = mantissa * 10 + (c - '0');
            if (mantissa > (static_cast<__int128>(1) << 100)) return fail();
            if (seen_point) ++scale;
            any_digit = true;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any_digit) return fail();
    int exponent = 0;
    if (pos < text.size()) {
        if (text[pos] != 'e' && text[pos] != 'E') return fail();
        ++pos;
        const auto rest = text.substr(pos);
        const char* first = rest.data();
        if (!rest.empty() && rest.front() == '+') ++first;
        auto [p, ec] = std::from_chars(first, rest.data() + rest.size(), exponent);
        if (ec != std::errc{} || p != rest.data() + rest.size()) return fail();
    }
    exponent -= scale;
    if (exponent > 30 || exponent < -30) return fail();
    __int128 den = 1;
    for (int i = 0; i < -exponent; ++i) den *= 10;
    for (int i = 0; i < exponent; ++i) mantissa *= 10;
    return from_wide(negative ? -mantissa : mantissa, den);
}

double Rational::to_double() const noexcept {
    if (is_infinite()) return std::numeric_limits<double>::infinity();
    return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_string() const {
    if (is_infinite()) return "inf";
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
    if (is_infinite()) throw Error(ErrorKind::domain, "negative infinity is not representable");
    return from_wide(-static_cast<__int128>(num_), den_);
}

Rational operator+(const Rational& a, const Rational& b) {
    // -inf is not representable, so any infinite operand gives +inf.
    if (a.is_infinite() || b.is_infinite()) return Rational::infinity();
    return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_ +
                                   static_cast<__int128>(b.num_) * a.den_,
                               static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    if (b.is_infinite()) throw Error(ErrorKind::domain, "subtracting infinity");
    if (a.is_infinite()) return Rational::infinity();
    return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_ -
                                   static_cast<__int128>(b.num_) * a.den_,
                               static_cast<__int128>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    if (a.is_infinite() || b.is_infinite()) {
        const Rational& finite = a.is_infinite() ? b : a;
        if (!finite.is_infinite() && finite.num_ <= 0) {
            throw Error(ErrorKind::domain, "infinity times non-positive value");
        }
        return Rational::infinity();
    }
    return Rational::from_wide(static_cast<__int128>(a.num_) * b.num_,
                               static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_infinite()) {
        if (a.is_infinite()) throw Error(ErrorKind::domain, "infinity over infinity");
        return Rational(0);
    }
    if (b.num_ == 0) throw Error(ErrorKind::domain, "division by zero");
    if (a.is_infinite()) {
        if (b.num_ < 0) throw Error(ErrorKind::domain, "infinity over negative value");
        return Rational::infinity();
    }
    return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_,
                               static_cast<__int128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.is_infinite() || b.is_infinite()) {
        return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
    }
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    return lhs <=> rhs;
}

}  // namespace deltacone
