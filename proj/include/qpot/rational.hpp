#pragma once

// Exact rational numbers. Values whose numerator and denominator fit in 63 bits
// are stored inline; anything larger moves to an arbitrary-precision
// representation and moves back as soon as it fits again, so equal values
// always have equal representations.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>

#include "qpot/errors.hpp"

namespace qpot {

class Rational {
  public:
    using BigInt = boost::multiprecision::cpp_int;
    using BigRational = boost::multiprecision::cpp_rational;

    Rational() = default;
    Rational(long long n) { assign_wide(n, 1); } // NOLINT: implicit from integers is intended
    Rational(long long n, long long d) {
        if (d == 0) throw Error("rational with zero denominator");
        assign_wide(n, d);
    }
    explicit Rational(const BigRational& value) { assign_big(value); }

    static Rational parse(std::string_view text) {
        const auto slash = text.find('/');
        try {
            if (slash == std::string_view::npos) {
                return Rational(BigRational(BigInt(std::string(text))));
            }
            BigInt num(std::string(text.substr(0, slash)));
            BigInt den(std::string(text.substr(slash + 1)));
            if (den == 0) throw Error("rational with zero denominator");
            return Rational(BigRational(num, den));
        } catch (const std::runtime_error&) {
            throw Error("malformed rational '" + std::string(text) + "'");
        }
    }

    bool is_zero() const { return !big_ && num_ == 0; }
    bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
    bool is_small() const { return !big_; }
    int sign() const {
        if (big_) return big_->sign();
        return (num_ > 0) - (num_ < 0);
    }

    BigRational to_big() const {
        if (big_) return *big_;
        return BigRational(BigInt(num_), BigInt(den_));
    }
    BigInt numerator() const { return big_ ? boost::multiprecision::numerator(*big_) : BigInt(num_); }
    BigInt denominator() const { return big_ ? boost::multiprecision::denominator(*big_) : BigInt(den_); }

    std::string to_string() const {
        if (big_) {
            auto n = boost::multiprecision::numerator(*big_);
            auto d = boost::multiprecision::denominator(*big_);
            return d == 1 ? n.str() : n.str() + "/" + d.str();
        }
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

    Rational operator-() const {
        Rational r;
        if (big_) {
            r.assign_big(-*big_);
        } else {
            r.num_ = -num_;
            r.den_ = den_;
        }
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        Rational r;
        if (!a.big_ && !b.big_) {
            const Wide n = Wide(a.num_) * b.den_ + Wide(b.num_) * a.den_;
            const Wide d = Wide(a.den_) * b.den_;
            r.assign_wide(n, d);
        } else {
            r.assign_big(a.to_big() + b.to_big());
        }
        return r;
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        Rational r;
        if (a.is_zero() || b.is_zero()) return r;
        if (!a.big_ && !b.big_) {
            r.assign_wide(Wide(a.num_) * b.num_, Wide(a.den_) * b.den_);
        } else {
            r.assign_big(a.to_big() * b.to_big());
        }
        return r;
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw Error("division by zero");
        return a * b.inverse();
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    Rational inverse() const {
        if (is_zero()) throw Error("division by zero");
        Rational r;
        if (big_) {
            r.assign_big(BigRational(1) / *big_);
        } else {
            r.assign_wide(den_, num_);
        }
        return r;
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
        if (a.big_ && b.big_) return *a.big_ == *b.big_;
        return false; // canonical form: a value has exactly one representation
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            const Wide l = Wide(a.num_) * b.den_;
            const Wide r = Wide(b.num_) * a.den_;
            return l <=> r;
        }
        const auto l = a.to_big();
        const auto r = b.to_big();
        if (l < r) return std::strong_ordering::less;
        if (r < l) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

  private:
    __extension__ using Wide = __int128;
    __extension__ using UWide = unsigned __int128;
    static constexpr long long kLimit = std::numeric_limits<long long>::max();

    static UWide gcd(UWide a, UWide b) {
        while (b != 0) {
            const UWide t = a % b;
            a = b;
            b = t;
        }
        return a;
    }
    static UWide magnitude(Wide v) { return v < 0 ? UWide(0) - UWide(v) : UWide(v); }

    // n/d with d != 0, both within 127 bits.
    void assign_wide(Wide n, Wide d) {
        big_.reset();
        if (n == 0) {
            num_ = 0;
            den_ = 1;
            return;
        }
        const bool negative = (n < 0) != (d < 0);
        UWide un = magnitude(n);
        UWide ud = magnitude(d);
        const UWide g = gcd(un, ud);
        un /= g;
        ud /= g;
        if (un <= UWide(kLimit) && ud <= UWide(kLimit)) {
            num_ = negative ? -static_cast<long long>(un) : static_cast<long long>(un);
            den_ = static_cast<long long>(ud);
            return;
        }
        BigInt bn(un);
        if (negative) bn = -bn;
        assign_big(BigRational(bn, BigInt(ud)));
    }

    void assign_big(const BigRational& value) {
        const auto& n = boost::multiprecision::numerator(value);
        const auto& d = boost::multiprecision::denominator(value);
        if (boost::multiprecision::abs(n) <= kLimit && d <= kLimit) {
            big_.reset();
            num_ = n.convert_to<long long>();
            den_ = d.convert_to<long long>();
            return;
        }
        num_ = 0;
        den_ = 1;
        big_ = std::make_shared<const BigRational>(value);
    }

    long long num_ = 0;
    long long den_ = 1;
    std::shared_ptr<const BigRational> big_;
};

} // namespace qpot
