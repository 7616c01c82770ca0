#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "bicross/errors.hpp"

namespace bicross {

// Reduced fraction over 64-bit integers. Every operation is overflow-checked;
// structure constants here are tiny, so an overflow means a bug, not a limit.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_(n) {}  // NOLINT(implicit)
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const { return Rational(neg(num_), den_, raw_tag{}); }

    Rational& operator+=(const Rational& o) {
        if (den_ == 1 && o.den_ == 1) {
            num_ = add(num_, o.num_);
            return *this;
        }
        std::int64_t g = std::gcd(den_, o.den_);
        std::int64_t a = mul(num_, o.den_ / g);
        std::int64_t b = mul(o.num_, den_ / g);
        num_ = add(a, b);
        den_ = mul(den_, o.den_ / g);
        normalize();
        return *this;
    }
    Rational& operator-=(const Rational& o) { return *this += -o; }
    Rational& operator*=(const Rational& o) {
        if (den_ == 1 && o.den_ == 1) {
            num_ = mul(num_, o.num_);
            return *this;
        }
        std::int64_t g1 = std::gcd(num_ < 0 ? -num_ : num_, o.den_);
        std::int64_t g2 = std::gcd(o.num_ < 0 ? -o.num_ : o.num_, den_);
        if (g1 == 0) g1 = 1;
        if (g2 == 0) g2 = 1;
        num_ = mul(num_ / g1, o.num_ / g2);
        den_ = mul(den_ / g2, o.den_ / g1);
        normalize();
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.num_ == 0) throw std::domain_error("rational division by zero");
        return *this *= Rational(o.den_, o.num_);
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    }

    // "num/den", always with an explicit denominator.
    std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }
    // Accepts "n", "n/d", with optional sign.
    static Rational parse(const std::string& s);

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        os << r.num_;
        if (r.den_ != 1) os << '/' << r.den_;
        return os;
    }

private:
    struct raw_tag {};
    Rational(std::int64_t n, std::int64_t d, raw_tag) : num_(n), den_(d) {}

    static std::int64_t add(std::int64_t a, std::int64_t b) {
        std::int64_t r;
        if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("rational overflow");
        return r;
    }
    static std::int64_t mul(std::int64_t a, std::int64_t b) {
        std::int64_t r;
        if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("rational overflow");
        return r;
    }
    static std::int64_t neg(std::int64_t a) {
        if (a == INT64_MIN) throw ArithmeticOverflow("rational overflow");
        return -a;
    }
    void normalize() {
        if (den_ == 0) throw std::domain_error("zero denominator");
        if (den_ < 0) {
            num_ = neg(num_);
            den_ = neg(den_);
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(s));
        return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::logic_error&) {
        throw SpecError("bad rational literal: " + s);
    }
}

}  // namespace bicross
