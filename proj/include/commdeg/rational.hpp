#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <ostream>
#include <string>

namespace commdeg {

/// Arbitrary-precision integer used for all solution counts.
using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_pow(const BigInt& base, unsigned exp) {
    return boost::multiprecision::pow(base, exp);
}

inline bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline long long smallest_prime_divisor(long long n) {
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return d;
    return n;
}

/// Exact rational number. Always kept in canonical reduced form with a
/// positive denominator, so equality and ordering are exact.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long long n) : v_(n) {}                     // NOLINT(google-explicit-constructor)
    Rational(const BigInt& n) : v_(n) {}                 // NOLINT(google-explicit-constructor)
    Rational(const BigInt& num, const BigInt& den) : v_(num, den) {}
    Rational(long long num, long long den) : v_(BigInt(num), BigInt(den)) {}

    BigInt num() const { return boost::multiprecision::numerator(v_); }
    BigInt den() const { return boost::multiprecision::denominator(v_); }

    Rational operator+(const Rational& o) const { return Rational(v_ + o.v_); }
    Rational operator-(const Rational& o) const { return Rational(v_ - o.v_); }
    Rational operator*(const Rational& o) const { return Rational(v_ * o.v_); }
    Rational operator/(const Rational& o) const { return Rational(v_ / o.v_); }
    Rational operator-() const { return Rational(-v_); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { v_ /= o.v_; return *this; }

    bool operator==(const Rational& o) const { return v_ == o.v_; }
    bool operator!=(const Rational& o) const { return v_ != o.v_; }
    bool operator<(const Rational& o) const { return v_ < o.v_; }
    bool operator<=(const Rational& o) const { return v_ <= o.v_; }
    bool operator>(const Rational& o) const { return v_ > o.v_; }
    bool operator>=(const Rational& o) const { return v_ >= o.v_; }

    Rational abs() const { return v_ < 0 ? Rational(-v_) : *this; }

    /// "n/d", or just "n" when the denominator is 1.
    std::string str() const {
        if (den() == 1) return num().str();
        return num().str() + "/" + den().str();
    }

    double to_double() const { return static_cast<double>(v_); }

    /// base^exp as an exact rational; exp may be negative.
    static Rational pow(const Rational& base, long long exp) {
        if (exp >= 0) {
            return Rational(big_pow(base.num(), static_cast<unsigned>(exp)),
                            big_pow(base.den(), static_cast<unsigned>(exp)));
        }
        return Rational(big_pow(base.den(), static_cast<unsigned>(-exp)),
                        big_pow(base.num(), static_cast<unsigned>(-exp)));
    }

private:
    explicit Rational(boost::multiprecision::cpp_rational v) : v_(std::move(v)) {}
    boost::multiprecision::cpp_rational v_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

/// Compares a rational x against c / sqrt(m^n) exactly (c >= 0, m >= 1).
/// Returns -1, 0, +1 as x <, =, > the right-hand side. Used by bounds whose
/// statement involves |G:Z|^{n/2} with odd n.
inline int compare_with_inv_sqrt_pow(const Rational& x, const Rational& c, const BigInt& m, unsigned n) {
    if (n % 2 == 0) {
        Rational rhs = c / Rational(big_pow(m, n / 2));
        if (x < rhs) return -1;
        if (x == rhs) return 1 - 1;
        return 1;
    }
    // rhs = c / m^{n/2} with m^{n/2} irrational unless m is a perfect square.
    if (c == Rational(0)) {
        if (x < Rational(0)) return -1;
        if (x == Rational(0)) return 0;
        return 1;
    }
    if (x <= Rational(0)) return -1;
    Rational lhs2 = x * x * Rational(big_pow(m, n));
    Rational rhs2 = c * c;
    if (lhs2 < rhs2) return -1;
    if (lhs2 == rhs2) return 0;
    return 1;
}

} // namespace commdeg
