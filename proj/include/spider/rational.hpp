#ifndef SPIDER_RATIONAL_HPP
#define SPIDER_RATIONAL_HPP

#include <gmpxx.h>

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace spider {

using BigInt = mpz_class;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator. Thin value wrapper over GMP's mpq_class that canonicalizes
/// on every entry point, so the invariant cannot be broken from outside.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}                       // NOLINT(google-explicit-constructor)
    Rational(int n) : q_(static_cast<long>(n)) {}     // NOLINT(google-explicit-constructor)
    Rational(const BigInt& n) : q_(n) {}              // NOLINT(google-explicit-constructor)
    Rational(long num, long den);
    Rational(const BigInt& num, const BigInt& den);

    /// Accepts "p/q", "p", and finite decimals such as "-0.125" or "3e-4".
    static Rational parse(const std::string& text);

    /// Exact value of an IEEE double (every finite double is rational).
    static Rational from_double_exact(double value);

    /// Best rational approximation of `value` with |value - p/q| <= abs_tol
    /// and q <= max_denominator, by continued-fraction convergents.
    /// Throws std::domain_error if no such approximation exists.
    static Rational approximate(double value, double abs_tol, unsigned long max_denominator = 1000000000000UL);

    const BigInt num() const { return q_.get_num(); }
    const BigInt den() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    int sign() const { return sgn(q_); }
    bool is_integer() const { return q_.get_den() == 1; }

    double to_double() const { return q_.get_d(); }

    /// "p/q", or just "p" for integers.
    std::string to_string() const;

    /// Decimal rendering with the given number of significant digits,
    /// round-half-up on the digit after the last kept one.
    std::string to_decimal_string(int significant_digits = 30) const;

    Rational operator-() const { Rational r; r.q_ = -q_; return r; }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    mpq_class q_;
};

Rational abs(const Rational& r);

/// r^e for integer e (e < 0 requires r != 0).
Rational pow(const Rational& r, long e);

BigInt factorial(unsigned long n);

}  // namespace spider

#endif
