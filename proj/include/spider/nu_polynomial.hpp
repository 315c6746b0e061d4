#ifndef SPIDER_NU_POLYNOMIAL_HPP
#define SPIDER_NU_POLYNOMIAL_HPP

#include "spider/rational.hpp"

#include <string>
#include <vector>

namespace spider {

/// Exact polynomial in the single variable nu over the rationals.
/// Canonical form: no trailing zero coefficient; the zero polynomial is the
/// empty coefficient vector.
class NuPolynomial {
public:
    NuPolynomial() = default;
    explicit NuPolynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static NuPolynomial constant(const Rational& value);
    /// coefficient * nu^power
    static NuPolynomial monomial(const Rational& coefficient, unsigned power);
    /// a*nu + b
    static NuPolynomial linear(const Rational& a, const Rational& b);

    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    /// Coefficient of nu^k (zero when k exceeds the degree).
    const Rational coeff(unsigned k) const { return k < c_.size() ? c_[k] : Rational(0); }
    /// True iff degree <= 0.
    bool is_constant() const { return c_.size() <= 1; }

    Rational evaluate(const Rational& nu) const;

    NuPolynomial operator-() const;
    NuPolynomial& operator+=(const NuPolynomial& o);
    NuPolynomial& operator-=(const NuPolynomial& o);
    friend NuPolynomial operator+(NuPolynomial a, const NuPolynomial& b) { return a += b; }
    friend NuPolynomial operator-(NuPolynomial a, const NuPolynomial& b) { return a -= b; }
    friend NuPolynomial operator*(const NuPolynomial& a, const NuPolynomial& b);

    NuPolynomial scaled(const Rational& s) const;

    friend bool operator==(const NuPolynomial& a, const NuPolynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const NuPolynomial& a, const NuPolynomial& b) { return !(a == b); }

    std::string to_string() const;

private:
    void trim();
    std::vector<Rational> c_;
};

}  // namespace spider

#endif
