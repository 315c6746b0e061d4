#ifndef SPIDER_TRUNCATED_SERIES_HPP
#define SPIDER_TRUNCATED_SERIES_HPP

#include "spider/nu_polynomial.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace spider {

/// Raised by TruncatedSeries::reciprocal when the constant term is not a
/// unit of the coefficient ring (must be a nonzero rational constant).
class NonUnitError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Truncated multivariate power series in z_1..z_r with NuPolynomial
/// coefficients, truncated at a fixed total degree. Entries never exceed the
/// bound; absent entries are zero.
class TruncatedSeries {
public:
    using Exponent = std::vector<int>;  // length = variable count

    TruncatedSeries(int variables, int max_total_degree);

    static TruncatedSeries constant(int variables, int max_total_degree, const NuPolynomial& value);

    int variables() const { return nvars_; }
    int max_total_degree() const { return max_deg_; }

    /// Coefficient of z^e (zero polynomial if absent).
    NuPolynomial coeff(const Exponent& e) const;
    void set_coeff(const Exponent& e, NuPolynomial value);

    const std::map<Exponent, NuPolynomial>& terms() const { return terms_; }

    TruncatedSeries operator-() const;
    TruncatedSeries& operator+=(const TruncatedSeries& o);
    TruncatedSeries& operator-=(const TruncatedSeries& o);
    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

    TruncatedSeries scaled(const NuPolynomial& s) const;
    TruncatedSeries scaled(const Rational& s) const;

    /// Multiplicative inverse up to the truncation order. The constant term
    /// must be a nonzero rational constant (a unit of Q[nu][[z]]).
    TruncatedSeries reciprocal() const;

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

private:
    void check_compatible(const TruncatedSeries& o) const;
    void check_exponent(const Exponent& e) const;

    int nvars_;
    int max_deg_;
    std::map<Exponent, NuPolynomial> terms_;
};

/// Truncation of (1 + z_j/lambda)^(a*nu + b): the coefficient of z_j^k is
/// binom(a*nu+b, k) / lambda^k, a polynomial in nu of degree <= k. Requires
/// lambda > 0 and order >= 1; the result lives in `variables` variables with
/// total-degree bound `order`.
TruncatedSeries series_binomial(int variables, int order, const Rational& a, const Rational& b,
                                int variable_index, const Rational& lambda);

}  // namespace spider

#endif
