#include "spider/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <sstream>

namespace spider {

Rational::Rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::invalid_argument("Rational: division by zero");
    q_ /= o.q_;
    return *this;
}

Rational Rational::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        BigInt num, den;
        if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0)
            throw std::invalid_argument("Rational::parse: bad fraction '" + text + "'");
        return Rational(num, den);
    }

    // Decimal or integer, with optional exponent: [-]ddd[.ddd][e[-]dd]
    std::string mantissa = s;
    long exp10 = 0;
    auto epos = s.find_first_of("eE");
    if (epos != std::string::npos) {
        mantissa = s.substr(0, epos);
        try {
            exp10 = std::stol(s.substr(epos + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("Rational::parse: bad exponent in '" + text + "'");
        }
    }
    auto dot = mantissa.find('.');
    std::string digits = mantissa;
    if (dot != std::string::npos) {
        digits = mantissa.substr(0, dot) + mantissa.substr(dot + 1);
        exp10 -= static_cast<long>(mantissa.size() - dot - 1);
    }
    if (digits.empty() || digits == "-" || digits == "+")
        throw std::invalid_argument("Rational::parse: bad number '" + text + "'");
    BigInt num;
    if (num.set_str(digits, 10) != 0)
        throw std::invalid_argument("Rational::parse: bad number '" + text + "'");
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
    return exp10 >= 0 ? Rational(num * scale, BigInt(1)) : Rational(num, scale);
}

Rational Rational::from_double_exact(double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("Rational::from_double_exact: non-finite");
    Rational r;
    r.q_ = mpq_class(value);
    r.q_.canonicalize();
    return r;
}

Rational Rational::approximate(double value, double abs_tol, unsigned long max_denominator) {
    if (!std::isfinite(value)) throw std::invalid_argument("Rational::approximate: non-finite");
    if (abs_tol <= 0) throw std::invalid_argument("Rational::approximate: tolerance must be positive");
    const Rational target = from_double_exact(value);
    const Rational tol = from_double_exact(abs_tol);

    BigInt n = target.num(), d = target.den();
    const bool neg = n < 0;
    if (neg) n = -n;

    // Continued-fraction convergents h/k of |value|.
    BigInt hm1 = 1, hm2 = 0, km1 = 0, km2 = 1;
    BigInt a, r;
    while (true) {
        mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
        BigInt h = a * hm1 + hm2;
        BigInt k = a * km1 + km2;
        if (k > BigInt(max_denominator)) break;
        Rational conv(neg ? BigInt(-h) : h, k);
        if (abs(conv - target) <= tol) return conv;
        if (r == 0) break;  // exact but outside tol: cannot improve
        hm2 = hm1; hm1 = h; km2 = km1; km1 = k;
        n = d; d = r;
    }
    throw std::domain_error("Rational::approximate: no approximation within tolerance");
}

std::string Rational::to_string() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Rational::to_decimal_string(int significant_digits) const {
    if (significant_digits < 1) throw std::invalid_argument("to_decimal_string: need >= 1 digit");
    if (is_zero()) return "0";

    BigInt n = num(), d = den();
    std::string sign;
    if (n < 0) { sign = "-"; n = -n; }

    // Find the decimal exponent: number of digits before the point minus one.
    BigInt ipart = n / d;
    long point;  // position of the decimal point relative to digit string
    std::string digits;
    if (ipart > 0) {
        digits = ipart.get_str();
        point = static_cast<long>(digits.size());
        n -= ipart * d;
    } else {
        point = 0;
        while (true) {  // value < 1: shift up until a leading digit appears
            n *= 10;
            --point;
            BigInt dgt = n / d;
            if (dgt > 0) {
                digits = dgt.get_str();
                n -= dgt * d;
                ++point;  // k shifts put the digit at 10^-k; renderer wants -(k-1) zeros
                break;
            }
        }
    }

    while (static_cast<int>(digits.size()) < significant_digits + 1) {
        n *= 10;
        BigInt dgt = n / d;
        digits += dgt.get_str();
        n -= dgt * d;
    }
    // Round half-up at significant_digits using the extra digit.
    bool round_up = digits[significant_digits] >= '5';
    digits.resize(significant_digits);
    if (round_up) {
        int i = significant_digits - 1;
        while (i >= 0) {
            if (digits[i] != '9') { ++digits[i]; break; }
            digits[i] = '0';
            --i;
        }
        if (i < 0) { digits.insert(digits.begin(), '1'); ++point; }
    }
    // Strip trailing zeros (keep at least one digit).
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();

    std::ostringstream out;
    out << sign;
    if (point <= 0) {
        if (point < -5) {  // very small: scientific keeps it readable
            out << digits[0];
            if (digits.size() > 1) out << '.' << digits.substr(1);
            out << 'e' << (point - 1);
        } else {
            out << "0.";
            for (long i = 0; i < -point; ++i) out << '0';
            out << digits;
        }
    } else if (static_cast<size_t>(point) >= digits.size()) {
        out << digits;
        for (long i = 0; i < point - static_cast<long>(digits.size()); ++i) out << '0';
    } else {
        out << digits.substr(0, point) << '.' << digits.substr(point);
    }
    return out.str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational pow(const Rational& r, long e) {
    if (e == 0) return Rational(1);
    if (r.is_zero() && e < 0) throw std::invalid_argument("pow: 0 to negative power");
    BigInt n, d;
    unsigned long ue = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(n.get_mpz_t(), r.num().get_mpz_t(), ue);
    mpz_pow_ui(d.get_mpz_t(), r.den().get_mpz_t(), ue);
    return e > 0 ? Rational(n, d) : Rational(d, n);
}

BigInt factorial(unsigned long n) {
    BigInt f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

}  // namespace spider
