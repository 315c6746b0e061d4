#include "spider/nu_polynomial.hpp"

#include <sstream>

namespace spider {

void NuPolynomial::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

NuPolynomial NuPolynomial::constant(const Rational& value) {
    if (value.is_zero()) return NuPolynomial();
    return NuPolynomial({value});
}

NuPolynomial NuPolynomial::monomial(const Rational& coefficient, unsigned power) {
    if (coefficient.is_zero()) return NuPolynomial();
    std::vector<Rational> c(power + 1, Rational(0));
    c[power] = coefficient;
    return NuPolynomial(std::move(c));
}

NuPolynomial NuPolynomial::linear(const Rational& a, const Rational& b) {
    return NuPolynomial({b, a});
}

Rational NuPolynomial::evaluate(const Rational& nu) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * nu + *it;
    return acc;
}

NuPolynomial NuPolynomial::operator-() const {
    NuPolynomial r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
}

NuPolynomial& NuPolynomial::operator+=(const NuPolynomial& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

NuPolynomial& NuPolynomial::operator-=(const NuPolynomial& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

NuPolynomial operator*(const NuPolynomial& a, const NuPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return NuPolynomial();
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return NuPolynomial(std::move(c));
}

NuPolynomial NuPolynomial::scaled(const Rational& s) const {
    if (s.is_zero()) return NuPolynomial();
    NuPolynomial r(*this);
    for (auto& x : r.c_) x *= s;
    return r;
}

std::string NuPolynomial::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        if (!first) os << " + ";
        os << "(" << c_[i].to_string() << ")";
        if (i == 1) os << "*nu";
        if (i > 1) os << "*nu^" << i;
        first = false;
    }
    return os.str();
}

}  // namespace spider
