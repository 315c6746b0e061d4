#include "spider/truncated_series.hpp"

#include <numeric>

namespace spider {

namespace {
int total_degree(const TruncatedSeries::Exponent& e) {
    return std::accumulate(e.begin(), e.end(), 0);
}
}  // namespace

TruncatedSeries::TruncatedSeries(int variables, int max_total_degree)
    : nvars_(variables), max_deg_(max_total_degree) {
    if (variables < 1) throw std::invalid_argument("TruncatedSeries: need >= 1 variable");
    if (max_total_degree < 0) throw std::invalid_argument("TruncatedSeries: negative degree bound");
}

TruncatedSeries TruncatedSeries::constant(int variables, int max_total_degree, const NuPolynomial& value) {
    TruncatedSeries s(variables, max_total_degree);
    if (!value.is_zero()) s.terms_[Exponent(variables, 0)] = value;
    return s;
}

void TruncatedSeries::check_compatible(const TruncatedSeries& o) const {
    if (nvars_ != o.nvars_ || max_deg_ != o.max_deg_)
        throw std::invalid_argument("TruncatedSeries: mismatched variable count or degree bound");
}

void TruncatedSeries::check_exponent(const Exponent& e) const {
    if (static_cast<int>(e.size()) != nvars_)
        throw std::invalid_argument("TruncatedSeries: exponent arity mismatch");
    for (int x : e)
        if (x < 0) throw std::invalid_argument("TruncatedSeries: negative exponent");
    if (total_degree(e) > max_deg_)
        throw std::invalid_argument("TruncatedSeries: exponent beyond degree bound");
}

NuPolynomial TruncatedSeries::coeff(const Exponent& e) const {
    check_exponent(e);
    auto it = terms_.find(e);
    return it == terms_.end() ? NuPolynomial() : it->second;
}

void TruncatedSeries::set_coeff(const Exponent& e, NuPolynomial value) {
    check_exponent(e);
    if (value.is_zero())
        terms_.erase(e);
    else
        terms_[e] = std::move(value);
}

TruncatedSeries TruncatedSeries::operator-() const {
    TruncatedSeries r(*this);
    for (auto& [e, p] : r.terms_) p = -p;
    return r;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
    check_compatible(o);
    for (const auto& [e, p] : o.terms_) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_[e] = p;
        } else {
            it->second += p;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) { return *this += (-o); }

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.check_compatible(b);
    TruncatedSeries r(a.nvars_, a.max_deg_);
    TruncatedSeries::Exponent e(a.nvars_);
    for (const auto& [ea, pa] : a.terms_) {
        const int da = total_degree(ea);
        for (const auto& [eb, pb] : b.terms_) {
            if (da + total_degree(eb) > a.max_deg_) continue;
            for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
            NuPolynomial prod = pa * pb;
            auto it = r.terms_.find(e);
            if (it == r.terms_.end()) {
                if (!prod.is_zero()) r.terms_[e] = std::move(prod);
            } else {
                it->second += prod;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
    }
    return r;
}

TruncatedSeries TruncatedSeries::scaled(const NuPolynomial& s) const {
    TruncatedSeries r(nvars_, max_deg_);
    if (s.is_zero()) return r;
    for (const auto& [e, p] : terms_) {
        NuPolynomial q = p * s;
        if (!q.is_zero()) r.terms_[e] = std::move(q);
    }
    return r;
}

TruncatedSeries TruncatedSeries::scaled(const Rational& s) const {
    return scaled(NuPolynomial::constant(s));
}

TruncatedSeries TruncatedSeries::reciprocal() const {
    const Exponent zero(nvars_, 0);
    auto it = terms_.find(zero);
    if (it == terms_.end() || it->second.coeff(0).is_zero())
        throw NonUnitError("TruncatedSeries::reciprocal: constant term has zero constant coefficient");
    if (!it->second.is_constant())
        throw NonUnitError(
            "TruncatedSeries::reciprocal: constant term is not a unit (degree > 0 in nu; "
            "its inverse is not polynomial)");
    const Rational c0 = it->second.coeff(0);

    // S = c0 (1 + U) with U of positive valuation; 1/S = (1/c0) sum (-U)^k.
    TruncatedSeries u(*this);
    u.terms_.erase(zero);
    u = u.scaled(Rational(1) / c0);

    TruncatedSeries acc = constant(nvars_, max_deg_, NuPolynomial::constant(Rational(1)));
    TruncatedSeries power = acc;
    for (int k = 1; k <= max_deg_; ++k) {
        power = power * u;
        if (power.terms_.empty()) break;
        if (k % 2 == 1)
            acc -= power;
        else
            acc += power;
    }
    return acc.scaled(Rational(1) / c0);
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.nvars_ == b.nvars_ && a.max_deg_ == b.max_deg_ && a.terms_ == b.terms_;
}

TruncatedSeries series_binomial(int variables, int order, const Rational& a, const Rational& b,
                                int variable_index, const Rational& lambda) {
    if (order < 1) throw std::invalid_argument("series_binomial: order >= 1 required");
    if (lambda <= Rational(0)) throw std::invalid_argument("series_binomial: lambda must be positive");
    if (variable_index < 0 || variable_index >= variables)
        throw std::invalid_argument("series_binomial: variable index out of range");

    TruncatedSeries s(variables, order);
    const NuPolynomial exponent = NuPolynomial::linear(a, b);

    // binom(a nu + b, k) = prod_{i=0..k-1} (a nu + b - i) / k!
    NuPolynomial rising = NuPolynomial::constant(Rational(1));
    Rational lam_pow(1);
    s.set_coeff(TruncatedSeries::Exponent(variables, 0), rising);
    for (int k = 1; k <= order; ++k) {
        rising = rising * (exponent - NuPolynomial::constant(Rational(k - 1)));
        lam_pow *= lambda;
        TruncatedSeries::Exponent e(variables, 0);
        e[variable_index] = k;
        s.set_coeff(e, rising.scaled(Rational(1) / (Rational(factorial(k)) * lam_pow)));
    }
    return s;
}

}  // namespace spider
