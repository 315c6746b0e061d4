#include "spider/d_factor.hpp"

#include "spider/combinatorics.hpp"
#include "spider/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace spider {

Rational d_factor_closed(const Rational& nu, const Rational& beta_i, int k) {
    if (k < 1) throw std::invalid_argument("d_factor_closed: k >= 1 required");
    // binom(nu+k-1, k) = prod_{j=0..k-1} (nu+j) / k!
    Rational prod(1);
    for (int j = 0; j < k; ++j) prod *= nu + Rational(j);
    return -(beta_i * prod / Rational(factorial(static_cast<unsigned long>(k))));
}

namespace {

// d-th lambda-derivative of phi_hat(., y) by central differences with two
// Richardson levels. Error orders: O(h^4) for d in {1,2}, O(h^2) for d = 3.
double phi_lambda_derivative(const BesselLaw& law, double y, double lambda, int d) {
    if (d == 0) return phi_normalized(law, lambda, y);
    const auto f = [&](double lam) { return phi_normalized(law, lam, y); };
    const auto stencil = [&](double h) {
        switch (d) {
            case 1:
                return (-f(lambda + 2 * h) + 8 * f(lambda + h) - 8 * f(lambda - h) + f(lambda - 2 * h)) /
                       (12 * h);
            case 2:
                return (-f(lambda + 2 * h) + 16 * f(lambda + h) - 30 * f(lambda) + 16 * f(lambda - h) -
                        f(lambda - 2 * h)) /
                       (12 * h * h);
            case 3:
                return (f(lambda + 2 * h) - 2 * f(lambda + h) + 2 * f(lambda - h) - f(lambda - 2 * h)) /
                       (2 * h * h * h);
            default:
                throw std::invalid_argument("phi_lambda_derivative: order out of range");
        }
    };
    const double p = (d == 3) ? 2.0 : 4.0;
    const double h = 1e-3 * lambda;
    const double a0 = stencil(h), a1 = stencil(h / 2), a2 = stencil(h / 4);
    const double w1 = std::pow(2.0, p);
    const double b0 = (w1 * a1 - a0) / (w1 - 1.0);
    const double b1 = (w1 * a2 - a1) / (w1 - 1.0);
    const double w2 = std::pow(2.0, p + 2.0);
    return (w2 * b1 - b0) / (w2 - 1.0);
}

}  // namespace

double d_factor_numeric(const BesselLaw& law, double beta_i, int k, double lambda) {
    if (k < 1 || k > 4)
        throw std::invalid_argument("d_factor_numeric: k must be in [1,4] (higher lambda-derivatives "
                                    "are numerically unstable)");
    if (!(lambda > 0)) throw std::invalid_argument("d_factor_numeric: lambda must be positive");
    if (!(beta_i > 0)) throw std::invalid_argument("d_factor_numeric: beta must be positive");

    const double c_hat = c_normalized(law, lambda);
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;  // (-1)^(k-1)
    const auto integrand = [&](double y) {
        const double g = phi_normalized(law, lambda, y) / c_hat;
        const double dphi = phi_lambda_derivative(law, y, lambda, k - 1);
        return g * sign * dphi * law.speed_density(y);
    };
    const double cutoff = exponential_tail_cutoff(2.0 * std::sqrt(2.0 * lambda));
    const auto quad = integrate(integrand, 0.0, cutoff, 1e-9);

    double lam_pow = 1.0;
    for (int j = 0; j < k; ++j) lam_pow *= lambda;
    return lam_pow / static_cast<double>(factorial(static_cast<unsigned long>(k - 1)).get_ui()) *
           beta_i * quad.value;
}

DFactorProvider DFactorProvider::closed_form(Rational nu, SpiderConfig config) {
    DFactorProvider p(Mode::Closed);
    p.nu_ = std::move(nu);
    p.config_ = std::move(config);
    return p;
}

DFactorProvider DFactorProvider::numeric(BesselLaw law, SpiderConfig config, double lambda) {
    if (!(lambda > 0)) throw std::invalid_argument("DFactorProvider::numeric: lambda must be positive");
    DFactorProvider p(Mode::Numeric);
    p.law_ = std::move(law);
    p.config_ = std::move(config);
    p.lambda_ = lambda;
    return p;
}

DFactorProvider DFactorProvider::user_table(double lambda, std::map<std::pair<int, int>, double> values) {
    if (!(lambda > 0)) throw std::invalid_argument("DFactorProvider::user_table: lambda must be positive");
    DFactorProvider p(Mode::Table);
    p.lambda_ = lambda;
    p.table_ = std::move(values);
    return p;
}

Rational DFactorProvider::exact(int leg, int k) const {
    if (mode_ != Mode::Closed)
        throw std::logic_error("DFactorProvider::exact: only the closed-form mode is exact");
    return d_factor_closed(*nu_, config_->beta(leg), k);
}

double DFactorProvider::value(int leg, int k, double lambda) const {
    switch (mode_) {
        case Mode::Closed:
            return exact(leg, k).to_double();
        case Mode::Numeric: {
            std::lock_guard<std::mutex> lock(cache_->mu);
            auto key = std::make_tuple(leg, k, lambda);
            auto it = cache_->values.find(key);
            if (it != cache_->values.end()) return it->second;
            const double v = d_factor_numeric(*law_, config_->beta(leg).to_double(), k, lambda);
            cache_->values[key] = v;
            return v;
        }
        case Mode::Table: {
            if (std::fabs(lambda - *lambda_) > 1e-12 * std::max(1.0, std::fabs(*lambda_)))
                throw std::invalid_argument("DFactorProvider: table was built for lambda=" +
                                            std::to_string(*lambda_) + ", requested lambda=" +
                                            std::to_string(lambda));
            auto it = table_.find({leg, k});
            if (it == table_.end())
                throw std::invalid_argument("DFactorProvider: table is missing the entry (leg=" +
                                            std::to_string(leg + 1) + ", k=" + std::to_string(k) +
                                            ", lambda=" + std::to_string(lambda) + ")");
            return it->second;
        }
    }
    throw std::logic_error("DFactorProvider: unreachable");
}

}  // namespace spider
