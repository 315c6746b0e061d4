#include "spider/mgf.hpp"

#include "spider/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace spider {

MgfQuery::MgfQuery(double lambda_, std::vector<std::pair<int, double>> legs_z_)
    : lambda(lambda_), legs_z(std::move(legs_z_)) {
    if (!(lambda > 0)) throw std::invalid_argument("MgfQuery: lambda must be positive");
    std::set<int> seen;
    for (const auto& [leg, z] : legs_z) {
        if (leg < 0) throw std::invalid_argument("MgfQuery: negative leg index");
        if (z < 0) throw std::invalid_argument("MgfQuery: z arguments must be nonnegative");
        if (!seen.insert(leg).second) throw std::invalid_argument("MgfQuery: duplicate leg");
    }
}

void MgfQuery::validate_against(const SpiderConfig& config) const {
    for (const auto& [leg, z] : legs_z)
        if (leg >= config.leg_count())
            throw std::invalid_argument("MgfQuery: leg " + std::to_string(leg) +
                                        " not present in the configuration");
}

double mgf_bessel_closed(const Rational& nu, const SpiderConfig& config, const MgfQuery& query) {
    query.validate_against(config);
    const double v = nu.to_double();
    const double lambda = query.lambda;

    double beta_sum = 0.0;
    double num = 0.0, den = 0.0;
    for (const auto& [leg, z] : query.legs_z) {
        const double beta = config.beta(leg).to_double();
        const double rho = std::pow((lambda + z) / lambda, -v);
        beta_sum += beta;
        num += beta * (lambda / (lambda + z)) * rho;
        den += beta * rho;
    }
    return (1.0 - beta_sum + num) / (1.0 - beta_sum + den);
}

double mgf_general_quadrature(const BesselLaw& law, const SpiderConfig& config, const MgfQuery& query) {
    query.validate_against(config);
    const double lambda = query.lambda;
    const double c_hat = c_normalized(law, lambda);

    double num = 1.0, den = 1.0;
    for (const auto& [leg, z] : query.legs_z) {
        if (z == 0.0) continue;  // the z_j factor kills both contributions
        const double beta = config.beta(leg).to_double();
        const double cutoff =
            exponential_tail_cutoff(std::sqrt(2.0 * lambda) + std::sqrt(2.0 * (lambda + z)));

        const auto survive = integrate(
            [&](double y) {
                return phi_normalized(law, lambda, y) * (1.0 - phi_normalized(law, lambda + z, y)) *
                       law.speed_density(y);
            },
            0.0, exponential_tail_cutoff(std::sqrt(2.0 * lambda)), 1e-9);
        const auto hit = integrate(
            [&](double y) {
                return phi_normalized(law, lambda, y) * phi_normalized(law, lambda + z, y) *
                       law.speed_density(y);
            },
            0.0, cutoff, 1e-9);

        num -= lambda * z / (lambda + z) * beta * survive.value / c_hat;
        den += z * beta * hit.value / c_hat;
    }
    return num / den;
}

std::map<MultiIndex, Rational> mgf_series_moments(const Rational& nu, const SpiderConfig& config,
                                                  int max_total_order, const std::vector<int>& legs,
                                                  const SeriesMomentsOptions& options) {
    if (max_total_order < 1 || max_total_order > 10)
        throw std::invalid_argument("mgf_series_moments: max_total_order must lie in [1, 10]");
    if (legs.empty()) throw std::invalid_argument("mgf_series_moments: need at least one leg");
    std::set<int> seen;
    Rational beta_outside(1);
    for (int leg : legs) {
        if (leg < 0 || leg >= config.leg_count())
            throw std::invalid_argument("mgf_series_moments: leg index out of range");
        if (!seen.insert(leg).second) throw std::invalid_argument("mgf_series_moments: duplicate leg");
        beta_outside -= config.beta(leg);
    }

    const int r = static_cast<int>(legs.size());
    const Rational lambda(1);  // moments are lambda-free; 1 keeps arithmetic small
    const Rational& a = options.ratio_exponent_slope;

    // Numerator sum_j beta_j (1+z_j)^(a nu - 1), denominator
    // sum_j beta_j (1+z_j)^(a nu), both offset by the weight outside `legs`.
    TruncatedSeries num = TruncatedSeries::constant(r, max_total_order,
                                                    NuPolynomial::constant(beta_outside));
    TruncatedSeries den = num;
    for (int j = 0; j < r; ++j) {
        const Rational& beta = config.beta(legs[static_cast<size_t>(j)]);
        num += series_binomial(r, max_total_order, a, Rational(-1), j, lambda).scaled(beta);
        den += series_binomial(r, max_total_order, a, Rational(0), j, lambda).scaled(beta);
    }
    const TruncatedSeries mgf = num * den.reciprocal();

    // coeff(z^n) = (-1)^N (N!/prod n_j!) E[prod A_1^(n_j)] at lambda = 1.
    std::map<MultiIndex, Rational> result;
    for (const auto& [e, poly] : mgf.terms()) {
        int total = 0;
        for (int x : e) total += x;
        if (total == 0) continue;

        Rational scale(factorial(static_cast<unsigned long>(total)));
        std::map<int, int> entries;
        for (int j = 0; j < r; ++j) {
            if (e[static_cast<size_t>(j)] == 0) continue;
            entries[legs[static_cast<size_t>(j)]] = e[static_cast<size_t>(j)];
            scale /= Rational(factorial(static_cast<unsigned long>(e[static_cast<size_t>(j)])));
        }
        const Rational sign = (total % 2 == 0) ? Rational(1) : Rational(-1);
        result[MultiIndex(entries)] = sign * poly.evaluate(nu) / scale;
    }
    return result;
}

}  // namespace spider
