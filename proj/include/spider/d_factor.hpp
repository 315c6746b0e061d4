#ifndef SPIDER_D_FACTOR_HPP
#define SPIDER_D_FACTOR_HPP

#include "spider/bessel_law.hpp"
#include "spider/rational.hpp"
#include "spider/spider_config.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>

namespace spider {

/// Closed-form Bessel damping factor D_k^(i) = -beta_i * binom(nu+k-1, k),
/// exact and lambda-free. k >= 1.
Rational d_factor_closed(const Rational& nu, const Rational& beta_i, int k);

/// The same factor by numerical quadrature of its defining integral at a
/// given lambda:
///   D_k(lambda) = lambda^k/(k-1)! * beta_i *
///     int_0^inf phi_hat_lambda(y)/c_hat(lambda) *
///               (-1)^(k-1) d^(k-1)/dlambda^(k-1) phi_hat_lambda(y) * m'(y) dy,
/// with lambda-derivatives by central differences plus Richardson
/// extrapolation (step 1e-3*lambda). Guardrail: k <= 4.
double d_factor_numeric(const BesselLaw& law, double beta_i, int k, double lambda);

/// Supplies damping factors to the moment recursions. Three modes: exact
/// closed form (lambda-free), numeric quadrature, and a user table of
/// explicit values at one lambda.
class DFactorProvider {
public:
    static DFactorProvider closed_form(Rational nu, SpiderConfig config);
    static DFactorProvider numeric(BesselLaw law, SpiderConfig config, double lambda);
    /// values maps (leg, k) to D_k^(leg)(lambda).
    static DFactorProvider user_table(double lambda, std::map<std::pair<int, int>, double> values);

    bool is_exact() const { return mode_ == Mode::Closed; }

    /// Exact factor; closed-form mode only.
    Rational exact(int leg, int k) const;

    /// Factor as a double at the requested lambda. Table mode rejects a
    /// missing (leg, k) entry or a lambda other than the table's.
    double value(int leg, int k, double lambda) const;

    /// Lambda the provider was built for (numeric/table modes).
    std::optional<double> bound_lambda() const { return lambda_; }

private:
    enum class Mode { Closed, Numeric, Table };
    DFactorProvider(Mode m) : mode_(m) {}

    Mode mode_;
    std::optional<Rational> nu_;
    std::optional<SpiderConfig> config_;
    std::optional<BesselLaw> law_;
    std::optional<double> lambda_;
    std::map<std::pair<int, int>, double> table_;

    struct Cache {
        std::mutex mu;
        std::map<std::tuple<int, int, double>, double> values;
    };
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

}  // namespace spider

#endif
