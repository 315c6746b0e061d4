#include "spider/moments.hpp"

#include "spider/combinatorics.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace spider {

namespace {

Rational gamma_ratio(int k, int n) {
    // Gamma(k)/Gamma(n) = (k-1)!/(n-1)! for integer arguments
    return Rational(factorial(static_cast<unsigned long>(k - 1)),
                    factorial(static_cast<unsigned long>(n - 1)));
}

}  // namespace

Rational single_moment_closed(const Rational& nu, const Rational& beta_i, int n) {
    if (n < 1) throw std::invalid_argument("single_moment_closed: n >= 1 required");
    Rational total(0);
    Rational nu_pow(1);  // nu^(l-1)
    for (int l = 1; l <= n; ++l) {
        const BigInt s1 = stirling1(n, l);
        Rational beta_pow(1);
        Rational inner(0);
        Rational sign(1);
        for (int k = 1; k <= l; ++k) {
            beta_pow *= beta_i;
            inner += sign * gamma_ratio(k, n) * Rational(stirling2(l, k)) * beta_pow;
            sign = -sign;
        }
        total += Rational(s1) * nu_pow * inner;
        nu_pow *= nu;
    }
    return total;
}

Rational joint_moment_closed(const Rational& nu, const SpiderConfig& config, const MultiIndex& idx) {
    idx.validate_against(config);
    if (idx.empty()) throw std::invalid_argument("joint_moment_closed: index must touch >= 1 leg");
    if (idx.leg_count() == 1) {
        const auto& [leg, n] = idx.entries().front();
        return single_moment_closed(nu, config.beta(leg), n);
    }

    const int N = idx.total_order();
    // Convolve per-leg weights s1(n_j,l_j) S2(l_j,k_j) beta_j^(k_j) over the
    // running totals (K, L).
    std::map<std::pair<int, int>, Rational> acc{{{0, 0}, Rational(1)}};
    for (const auto& [leg, n] : idx.entries()) {
        const Rational& beta = config.beta(leg);
        std::map<std::pair<int, int>, Rational> next;
        for (int l = 1; l <= n; ++l) {
            const Rational s1(stirling1(n, l));
            Rational beta_pow(1);
            for (int k = 1; k <= l; ++k) {
                beta_pow *= beta;
                const Rational w = s1 * Rational(stirling2(l, k)) * beta_pow;
                if (w.is_zero()) continue;
                for (const auto& [kl, v] : acc) next[{kl.first + k, kl.second + l}] += v * w;
            }
        }
        acc = std::move(next);
    }

    Rational total(0);
    for (const auto& [kl, v] : acc) {
        const auto [K, L] = kl;
        const Rational sign = (K % 2 == 1) ? Rational(1) : Rational(-1);  // (-1)^(K-1)
        total += sign * gamma_ratio(K, N) * pow(nu, L - 1) * v;
    }
    return total;
}

Rational brownian_joint_moment(const SpiderConfig& config, const MultiIndex& idx) {
    idx.validate_against(config);
    if (idx.empty()) throw std::invalid_argument("brownian_joint_moment: index must touch >= 1 leg");

    const int N = idx.total_order();
    std::map<int, Rational> acc{{0, Rational(1)}};
    for (const auto& [leg, n] : idx.entries()) {
        const Rational& beta = config.beta(leg);
        std::map<int, Rational> next;
        Rational beta_pow(1);
        for (int k = 1; k <= n; ++k) {
            beta_pow *= beta;
            // Gamma(2n-k) / (Gamma(k) Gamma(n-k+1))
            const Rational w = Rational(factorial(static_cast<unsigned long>(2 * n - k - 1)),
                                        factorial(static_cast<unsigned long>(k - 1)) *
                                            factorial(static_cast<unsigned long>(n - k))) *
                               beta_pow;
            for (const auto& [K, v] : acc) next[K + k] += v * w;
        }
        acc = std::move(next);
    }

    Rational total(0);
    for (const auto& [K, v] : acc) {
        BigInt two_pow;
        mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(2 * N - K - 1));
        total += Rational(BigInt(1), two_pow) * gamma_ratio(K, N) * v;
    }
    return total;
}

namespace {

// One leg's share of a reduced multi-index: exponent, weight and original
// leg id (the damping factors of a closed-form provider depend on the leg
// only through the weight, so the memo may ignore the id).
struct Item {
    int exponent;
    Rational beta;
    int leg;
};

using MultisetKey = std::vector<std::pair<int, Rational>>;

MultisetKey key_of(const std::vector<Item>& items) {
    MultisetKey key;
    key.reserve(items.size());
    for (const auto& it : items) key.emplace_back(it.exponent, it.beta);
    std::sort(key.begin(), key.end());
    return key;
}

class SelfSimilarRecursion {
public:
    explicit SelfSimilarRecursion(const DFactorProvider& provider) : provider_(provider) {
        if (!provider.is_exact())
            throw std::invalid_argument(
                "joint_moment_recursive: requires the exact closed-form provider");
    }

    Rational moment(const std::vector<Item>& items) {
        if (items.empty()) return Rational(1);
        if (items.size() == 1) return single_leg(items[0].exponent, items[0]);

        MultisetKey key = key_of(items);
        auto hit = memo_.find(key);
        if (hit != memo_.end()) return hit->second;

        int total = 0;
        for (const auto& it : items) total += it.exponent;

        Rational sum(0);
        for (size_t i = 0; i < items.size(); ++i) {
            for (int k = 1; k <= items[i].exponent; ++k) {
                const Rational coeff(binomial(items[i].exponent, k), binomial(total, k));
                std::vector<Item> sub = items;
                sub[i].exponent -= k;
                if (sub[i].exponent == 0) sub.erase(sub.begin() + static_cast<long>(i));
                sum += coeff * provider_.exact(items[i].leg, k) * moment(sub);
            }
        }
        memo_.emplace(std::move(key), sum);
        return sum;
    }

private:
    // E[(A_1^(i))^n] = beta - sum_{k=1..n} D_k (1 - E[(A_1^(i))^(n-k)]),
    // anchored by E[(A)^0] = 1 and the external base E[A] = beta.
    Rational single_leg(int n, const Item& item) {
        if (n == 0) return Rational(1);
        if (n == 1) return item.beta;
        auto hit = single_memo_.find({n, item.beta});
        if (hit != single_memo_.end()) return hit->second;
        Rational m = item.beta;
        for (int k = 1; k <= n; ++k) {
            const Rational lower = single_leg(n - k, item);
            m -= provider_.exact(item.leg, k) * (Rational(1) - lower);
        }
        single_memo_[{n, item.beta}] = m;
        return m;
    }

    const DFactorProvider& provider_;
    std::map<MultisetKey, Rational> memo_;
    std::map<std::pair<int, Rational>, Rational> single_memo_;
};

std::vector<Item> items_from(const SpiderConfig& config, const MultiIndex& idx) {
    std::vector<Item> items;
    items.reserve(idx.entries().size());
    for (const auto& [leg, exp] : idx.entries()) items.push_back({exp, config.beta(leg), leg});
    return items;
}

}  // namespace

Rational joint_moment_recursive(const DFactorProvider& provider, const SpiderConfig& config,
                                const MultiIndex& idx) {
    idx.validate_against(config);
    SelfSimilarRecursion rec(provider);
    return rec.moment(items_from(config, idx));
}

namespace {

// Fixed-lambda transform recursion over a scalar field (exact rationals or
// doubles). D(leg, k) supplies the damping factors, Beta(leg) the external
// first-order base E[A^(i)] content, both in that field.
template <typename Scalar, typename DFn, typename BetaFn>
class LaplaceRecursion {
public:
    LaplaceRecursion(const Scalar& lambda, DFn d, BetaFn beta, bool paper_literal)
        : lambda_(lambda), d_(std::move(d)), beta_(std::move(beta)), paper_literal_(paper_literal) {}

    Scalar transform(std::vector<std::pair<int, int>> entries /* (leg, exponent), sorted */) {
        if (entries.empty()) return Scalar(1) / lambda_;  // L of the constant 1
        if (entries.size() == 1) return single_leg(entries[0].first, entries[0].second);

        auto hit = memo_.find(entries);
        if (hit != memo_.end()) return hit->second;

        Scalar sum(0);
        for (size_t i = 0; i < entries.size(); ++i) {
            const auto [leg, n] = entries[i];
            Scalar nfall(1);    // n!/(n-k)!
            Scalar lam_pow(1);  // lambda^k
            for (int k = 1; k <= n; ++k) {
                nfall *= Scalar(n - k + 1);
                lam_pow *= lambda_;
                auto sub = entries;
                sub[i].second -= k;
                if (sub[i].second == 0) sub.erase(sub.begin() + static_cast<long>(i));
                sum += nfall / lam_pow * d_(leg, k) * transform(std::move(sub));
            }
        }
        memo_.emplace(std::move(entries), sum);
        return sum;
    }

private:
    Scalar single_leg(int leg, int n) {
        if (n == 0) return Scalar(1) / lambda_;
        if (n == 1) return base_first(leg);
        if (paper_literal_)
            throw PaperLiteralRefusal(
                "paper-literal mode: the single-leg transform recursion is refused because its "
                "final damping-factor sum does not identify a leg in the literal reading; rerun "
                "without --paper-literal to use the corrected reading (factors of the active leg)");
        auto hit = single_memo_.find({leg, n});
        if (hit != single_memo_.end()) return hit->second;

        Scalar sum(0);
        Scalar nfall(1), lam_pow(1);
        Scalar d_total(0);
        for (int k = 1; k <= n; ++k) {
            nfall *= Scalar(n - k + 1);
            lam_pow *= lambda_;
            const Scalar dk = d_(leg, k);
            sum += nfall / lam_pow * dk * single_leg(leg, n - k);
            d_total += dk;
        }
        Scalar nfact(1);
        for (int j = 2; j <= n; ++j) nfact *= Scalar(j);
        Scalar lam_nm1(1);
        for (int j = 0; j < n - 1; ++j) lam_nm1 *= lambda_;
        sum += nfact / lam_nm1 * base_first(leg);
        sum -= nfact / (lam_nm1 * lambda_ * lambda_) * d_total;

        single_memo_[{leg, n}] = sum;
        return sum;
    }

    // External base: L{E[A_t^(i)]}(lambda) = beta_i / lambda^2.
    Scalar base_first(int leg) { return beta_(leg) / (lambda_ * lambda_); }

    const Scalar lambda_;
    DFn d_;
    BetaFn beta_;
    bool paper_literal_;
    std::map<std::vector<std::pair<int, int>>, Scalar> memo_;
    std::map<std::pair<int, int>, Scalar> single_memo_;
};

}  // namespace

Rational laplace_joint_moment_exact(const DFactorProvider& provider, const SpiderConfig& config,
                                    const MultiIndex& idx, const Rational& lambda,
                                    bool paper_literal) {
    if (lambda <= Rational(0))
        throw std::invalid_argument("laplace_joint_moment_exact: lambda must be positive");
    if (!provider.is_exact())
        throw std::invalid_argument("laplace_joint_moment_exact: requires the closed-form provider");
    idx.validate_against(config);

    auto d = [&](int leg, int k) { return provider.exact(leg, k); };
    auto beta = [&](int leg) { return config.beta(leg); };
    LaplaceRecursion<Rational, decltype(d), decltype(beta)> engine(lambda, d, beta, paper_literal);
    return engine.transform(idx.entries());
}

double laplace_joint_moment(const DFactorProvider& provider, const SpiderConfig& config,
                            const MultiIndex& idx, double lambda, bool paper_literal) {
    if (!(lambda > 0)) throw std::invalid_argument("laplace_joint_moment: lambda must be positive");
    idx.validate_against(config);

    auto d = [&](int leg, int k) { return provider.value(leg, k, lambda); };
    auto beta = [&](int leg) { return config.beta(leg).to_double(); };
    LaplaceRecursion<double, decltype(d), decltype(beta)> engine(lambda, d, beta, paper_literal);
    return engine.transform(idx.entries());
}

}  // namespace spider
