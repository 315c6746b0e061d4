#ifndef SPIDER_SPIDER_CONFIG_HPP
#define SPIDER_SPIDER_CONFIG_HPP

#include "spider/rational.hpp"

#include <map>
#include <utility>
#include <vector>

namespace spider {

/// Star-graph configuration: R legs with positive excursion weights that sum
/// to one exactly.
class SpiderConfig {
public:
    SpiderConfig(std::vector<Rational> weights);

    int leg_count() const { return static_cast<int>(beta_.size()); }
    const Rational& beta(int leg) const;
    const std::vector<Rational>& weights() const { return beta_; }

private:
    std::vector<Rational> beta_;
};

/// Bessel-process parameter nu, restricted to (-1, 0) (dimension 2+2nu in
/// (0,2)).
class BesselOrder {
public:
    explicit BesselOrder(Rational nu);
    const Rational& nu() const { return nu_; }
    double nu_double() const { return nu_.to_double(); }
    /// 2 + 2 nu
    double dimension() const { return 2.0 + 2.0 * nu_double(); }

private:
    Rational nu_;
};

/// Assignment of strictly positive exponents to a subset of legs.
class MultiIndex {
public:
    MultiIndex() = default;
    /// Entries are (leg, exponent) pairs; legs must be distinct and
    /// nonnegative, exponents >= 1.
    explicit MultiIndex(const std::map<int, int>& entries);
    /// Exponents applied to legs 0..n-1 in order; zeros are skipped.
    static MultiIndex dense(const std::vector<int>& exponents);

    const std::vector<std::pair<int, int>>& entries() const { return entries_; }
    int leg_count() const { return static_cast<int>(entries_.size()); }
    /// Total order N = sum of exponents.
    int total_order() const;
    int exponent(int leg) const;  // 0 when the leg is absent
    bool empty() const { return entries_.empty(); }

    /// Throws if a referenced leg does not exist in the configuration.
    void validate_against(const SpiderConfig& config) const;

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.entries_ == b.entries_; }
    friend bool operator<(const MultiIndex& a, const MultiIndex& b) { return a.entries_ < b.entries_; }

    std::string to_string() const;

private:
    std::vector<std::pair<int, int>> entries_;  // sorted by leg
};

}  // namespace spider

#endif
