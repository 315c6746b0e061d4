#include "spider/spider_config.hpp"

#include <sstream>
#include <stdexcept>

namespace spider {

SpiderConfig::SpiderConfig(std::vector<Rational> weights) : beta_(std::move(weights)) {
    if (beta_.empty()) throw std::invalid_argument("SpiderConfig: need at least one leg");
    Rational sum(0);
    for (const auto& b : beta_) {
        if (b <= Rational(0)) throw std::invalid_argument("SpiderConfig: weights must be positive");
        sum += b;
    }
    if (sum != Rational(1))
        throw std::invalid_argument("SpiderConfig: weights must sum to 1 exactly (got " + sum.to_string() + ")");
}

const Rational& SpiderConfig::beta(int leg) const {
    if (leg < 0 || leg >= leg_count()) throw std::out_of_range("SpiderConfig: leg index out of range");
    return beta_[static_cast<size_t>(leg)];
}

BesselOrder::BesselOrder(Rational nu) : nu_(std::move(nu)) {
    if (nu_ <= Rational(-1) || nu_ >= Rational(0))
        throw std::invalid_argument("BesselOrder: nu must lie in (-1, 0), got " + nu_.to_string());
}

MultiIndex::MultiIndex(const std::map<int, int>& entries) {
    entries_.reserve(entries.size());
    for (const auto& [leg, exp] : entries) {
        if (leg < 0) throw std::invalid_argument("MultiIndex: negative leg index");
        if (exp < 1) throw std::invalid_argument("MultiIndex: exponents must be >= 1");
        entries_.emplace_back(leg, exp);
    }
}

MultiIndex MultiIndex::dense(const std::vector<int>& exponents) {
    MultiIndex idx;
    for (size_t i = 0; i < exponents.size(); ++i) {
        if (exponents[i] < 0) throw std::invalid_argument("MultiIndex: negative exponent");
        if (exponents[i] > 0) idx.entries_.emplace_back(static_cast<int>(i), exponents[i]);
    }
    return idx;
}

int MultiIndex::total_order() const {
    int n = 0;
    for (const auto& [leg, exp] : entries_) n += exp;
    return n;
}

int MultiIndex::exponent(int leg) const {
    for (const auto& [l, e] : entries_)
        if (l == leg) return e;
    return 0;
}

void MultiIndex::validate_against(const SpiderConfig& config) const {
    for (const auto& [leg, exp] : entries_)
        if (leg >= config.leg_count())
            throw std::invalid_argument("MultiIndex: leg " + std::to_string(leg) +
                                        " not present in a " + std::to_string(config.leg_count()) +
                                        "-leg configuration");
}

std::string MultiIndex::to_string() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < entries_.size(); ++i) {
        if (i) os << ",";
        os << "L" << entries_[i].first + 1 << "^" << entries_[i].second;
    }
    os << ")";
    return os.str();
}

}  // namespace spider
