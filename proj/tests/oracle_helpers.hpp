#ifndef SPIDER_TESTS_ORACLE_HELPERS_HPP
#define SPIDER_TESTS_ORACLE_HELPERS_HPP

// Test-only oracles, independent of the library's computation paths.

#include "spider/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace spider::test {

// Number of permutations of n with exactly k cycles, by direct enumeration
// over all n! permutations. Usable for n <= 8.
inline long count_permutations_by_cycles(int n, int k) {
    std::vector<int> perm(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
    long count = 0;
    do {
        std::vector<bool> seen(static_cast<size_t>(n), false);
        int cycles = 0;
        for (int i = 0; i < n; ++i) {
            if (seen[static_cast<size_t>(i)]) continue;
            ++cycles;
            int j = i;
            while (!seen[static_cast<size_t>(j)]) {
                seen[static_cast<size_t>(j)] = true;
                j = perm[static_cast<size_t>(j)];
            }
        }
        if (cycles == k) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

// Number of set partitions of {1..n} into exactly k blocks, by enumerating
// restricted growth strings. Usable for n <= 8.
inline long count_partitions_by_blocks(int n, int k) {
    std::vector<int> assign(static_cast<size_t>(n), 0);
    long count = 0;
    // assign[i] in [0, max(assign[0..i-1])+1]
    std::function<void(int, int)> rec = [&](int pos, int used) {
        if (pos == n) {
            if (used == k) ++count;
            return;
        }
        for (int b = 0; b <= used; ++b) {
            assign[static_cast<size_t>(pos)] = b;
            rec(pos + 1, std::max(used, b + 1));
        }
    };
    rec(0, 0);
    return count;
}

// Deterministic random rationals for property tests.
inline Rational random_nu(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> qd(2, 32);
    const int q = qd(rng);
    std::uniform_int_distribution<int> pd(1, q - 1);
    return Rational(-pd(rng), q);
}

inline Rational random_rational(std::mt19937_64& rng, int max_num = 9, int max_den = 9) {
    std::uniform_int_distribution<int> nd(-max_num, max_num);
    std::uniform_int_distribution<int> dd(1, max_den);
    return Rational(nd(rng), dd(rng));
}

inline std::vector<Rational> random_weights(std::mt19937_64& rng, int legs) {
    std::uniform_int_distribution<long> wd(1, 12);
    std::vector<long> w(static_cast<size_t>(legs));
    long total = 0;
    for (auto& x : w) {
        x = wd(rng);
        total += x;
    }
    std::vector<Rational> beta;
    beta.reserve(w.size());
    for (long x : w) beta.emplace_back(x, total);
    return beta;
}

}  // namespace spider::test

#endif
