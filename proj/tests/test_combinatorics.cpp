#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle_helpers.hpp"
#include "spider/combinatorics.hpp"

#include <atomic>
#include <thread>

using namespace spider;

TEST_CASE("stirling1 basic values and zero region") {
    for (unsigned long n : {0ul, 1ul, 5ul, 12ul}) CHECK(stirling1(n, n) == 1);
    CHECK(stirling1(3, 2) == 3);
    CHECK(stirling1(4, 2) == 11);
    CHECK(stirling1(5, 7) == 0);
    CHECK(stirling1(6, 0) == 0);
    CHECK(stirling1(0, 0) == 1);
}

TEST_CASE("stirling1 counts permutations by cycles (brute force, n <= 7)") {
    for (int n = 1; n <= 7; ++n)
        for (int k = 1; k <= n; ++k)
            CHECK(stirling1(static_cast<unsigned long>(n), static_cast<unsigned long>(k)) ==
                  test::count_permutations_by_cycles(n, k));
}

TEST_CASE("stirling1 row sums are factorials") {
    for (unsigned long n = 1; n <= 12; ++n) {
        BigInt row = 0;
        for (unsigned long k = 0; k <= n; ++k) row += stirling1(n, k);
        CHECK(row == factorial(n));
    }
}

TEST_CASE("stirling2 basic values and partition brute force") {
    for (unsigned long n = 1; n <= 9; ++n) CHECK(stirling2(n, 1) == 1);
    CHECK(stirling2(4, 2) == 7);
    CHECK(stirling2(3, 2) == 3);
    CHECK(stirling2(2, 5) == 0);
    for (int n = 1; n <= 7; ++n)
        for (int k = 1; k <= n; ++k)
            CHECK(stirling2(static_cast<unsigned long>(n), static_cast<unsigned long>(k)) ==
                  test::count_partitions_by_blocks(n, k));
}

TEST_CASE("binomial agrees with GMP's closed product formula") {
    CHECK(binomial(7, 0) == 1);
    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(5, 5) == 1);
    CHECK(binomial(3, 9) == 0);
    for (unsigned long n = 0; n <= 40; ++n) {
        for (unsigned long k = 0; k <= n; ++k) {
            BigInt ref;
            mpz_bin_uiui(ref.get_mpz_t(), n, k);
            CHECK(binomial(n, k) == ref);
        }
    }
}

TEST_CASE("bessel_number values and domain") {
    for (unsigned long n : {1ul, 2ul, 6ul, 11ul}) CHECK(bessel_number(n, n) == 1);
    CHECK(bessel_number(2, 1) == -1);
    CHECK(bessel_number(3, 1) == 3);
    CHECK_THROWS_AS(bessel_number(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(bessel_number(3, 4), std::invalid_argument);
}

TEST_CASE("bessel numbers match the Stirling convolution for n <= 25") {
    for (int n = 1; n <= 25; ++n) {
        for (int k = 1; k <= n; ++k) {
            BigInt acc = 0;
            BigInt pm2 = 1;
            for (int i = n; i >= k; --i) {
                acc += stirling1(static_cast<unsigned long>(n), static_cast<unsigned long>(i)) *
                       stirling2(static_cast<unsigned long>(i), static_cast<unsigned long>(k)) * pm2;
                pm2 *= -2;
            }
            CHECK(acc == bessel_number(static_cast<unsigned long>(n), static_cast<unsigned long>(k)));
        }
    }
}

TEST_CASE("appendix summation identities, n <= 30") {
    for (int n = 1; n <= 30; ++n) {
        for (int k = 0; k <= n; ++k) {
            for (int m = 0; k + m <= n; ++m) {
                BigInt lhs1 = 0, lhs2 = 0;
                for (int i = k; i <= n - m; ++i) {
                    lhs1 += stirling1(i, k) * stirling1(n - i, m) * binomial(n, i);
                    lhs2 += stirling1(i + 1, k + 1) * stirling1(n - i, m) * binomial(n, i);
                }
                REQUIRE(lhs1 == binomial(k + m, k) * stirling1(n, k + m));
                REQUIRE(lhs2 == binomial(k + m, k) * stirling1(n + 1, k + m + 1));
            }
            BigInt lhs3 = 0, lhs4 = 0;
            for (int i = k; i <= n; ++i) {
                lhs3 += stirling2(i, k) * binomial(n, i);
                if (i >= 1) lhs4 += stirling2(i, k) * binomial(n, i - 1);
            }
            REQUIRE(lhs3 == stirling2(n + 1, k + 1));
            REQUIRE(lhs4 == k * stirling2(n + 1, k + 1));
        }
    }
}

TEST_CASE("rising_binomial_poly") {
    CHECK(rising_binomial_poly(1) == NuPolynomial({Rational(0), Rational(1)}));
    CHECK(rising_binomial_poly(2) == NuPolynomial({Rational(0), Rational(1, 2), Rational(1, 2)}));
    CHECK(rising_binomial_poly(3).evaluate(Rational(1)) == Rational(1));  // binom(3,3)
    CHECK_THROWS_AS(rising_binomial_poly(0), std::invalid_argument);
    // binom(nu+k-1,k) at integer nu = m is binom(m+k-1,k)
    for (unsigned long k = 1; k <= 6; ++k)
        for (long m = 0; m <= 5; ++m)
            CHECK(rising_binomial_poly(k).evaluate(Rational(m)) ==
                  Rational(binomial(static_cast<unsigned long>(m) + k - 1, k)));
}

TEST_CASE("desk-scale index guardrail") {
    CHECK_THROWS_AS(stirling1(10001, 2), std::invalid_argument);
    CHECK_THROWS_AS(binomial(20000, 3), std::invalid_argument);
}

TEST_CASE("memo tables are safe under concurrent use") {
    std::vector<std::thread> pool;
    std::atomic<bool> ok{true};
    for (int t = 0; t < 4; ++t) {
        pool.emplace_back([&ok, t] {
            for (int n = 1; n <= 60; ++n) {
                if (stirling1(static_cast<unsigned long>(n + t % 3), 2) !=
                    stirling1(static_cast<unsigned long>(n + t % 3), 2))
                    ok = false;
                if (stirling2(static_cast<unsigned long>(n), 3) < 0) ok = false;
            }
        });
    }
    for (auto& th : pool) th.join();
    CHECK(ok.load());
}
