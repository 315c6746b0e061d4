#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle_helpers.hpp"
#include "spider/combinatorics.hpp"
#include "spider/rational.hpp"
#include "spider/truncated_series.hpp"

#include <random>

using namespace spider;

namespace {

NuPolynomial random_poly(std::mt19937_64& rng, int max_deg) {
    std::uniform_int_distribution<int> dd(0, max_deg);
    const int deg = dd(rng);
    std::vector<Rational> c;
    for (int i = 0; i <= deg; ++i) c.push_back(test::random_rational(rng));
    return NuPolynomial(std::move(c));
}

TruncatedSeries random_series(std::mt19937_64& rng, int nvars, int max_deg, bool unit_constant) {
    TruncatedSeries s(nvars, max_deg);
    std::vector<int> e(static_cast<size_t>(nvars), 0);
    std::function<void(int, int)> rec = [&](int pos, int remaining) {
        if (pos == nvars) {
            s.set_coeff(e, random_poly(rng, 2));
            return;
        }
        for (int x = 0; x <= remaining; ++x) {
            e[static_cast<size_t>(pos)] = x;
            rec(pos + 1, remaining - x);
        }
        e[static_cast<size_t>(pos)] = 0;
    };
    rec(0, max_deg);
    if (unit_constant) {
        std::uniform_int_distribution<int> cd(1, 5);
        s.set_coeff(std::vector<int>(static_cast<size_t>(nvars), 0),
                    NuPolynomial::constant(Rational(cd(rng))));
    }
    return s;
}

}  // namespace

TEST_CASE("rational basics") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-3, -6) == Rational(1, 2));
    CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
    CHECK(Rational::parse("-1/2").to_double() == -0.5);
    CHECK(Rational::parse("0.125") == Rational(1, 8));
    CHECK(Rational::parse("3e-4") == Rational(3, 10000));
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
    CHECK(pow(Rational(2, 3), -2) == Rational(9, 4));
    CHECK(Rational(1, 3).to_decimal_string(5) == "0.33333");
    CHECK(Rational(123, 4).to_decimal_string(4) == "30.75");
    CHECK(Rational(1, 8).to_decimal_string(30) == "0.125");
    CHECK(Rational(0).to_decimal_string(10) == "0");
    CHECK(Rational(-1, 8).to_decimal_string(3) == "-0.125");
}

TEST_CASE("rational decimal rendering round-trips at 30 digits") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        std::uniform_int_distribution<long> nd(-1000000, 1000000);
        std::uniform_int_distribution<long> dd(1, 999983);
        const Rational r(nd(rng), dd(rng));
        const Rational back = Rational::parse(r.to_decimal_string(30));
        if (r.is_zero()) {
            CHECK(back.is_zero());
        } else {
            CHECK(abs(back - r) <= abs(r) * Rational(BigInt(1), pow(Rational(10), 28).num()));
        }
    }
}

TEST_CASE("rational continued-fraction approximation") {
    CHECK(Rational::approximate(0.25, 1e-12) == Rational(1, 4));
    CHECK(Rational::approximate(1.0 / 6.0, 1e-9) == Rational(1, 6));
    CHECK(Rational::approximate(0.333333333333, 1e-6) == Rational(1, 3));
}

TEST_CASE("polynomial ring operations") {
    const NuPolynomial nu = NuPolynomial::monomial(Rational(1), 1);
    const NuPolynomial nu_plus_one = NuPolynomial::linear(Rational(1), Rational(1));
    CHECK(nu * nu_plus_one == NuPolynomial({Rational(0), Rational(1), Rational(1)}));  // nu + nu^2
    CHECK((nu + (-nu)).is_zero());
    // evaluate nu + nu^2 at -1/2
    CHECK((nu * nu_plus_one).evaluate(Rational(-1, 2)) == Rational(-1, 4));
    CHECK(NuPolynomial().degree() == -1);
    CHECK(NuPolynomial({Rational(3)}).is_constant());
}

TEST_CASE("polynomial ring axioms on random instances") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        const auto a = random_poly(rng, 4), b = random_poly(rng, 4), c = random_poly(rng, 4);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
    }
}

TEST_CASE("series_binomial trivial and exact cases") {
    // exponent 0 -> constant 1
    const auto one = series_binomial(2, 3, Rational(0), Rational(0), 0, Rational(1));
    CHECK(one.coeff({0, 0}) == NuPolynomial::constant(Rational(1)));
    CHECK(one.coeff({1, 0}).is_zero());
    CHECK(one.coeff({2, 0}).is_zero());

    // exponent 1, order 2, lambda 1 -> 1 + z_j
    const auto lin = series_binomial(1, 2, Rational(0), Rational(1), 0, Rational(1));
    CHECK(lin.coeff({0}) == NuPolynomial::constant(Rational(1)));
    CHECK(lin.coeff({1}) == NuPolynomial::constant(Rational(1)));
    CHECK(lin.coeff({2}).is_zero());

    // exponent -nu: coefficient of z^2 is binom(-nu,2) = (nu^2+nu)/2
    const auto s = series_binomial(1, 3, Rational(-1), Rational(0), 0, Rational(1));
    CHECK(s.coeff({2}) == NuPolynomial({Rational(0), Rational(1, 2), Rational(1, 2)}));

    // integer exponents m >= 0 reproduce the finite binomial expansion
    for (long m = 0; m <= 5; ++m) {
        const auto sm = series_binomial(1, 6, Rational(0), Rational(m), 0, Rational(1));
        for (unsigned long k = 0; k <= 6; ++k)
            CHECK(sm.coeff({static_cast<int>(k)}) ==
                  NuPolynomial::constant(Rational(binomial(static_cast<unsigned long>(m), k))));
    }

    CHECK_THROWS_AS(series_binomial(1, 2, Rational(1), Rational(0), 0, Rational(-1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(series_binomial(1, 0, Rational(1), Rational(0), 0, Rational(1)),
                    std::invalid_argument);
}

TEST_CASE("series_binomial lambda scaling") {
    // coefficient of z^k is binom(b, k) / lambda^k
    const auto s = series_binomial(1, 3, Rational(0), Rational(3), 0, Rational(2));
    CHECK(s.coeff({1}) == NuPolynomial::constant(Rational(3, 2)));
    CHECK(s.coeff({2}) == NuPolynomial::constant(Rational(3, 4)));
    CHECK(s.coeff({3}) == NuPolynomial::constant(Rational(1, 8)));
}

TEST_CASE("series reciprocal: geometric series and two-sided inverse") {
    // 1/(1 - z) = 1 + z + z^2 + z^3
    TruncatedSeries s(1, 3);
    s.set_coeff({0}, NuPolynomial::constant(Rational(1)));
    s.set_coeff({1}, NuPolynomial::constant(Rational(-1)));
    const auto inv = s.reciprocal();
    for (int k = 0; k <= 3; ++k) CHECK(inv.coeff({k}) == NuPolynomial::constant(Rational(1)));

    std::mt19937_64 rng(23);
    for (int i = 0; i < 20; ++i) {
        const auto a = random_series(rng, 2, 4, /*unit_constant=*/true);
        const auto id = TruncatedSeries::constant(2, 4, NuPolynomial::constant(Rational(1)));
        CHECK(a * a.reciprocal() == id);
        CHECK(a.reciprocal() * a == id);
    }
}

TEST_CASE("series reciprocal rejects non-units") {
    TruncatedSeries no_const(1, 2);
    no_const.set_coeff({1}, NuPolynomial::constant(Rational(1)));
    CHECK_THROWS_AS(no_const.reciprocal(), NonUnitError);

    TruncatedSeries zero_const(1, 2);
    zero_const.set_coeff({0}, NuPolynomial::monomial(Rational(1), 1));  // nu itself: no constant part
    CHECK_THROWS_AS(zero_const.reciprocal(), NonUnitError);

    TruncatedSeries poly_const(1, 2);
    poly_const.set_coeff({0}, NuPolynomial::linear(Rational(1), Rational(1)));  // 1 + nu
    CHECK_THROWS_AS(poly_const.reciprocal(), NonUnitError);
}

TEST_CASE("series ring axioms on random instances") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 15; ++i) {
        const auto a = random_series(rng, 3, 4, false);
        const auto b = random_series(rng, 3, 4, false);
        const auto c = random_series(rng, 3, 4, false);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("series truncation respects the total-degree bound") {
    std::mt19937_64 rng(41);
    const auto a = random_series(rng, 2, 3, false);
    const auto b = random_series(rng, 2, 3, false);
    const auto prod = a * b;
    for (const auto& [e, p] : prod.terms()) {
        CHECK(e[0] + e[1] <= 3);
        CHECK(!p.is_zero());
    }
    CHECK_THROWS_AS(prod.coeff({4, 0}), std::invalid_argument);
}
