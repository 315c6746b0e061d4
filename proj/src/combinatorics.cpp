#include "spider/combinatorics.hpp"

#include <mutex>
#include <stdexcept>
#include <vector>

namespace spider {

namespace {

void check_limit(unsigned long n, unsigned long k) {
    if (n > kCombinatoricsIndexLimit || k > kCombinatoricsIndexLimit)
        throw std::invalid_argument("combinatorics: index exceeds limit of 10000");
}

// Row-growing triangle with a recurrence row(n)[k] = f(prev_row, n, k).
// Rows are appended under a mutex; lookups copy the value out so growth
// never invalidates a caller's result.
class Triangle {
public:
    explicit Triangle(long edge) : edge_(edge) {}

    template <typename Rec>
    BigInt value(unsigned long n, unsigned long k, Rec&& rec) {
        std::lock_guard<std::mutex> lock(mu_);
        if (rows_.empty()) rows_.push_back({BigInt(1)});  // row 0: [1]
        while (rows_.size() <= n) {
            const auto& prev = rows_.back();
            unsigned long m = rows_.size();
            std::vector<BigInt> row(m + 1);
            row[0] = edge_;
            for (unsigned long j = 1; j <= m; ++j) {
                const BigInt& up_left = prev[j - 1];
                const BigInt up = (j < m) ? prev[j] : BigInt(0);
                row[j] = rec(up_left, up, m, j);
            }
            rows_.push_back(std::move(row));
        }
        return rows_[n][k];
    }

private:
    const BigInt edge_;  // value of row[0] for every n >= 1
    std::mutex mu_;
    std::vector<std::vector<BigInt>> rows_;
};

}  // namespace

BigInt stirling1(unsigned long n, unsigned long k) {
    check_limit(n, k);
    if (k > n) return 0;
    if (n == 0) return 1;  // k == 0 here
    if (k == 0) return 0;
    static Triangle tri(0);
    return tri.value(n, k, [](const BigInt& up_left, const BigInt& up, unsigned long m, unsigned long) {
        return up_left + (m - 1) * up;
    });
}

BigInt stirling2(unsigned long n, unsigned long k) {
    check_limit(n, k);
    if (k > n) return 0;
    if (n == 0) return 1;
    if (k == 0) return 0;
    static Triangle tri(0);
    return tri.value(n, k, [](const BigInt& up_left, const BigInt& up, unsigned long, unsigned long j) {
        return up_left + j * up;
    });
}

BigInt binomial(unsigned long n, unsigned long k) {
    check_limit(n, k);
    if (k > n) return 0;
    static Triangle tri(1);
    return tri.value(n, k, [](const BigInt& up_left, const BigInt& up, unsigned long, unsigned long) {
        return up_left + up;
    });
}

BigInt bessel_number(unsigned long n, unsigned long k) {
    check_limit(n, k);
    if (k == 0 || k > n) throw std::invalid_argument("bessel_number: requires 1 <= k <= n");
    BigInt num = factorial(2 * n - k - 1);
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, n - k);
    den *= factorial(k - 1) * factorial(n - k);
    BigInt q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (r != 0) throw std::logic_error("bessel_number: non-integer quotient");
    return ((n - k) % 2 == 0) ? q : BigInt(-q);
}

NuPolynomial rising_binomial_poly(unsigned long k) {
    if (k == 0) throw std::invalid_argument("rising_binomial_poly: k >= 1 required");
    check_limit(k, k);
    const BigInt kfac = factorial(k);
    std::vector<Rational> coeffs(k + 1, Rational(0));
    for (unsigned long j = 1; j <= k; ++j) coeffs[j] = Rational(stirling1(k, j), kfac);
    return NuPolynomial(std::move(coeffs));
}

}  // namespace spider
