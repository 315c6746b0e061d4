#include "spider/laplace_inversion.hpp"

#include "spider/rational.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace spider {

namespace {

// Limb-accurate conversion; mpz_get_d would round to double and the
// ill-conditioned Stehfest sum needs the weights at full long double
// precision.
long double to_long_double(const BigInt& z) {
    const mp_size_t n = mpz_size(z.get_mpz_t());
    long double acc = 0.0L;
    const long double limb_base = std::ldexp(1.0L, GMP_NUMB_BITS);
    for (mp_size_t i = n; i-- > 0;)
        acc = acc * limb_base + static_cast<long double>(mpz_getlimbn(z.get_mpz_t(), i));
    return mpz_sgn(z.get_mpz_t()) < 0 ? -acc : acc;
}

long double to_long_double(const Rational& r) { return to_long_double(r.num()) / to_long_double(r.den()); }

// V_k = (-1)^(n+k) sum_{j=ceil(k/2)}^{min(k,n)}
//         j^n (2j)! / ((n-j)! j! (j-1)! (k-j)! (2j-k)!),   n = terms/2.
std::vector<long double> stehfest_weights(int terms) {
    static std::mutex mu;
    static std::map<int, std::vector<long double>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(terms);
    if (it != cache.end()) return it->second;

    const int n = terms / 2;
    std::vector<long double> weights(static_cast<size_t>(terms));
    for (int k = 1; k <= terms; ++k) {
        Rational sum(0);
        for (int j = (k + 1) / 2; j <= std::min(k, n); ++j) {
            BigInt jn;
            mpz_ui_pow_ui(jn.get_mpz_t(), static_cast<unsigned long>(j), static_cast<unsigned long>(n));
            const BigInt num = jn * factorial(static_cast<unsigned long>(2 * j));
            const BigInt den = factorial(static_cast<unsigned long>(n - j)) *
                               factorial(static_cast<unsigned long>(j)) *
                               factorial(static_cast<unsigned long>(j - 1)) *
                               factorial(static_cast<unsigned long>(k - j)) *
                               factorial(static_cast<unsigned long>(2 * j - k));
            sum += Rational(num, den);
        }
        if ((n + k) % 2 != 0) sum = -sum;
        weights[static_cast<size_t>(k - 1)] = to_long_double(sum);
    }
    cache[terms] = weights;
    return weights;
}

}  // namespace

double gaver_stehfest(const std::function<long double(long double)>& transform, double t, int terms) {
    if (!(t > 0)) throw std::invalid_argument("gaver_stehfest: t must be positive");
    if (terms < 10 || terms > 18 || terms % 2 != 0)
        throw std::invalid_argument("gaver_stehfest: terms must be even and within [10, 18]");

    const auto weights = stehfest_weights(terms);
    const long double ln2 = 0.69314718055994530942L;
    const long double lt = static_cast<long double>(t);
    long double acc = 0.0L;
    for (int k = 1; k <= terms; ++k)
        acc += weights[static_cast<size_t>(k - 1)] * transform(static_cast<long double>(k) * ln2 / lt);
    return static_cast<double>(ln2 / lt * acc);
}

}  // namespace spider
