#include <doctest.h>

#include <random>

#include "orbitobs/factor.hpp"

using namespace orbitobs;

namespace {

// trial-division oracle, independent of the rho path
std::vector<std::pair<BigInt, unsigned>> trial_factor(BigInt n) {
    std::vector<std::pair<BigInt, unsigned>> out;
    for (BigInt p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

} // namespace

TEST_CASE("is_prime basics") {
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK(is_prime(2));
    CHECK(is_prime(65537));
    CHECK_FALSE(is_prime(BigInt(65537) * 65537));
    CHECK(is_prime(BigInt("2147483647"))); // 2^31 - 1
}

TEST_CASE("is_prime agrees with trial division up to 3000") {
    for (long n = 0; n <= 3000; ++n) {
        bool naive = n >= 2;
        for (long d = 2; d * d <= n; ++d)
            if (n % d == 0) {
                naive = false;
                break;
            }
        CHECK(is_prime(n) == naive);
    }
}

TEST_CASE("factor on the worked examples") {
    CHECK(factor(1).factors.empty());
    const Factorization f63 = factor(63);
    CHECK(f63.factors == std::vector<std::pair<BigInt, unsigned>>{{3, 2}, {7, 1}});
    const Factorization f = factor(pow_int(2, 36) - 1);
    CHECK(f.factors == std::vector<std::pair<BigInt, unsigned>>{
                           {3, 3}, {5, 1}, {7, 1}, {13, 1}, {19, 1}, {37, 1}, {73, 1}, {109, 1}});
    CHECK_THROWS_AS(factor(0), Error);
}

TEST_CASE("factor recomposes and yields primes, matching the oracle") {
    std::mt19937 rng(13);
    std::uniform_int_distribution<unsigned long> pick(2, 4000000);
    for (int trial = 0; trial < 60; ++trial) {
        const BigInt n(pick(rng));
        const Factorization f = factor(n);
        CHECK(f.recompose() == n);
        for (const auto& [p, e] : f.factors) CHECK(is_prime(p));
        CHECK(f.factors == trial_factor(n));
    }
}

TEST_CASE("factor handles numbers beyond the trial bound via rho") {
    const BigInt p("1000003"), q("1000033");
    const Factorization f = factor(p * q);
    CHECK(f.factors == std::vector<std::pair<BigInt, unsigned>>{{p, 1}, {q, 1}});
    // prime powers go through the perfect-power shortcut
    const Factorization g = factor(p * p * p);
    CHECK(g.factors == std::vector<std::pair<BigInt, unsigned>>{{p, 3}});
}

TEST_CASE("an exhausted effort budget is an error, not a partial answer") {
    FactorOptions opt;
    opt.trial_bound = 100;
    opt.effort = 4; // nowhere near enough for a 12-digit semiprime
    CHECK_THROWS_AS(factor(BigInt("1000003") * BigInt("1000033"), opt), FactorizationTimeout);
}

TEST_CASE("support on the worked examples") {
    CHECK(support(BigRat(1)).primes.empty());
    CHECK(support(BigRat(12, 35)).primes == std::vector<BigInt>{2, 3, 5, 7});
    CHECK(support(BigRat(2)).primes == std::vector<BigInt>{2});
    CHECK_THROWS_AS(support(BigRat(0)), ZeroInput);
}

TEST_CASE("factor cache short-circuits and stays correct") {
    FactorCacheMap cache;
    const BigInt n = pow_int(2, 36) - 1;
    const Factorization first = factor(n, {}, &cache);
    CHECK(cache.count(n) == 1);
    const Factorization again = factor(n, {}, &cache);
    CHECK(first.factors == again.factors);
}

TEST_CASE("primes_up_to is a correct sieve") {
    const auto ps = primes_up_to(100);
    CHECK(ps.size() == 25);
    CHECK(ps.front() == 2);
    CHECK(ps.back() == 97);
    CHECK(next_prime(BigInt(100)) == 101);
}
