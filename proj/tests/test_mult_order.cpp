#include <doctest.h>

#include <random>

#include "orbitobs/mult_order.hpp"

using namespace orbitobs;

namespace {

// naive order oracle: walk successive powers
BigInt naive_order(const BigRat& lambda, const BigInt& p) {
    const BigInt r = residue_mod(lambda, p);
    BigInt x = r % p, k = 1;
    while (x != 1) {
        x = x * r % p;
        ++k;
    }
    return k;
}

} // namespace

TEST_CASE("mult_order on the worked examples") {
    CHECK(mult_order(BigRat(2), 7).order == 3);
    CHECK(mult_order(BigRat(2), 17).order == 8);
    CHECK(mult_order(BigRat(3, 2), 5).order == 2);
    CHECK_THROWS_AS(mult_order(BigRat(3, 2), 3), BadReductionPrime);
    CHECK_THROWS_AS(mult_order(BigRat(3, 2), 2), BadReductionPrime);
    CHECK(mult_order(BigRat(3), 2).order == 1); // F_2^* is trivial
}

TEST_CASE("certificates replay") {
    for (long p : {7, 17, 101, 65537}) {
        const OrderCertificate cert = mult_order(BigRat(2), p);
        CHECK(cert.replay());
        CHECK(mpz_divisible_p(cert.group_order.get_mpz_t(), cert.order.get_mpz_t()));
    }
    OrderCertificate broken = mult_order(BigRat(2), 17);
    broken.order = 4; // not the true order
    CHECK_FALSE(broken.replay());
}

TEST_CASE("oracle equivalence with a naive loop for p <= 200") {
    for (const BigRat lambda : {BigRat(2), BigRat(3, 2), BigRat(-5, 7), BigRat(10)}) {
        for (unsigned long p : primes_up_to(200)) {
            const BigInt bp(p);
            if (mpz_divisible_p(num(lambda).get_mpz_t(), bp.get_mpz_t()) ||
                mpz_divisible_p(den(lambda).get_mpz_t(), bp.get_mpz_t()))
                continue;
            CHECK(mult_order(lambda, bp).order == naive_order(lambda, bp));
        }
    }
}

TEST_CASE("primes_with_order on the worked examples") {
    auto certs = primes_with_order(BigRat(2), 4, 100);
    REQUIRE(certs.size() == 1);
    CHECK(certs[0].p == 5);

    CHECK(primes_with_order(BigRat(2), 1, 100).empty());  // needs p | 2^1 - 1 = 1
    CHECK(primes_with_order(BigRat(2), 6, 1000000).empty()); // Zsigmondy exception
    CHECK_THROWS_AS(primes_with_order(BigRat(-1), 3, 100), RootOfUnityInput);
}

TEST_CASE("primitive-divisor law for found witnesses") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<long> pick(2, 9);
    for (int trial = 0; trial < 20; ++trial) {
        const long a = pick(rng), b = pick(rng);
        if (a == b) continue;
        const BigRat lambda = make_rat(a, b);
        if (is_root_of_unity(lambda)) continue;
        for (unsigned long n = 2; n <= 8; ++n) {
            for (const auto& cert : primes_with_order(lambda, n, 100000)) {
                const BigInt an_bn = pow_int(num(lambda), n) - pow_int(den(lambda), n);
                CHECK(mpz_divisible_p(an_bn.get_mpz_t(), cert.p.get_mpz_t()));
                for (unsigned long m = 1; m < n; ++m) {
                    const BigInt am_bm = pow_int(num(lambda), m) - pow_int(den(lambda), m);
                    CHECK_FALSE(mpz_divisible_p(am_bm.get_mpz_t(), cert.p.get_mpz_t()));
                }
            }
        }
    }
}

TEST_CASE("scan fallback agrees with the cyclotomic search") {
    for (unsigned long n = 1; n <= 10; ++n) {
        const auto scan = primes_with_order_scan(BigRat(2), n, 2000);
        std::vector<BigInt> cyc;
        for (const auto& cert : primes_with_order(BigRat(2), n, 2000)) cyc.push_back(cert.p);
        CHECK(scan == cyc);
    }
}

TEST_CASE("order division identity f_p(lambda^k) = f_p(lambda)/gcd(f, k)") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<long> pick(2, 40);
    const std::vector<BigInt> primes{11, 13, 97, 101, 257};
    for (int trial = 0; trial < 40; ++trial) {
        const BigRat lambda = make_rat(pick(rng), pick(rng));
        if (lambda == 1) continue;
        const unsigned long k = static_cast<unsigned long>(pick(rng)) % 6 + 1;
        for (const BigInt& p : primes) {
            if (mpz_divisible_p(num(lambda).get_mpz_t(), p.get_mpz_t()) ||
                mpz_divisible_p(den(lambda).get_mpz_t(), p.get_mpz_t()))
                continue;
            const BigInt f = mult_order(lambda, p).order;
            const BigInt fk = mult_order(pow_rat(lambda, k), p).order;
            CHECK(fk == f / gcd(f, BigInt(k)));
        }
    }
}

TEST_CASE("order_spectrum on the worked examples") {
    const SpectrumReport r = order_spectrum(BigRat(2), 12, 1000000);
    CHECK(r.missing == std::vector<unsigned long>{1, 6});
    CHECK(r.proven_exceptional == std::vector<unsigned long>{1, 6});
    CHECK(r.realized.at(2).p == 3);
    CHECK(r.realized.at(3).p == 7);
    CHECK(r.realized.at(4).p == 5);
    for (const auto& [n, cert] : r.realized) {
        CHECK(cert.order == n);
        CHECK(cert.replay());
    }

    const SpectrumReport small = order_spectrum(BigRat(2), 3, 10);
    CHECK(small.realized.size() == 2);
    CHECK(small.realized.at(2).p == 3);
    CHECK(small.realized.at(3).p == 7);
    CHECK(small.missing == std::vector<unsigned long>{1});

    CHECK_THROWS_AS(order_spectrum(BigRat(-1), 5, 100), RootOfUnityInput);
    CHECK_THROWS_AS(order_spectrum(BigRat(0), 5, 100), ZeroInput);
}

TEST_CASE("realized and missing partition [1, n_max]") {
    const SpectrumReport r = order_spectrum(BigRat(3, 2), 10, 100000);
    std::vector<bool> seen(r.n_max + 1, false);
    for (const auto& [n, cert] : r.realized) {
        CHECK(!seen[n]);
        seen[n] = true;
    }
    for (unsigned long n : r.missing) {
        CHECK(!seen[n]);
        seen[n] = true;
    }
    for (unsigned long n = 1; n <= r.n_max; ++n) CHECK(seen[n]);
}

TEST_CASE("find_orders_coprime_to on the worked examples") {
    const auto certs = find_orders_coprime_to(BigRat(2), 2, 2, 100);
    REQUIRE(certs.size() == 2);
    CHECK(certs[0].order == 3);
    CHECK(certs[0].p == 7);
    CHECK(certs[1].order == 5);
    CHECK(certs[1].p == 31);

    const auto one = find_orders_coprime_to(BigRat(2), 6, 1, 100);
    REQUIRE(one.size() == 1);
    CHECK(one[0].order == 5);
    CHECK(one[0].p == 31);

    CHECK_THROWS_AS(find_orders_coprime_to(BigRat(2), 2, 50, 10), InsufficientWitnesses);
}

TEST_CASE("cyclotomic values match the direct quotient") {
    // Phi_n(2,1) over n | 12: product recovers 2^12 - 1
    BigInt prod = 1;
    for (unsigned long e : {1ul, 2ul, 3ul, 4ul, 6ul, 12ul}) prod *= abs(cyclotomic_value(2, 1, e));
    CHECK(prod == pow_int(2, 12) - 1);
    CHECK(cyclotomic_value(2, 1, 1) == 1);
    CHECK(cyclotomic_value(2, 1, 6) == 3);   // x^2 - x + 1 at 2
    CHECK(cyclotomic_value(5, 3, 2) == 8);   // a + b
    CHECK(cyclotomic_value(5, 3, 4) == 34);  // a^2 + b^2
}
