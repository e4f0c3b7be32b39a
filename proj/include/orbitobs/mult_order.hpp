#pragma once

// Multiplicative orders of rationals modulo primes, order spectra, and
// Bang-Zsigmondy primitive-divisor certificates. The order of a/b mod p
// is the order of a*b^{-1} in F_p^*.

#include <map>
#include <optional>
#include <vector>

#include "orbitobs/factor.hpp"
#include "orbitobs/rational.hpp"

namespace orbitobs {

// Proof that `order` is exactly the multiplicative order of lambda mod p:
// lambda^order == 1 and lambda^(order/q) != 1 for every prime q | order.
struct OrderCertificate {
    BigRat lambda;
    BigInt p;
    BigInt order;       // divides p - 1
    BigInt group_order; // p - 1
    std::vector<std::pair<BigInt, BigInt>> maximality_witnesses; // (q, lambda^(order/q) mod p)

    // Re-runs the modular exponentiations the certificate pins down.
    bool replay() const;

    bool operator==(const OrderCertificate&) const = default;
};

struct SpectrumReport {
    BigRat lambda;
    unsigned long n_max = 0;
    BigInt p_max;
    std::map<unsigned long, OrderCertificate> realized; // n -> smallest witness prime
    std::vector<unsigned long> missing;                 // sorted; realized+missing partition [1, n_max]
    std::vector<unsigned long> proven_exceptional;      // subset of missing: no witness exists at all
    std::vector<unsigned long> budget_exhausted;        // n whose search hit the factoring budget

    bool operator==(const SpectrumReport&) const = default;
};

// Exact order of lambda in F_p^*, by factoring p-1 and descending through
// divisors. Throws BadReductionPrime if p divides num or den of lambda.
// p = 2 is permitted when v_2(lambda) = 0 (the order is then 1).
OrderCertificate mult_order(const BigRat& lambda, const BigInt& p,
                            const FactorOptions& opt = {}, FactorCacheMap* cache = nullptr);

// All primes p <= p_limit with order of lambda exactly n, found by
// factoring the homogenized cyclotomic value Phi_n(a, b) (lambda = a/b):
// every prime of order n divides it. Sorted ascending.
std::vector<OrderCertificate> primes_with_order(const BigRat& lambda, unsigned long n,
                                                const BigInt& p_limit,
                                                const FactorOptions& opt = {},
                                                FactorCacheMap* cache = nullptr);

// Scan fallback for cross-checking the cyclotomic search: walks primes
// up to p_limit and keeps those whose order is exactly n.
std::vector<BigInt> primes_with_order_scan(const BigRat& lambda, unsigned long n,
                                           unsigned long p_limit,
                                           const FactorOptions& opt = {},
                                           FactorCacheMap* cache = nullptr);

// Realized/missing partition of [1, n_max] under the prime budget p_max.
// A missing n is flagged proven_exceptional only when the complete
// factorization of Phi_n shows no prime of order n exists at all.
SpectrumReport order_spectrum(const BigRat& lambda, unsigned long n_max, const BigInt& p_max,
                              const FactorOptions& opt = {}, FactorCacheMap* cache = nullptr);

// Up to `count` certificates with pairwise distinct orders >= 2, each
// coprime to d, witnesses taken with smallest prime per order. Throws
// InsufficientWitnesses when the budget cannot supply them. (Order 1
// witnesses are useless downstream: they force nothing.)
std::vector<OrderCertificate> find_orders_coprime_to(const BigRat& lambda, const BigInt& d,
                                                     unsigned long count, const BigInt& p_limit,
                                                     const FactorOptions& opt = {},
                                                     FactorCacheMap* cache = nullptr);

// Homogenized cyclotomic value Phi_n(a, b) via the Moebius product
// prod_{e | n} (a^{n/e} - b^{n/e})^{mu(e)}, returned up to sign.
BigInt cyclotomic_value(const BigInt& a, const BigInt& b, unsigned long n,
                        const FactorOptions& opt = {}, FactorCacheMap* cache = nullptr);

} // namespace orbitobs
