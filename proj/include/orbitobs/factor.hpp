#pragma once

// Primality and integer factorization: trial division below a configured
// bound, then Brent's variant of Pollard rho with a deterministic
// iteration budget. An unfinished factorization is always an error
// (FactorizationTimeout), never a silent partial answer.

#include <map>
#include <utility>
#include <vector>

#include "orbitobs/rational.hpp"

namespace orbitobs {

struct Factorization {
    BigInt value;                                     // >= 1
    std::vector<std::pair<BigInt, unsigned>> factors; // (prime, exponent), sorted by prime

    BigInt recompose() const;
    bool contains(const BigInt& p) const;
};

struct FactorOptions {
    unsigned long trial_bound = 10000;  // trial-divide by primes below this
    unsigned long effort = 1ul << 23;   // total rho iterations across one factor() call
};

// Shared factorization results, keyed by the factored value. Owned by the
// CLI layer; the library only reads/writes through the pointer it is
// handed.
using FactorCacheMap = std::map<BigInt, std::vector<std::pair<BigInt, unsigned>>>;

// Primality test: trial division, then GMP's mpz_probab_prime_p, which
// runs a Baillie-PSW probable-prime test plus Miller-Rabin rounds. BPSW
// has been exhaustively verified below 2^64, so the answer is proven
// there; above 2^64 no BPSW pseudoprime is known and the added MR rounds
// push the error below 4^-24. Downstream certificates (order replays,
// product checks) would surface a wrong answer anyway.
bool is_prime(const BigInt& n);

// Complete prime factorization of n >= 1. Throws FactorizationTimeout if
// the effort budget runs out before the factorization is complete.
Factorization factor(const BigInt& n, const FactorOptions& opt = {}, FactorCacheMap* cache = nullptr);

// Finite part of S_x: exactly the primes dividing num(x) or den(x).
struct PlaceSet {
    std::vector<BigInt> primes; // sorted ascending

    bool contains(const BigInt& p) const;
};

PlaceSet support(const BigRat& x, const FactorOptions& opt = {}, FactorCacheMap* cache = nullptr);

// All primes <= n, by sieve (n is a word-sized scan bound, not a bignum).
std::vector<unsigned long> primes_up_to(unsigned long n);

BigInt next_prime(const BigInt& n);

} // namespace orbitobs
