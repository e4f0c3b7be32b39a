#include "orbitobs/factor.hpp"

#include <algorithm>

namespace orbitobs {

BigInt Factorization::recompose() const {
    BigInt r = 1;
    for (const auto& [p, e] : factors) r *= pow_int(p, e);
    return r;
}

bool Factorization::contains(const BigInt& p) const {
    return std::any_of(factors.begin(), factors.end(),
                       [&](const auto& f) { return f.first == p; });
}

bool PlaceSet::contains(const BigInt& p) const {
    return std::binary_search(primes.begin(), primes.end(), p);
}

bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 24) != 0;
}

std::vector<unsigned long> primes_up_to(unsigned long n) {
    std::vector<unsigned long> out;
    if (n < 2) return out;
    std::vector<bool> composite(n + 1, false);
    for (unsigned long i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (unsigned long j = i * i; j <= n && i <= n / i; j += i) composite[j] = true;
    }
    return out;
}

BigInt next_prime(const BigInt& n) {
    BigInt r;
    mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

namespace {

// Brent's cycle-finding rho with batched gcds. Returns a nontrivial
// factor of n (composite, odd, not a prime power of a small prime) or 0
// if the iteration budget ran out. `iters` is decremented as work is
// spent.
BigInt pollard_brent(const BigInt& n, unsigned long c, unsigned long& iters) {
    BigInt x = 2, y = 2, d = 1, q = 1, ys = y;
    unsigned long r = 1;
    const unsigned long batch = 128;
    auto step = [&](BigInt& v) { v = (v * v + c) % n; };
    while (d == 1) {
        x = y;
        for (unsigned long i = 0; i < r; ++i) {
            if (iters == 0) return 0;
            --iters;
            step(y);
        }
        unsigned long k = 0;
        while (k < r && d == 1) {
            ys = y;
            const unsigned long m = std::min(batch, r - k);
            for (unsigned long i = 0; i < m; ++i) {
                if (iters == 0) return 0;
                --iters;
                step(y);
                q = q * abs(x - y) % n;
            }
            d = gcd(q, n);
            k += m;
        }
        r *= 2;
    }
    if (d == n) {
        // backtrack one step at a time
        do {
            if (iters == 0) return 0;
            --iters;
            step(ys);
            d = gcd(abs(x - ys), n);
        } while (d == 1);
        if (d == n) return 0; // this c failed; caller retries with the next c
    }
    return d;
}

void factor_into(const BigInt& n, std::map<BigInt, unsigned>& acc, unsigned long& iters,
                 unsigned multiplicity);

// n is composite and has no factor below the trial bound.
void split_composite(const BigInt& n, std::map<BigInt, unsigned>& acc, unsigned long& iters,
                     unsigned multiplicity) {
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        for (unsigned long k = 2; k <= mpz_sizeinbase(n.get_mpz_t(), 2); ++k) {
            BigInt root;
            if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k)) {
                factor_into(root, acc, iters, multiplicity * static_cast<unsigned>(k));
                return;
            }
        }
    }
    for (unsigned long c = 1;; ++c) {
        if (iters == 0)
            throw FactorizationTimeout("factor effort budget exhausted on composite " + n.get_str());
        BigInt d = pollard_brent(n, c, iters);
        if (d == 0) continue;
        factor_into(d, acc, iters, multiplicity);
        factor_into(n / d, acc, iters, multiplicity);
        return;
    }
}

void factor_into(const BigInt& n, std::map<BigInt, unsigned>& acc, unsigned long& iters,
                 unsigned multiplicity) {
    if (n == 1) return;
    if (is_prime(n)) {
        acc[n] += multiplicity;
        return;
    }
    split_composite(n, acc, iters, multiplicity);
}

} // namespace

Factorization factor(const BigInt& n, const FactorOptions& opt, FactorCacheMap* cache) {
    if (n < 1) throw Error(ErrorKind::invalid_input, "factor() needs n >= 1, got " + n.get_str());
    Factorization result;
    result.value = n;
    if (n == 1) return result;

    if (cache != nullptr) {
        auto it = cache->find(n);
        if (it != cache->end()) {
            result.factors = it->second;
            return result;
        }
    }

    std::map<BigInt, unsigned> acc;
    BigInt rest = n;
    for (unsigned long p : primes_up_to(opt.trial_bound)) {
        if (rest == 1) break;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++acc[BigInt(p)];
        }
        if (BigInt(p) * p > rest) break; // the cofactor is 1 or prime
    }
    unsigned long iters = opt.effort;
    factor_into(rest, acc, iters, 1);

    result.factors.assign(acc.begin(), acc.end());
    if (cache != nullptr) (*cache)[n] = result.factors;
    return result;
}

PlaceSet support(const BigRat& x, const FactorOptions& opt, FactorCacheMap* cache) {
    if (x == 0) throw ZeroInput("support of zero");
    PlaceSet out;
    std::map<BigInt, unsigned> merged;
    for (const auto& [p, e] : factor(abs(num(x)), opt, cache).factors) merged[p] += e;
    for (const auto& [p, e] : factor(den(x), opt, cache).factors) merged[p] += e;
    for (const auto& [p, e] : merged) out.primes.push_back(p);
    return out;
}

} // namespace orbitobs
