#include "orbitobs/mult_order.hpp"

#include <algorithm>
#include <numeric>

namespace orbitobs {

bool OrderCertificate::replay() const {
    if (order < 1 || group_order != p - 1) return false;
    if (!mpz_divisible_p(group_order.get_mpz_t(), order.get_mpz_t())) return false;
    BigInt r;
    try {
        r = residue_mod(lambda, p);
    } catch (const BadReductionPrime&) {
        return false;
    }
    if (powmod(r, order, p) != 1) return false;
    for (const auto& [q, w] : maximality_witnesses) {
        if (!mpz_divisible_p(order.get_mpz_t(), q.get_mpz_t())) return false;
        if (powmod(r, order / q, p) != w || w == 1) return false;
    }
    // every prime divisor of order must appear among the witnesses
    BigInt rest = order;
    for (const auto& [q, w] : maximality_witnesses)
        while (mpz_divisible_p(rest.get_mpz_t(), q.get_mpz_t())) rest /= q;
    return rest == 1;
}

OrderCertificate mult_order(const BigRat& lambda, const BigInt& p, const FactorOptions& opt,
                            FactorCacheMap* cache) {
    if (lambda == 0) throw ZeroInput("mult_order of zero");
    if (!is_prime(p)) throw Error(ErrorKind::invalid_input, "mult_order: " + p.get_str() + " is not prime");
    if (mpz_divisible_p(num(lambda).get_mpz_t(), p.get_mpz_t()) ||
        mpz_divisible_p(den(lambda).get_mpz_t(), p.get_mpz_t()))
        throw BadReductionPrime("p=" + p.get_str() + " lies in the support of " + to_string(lambda));

    OrderCertificate cert;
    cert.lambda = lambda;
    cert.p = p;
    cert.group_order = p - 1;
    if (p == 2) {
        cert.order = 1; // F_2^* is trivial
        return cert;
    }

    const BigInt r = residue_mod(lambda, p);
    const Factorization group = factor(p - 1, opt, cache);
    BigInt ord = p - 1;
    for (const auto& [q, e] : group.factors) {
        for (unsigned i = 0; i < e; ++i) {
            if (!mpz_divisible_p(ord.get_mpz_t(), q.get_mpz_t())) break;
            const BigInt candidate = ord / q;
            if (powmod(r, candidate, p) != 1) break;
            ord = candidate;
        }
    }
    cert.order = ord;
    for (const auto& [q, e] : group.factors) {
        if (mpz_divisible_p(ord.get_mpz_t(), q.get_mpz_t()))
            cert.maximality_witnesses.emplace_back(q, powmod(r, ord / q, p));
    }
    return cert;
}

namespace {

std::vector<std::pair<unsigned long, int>> divisors_with_moebius(unsigned long n,
                                                                 const FactorOptions& opt,
                                                                 FactorCacheMap* cache) {
    // (e, mu(e)) for the squarefree divisors e of n
    const Factorization f = factor(BigInt(n), opt, cache);
    std::vector<std::pair<unsigned long, int>> out{{1, 1}};
    for (const auto& [p, e] : f.factors) {
        const unsigned long pl = p.get_ui();
        const size_t sz = out.size();
        for (size_t i = 0; i < sz; ++i) out.emplace_back(out[i].first * pl, -out[i].second);
    }
    return out;
}

} // namespace

BigInt cyclotomic_value(const BigInt& a, const BigInt& b, unsigned long n, const FactorOptions& opt,
                        FactorCacheMap* cache) {
    if (n == 0) throw Error(ErrorKind::invalid_input, "cyclotomic_value: n >= 1 required");
    if (n == 1) return a - b;
    BigInt numer = 1, denom = 1;
    for (const auto& [e, mu] : divisors_with_moebius(n, opt, cache)) {
        const BigInt term = pow_int(a, n / e) - pow_int(b, n / e);
        if (term == 0)
            throw Error(ErrorKind::invalid_input, "cyclotomic_value: a^k = b^k (|a/b| is a root of unity)");
        (mu == 1 ? numer : denom) *= term;
    }
    BigInt q;
    mpz_divexact(q.get_mpz_t(), numer.get_mpz_t(), denom.get_mpz_t());
    return q;
}

namespace {

// All certificates of order exactly n with no prime bound; `complete` is
// true when the candidate set provably covers every witness.
std::pair<std::vector<OrderCertificate>, bool> order_witnesses(const BigRat& lambda, unsigned long n,
                                                               const FactorOptions& opt,
                                                               FactorCacheMap* cache) {
    const BigInt a = num(lambda), b = den(lambda);
    BigInt target = abs(cyclotomic_value(a, b, n, opt, cache));
    std::vector<OrderCertificate> certs;
    if (target == 1) return {certs, true};

    bool complete = true;
    std::vector<BigInt> candidates;
    try {
        for (const auto& [p, e] : factor(target, opt, cache).factors) candidates.push_back(p);
    } catch (const FactorizationTimeout&) {
        complete = false;
        // use whatever small factors trial division can still provide
        BigInt rest = target;
        for (unsigned long p : primes_up_to(opt.trial_bound)) {
            if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) candidates.push_back(BigInt(p));
            while (mpz_divisible_ui_p(rest.get_mpz_t(), p))
                mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        }
        if (is_prime(rest)) candidates.push_back(rest);
    }
    for (const BigInt& p : candidates) {
        if (mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t()) ||
            mpz_divisible_p(b.get_mpz_t(), p.get_mpz_t()))
            continue;
        OrderCertificate cert = mult_order(lambda, p, opt, cache);
        if (cert.order == n) certs.push_back(std::move(cert));
    }
    std::sort(certs.begin(), certs.end(),
              [](const OrderCertificate& l, const OrderCertificate& r) { return l.p < r.p; });
    return {certs, complete};
}

} // namespace

std::vector<OrderCertificate> primes_with_order(const BigRat& lambda, unsigned long n,
                                                const BigInt& p_limit, const FactorOptions& opt,
                                                FactorCacheMap* cache) {
    if (lambda == 0) throw ZeroInput("primes_with_order of zero");
    if (is_root_of_unity(lambda)) throw RootOfUnityInput(to_string(lambda) + " is a root of unity");
    if (n == 0) throw Error(ErrorKind::invalid_input, "order n >= 1 required");
    auto [certs, complete] = order_witnesses(lambda, n, opt, cache);
    std::erase_if(certs, [&](const OrderCertificate& c) { return c.p > p_limit; });
    return certs;
}

std::vector<BigInt> primes_with_order_scan(const BigRat& lambda, unsigned long n,
                                           unsigned long p_limit, const FactorOptions& opt,
                                           FactorCacheMap* cache) {
    std::vector<BigInt> out;
    for (unsigned long p : primes_up_to(p_limit)) {
        const BigInt bp(p);
        if (mpz_divisible_p(num(lambda).get_mpz_t(), bp.get_mpz_t()) ||
            mpz_divisible_p(den(lambda).get_mpz_t(), bp.get_mpz_t()))
            continue;
        if (mult_order(lambda, bp, opt, cache).order == n) out.push_back(bp);
    }
    return out;
}

SpectrumReport order_spectrum(const BigRat& lambda, unsigned long n_max, const BigInt& p_max,
                              const FactorOptions& opt, FactorCacheMap* cache) {
    if (lambda == 0) throw ZeroInput("order_spectrum of zero");
    if (is_root_of_unity(lambda)) throw RootOfUnityInput(to_string(lambda) + " is a root of unity");
    SpectrumReport report;
    report.lambda = lambda;
    report.n_max = n_max;
    report.p_max = p_max;
    for (unsigned long n = 1; n <= n_max; ++n) {
        bool complete = false;
        std::vector<OrderCertificate> certs;
        try {
            std::tie(certs, complete) = order_witnesses(lambda, n, opt, cache);
        } catch (const FactorizationTimeout&) {
            complete = false; // a candidate's p-1 was out of reach
        }
        if (!complete) report.budget_exhausted.push_back(n);
        auto hit = std::find_if(certs.begin(), certs.end(),
                                [&](const OrderCertificate& c) { return c.p <= p_max; });
        if (hit != certs.end()) {
            report.realized.emplace(n, std::move(*hit));
        } else {
            report.missing.push_back(n);
            if (complete && certs.empty()) report.proven_exceptional.push_back(n);
        }
    }
    return report;
}

std::vector<OrderCertificate> find_orders_coprime_to(const BigRat& lambda, const BigInt& d,
                                                     unsigned long count, const BigInt& p_limit,
                                                     const FactorOptions& opt,
                                                     FactorCacheMap* cache) {
    if (lambda == 0) throw ZeroInput("find_orders_coprime_to of zero");
    if (is_root_of_unity(lambda)) throw RootOfUnityInput(to_string(lambda) + " is a root of unity");
    if (d < 2) throw Error(ErrorKind::invalid_input, "d >= 2 required");
    std::vector<OrderCertificate> out;
    // a prime with order m satisfies p >= m + 1, so m beyond p_limit - 1
    // cannot produce a witness; 512 caps the cyclotomic degree searched.
    const unsigned long m_cap = (p_limit - 1 < 512) ? BigInt(p_limit - 1).get_ui() : 512;
    for (unsigned long m = 2; m <= m_cap && out.size() < count; ++m) {
        if (gcd(BigInt(m), d) != 1) continue;
        std::vector<OrderCertificate> certs;
        try {
            certs = primes_with_order(lambda, m, p_limit, opt, cache);
        } catch (const FactorizationTimeout&) {
            continue; // this order is out of factoring reach; try the next one
        }
        if (!certs.empty()) out.push_back(std::move(certs.front()));
    }
    if (out.size() < count)
        throw InsufficientWitnesses("found " + std::to_string(out.size()) + " of " +
                                    std::to_string(count) + " coprime-order witnesses below " +
                                    p_limit.get_str());
    return out;
}

} // namespace orbitobs
