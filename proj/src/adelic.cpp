#include "orbitobs/adelic.hpp"

#include <algorithm>
#include <map>

namespace orbitobs {

std::vector<BigInt> residue_orbit(const BigRat& lambda, unsigned long d, const BigInt& p,
                                  const std::vector<unsigned long>& n_list,
                                  unsigned long prime_power) {
    if (lambda == 0) throw ZeroInput("residue_orbit of zero");
    if (d < 2) throw Error(ErrorKind::invalid_input, "d >= 2 required");
    if (prime_power < 1) throw Error(ErrorKind::invalid_input, "prime_power >= 1 required");
    if (mpz_divisible_p(num(lambda).get_mpz_t(), p.get_mpz_t()))
        throw BadReductionPrime("p=" + p.get_str() + " divides the numerator of " +
                                to_string(lambda));
    const BigInt modulus = pow_int(p, prime_power);
    const BigInt group = modulus / p * (p - 1); // phi(p^e)
    const BigInt r = residue_mod(lambda, modulus); // throws BadReductionPrime on bad p
    std::vector<BigInt> out;
    out.reserve(n_list.size());
    for (unsigned long n : n_list) {
        const BigInt e_reduced = group == 1 ? BigInt(0) : powmod(BigInt(d), BigInt(n), group);
        out.push_back(powmod(r, e_reduced, modulus));
    }
    return out;
}

namespace {

// limit_set for a root of unity: the values of lambda^{d^r} that recur,
// i.e. the cycle of the value orbit.
std::vector<BigRat> recurring_values(const BigRat& lambda, unsigned long d) {
    std::vector<BigRat> seq{lambda};
    std::map<BigRat, unsigned long> seen{{lambda, 0}};
    for (;;) {
        BigRat next = pow_rat(seq.back(), d);
        auto it = seen.find(next);
        if (it != seen.end()) {
            std::vector<BigRat> cycle(seq.begin() + it->second, seq.end());
            std::sort(cycle.begin(), cycle.end());
            return cycle;
        }
        seen.emplace(next, seq.size());
        seq.push_back(std::move(next));
        if (seq.size() > 64) throw InternalInvariantViolation("value orbit failed to close");
    }
}

std::optional<unsigned long> minimal_matching_r(const BigRat& lambda, const BigRat& xi,
                                                unsigned long d) {
    std::map<BigRat, unsigned long> seen;
    BigRat v = lambda;
    for (unsigned long r = 0;; ++r) {
        if (v == xi) return r;
        if (seen.count(v)) return std::nullopt;
        seen.emplace(v, r);
        v = pow_rat(v, d);
        if (r > 64) throw InternalInvariantViolation("value orbit failed to close");
    }
}

CongruenceWitness make_witness(const BigRat& forced_quantity, OrderCertificate cert) {
    CongruenceWitness w;
    w.p = cert.p;
    w.claimed_order = cert.order;
    w.check_value = residue_mod(forced_quantity, w.p);
    w.forced_value = 1;
    w.consistent = (w.check_value == w.forced_value);
    w.order_certificate = std::move(cert);
    return w;
}

} // namespace

PowerLimitOutcome power_limit_decide(const BigRat& lambda, const BigRat& xi, unsigned long d,
                                     const PowerLimitOptions& opt, FactorCacheMap* cache) {
    if (lambda == 0) throw ZeroInput("power_limit_decide: lambda = 0");
    if (xi == 0) throw ZeroInput("power_limit_decide: xi = 0");
    if (d < 2) throw Error(ErrorKind::invalid_input, "d >= 2 required");

    if (is_root_of_unity(lambda))
        return RootOfUnityCase{recurring_values(lambda, d), minimal_matching_r(lambda, xi, d)};

    RefutedCase refuted;
    const PlaceSet xi_support = support(xi, opt.factor, cache);

    // xi phase: primes with f_p(lambda) = d^n. The limit hypothesis gives
    // lambda^{d^N} == 1 (mod p) for N >= n, hence xi == 1 (mod p).
    // Zsigmondy-exceptional orders are skipped, as in the proof.
    BigInt order = d;
    while (refuted.xi_forcing.size() < opt.witness_budget) {
        if (order > opt.max_order) break;
        if (!mpz_fits_ulong_p(order.get_mpz_t())) break;
        std::vector<OrderCertificate> certs;
        try {
            certs = primes_with_order(lambda, order.get_ui(), BigInt(1) << 256, opt.factor, cache);
        } catch (const FactorizationTimeout&) {
            certs.clear();
        }
        for (auto& cert : certs) {
            if (xi_support.contains(cert.p)) continue; // xi is not a unit there
            refuted.xi_forcing.push_back(make_witness(xi, std::move(cert)));
            break;
        }
        order *= d;
    }
    if (refuted.xi_forcing.size() < opt.witness_budget)
        throw InsufficientWitnesses("only " + std::to_string(refuted.xi_forcing.size()) + " of " +
                                    std::to_string(opt.witness_budget) +
                                    " d-power-order witnesses within the order cap");

    // lambda phase: orders m >= 2 coprime to d. With the limit forced to
    // 1, lambda^{d^{n(m)}} == 1 (mod p) and gcd(m, d^n) = 1 give
    // lambda == 1 (mod p), which a genuine order m >= 2 contradicts.
    for (auto& cert : find_orders_coprime_to(lambda, BigInt(d), opt.witness_budget,
                                             opt.coprime_prime_limit, opt.factor, cache))
        refuted.lambda_forcing.push_back(make_witness(lambda, std::move(cert)));

    return refuted;
}

bool replay_refutation(const BigRat& lambda, const BigRat& xi, unsigned long d,
                       const RefutedCase& refuted) {
    bool contradiction = false;
    std::vector<BigInt> xi_primes;
    for (const auto& w : refuted.xi_forcing) {
        if (!w.order_certificate.replay()) return false;
        if (w.order_certificate.lambda != lambda || w.order_certificate.order != w.claimed_order)
            return false;
        // claimed_order must be a d-power
        BigInt o = w.claimed_order;
        while (o > 1 && mpz_divisible_ui_p(o.get_mpz_t(), d)) o /= static_cast<unsigned long>(d);
        if (o != 1) return false;
        if (residue_mod(xi, w.p) != w.check_value || w.forced_value != 1) return false;
        if (w.consistent != (w.check_value == w.forced_value)) return false;
        if (!w.consistent) contradiction = true;
        xi_primes.push_back(w.p);
    }
    std::sort(xi_primes.begin(), xi_primes.end());
    if (std::adjacent_find(xi_primes.begin(), xi_primes.end()) != xi_primes.end())
        return false; // witness primes must be pairwise distinct
    for (const auto& w : refuted.lambda_forcing) {
        if (!w.order_certificate.replay()) return false;
        if (w.order_certificate.lambda != lambda || w.order_certificate.order != w.claimed_order)
            return false;
        if (gcd(w.claimed_order, BigInt(d)) != 1 || w.claimed_order < 2) return false;
        if (residue_mod(lambda, w.p) != w.check_value || w.forced_value != 1) return false;
        if (w.consistent != (w.check_value == w.forced_value)) return false;
        if (!w.consistent) contradiction = true;
    }
    return contradiction;
}

ZhatVerdict zhat_power_limit(unsigned long d, const BigInt& m) {
    if (d < 2) throw Error(ErrorKind::invalid_input, "d >= 2 required");
    ZhatVerdict v;
    // smallest prime factor of d, and smallest prime coprime to d
    for (unsigned long p = 2; p * p <= d && v.prime_dividing_d == 0; ++p)
        if (d % p == 0) v.prime_dividing_d = p;
    if (v.prime_dividing_d == 0) v.prime_dividing_d = d; // d itself is prime
    for (BigInt q = 2; v.prime_not_dividing_d == 0; q = next_prime(q))
        if (!mpz_divisible_p(BigInt(d).get_mpz_t(), q.get_mpz_t())) v.prime_not_dividing_d = q;
    if (m == 0) {
        v.conflict = ZhatVerdict::Conflict::at_nondividing_prime;
        v.detail = "|" + std::to_string(d) + "^r|_q = 1 for q=" + v.prime_not_dividing_d.get_str() +
                   " at every r, but |0|_q = 0; d-powers stay q-adic units";
    } else {
        v.conflict = ZhatVerdict::Conflict::at_dividing_prime;
        const long vp = int_valuation(m, v.prime_dividing_d);
        v.detail = "v_p(" + std::to_string(d) + "^r) = r*v_p(d) grows without bound for p=" +
                   v.prime_dividing_d.get_str() + ", but v_p(" + m.get_str() + ") = " +
                   std::to_string(vp) + " is fixed; d^r -> 0 while m != 0";
    }
    return v;
}

} // namespace orbitobs
