#pragma once

// Residue-level engine for v-adic limit claims: decides or refutes
// "xi = v-lim lambda^{d^n} for all v outside S" through finitely many
// congruence witnesses, and runs the profinite d-power limit argument.
//
// A refutation transcript is machine-checkable: each witness pins an
// order certificate and a congruence that the limit hypothesis would
// force, together with the residue actually observed.

#include <optional>
#include <variant>
#include <vector>

#include "orbitobs/mult_order.hpp"
#include "orbitobs/rational.hpp"

namespace orbitobs {

struct CongruenceWitness {
    BigInt p;
    BigInt claimed_order;   // f_p(lambda): d^n in the xi phase, m coprime to d in the lambda phase
    BigInt check_value;     // residue mod p of the quantity the hypothesis constrains
    BigInt forced_value;    // what the hypothesis forces (always 1)
    bool consistent = true; // check_value == forced_value
    OrderCertificate order_certificate;

    bool operator==(const CongruenceWitness&) const = default;
};

struct RootOfUnityCase {
    std::vector<BigRat> limit_set;           // values taken infinitely often; closed under d-powering
    std::optional<unsigned long> matching_r; // minimal r >= 0 with lambda^{d^r} == xi

    bool operator==(const RootOfUnityCase&) const = default;
};

struct RefutedCase {
    std::vector<CongruenceWitness> xi_forcing;     // orders d^{n_i}, pairwise distinct primes
    std::vector<CongruenceWitness> lambda_forcing; // orders >= 2 coprime to d

    bool operator==(const RefutedCase&) const = default;
};

using PowerLimitOutcome = std::variant<RootOfUnityCase, RefutedCase>;

struct PowerLimitOptions {
    unsigned long witness_budget = 3;
    unsigned long max_order = 4096;  // cap on d^n searched in the xi phase
    BigInt coprime_prime_limit = 1000000; // prime budget for the lambda phase
    FactorOptions factor;
};

// lambda^{d^n} mod p^e for each listed n, via exponent reduction
// d^n mod phi(p^e). The proofs only ever use first-order congruences;
// e > 1 is an exploration knob and defaults to 1.
std::vector<BigInt> residue_orbit(const BigRat& lambda, unsigned long d, const BigInt& p,
                                  const std::vector<unsigned long>& n_list,
                                  unsigned long prime_power = 1);

// Proposition-4 decision. lambda in {+-1}: the finite limit set and the
// minimal matching exponent. Otherwise a two-phase refutation transcript:
// primes with f_p(lambda) = d^n force xi == 1 (mod p); primes with order
// coprime to d then force lambda == 1 (mod p), which their own order
// certificate contradicts.
PowerLimitOutcome power_limit_decide(const BigRat& lambda, const BigRat& xi, unsigned long d,
                                     const PowerLimitOptions& opt = {},
                                     FactorCacheMap* cache = nullptr);

// Re-runs every congruence in a transcript; a Refuted outcome must
// contain at least one numerically false forced congruence.
bool replay_refutation(const BigRat& lambda, const BigRat& xi, unsigned long d,
                       const RefutedCase& refuted);

struct ZhatVerdict {
    bool converges = false; // an unbounded d-power sequence never converges to an integer
    BigInt prime_dividing_d;     // forces m = 0 (d^r -> 0 in Z_p)
    BigInt prime_not_dividing_d; // forces |m|_q = 1 (d^r stays a q-unit)
    enum class Conflict { at_dividing_prime, at_nondividing_prime } conflict;
    std::string detail;

    bool operator==(const ZhatVerdict&) const = default;
};

// Can d^{r_i} -> m in Zhat along an unbounded sequence r_i? Never: a
// prime dividing d forces m = 0 while a prime not dividing d forces
// |m|_q = 1.
ZhatVerdict zhat_power_limit(unsigned long d, const BigInt& m);

} // namespace orbitobs
