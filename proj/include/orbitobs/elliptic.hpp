#pragma once

// Short Weierstrass curves y^2 = x^3 + a4 x + a6 with integral a4, a6,
// over Q and over F_p. Primes 2 and 3 are always treated as bad, so
// reduction and minimality stay trivial; the theorems only ever need
// infinitely many good primes.
//
// Group orders come from exhaustive counting below a threshold and from
// baby-step/giant-step order finding over the Hasse interval above it;
// either way the result is checked against the Hasse bound.

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "orbitobs/factor.hpp"
#include "orbitobs/rational.hpp"

namespace orbitobs {

struct EllipticCurveQ {
    BigInt a4, a6;

    EllipticCurveQ(BigInt a4_, BigInt a6_); // throws when the discriminant vanishes
    BigInt discriminant() const;            // -16(4 a4^3 + 27 a6^2)
};

struct ECPoint {
    bool infinity = true;
    BigRat x, y;

    static ECPoint inf() { return {}; }
    static ECPoint affine(BigRat x0, BigRat y0) { return {false, std::move(x0), std::move(y0)}; }
    bool operator==(const ECPoint&) const = default;
};

// Reduction of a curve mod a good prime p >= 5.
struct CurveFp {
    BigInt p, a4, a6;
};

struct PointFp {
    bool infinity = true;
    BigInt x, y; // in [0, p)

    bool operator==(const PointFp&) const = default;
};

bool on_curve(const EllipticCurveQ& E, const ECPoint& P);
ECPoint ec_neg(const ECPoint& P);
ECPoint ec_add(const EllipticCurveQ& E, const ECPoint& P, const ECPoint& Q);
ECPoint ec_scalar_mul(const EllipticCurveQ& E, const BigInt& m, const ECPoint& P);

// true iff p > 3 and p does not divide the discriminant
bool good_reduction(const EllipticCurveQ& E, const BigInt& p);

// Throws SingularReduction when reduction mod p is not an elliptic curve.
CurveFp reduce_curve(const EllipticCurveQ& E, const BigInt& p);

// Coordinatewise reduction; a p in the denominator sends the point to
// infinity. Throws BadReductionPrime at bad primes.
PointFp reduce_point(const EllipticCurveQ& E, const ECPoint& P, const BigInt& p);

bool fp_on_curve(const CurveFp& E, const PointFp& P);
PointFp fp_neg(const CurveFp& E, const PointFp& P);
PointFp fp_add(const CurveFp& E, const PointFp& P, const PointFp& Q);
PointFp fp_scalar_mul(const CurveFp& E, const BigInt& m, const PointFp& P);

struct GroupOrderOptions {
    unsigned long exhaustive_threshold = 10000; // full point count below this
    FactorOptions factor;
};

// #E(F_p) for a good prime, verified to lie in the Hasse interval.
BigInt group_order(const EllipticCurveQ& E, const BigInt& p, const GroupOrderOptions& opt = {},
                   FactorCacheMap* cache = nullptr);

// Proof that f = point_order is exactly the order of reduced_point:
// [f]Pbar = O and [f/q]Pbar != O for every prime q | f.
struct ECOrderCertificate {
    BigInt p;
    BigInt group_order;  // N, inside the Hasse interval
    BigInt point_order;  // f, divides N
    PointFp reduced_point;
    std::vector<std::pair<BigInt, unsigned>> order_factorization;
    std::vector<std::pair<BigInt, PointFp>> maximality_witnesses; // (q, [f/q]Pbar)

    bool replay(const EllipticCurveQ& E) const;

    bool operator==(const ECOrderCertificate&) const = default;
};

// Exact order of P mod p, by factoring the group order and descending.
ECOrderCertificate point_order_mod_p(const EllipticCurveQ& E, const ECPoint& P, const BigInt& p,
                                     const GroupOrderOptions& opt = {},
                                     FactorCacheMap* cache = nullptr);

struct ECSpectrumReport {
    BigInt a4, a6;
    ECPoint point;
    unsigned long n_max = 0;
    BigInt p_max;
    std::map<unsigned long, ECOrderCertificate> realized; // n -> certificate at smallest good p
    std::vector<unsigned long> missing;

    bool operator==(const ECSpectrumReport&) const = default;
};

// For each n <= n_max the smallest good p <= p_max with f_p(P) = n.
// Throws TorsionPoint when P is torsion.
ECSpectrumReport elliptic_order_spectrum(const EllipticCurveQ& E, const ECPoint& P,
                                         unsigned long n_max, const BigInt& p_max,
                                         const GroupOrderOptions& opt = {},
                                         FactorCacheMap* cache = nullptr);

// Decided by reduction at two good primes: a torsion point reduces
// injectively, so its order is the common reduced order, which is then
// checked exactly over Q.
bool is_torsion(const EllipticCurveQ& E, const ECPoint& P, const GroupOrderOptions& opt = {},
                FactorCacheMap* cache = nullptr);

// One congruence witness for the translated-subvariety test: a good
// prime with f_p(Pbar) = d^n, at which the limit hypothesis forces
// Tbar == O (mod p).
struct ECWitness {
    BigInt p;
    unsigned long n = 0; // claimed order is d^n
    ECOrderCertificate certificate;
    bool tbar_zero_mod_p = false;

    bool operator==(const ECWitness&) const = default;
};

struct TorsionOrbitOutcome { // Pbar torsion: the d-power orbit is finite
    bool member = false;
    std::optional<unsigned long> matching_n;
    std::vector<ECPoint> orbit_values;

    bool operator==(const TorsionOrbitOutcome&) const = default;
};

struct ForcedZeroOutcome { // every witness consistent with Tbar = O
    std::vector<ECWitness> witnesses;

    bool operator==(const ForcedZeroOutcome&) const = default;
};

struct ContradictionOutcome { // some witness shows Tbar != O (mod p)
    std::vector<ECWitness> witnesses;
    std::size_t first_contradiction = 0;

    bool operator==(const ContradictionOutcome&) const = default;
};

using TranslateOutcome = std::variant<TorsionOrbitOutcome, ForcedZeroOutcome, ContradictionOutcome>;

struct TranslateOptions {
    unsigned long witness_budget = 3;
    unsigned long max_power_index = 8; // witnesses searched for orders d^1 .. d^max
    GroupOrderOptions order;
};

// The congruence core of the translated-subvariety theorem on the
// elliptic quotient: witness primes with f_p(Pbar) = d^n each force
// Tbar == O (mod p) under the limit hypothesis. Witness primes are dug
// out of the denominators of x([d^n]Pbar), mirroring how the orders
// arise.
TranslateOutcome translated_subvariety_check(const EllipticCurveQ& E, const ECPoint& Pbar,
                                             const ECPoint& Tbar, unsigned long d,
                                             const TranslateOptions& opt = {},
                                             FactorCacheMap* cache = nullptr);

} // namespace orbitobs
