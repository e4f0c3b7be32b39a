#include "orbitobs/elliptic.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace orbitobs {

EllipticCurveQ::EllipticCurveQ(BigInt a4_, BigInt a6_) : a4(std::move(a4_)), a6(std::move(a6_)) {
    if (discriminant() == 0)
        throw Error(ErrorKind::invalid_input, "singular curve: 4*a4^3 + 27*a6^2 = 0");
}

BigInt EllipticCurveQ::discriminant() const { return -16 * (4 * a4 * a4 * a4 + 27 * a6 * a6); }

bool on_curve(const EllipticCurveQ& E, const ECPoint& P) {
    if (P.infinity) return true;
    return P.y * P.y == P.x * P.x * P.x + BigRat(E.a4) * P.x + BigRat(E.a6);
}

ECPoint ec_neg(const ECPoint& P) {
    if (P.infinity) return P;
    return ECPoint::affine(P.x, -P.y);
}

ECPoint ec_add(const EllipticCurveQ& E, const ECPoint& P, const ECPoint& Q) {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    if (P.x == Q.x && P.y == -Q.y) return ECPoint::inf();
    BigRat s;
    if (P.x == Q.x)
        s = (3 * P.x * P.x + BigRat(E.a4)) / (2 * P.y); // tangent
    else
        s = (Q.y - P.y) / (Q.x - P.x); // chord
    const BigRat x3 = s * s - P.x - Q.x;
    return ECPoint::affine(x3, s * (P.x - x3) - P.y);
}

ECPoint ec_scalar_mul(const EllipticCurveQ& E, const BigInt& m, const ECPoint& P) {
    if (m < 0) return ec_neg(ec_scalar_mul(E, -m, P));
    ECPoint acc = ECPoint::inf(), base = P;
    BigInt k = m;
    while (k != 0) {
        if (mpz_odd_p(k.get_mpz_t())) acc = ec_add(E, acc, base);
        k >>= 1;
        if (k != 0) base = ec_add(E, base, base);
    }
    return acc;
}

bool good_reduction(const EllipticCurveQ& E, const BigInt& p) {
    if (p < 5) return false;
    return !mpz_divisible_p(E.discriminant().get_mpz_t(), p.get_mpz_t());
}

CurveFp reduce_curve(const EllipticCurveQ& E, const BigInt& p) {
    if (!good_reduction(E, p))
        throw SingularReduction("p=" + p.get_str() + " is a prime of bad reduction");
    BigInt a4 = E.a4 % p, a6 = E.a6 % p;
    if (a4 < 0) a4 += p;
    if (a6 < 0) a6 += p;
    return {p, a4, a6};
}

PointFp reduce_point(const EllipticCurveQ& E, const ECPoint& P, const BigInt& p) {
    if (!good_reduction(E, p))
        throw BadReductionPrime("p=" + p.get_str() + " is a prime of bad reduction");
    if (P.infinity) return {};
    if (mpz_divisible_p(den(P.x).get_mpz_t(), p.get_mpz_t())) {
        // the section through P meets the zero section mod p
        if (!mpz_divisible_p(den(P.y).get_mpz_t(), p.get_mpz_t()))
            throw InternalInvariantViolation("x-denominator divisible by p but y-denominator is not");
        return {};
    }
    return {false, residue_mod(P.x, p), residue_mod(P.y, p)};
}

bool fp_on_curve(const CurveFp& E, const PointFp& P) {
    if (P.infinity) return true;
    return (P.y * P.y - (P.x * P.x * P.x + E.a4 * P.x + E.a6)) % E.p == 0;
}

PointFp fp_neg(const CurveFp& E, const PointFp& P) {
    if (P.infinity || P.y == 0) return P;
    return {false, P.x, E.p - P.y};
}

namespace {

BigInt inv_mod(const BigInt& a, const BigInt& p) {
    BigInt r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()))
        throw InternalInvariantViolation("non-invertible element mod prime " + p.get_str());
    return r;
}

BigInt mod_p(const BigInt& a, const BigInt& p) {
    BigInt r = a % p;
    if (r < 0) r += p;
    return r;
}

} // namespace

PointFp fp_add(const CurveFp& E, const PointFp& P, const PointFp& Q) {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    if (P.x == Q.x && mod_p(P.y + Q.y, E.p) == 0) return {};
    BigInt s;
    if (P.x == Q.x)
        s = mod_p((3 * P.x * P.x + E.a4) * inv_mod(mod_p(2 * P.y, E.p), E.p), E.p);
    else
        s = mod_p((Q.y - P.y) * inv_mod(mod_p(Q.x - P.x, E.p), E.p), E.p);
    const BigInt x3 = mod_p(s * s - P.x - Q.x, E.p);
    return {false, x3, mod_p(s * (P.x - x3) - P.y, E.p)};
}

PointFp fp_scalar_mul(const CurveFp& E, const BigInt& m, const PointFp& P) {
    if (m < 0) return fp_neg(E, fp_scalar_mul(E, -m, P));
    PointFp acc, base = P;
    BigInt k = m;
    while (k != 0) {
        if (mpz_odd_p(k.get_mpz_t())) acc = fp_add(E, acc, base);
        k >>= 1;
        if (k != 0) base = fp_add(E, base, base);
    }
    return acc;
}

namespace {

// Tonelli-Shanks. Requires jacobi(a, p) != -1.
BigInt sqrt_mod(const BigInt& a0, const BigInt& p) {
    const BigInt a = mod_p(a0, p);
    if (a == 0) return 0;
    if (mpz_tstbit(p.get_mpz_t(), 1) == 1) { // p == 3 (mod 4)
        return powmod(a, (p + 1) / 4, p);
    }
    BigInt q = p - 1;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q >>= 1;
        ++s;
    }
    BigInt z = 2;
    while (mpz_jacobi(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
    BigInt m(s), c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        BigInt t2 = t;
        unsigned long i = 0;
        while (t2 != 1) {
            t2 = t2 * t2 % p;
            ++i;
        }
        BigInt b = c;
        for (BigInt j = 0; j < m - i - 1; ++j) b = b * b % p;
        m = BigInt(i);
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return r;
}

BigInt exhaustive_group_order(const CurveFp& E) {
    // N = p + 1 + sum_x chi(x^3 + a4 x + a6)
    BigInt n = E.p + 1;
    BigInt t;
    for (BigInt x = 0; x < E.p; ++x) {
        t = mod_p(x * x * x + E.a4 * x + E.a6, E.p);
        if (t != 0) n += mpz_jacobi(t.get_mpz_t(), E.p.get_mpz_t());
    }
    return n;
}

bool hasse_ok(const BigInt& n, const BigInt& p) {
    const BigInt d = n - (p + 1);
    return d * d <= 4 * p;
}

// Smallest m in [lo, hi] with [m]Q = O (Q != O). Such m exists because
// the group order is in the interval.
BigInt find_kill_exponent(const CurveFp& E, const PointFp& Q, const BigInt& lo, const BigInt& hi) {
    const BigInt width = hi - lo + 1;
    BigInt s_big;
    mpz_sqrt(s_big.get_mpz_t(), width.get_mpz_t());
    const unsigned long s = s_big.get_ui() + 1;

    std::map<std::pair<BigInt, BigInt>, unsigned long> baby;
    PointFp R; // [i]Q
    for (unsigned long i = 0; i < s; ++i) {
        if (i > 0 && R.infinity) {
            // ord(Q) = i exactly; return its first multiple in range
            BigInt f(i);
            BigInt k = (lo + f - 1) / f;
            return k * f;
        }
        if (!R.infinity) baby.try_emplace({R.x, R.y}, i);
        R = fp_add(E, R, Q);
    }
    const PointFp giant = fp_scalar_mul(E, BigInt(s), Q);
    PointFp C = fp_scalar_mul(E, lo, Q); // [lo + j*s]Q
    for (BigInt j = 0;; ++j) {
        if (lo + j * s > hi) break;
        if (C.infinity) return lo + j * s; // i = 0
        const PointFp negC = fp_neg(E, C);
        auto it = baby.find({negC.x, negC.y});
        if (it != baby.end()) {
            const BigInt m = lo + j * s + it->second;
            if (m <= hi) return m;
        }
        C = fp_add(E, C, giant);
    }
    throw InternalInvariantViolation("no annihilating exponent in the Hasse interval");
}

// Exact order of Q given a multiple m of it.
BigInt order_from_multiple(const CurveFp& E, const PointFp& Q, const BigInt& m,
                           const FactorOptions& fopt, FactorCacheMap* cache) {
    BigInt f = m;
    for (const auto& [q, e] : factor(m, fopt, cache).factors) {
        for (unsigned i = 0; i < e; ++i) {
            if (!mpz_divisible_p(f.get_mpz_t(), q.get_mpz_t())) break;
            const BigInt candidate = f / q;
            if (!fp_scalar_mul(E, candidate, Q).infinity) break;
            f = candidate;
        }
    }
    return f;
}

// Deterministic point sequence: first x with chi(x^3+a4x+a6) != -1.
PointFp point_on_curve(const CurveFp& E, BigInt& x_cursor) {
    for (;; ++x_cursor) {
        if (x_cursor >= E.p) throw InternalInvariantViolation("no points found on curve");
        const BigInt t = mod_p(x_cursor * x_cursor * x_cursor + E.a4 * x_cursor + E.a6, E.p);
        if (t == 0) {
            const BigInt x = x_cursor++;
            return {false, x, 0};
        }
        if (mpz_jacobi(t.get_mpz_t(), E.p.get_mpz_t()) == 1) {
            const BigInt y = sqrt_mod(t, E.p);
            const BigInt x = x_cursor++;
            return {false, x, y};
        }
    }
}

BigInt group_order_fp(const CurveFp& E, const GroupOrderOptions& opt, FactorCacheMap* cache) {
    if (E.p <= opt.exhaustive_threshold) {
        const BigInt n = exhaustive_group_order(E);
        if (!hasse_ok(n, E.p)) throw InternalInvariantViolation("group order outside Hasse interval");
        return n;
    }
    BigInt sqrt_p;
    mpz_sqrt(sqrt_p.get_mpz_t(), E.p.get_mpz_t());
    const BigInt lo = std::max(BigInt(1), BigInt(E.p + 1 - 2 * sqrt_p - 2));
    const BigInt hi = E.p + 1 + 2 * sqrt_p + 2;

    // lcm of point orders until a unique multiple survives in the interval
    BigInt L = 1, x_cursor = 0;
    for (int attempt = 0; attempt < 40; ++attempt) {
        const PointFp Q = point_on_curve(E, x_cursor);
        if (Q.infinity) continue;
        const BigInt m = find_kill_exponent(E, Q, lo, hi);
        const BigInt ord = order_from_multiple(E, Q, m, opt.factor, cache);
        L = lcm(L, ord);
        const BigInt k_lo = (lo + L - 1) / L, k_hi = hi / L;
        if (k_lo == k_hi) {
            const BigInt n = k_lo * L;
            if (!hasse_ok(n, E.p))
                throw InternalInvariantViolation("group order outside Hasse interval");
            return n;
        }
    }
    // ambiguity persists (tiny group exponent); count honestly
    const BigInt n = exhaustive_group_order(E);
    if (!hasse_ok(n, E.p)) throw InternalInvariantViolation("group order outside Hasse interval");
    return n;
}

} // namespace

BigInt group_order(const EllipticCurveQ& E, const BigInt& p, const GroupOrderOptions& opt,
                   FactorCacheMap* cache) {
    return group_order_fp(reduce_curve(E, p), opt, cache);
}

bool ECOrderCertificate::replay(const EllipticCurveQ& E) const {
    CurveFp C;
    try {
        C = reduce_curve(E, p);
    } catch (const SingularReduction&) {
        return false;
    }
    if (!hasse_ok(group_order, p)) return false;
    if (!mpz_divisible_p(group_order.get_mpz_t(), point_order.get_mpz_t())) return false;
    if (!fp_on_curve(C, reduced_point)) return false;
    if (!fp_scalar_mul(C, point_order, reduced_point).infinity) return false;
    BigInt rebuilt = 1;
    for (const auto& [q, e] : order_factorization) {
        if (!is_prime(q)) return false;
        rebuilt *= pow_int(q, e);
    }
    if (rebuilt != point_order) return false;
    BigInt rest = point_order;
    for (const auto& [q, witness] : maximality_witnesses) {
        if (!mpz_divisible_p(point_order.get_mpz_t(), q.get_mpz_t())) return false;
        if (witness.infinity) return false;
        if (fp_scalar_mul(C, point_order / q, reduced_point) != witness) return false;
        while (mpz_divisible_p(rest.get_mpz_t(), q.get_mpz_t())) rest /= q;
    }
    return rest == 1; // every prime of the order carries a witness
}

ECOrderCertificate point_order_mod_p(const EllipticCurveQ& E, const ECPoint& P, const BigInt& p,
                                     const GroupOrderOptions& opt, FactorCacheMap* cache) {
    const CurveFp C = reduce_curve(E, p); // good_reduction or SingularReduction
    const PointFp Pbar = reduce_point(E, P, p);
    ECOrderCertificate cert;
    cert.p = p;
    cert.reduced_point = Pbar;
    cert.group_order = group_order_fp(C, opt, cache);
    if (Pbar.infinity) {
        cert.point_order = 1;
        return cert;
    }
    const BigInt f = order_from_multiple(C, Pbar, cert.group_order, opt.factor, cache);
    cert.point_order = f;
    cert.order_factorization = factor(f, opt.factor, cache).factors;
    for (const auto& [q, e] : cert.order_factorization)
        cert.maximality_witnesses.emplace_back(q, fp_scalar_mul(C, f / q, Pbar));
    return cert;
}

namespace {

std::vector<BigInt> good_primes_from(const EllipticCurveQ& E, const BigInt& start, int count) {
    std::vector<BigInt> out;
    BigInt p = start < 5 ? BigInt(4) : BigInt(start - 1);
    while (static_cast<int>(out.size()) < count) {
        p = next_prime(p);
        if (good_reduction(E, p)) out.push_back(p);
    }
    return out;
}

} // namespace

bool is_torsion(const EllipticCurveQ& E, const ECPoint& P, const GroupOrderOptions& opt,
                FactorCacheMap* cache) {
    if (P.infinity) return true;
    if (!on_curve(E, P)) throw Error(ErrorKind::invalid_input, "point is not on the curve");
    const auto primes = good_primes_from(E, 5, 2);
    BigInt orders[2];
    for (int i = 0; i < 2; ++i) {
        const ECOrderCertificate cert = point_order_mod_p(E, P, primes[i], opt, cache);
        // an affine point reducing to O at a good prime p >= 5 sits in the
        // kernel of reduction, which contains no nonzero torsion
        if (cert.reduced_point.infinity) return false;
        orders[i] = cert.point_order;
    }
    if (orders[0] != orders[1]) return false; // torsion reduces injectively with its order intact
    return ec_scalar_mul(E, orders[0], P).infinity;
}

ECSpectrumReport elliptic_order_spectrum(const EllipticCurveQ& E, const ECPoint& P,
                                         unsigned long n_max, const BigInt& p_max,
                                         const GroupOrderOptions& opt, FactorCacheMap* cache) {
    if (is_torsion(E, P, opt, cache))
        throw TorsionPoint("spectrum needs a nontorsion point");
    ECSpectrumReport report;
    report.a4 = E.a4;
    report.a6 = E.a6;
    report.point = P;
    report.n_max = n_max;
    report.p_max = p_max;

    BigInt L = 1;
    for (unsigned long n = 1; n <= n_max; ++n) L = lcm(L, BigInt(n));

    for (BigInt p = next_prime(BigInt(4)); p <= p_max; p = next_prime(p)) {
        if (report.realized.size() == n_max) break;
        if (!good_reduction(E, p)) continue;
        const CurveFp C = reduce_curve(E, p);
        const PointFp Pbar = reduce_point(E, P, p);
        unsigned long f_small = 0;
        if (Pbar.infinity) {
            f_small = 1;
        } else {
            // f <= n_max forces f | lcm(1..n_max); one scalar multiple
            // filters almost every prime before any group order is computed
            if (!fp_scalar_mul(C, L, Pbar).infinity) continue;
            const BigInt f = order_from_multiple(C, Pbar, L, opt.factor, cache);
            if (f > n_max) continue;
            f_small = f.get_ui();
        }
        if (report.realized.count(f_small)) continue;
        ECOrderCertificate cert = point_order_mod_p(E, P, p, opt, cache);
        if (cert.point_order != f_small)
            throw InternalInvariantViolation("descent order disagrees with certificate");
        report.realized.emplace(f_small, std::move(cert));
    }
    for (unsigned long n = 1; n <= n_max; ++n)
        if (!report.realized.count(n)) report.missing.push_back(n);
    return report;
}

TranslateOutcome translated_subvariety_check(const EllipticCurveQ& E, const ECPoint& Pbar,
                                             const ECPoint& Tbar, unsigned long d,
                                             const TranslateOptions& opt, FactorCacheMap* cache) {
    if (d < 2) throw Error(ErrorKind::invalid_input, "d >= 2 required");
    if (!on_curve(E, Pbar) || !on_curve(E, Tbar))
        throw Error(ErrorKind::invalid_input, "point is not on the curve");

    if (is_torsion(E, Pbar, opt.order, cache)) {
        // the d-power orbit [d^n]Pbar is finite; membership is checked exactly
        TorsionOrbitOutcome out;
        std::map<std::pair<bool, std::pair<BigRat, BigRat>>, unsigned long> seen;
        ECPoint v = Pbar;
        for (unsigned long n = 0;; ++n) {
            if (!out.member && v == Tbar) {
                out.member = true;
                out.matching_n = n;
            }
            auto key = std::make_pair(v.infinity, std::make_pair(v.x, v.y));
            if (seen.count(key)) break;
            seen.emplace(key, n);
            out.orbit_values.push_back(v);
            v = ec_scalar_mul(E, BigInt(d), v);
            if (n > 128) throw InternalInvariantViolation("torsion orbit failed to close");
        }
        return out;
    }

    // witness primes with f_p(Pbar) = d^n live in the denominators of
    // x([d^n]Pbar); strip the primes of earlier multiples and verify the
    // exact order for each candidate found within the factoring budget
    std::vector<ECWitness> witnesses;
    BigInt seen_primes = den(Pbar.infinity ? BigRat(1) : Pbar.x);
    ECPoint Q = Pbar;
    for (unsigned long n = 1; n <= opt.max_power_index; ++n) {
        if (witnesses.size() >= opt.witness_budget) break;
        Q = ec_scalar_mul(E, BigInt(d), Q);
        if (Q.infinity) break; // cannot happen for nontorsion Pbar
        BigInt D = den(Q.x);
        // primitive part: remove every prime dividing earlier denominators
        for (BigInt g = gcd(D, seen_primes); g > 1; g = gcd(D, seen_primes)) D /= g;
        seen_primes *= den(Q.x);
        if (D == 1) continue;
        std::vector<BigInt> candidates;
        if (mpz_sizeinbase(D.get_mpz_t(), 2) > 4096) {
            // the primitive part grows like d^(2n); beyond a few thousand
            // bits only trial division (and a primality check of the
            // cofactor) stays inside any reasonable budget
            BigInt rest = D;
            for (unsigned long q : primes_up_to(opt.order.factor.trial_bound)) {
                if (mpz_divisible_ui_p(rest.get_mpz_t(), q)) candidates.push_back(BigInt(q));
                while (mpz_divisible_ui_p(rest.get_mpz_t(), q))
                    mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), q);
            }
            if (rest > 1 && is_prime(rest)) candidates.push_back(rest);
        } else {
            try {
                for (const auto& [q, e] : factor(D, opt.order.factor, cache).factors)
                    candidates.push_back(q);
            } catch (const FactorizationTimeout&) {
                for (unsigned long q : primes_up_to(opt.order.factor.trial_bound))
                    if (mpz_divisible_ui_p(D.get_mpz_t(), q)) candidates.push_back(BigInt(q));
            }
        }
        for (const BigInt& p : candidates) {
            if (witnesses.size() >= opt.witness_budget) break;
            if (!good_reduction(E, p)) continue;
            // order verification walks the Hasse interval in ~p^(1/4)
            // steps; word-sized primes keep that and the baby-step table
            // within budget
            if (mpz_sizeinbase(p.get_mpz_t(), 2) > 64) continue;
            ECOrderCertificate cert = point_order_mod_p(E, Pbar, p, opt.order, cache);
            if (cert.point_order != pow_int(BigInt(d), n)) continue; // not the exact order d^n
            ECWitness w;
            w.p = p;
            w.n = n;
            w.tbar_zero_mod_p = reduce_point(E, Tbar, p).infinity;
            w.certificate = std::move(cert);
            witnesses.push_back(std::move(w));
        }
    }
    if (witnesses.size() < opt.witness_budget)
        throw InsufficientWitnesses("only " + std::to_string(witnesses.size()) + " of " +
                                    std::to_string(opt.witness_budget) +
                                    " d-power-order primes within the power-index cap");
    for (std::size_t i = 0; i < witnesses.size(); ++i)
        if (!witnesses[i].tbar_zero_mod_p) return ContradictionOutcome{std::move(witnesses), i};
    return ForcedZeroOutcome{std::move(witnesses)};
}

} // namespace orbitobs
