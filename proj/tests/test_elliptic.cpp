#include <doctest.h>

#include <random>

#include "orbitobs/elliptic.hpp"

using namespace orbitobs;

namespace {

const EllipticCurveQ E2(0, -2);            // y^2 = x^3 - 2
const ECPoint P35 = ECPoint::affine(3, 5); // nontorsion on E2

// naive full enumeration of E(F_p) by x-scan, for the oracle side
std::vector<PointFp> enumerate_points(const CurveFp& E) {
    std::vector<PointFp> pts{PointFp{}};
    for (BigInt x = 0; x < E.p; ++x) {
        const BigInt t = (x * x * x + E.a4 * x + E.a6) % E.p;
        for (BigInt y = 0; y < E.p; ++y)
            if ((y * y - t) % E.p == 0) pts.push_back(PointFp{false, x, y});
    }
    return pts;
}

BigInt naive_point_order(const CurveFp& E, const PointFp& P) {
    BigInt k = 1;
    PointFp R = P;
    while (!R.infinity) {
        R = fp_add(E, R, P);
        ++k;
    }
    return k;
}

} // namespace

TEST_CASE("curve construction rejects singular curves") {
    CHECK_THROWS_AS(EllipticCurveQ(0, 0), Error);
    CHECK_THROWS_AS(EllipticCurveQ(-3, 2), Error); // 4*(-27) + 27*4 = 0
    CHECK(E2.discriminant() == -1728);
}

TEST_CASE("ec_add on the worked examples") {
    CHECK(ec_add(E2, P35, ECPoint::inf()) == P35);
    CHECK(ec_add(E2, P35, ec_neg(P35)) == ECPoint::inf());
    const ECPoint dbl = ec_add(E2, P35, P35);
    CHECK(dbl == ECPoint::affine(BigRat(129, 100), BigRat(-383, 1000)));
    CHECK(on_curve(E2, dbl));
}

TEST_CASE("ec_scalar_mul on the worked examples") {
    CHECK(ec_scalar_mul(E2, 1, P35) == P35);
    CHECK(ec_scalar_mul(E2, 2, P35) == ec_add(E2, P35, P35));
    CHECK(ec_scalar_mul(E2, 0, P35) == ECPoint::inf());
    CHECK(ec_scalar_mul(E2, -3, P35) == ec_neg(ec_scalar_mul(E2, 3, P35)));
    // [m+n]P = [m]P + [n]P on a few values
    for (long m : {2L, 5L, 9L})
        CHECK(ec_scalar_mul(E2, m + 4, P35) ==
              ec_add(E2, ec_scalar_mul(E2, m, P35), ec_scalar_mul(E2, 4, P35)));
}

TEST_CASE("group law is commutative and associative over F_p and Q") {
    std::mt19937 rng(59);
    for (unsigned long p : {11ul, 101ul, 997ul}) {
        const CurveFp C = reduce_curve(E2, p);
        const auto pts = enumerate_points(C);
        std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
        for (int trial = 0; trial < 40; ++trial) {
            const PointFp a = pts[pick(rng)], b = pts[pick(rng)], c = pts[pick(rng)];
            CHECK(fp_add(C, a, b) == fp_add(C, b, a));
            CHECK(fp_add(C, fp_add(C, a, b), c) == fp_add(C, a, fp_add(C, b, c)));
        }
    }
    // over Q with small multiples of P35
    std::vector<ECPoint> pts{ECPoint::inf()};
    for (long m = 1; m <= 5; ++m) pts.push_back(ec_scalar_mul(E2, m, P35));
    for (const auto& a : pts)
        for (const auto& b : pts) {
            CHECK(ec_add(E2, a, b) == ec_add(E2, b, a));
            for (const auto& c : pts)
                CHECK(ec_add(E2, ec_add(E2, a, b), c) == ec_add(E2, a, ec_add(E2, b, c)));
        }
}

TEST_CASE("good_reduction on the worked examples") {
    CHECK(good_reduction(E2, 5));
    CHECK_FALSE(good_reduction(E2, 2));
    CHECK_FALSE(good_reduction(E2, 3));
    CHECK(good_reduction(E2, 7));
    CHECK_THROWS_AS(reduce_curve(E2, 3), SingularReduction);
}

TEST_CASE("reduce_point on the worked examples") {
    const PointFp r = reduce_point(E2, P35, 7);
    CHECK(r == PointFp{false, 3, 5});
    CHECK(fp_on_curve(reduce_curve(E2, 7), r));
    CHECK(reduce_point(E2, ECPoint::inf(), 7).infinity);
    const ECPoint dbl = ec_scalar_mul(E2, 2, P35); // denominator 100
    CHECK(reduce_point(E2, dbl, 5).infinity);
    CHECK_THROWS_AS(reduce_point(E2, P35, 2), BadReductionPrime);
}

TEST_CASE("group_order on the worked examples") {
    CHECK(group_order(E2, 5) == 6);
    CHECK(group_order(EllipticCurveQ(0, 1), 5) == 6);
    CHECK(group_order(E2, 7) == 7);
}

TEST_CASE("group_order agrees with enumeration for p <= 200") {
    for (unsigned long p : primes_up_to(200)) {
        if (!good_reduction(E2, p)) continue;
        const CurveFp C = reduce_curve(E2, p);
        CHECK(group_order(E2, p) == BigInt(enumerate_points(C).size()));
    }
}

TEST_CASE("interval-search group order equals exhaustive counting") {
    GroupOrderOptions bsgs, exhaustive;
    bsgs.exhaustive_threshold = 100; // forces the BSGS path
    exhaustive.exhaustive_threshold = 100000;
    for (const EllipticCurveQ& E : {E2, EllipticCurveQ(3, 7), EllipticCurveQ(-4, 11)}) {
        for (BigInt p = 10007; p < 10200; p = next_prime(p)) {
            if (!good_reduction(E, p)) continue;
            CHECK(group_order(E, p, bsgs) == group_order(E, p, exhaustive));
        }
    }
}

TEST_CASE("Hasse bound holds for every computed order") {
    for (unsigned long p : primes_up_to(500)) {
        if (!good_reduction(E2, p)) continue;
        const BigInt n = group_order(E2, p), diff = n - (BigInt(p) + 1);
        CHECK(diff * diff <= 4 * BigInt(p));
    }
}

TEST_CASE("point_order_mod_p on the worked examples") {
    const ECOrderCertificate at5 = point_order_mod_p(E2, P35, 5);
    CHECK(at5.point_order == 2); // (3,5) reduces to (3,0), a 2-torsion point
    CHECK(at5.reduced_point == PointFp{false, 3, 0});
    CHECK(at5.replay(E2));

    const ECOrderCertificate at7 = point_order_mod_p(E2, P35, 7);
    CHECK(at7.point_order == 7); // pinned by the pre-build enumeration oracle
    CHECK(at7.group_order == 7);
    CHECK(at7.replay(E2));

    const ECOrderCertificate inf = point_order_mod_p(E2, ec_scalar_mul(E2, 2, P35), 5);
    CHECK(inf.point_order == 1);
}

TEST_CASE("certificates break when tampered with") {
    ECOrderCertificate cert = point_order_mod_p(E2, P35, 53);
    CHECK(cert.replay(E2));
    ECOrderCertificate wrong = cert;
    wrong.point_order = wrong.point_order * 2;
    CHECK_FALSE(wrong.replay(E2));
}

TEST_CASE("point orders agree with the naive loop for p <= 200 and Lagrange holds") {
    for (unsigned long p : primes_up_to(200)) {
        if (!good_reduction(E2, p)) continue;
        const CurveFp C = reduce_curve(E2, p);
        const ECOrderCertificate cert = point_order_mod_p(E2, P35, p);
        const PointFp Pbar = reduce_point(E2, P35, p);
        if (!Pbar.infinity) CHECK(cert.point_order == naive_point_order(C, Pbar));
        CHECK(mpz_divisible_p(cert.group_order.get_mpz_t(), cert.point_order.get_mpz_t()));
    }
}

TEST_CASE("reduction is a homomorphism: reduce([m]P) = [m] reduce(P)") {
    for (unsigned long p : {7ul, 11ul, 13ul, 19ul}) {
        const CurveFp C = reduce_curve(E2, p);
        const PointFp Pbar = reduce_point(E2, P35, p);
        for (long m = -50; m <= 50; ++m)
            CHECK(reduce_point(E2, ec_scalar_mul(E2, m, P35), p) ==
                  fp_scalar_mul(C, m, Pbar));
    }
}

TEST_CASE("is_torsion on the worked examples") {
    CHECK(is_torsion(E2, ECPoint::inf()));
    CHECK_FALSE(is_torsion(E2, P35));
    const EllipticCurveQ E4(0, 4);
    const ECPoint T = ECPoint::affine(0, 2);
    CHECK(is_torsion(E4, T)); // [3](0,2) = O
    CHECK(ec_scalar_mul(E4, 3, T) == ECPoint::inf());
    CHECK_THROWS_AS(is_torsion(E2, ECPoint::affine(1, 1)), Error); // not on the curve
}

TEST_CASE("elliptic_order_spectrum matches the pre-built oracle run") {
    const ECSpectrumReport r = elliptic_order_spectrum(E2, P35, 12, 100000);
    CHECK(r.missing == std::vector<unsigned long>{1});
    const std::vector<std::pair<unsigned long, long>> expected{
        {2, 5}, {3, 19}, {4, 383}, {5, 29}, {6, 43}, {7, 7},
        {8, 23}, {9, 53}, {10, 179}, {11, 263}, {12, 11}};
    REQUIRE(r.realized.size() == expected.size());
    for (const auto& [n, p] : expected) {
        REQUIRE(r.realized.count(n));
        CHECK(r.realized.at(n).p == p);
        CHECK(r.realized.at(n).point_order == n);
        CHECK(r.realized.at(n).replay(E2));
    }
    CHECK_THROWS_AS(elliptic_order_spectrum(EllipticCurveQ(0, 4), ECPoint::affine(0, 2), 5, 1000),
                    TorsionPoint);
}

TEST_CASE("translated_subvariety_check: torsion branch") {
    const EllipticCurveQ E4(0, 4);
    const ECPoint T = ECPoint::affine(0, 2); // order 3
    const auto outcome = translated_subvariety_check(E4, T, ec_scalar_mul(E4, 2, T), 2);
    const auto& torsion = std::get<TorsionOrbitOutcome>(outcome);
    CHECK(torsion.member);
    CHECK(torsion.matching_n == 1); // [2]T = [2^1]T
    const auto miss = translated_subvariety_check(E4, T, ECPoint::affine(0, -2), 4);
    // [4^n](0,2) = [4^n mod 3](0,2) = (0,2) for all n, so (0,-2) is missed
    CHECK_FALSE(std::get<TorsionOrbitOutcome>(miss).member);
}

TEST_CASE("translated_subvariety_check: forced zero and contradiction") {
    TranslateOptions opt;
    opt.witness_budget = 3;
    const auto zero = translated_subvariety_check(E2, P35, ECPoint::inf(), 2, opt);
    const auto& forced = std::get<ForcedZeroOutcome>(zero);
    REQUIRE(forced.witnesses.size() == 3);
    CHECK(forced.witnesses[0].p == 5);
    CHECK(forced.witnesses[1].p == 383);
    CHECK(forced.witnesses[2].p == 23);
    for (const auto& w : forced.witnesses) {
        CHECK(w.certificate.replay(E2));
        CHECK(w.certificate.point_order == pow_int(BigInt(2), w.n));
        CHECK(w.tbar_zero_mod_p);
    }

    const auto contra = translated_subvariety_check(E2, P35, ECPoint::affine(3, -5), 2, opt);
    const auto& c = std::get<ContradictionOutcome>(contra);
    CHECK(c.first_contradiction == 0);
    CHECK(c.witnesses[0].p == 5);
    CHECK_FALSE(c.witnesses[0].tbar_zero_mod_p);
}

TEST_CASE("translated check reports witness starvation honestly") {
    TranslateOptions opt;
    opt.witness_budget = 5;
    opt.max_power_index = 2; // orders 2 and 4 give exactly the witnesses 5 and 383
    CHECK_THROWS_AS(translated_subvariety_check(E2, P35, ECPoint::inf(), 2, opt),
                    InsufficientWitnesses);
}

TEST_CASE("translated check and spectrum see the same d-power orders") {
    // the spectrum's order-2^n witnesses below 1e5 are exactly 5, 383, 23
    const ECSpectrumReport r = elliptic_order_spectrum(E2, P35, 12, 100000);
    CHECK(r.realized.at(2).p == 5);
    CHECK(r.realized.at(4).p == 383);
    CHECK(r.realized.at(8).p == 23);
}
