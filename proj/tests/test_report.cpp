#include <doctest.h>

#include "orbitobs/report.hpp"

using namespace orbitobs;

namespace {

template <typename T, typename FromJson>
void check_roundtrip(const T& value, FromJson from_json_fn) {
    const Json j = to_json(value);
    const Json reparsed = Json::parse(j.dump());
    CHECK(from_json_fn(reparsed) == value);
    CHECK(reparsed.value("schema_version", "") == kSchemaVersion);
}

} // namespace

TEST_CASE("order certificates round-trip through JSON") {
    const OrderCertificate cert = mult_order(BigRat(3, 2), 101);
    const Json j = to_json(cert);
    CHECK(order_certificate_from_json(Json::parse(j.dump())) == cert);
}

TEST_CASE("spectrum reports round-trip") {
    check_roundtrip(order_spectrum(BigRat(2), 8, 1000), spectrum_from_json);
    check_roundtrip(order_spectrum(BigRat(3, 5), 6, 10000), spectrum_from_json);
}

TEST_CASE("zsigmondy reports round-trip") {
    ZsigmondyReport r;
    r.lambda = BigRat(2);
    r.n = 4;
    r.p_limit = 100;
    r.witnesses = primes_with_order(r.lambda, r.n, r.p_limit);
    check_roundtrip(r, zsigmondy_from_json);
}

TEST_CASE("trichotomy verdicts round-trip") {
    const PowerMap phi(2);
    check_roundtrip(torus_trichotomy(ProjPoint2(2, 4, 1), TorusCurve(1, 1, 2, 1), phi),
                    trichotomy_from_json);
    check_roundtrip(torus_trichotomy(ProjPoint2(2, 3, 1), TorusCurve(1, 1, 1, 1), phi),
                    trichotomy_from_json);
    check_roundtrip(torus_trichotomy(ProjPoint2(2, 1, 1), TorusCurve(1, 16, 1, 1), phi),
                    trichotomy_from_json);
    check_roundtrip(torus_trichotomy(ProjPoint2(2, 0, 1), TorusCurve(0, 3, 1, 2), phi),
                    trichotomy_from_json);
}

TEST_CASE("line intersections round-trip") {
    const PowerMap phi(2);
    check_roundtrip(line_orbit_intersection(ProjPoint2(2, 1, 1), LineCurve(1, 1, -5), phi),
                    line_intersection_from_json);
    check_roundtrip(line_orbit_intersection(ProjPoint2(2, 1, 0), LineCurve(1, -4, 7), phi),
                    line_intersection_from_json);
}

TEST_CASE("power limit reports round-trip") {
    PowerLimitReport root;
    root.lambda = BigRat(-1);
    root.xi = BigRat(1);
    root.d = 2;
    root.outcome = power_limit_decide(root.lambda, root.xi, 2);
    check_roundtrip(root, power_limit_from_json);

    PowerLimitReport refuted;
    refuted.lambda = BigRat(2);
    refuted.xi = BigRat(3);
    refuted.d = 2;
    PowerLimitOptions opt;
    opt.witness_budget = 2;
    refuted.outcome = power_limit_decide(refuted.lambda, refuted.xi, 2, opt);
    check_roundtrip(refuted, power_limit_from_json);

    // the flat witness array of the transcript schema carries p/order/check_value
    const Json j = to_json(refuted);
    REQUIRE(j.contains("witnesses"));
    for (const auto& w : j["witnesses"]) {
        CHECK(w.contains("p"));
        CHECK(w.contains("order"));
        CHECK(w.contains("check_value"));
    }
}

TEST_CASE("zhat reports round-trip") {
    ZhatReport r;
    r.d = 6;
    r.m = 5;
    r.verdict = zhat_power_limit(6, 5);
    check_roundtrip(r, zhat_from_json);
}

TEST_CASE("elliptic certificates and spectra round-trip") {
    const EllipticCurveQ E(0, -2);
    const ECPoint P = ECPoint::affine(3, 5);
    const ECOrderCertificate cert = point_order_mod_p(E, P, 23);
    CHECK(ec_certificate_from_json(Json::parse(to_json(cert).dump())) == cert);
    check_roundtrip(elliptic_order_spectrum(E, P, 8, 1000), ec_spectrum_from_json);
}

TEST_CASE("translate reports round-trip") {
    const EllipticCurveQ E(0, -2);
    const ECPoint P = ECPoint::affine(3, 5);
    TranslateReport r;
    r.a4 = E.a4;
    r.a6 = E.a6;
    r.pbar = P;
    r.tbar = ECPoint::inf();
    r.d = 2;
    r.outcome = translated_subvariety_check(E, P, r.tbar, 2);
    check_roundtrip(r, translate_from_json);

    TranslateReport contra = r;
    contra.tbar = ECPoint::affine(3, -5);
    contra.outcome = translated_subvariety_check(E, P, contra.tbar, 2);
    check_roundtrip(contra, translate_from_json);

    const EllipticCurveQ E4(0, 4);
    TranslateReport torsion;
    torsion.a4 = 0;
    torsion.a6 = 4;
    torsion.pbar = ECPoint::affine(0, 2);
    torsion.tbar = ECPoint::affine(0, -2);
    torsion.d = 2;
    torsion.outcome = translated_subvariety_check(E4, torsion.pbar, torsion.tbar, 2);
    check_roundtrip(torsion, translate_from_json);
}

TEST_CASE("curve/point input format") {
    const auto [curve, point] = parse_curve_point(R"({"a4":"0","a6":"-2","P":["3","5"]})");
    CHECK(curve.a4 == 0);
    CHECK(curve.a6 == -2);
    CHECK(point == ECPoint::affine(3, 5));
    const auto [c2, p2] = parse_curve_point(R"({"a4":"1","a6":"1","P":"inf"})");
    CHECK(p2.infinity);
    const auto [c3, p3] = parse_curve_point(R"({"a4":"0","a6":"-2","P":["129/100","-383/1000"]})");
    CHECK(p3 == ECPoint::affine(BigRat(129, 100), BigRat(-383, 1000)));
    CHECK_THROWS_AS(parse_curve_point("not json"), Error);
    CHECK_THROWS_AS(parse_curve_point(R"({"a6":"-2"})"), Error);
}

TEST_CASE("csv renderers flatten the spectrum tables") {
    const SpectrumReport r = order_spectrum(BigRat(2), 4, 100);
    const std::string csv = render_csv(r);
    CHECK(csv.find("n,status,p,group_order") == 0);
    CHECK(csv.find("2,realized,3,2") != std::string::npos);
    CHECK(csv.find("1,proven_exceptional") != std::string::npos);
}
