#pragma once

// Serialization of reports and certificates. Every emitted report
// carries schema_version and kind; JSON reports deserialize back to the
// same in-memory value. Structured verdicts are JSON-only; CSV exists
// for the tabular spectrum reports.

#include <string>
#include <utility>

#include <json.hpp>

#include "orbitobs/adelic.hpp"
#include "orbitobs/elliptic.hpp"
#include "orbitobs/mult_order.hpp"
#include "orbitobs/power_dynamics.hpp"

namespace orbitobs {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

// ---- multiplicative orders ----
Json to_json(const OrderCertificate& cert);
OrderCertificate order_certificate_from_json(const Json& j);

Json to_json(const SpectrumReport& report);
SpectrumReport spectrum_from_json(const Json& j);
std::string render_text(const SpectrumReport& report);
std::string render_csv(const SpectrumReport& report);

struct ZsigmondyReport { // primitive-divisor witnesses for one index n
    BigRat lambda;
    unsigned long n = 0;
    BigInt p_limit;
    std::vector<OrderCertificate> witnesses;

    bool operator==(const ZsigmondyReport&) const = default;
};
Json to_json(const ZsigmondyReport& report);
ZsigmondyReport zsigmondy_from_json(const Json& j);
std::string render_text(const ZsigmondyReport& report);
std::string render_csv(const ZsigmondyReport& report);

// ---- power dynamics ----
Json to_json(const TrichotomyVerdict& verdict);
TrichotomyVerdict trichotomy_from_json(const Json& j);
std::string render_text(const TrichotomyVerdict& verdict);

Json to_json(const LineIntersection& result);
LineIntersection line_intersection_from_json(const Json& j);
std::string render_text(const LineIntersection& result);

// ---- adelic probe ----
struct PowerLimitReport {
    BigRat lambda, xi;
    unsigned long d = 2;
    PowerLimitOutcome outcome;

    bool operator==(const PowerLimitReport&) const = default;
};
Json to_json(const PowerLimitReport& report);
PowerLimitReport power_limit_from_json(const Json& j);
std::string render_text(const PowerLimitReport& report);

struct ZhatReport {
    unsigned long d = 2;
    BigInt m;
    ZhatVerdict verdict;

    bool operator==(const ZhatReport&) const = default;
};
Json to_json(const ZhatReport& report);
ZhatReport zhat_from_json(const Json& j);
std::string render_text(const ZhatReport& report);

// ---- elliptic ----
Json ec_point_to_json(const ECPoint& P);
ECPoint ec_point_from_json(const Json& j);

Json to_json(const ECOrderCertificate& cert);
ECOrderCertificate ec_certificate_from_json(const Json& j);

Json to_json(const ECSpectrumReport& report);
ECSpectrumReport ec_spectrum_from_json(const Json& j);
std::string render_text(const ECSpectrumReport& report);
std::string render_csv(const ECSpectrumReport& report);

struct TranslateReport {
    BigInt a4, a6;
    ECPoint pbar, tbar;
    unsigned long d = 2;
    TranslateOutcome outcome;

    bool operator==(const TranslateReport&) const = default;
};
Json to_json(const TranslateReport& report);
TranslateReport translate_from_json(const Json& j);
std::string render_text(const TranslateReport& report);

// External curve/point input: {"a4": int-string, "a6": int-string,
// "P": ["x_num/x_den", "y_num/y_den"] | "inf"}.
std::pair<EllipticCurveQ, ECPoint> parse_curve_point(const std::string& text);

} // namespace orbitobs
