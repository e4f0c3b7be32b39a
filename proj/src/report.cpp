#include "orbitobs/report.hpp"

#include <algorithm>
#include <sstream>

namespace orbitobs {

namespace {

Json int_json(const BigInt& n) { return n.get_str(); }
Json rat_json(const BigRat& x) { return to_string(x); }

BigInt int_from(const Json& j) {
    if (!j.is_string()) throw Error(ErrorKind::invalid_input, "expected integer string in report");
    try {
        return BigInt(j.get<std::string>());
    } catch (const std::invalid_argument&) {
        throw Error(ErrorKind::invalid_input, "malformed integer '" + j.get<std::string>() + "'");
    }
}

BigRat rat_from(const Json& j) {
    if (!j.is_string()) throw Error(ErrorKind::invalid_input, "expected rational string in report");
    return parse_rational(j.get<std::string>());
}

unsigned long ulong_from(const Json& j) { return j.get<unsigned long>(); }

void require_kind(const Json& j, const char* kind) {
    if (!j.is_object() || j.value("kind", "") != kind)
        throw Error(ErrorKind::invalid_input, std::string("report is not of kind '") + kind + "'");
    if (j.value("schema_version", "") != kSchemaVersion)
        throw Error(ErrorKind::invalid_input, "unsupported schema_version");
}

Json header(const char* kind) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = kind;
    return j;
}

Json factors_json(const std::vector<std::pair<BigInt, unsigned>>& factors) {
    Json out = Json::array();
    for (const auto& [p, e] : factors) out.push_back(Json::array({int_json(p), e}));
    return out;
}

std::vector<std::pair<BigInt, unsigned>> factors_from(const Json& j) {
    std::vector<std::pair<BigInt, unsigned>> out;
    for (const auto& pe : j) out.emplace_back(int_from(pe.at(0)), pe.at(1).get<unsigned>());
    return out;
}

} // namespace

// ---- multiplicative orders ----

Json to_json(const OrderCertificate& cert) {
    Json j;
    j["lambda"] = rat_json(cert.lambda);
    j["p"] = int_json(cert.p);
    j["order"] = int_json(cert.order);
    j["group_order"] = int_json(cert.group_order);
    Json w = Json::array();
    for (const auto& [q, r] : cert.maximality_witnesses)
        w.push_back(Json::array({int_json(q), int_json(r)}));
    j["maximality_witnesses"] = std::move(w);
    return j;
}

OrderCertificate order_certificate_from_json(const Json& j) {
    OrderCertificate cert;
    cert.lambda = rat_from(j.at("lambda"));
    cert.p = int_from(j.at("p"));
    cert.order = int_from(j.at("order"));
    cert.group_order = int_from(j.at("group_order"));
    for (const auto& qr : j.at("maximality_witnesses"))
        cert.maximality_witnesses.emplace_back(int_from(qr.at(0)), int_from(qr.at(1)));
    return cert;
}

Json to_json(const SpectrumReport& report) {
    Json j = header("order-spectrum");
    j["lambda"] = rat_json(report.lambda);
    j["n_max"] = report.n_max;
    j["p_max"] = int_json(report.p_max);
    Json realized = Json::object();
    for (const auto& [n, cert] : report.realized) realized[std::to_string(n)] = to_json(cert);
    j["realized"] = std::move(realized);
    j["missing"] = report.missing;
    j["proven_exceptional"] = report.proven_exceptional;
    j["budget_exhausted"] = report.budget_exhausted;
    return j;
}

SpectrumReport spectrum_from_json(const Json& j) {
    require_kind(j, "order-spectrum");
    SpectrumReport r;
    r.lambda = rat_from(j.at("lambda"));
    r.n_max = ulong_from(j.at("n_max"));
    r.p_max = int_from(j.at("p_max"));
    for (const auto& [key, val] : j.at("realized").items())
        r.realized.emplace(std::stoul(key), order_certificate_from_json(val));
    r.missing = j.at("missing").get<std::vector<unsigned long>>();
    r.proven_exceptional = j.at("proven_exceptional").get<std::vector<unsigned long>>();
    r.budget_exhausted = j.at("budget_exhausted").get<std::vector<unsigned long>>();
    return r;
}

std::string render_text(const SpectrumReport& report) {
    std::ostringstream out;
    out << "order spectrum of lambda = " << to_string(report.lambda) << ", n <= " << report.n_max
        << ", p <= " << report.p_max.get_str() << "\n";
    for (unsigned long n = 1; n <= report.n_max; ++n) {
        auto it = report.realized.find(n);
        out << "  n = " << n << ": ";
        if (it != report.realized.end())
            out << "p = " << it->second.p.get_str();
        else if (std::count(report.proven_exceptional.begin(), report.proven_exceptional.end(), n))
            out << "missing (proven exceptional)";
        else
            out << "missing under budget";
        out << "\n";
    }
    return out.str();
}

std::string render_csv(const SpectrumReport& report) {
    std::ostringstream out;
    out << "n,status,p,group_order\n";
    for (unsigned long n = 1; n <= report.n_max; ++n) {
        auto it = report.realized.find(n);
        if (it != report.realized.end()) {
            out << n << ",realized," << it->second.p.get_str() << ","
                << it->second.group_order.get_str() << "\n";
        } else {
            const bool proven = std::count(report.proven_exceptional.begin(),
                                           report.proven_exceptional.end(), n) > 0;
            out << n << "," << (proven ? "proven_exceptional" : "missing") << ",,\n";
        }
    }
    return out.str();
}

Json to_json(const ZsigmondyReport& report) {
    Json j = header("zsigmondy");
    j["lambda"] = rat_json(report.lambda);
    j["n"] = report.n;
    j["p_limit"] = int_json(report.p_limit);
    Json w = Json::array();
    for (const auto& cert : report.witnesses) w.push_back(to_json(cert));
    j["witnesses"] = std::move(w);
    return j;
}

ZsigmondyReport zsigmondy_from_json(const Json& j) {
    require_kind(j, "zsigmondy");
    ZsigmondyReport r;
    r.lambda = rat_from(j.at("lambda"));
    r.n = ulong_from(j.at("n"));
    r.p_limit = int_from(j.at("p_limit"));
    for (const auto& cert : j.at("witnesses")) r.witnesses.push_back(order_certificate_from_json(cert));
    return r;
}

std::string render_text(const ZsigmondyReport& report) {
    std::ostringstream out;
    out << "primes p <= " << report.p_limit.get_str() << " with order of "
        << to_string(report.lambda) << " exactly " << report.n << ":";
    if (report.witnesses.empty()) out << " none";
    for (const auto& cert : report.witnesses) out << " " << cert.p.get_str();
    out << "\n";
    return out.str();
}

std::string render_csv(const ZsigmondyReport& report) {
    std::ostringstream out;
    out << "p,order,group_order\n";
    for (const auto& cert : report.witnesses)
        out << cert.p.get_str() << "," << cert.order.get_str() << ","
            << cert.group_order.get_str() << "\n";
    return out.str();
}

// ---- power dynamics ----

namespace {

const char* branch_name(TrichotomyBranch b) {
    switch (b) {
        case TrichotomyBranch::main_chart: return "main_chart";
        case TrichotomyBranch::gamma_zero_chart: return "gamma_zero_chart";
        case TrichotomyBranch::beta_zero: return "beta_zero";
        case TrichotomyBranch::alpha_zero: return "alpha_zero";
        case TrichotomyBranch::zero_coefficient: return "zero_coefficient";
    }
    return "main_chart";
}

TrichotomyBranch branch_from(const std::string& s) {
    if (s == "main_chart") return TrichotomyBranch::main_chart;
    if (s == "gamma_zero_chart") return TrichotomyBranch::gamma_zero_chart;
    if (s == "beta_zero") return TrichotomyBranch::beta_zero;
    if (s == "alpha_zero") return TrichotomyBranch::alpha_zero;
    if (s == "zero_coefficient") return TrichotomyBranch::zero_coefficient;
    throw Error(ErrorKind::invalid_input, "unknown branch '" + s + "'");
}

Json equation_json(const HeightEquation& eq) {
    Json j;
    j["base"] = rat_json(eq.base);
    j["target"] = rat_json(eq.target);
    j["exponent_e"] = eq.exponent_e ? Json(*eq.exponent_e) : Json(nullptr);
    j["solution_n"] = eq.solution_n ? Json(*eq.solution_n) : Json(nullptr);
    return j;
}

HeightEquation equation_from(const Json& j) {
    HeightEquation eq;
    eq.base = rat_from(j.at("base"));
    eq.target = rat_from(j.at("target"));
    if (!j.at("exponent_e").is_null()) eq.exponent_e = ulong_from(j.at("exponent_e"));
    if (!j.at("solution_n").is_null()) eq.solution_n = ulong_from(j.at("solution_n"));
    return eq;
}

void optional_rat_to(Json& j, const char* key, const std::optional<BigRat>& v) {
    j[key] = v ? Json(rat_json(*v)) : Json(nullptr);
}

std::optional<BigRat> optional_rat_from(const Json& j, const char* key) {
    if (j.at(key).is_null()) return std::nullopt;
    return rat_from(j.at(key));
}

} // namespace

Json to_json(const TrichotomyVerdict& verdict) {
    Json j = header("trichotomy");
    if (const auto* ci = std::get_if<TrichotomyCaseI>(&verdict)) {
        j["case"] = "I";
        j["branch"] = branch_name(ci->branch);
        j["exponents"] = ci->exponents;
        optional_rat_to(j, "rho", ci->rho);
        optional_rat_to(j, "target", ci->target);
        Json eqs = Json::array();
        for (const auto& eq : ci->equations) eqs.push_back(equation_json(eq));
        j["equations"] = std::move(eqs);
    } else {
        const auto& cii = std::get<TrichotomyCaseII>(verdict);
        j["case"] = "II";
        j["branch"] = branch_name(cii.branch);
        j["entry_r"] = cii.entry_r;
        j["preperiod_i"] = cii.preperiod_i;
        j["period_q"] = cii.period_q;
        optional_rat_to(j, "rho", cii.rho);
        optional_rat_to(j, "target", cii.target);
    }
    return j;
}

TrichotomyVerdict trichotomy_from_json(const Json& j) {
    require_kind(j, "trichotomy");
    if (j.at("case") == "I") {
        TrichotomyCaseI ci;
        ci.branch = branch_from(j.at("branch"));
        ci.exponents = j.at("exponents").get<std::vector<unsigned long>>();
        ci.rho = optional_rat_from(j, "rho");
        ci.target = optional_rat_from(j, "target");
        for (const auto& eq : j.at("equations")) ci.equations.push_back(equation_from(eq));
        return ci;
    }
    TrichotomyCaseII cii;
    cii.branch = branch_from(j.at("branch"));
    cii.entry_r = ulong_from(j.at("entry_r"));
    cii.preperiod_i = ulong_from(j.at("preperiod_i"));
    cii.period_q = ulong_from(j.at("period_q"));
    cii.rho = optional_rat_from(j, "rho");
    cii.target = optional_rat_from(j, "target");
    return cii;
}

std::string render_text(const TrichotomyVerdict& verdict) {
    std::ostringstream out;
    if (const auto* ci = std::get_if<TrichotomyCaseI>(&verdict)) {
        out << "Case I: exact finite intersection {";
        for (std::size_t i = 0; i < ci->exponents.size(); ++i)
            out << (i ? ", " : "") << ci->exponents[i];
        out << "} (complete for all n)\n";
    } else {
        const auto& cii = std::get<TrichotomyCaseII>(verdict);
        out << "Case II: curve preperiodic (i = " << cii.preperiod_i << ", q = " << cii.period_q
            << "), phi^" << cii.entry_r << "(P) lies on V\n";
    }
    return out.str();
}

Json to_json(const LineIntersection& result) {
    Json j = header("line-intersect");
    j["exponents"] = result.exponents;
    j["hypothesis"] = std::string(1, result.hypothesis);
    Json eqs = Json::array();
    for (const auto& eq : result.equations) eqs.push_back(equation_json(eq));
    j["equations"] = std::move(eqs);
    return j;
}

LineIntersection line_intersection_from_json(const Json& j) {
    require_kind(j, "line-intersect");
    LineIntersection r;
    r.exponents = j.at("exponents").get<std::vector<unsigned long>>();
    r.hypothesis = j.at("hypothesis").get<std::string>().at(0);
    for (const auto& eq : j.at("equations")) r.equations.push_back(equation_from(eq));
    return r;
}

std::string render_text(const LineIntersection& result) {
    std::ostringstream out;
    out << "orbit meets the line exactly at n in {";
    for (std::size_t i = 0; i < result.exponents.size(); ++i)
        out << (i ? ", " : "") << result.exponents[i];
    out << "} (hypothesis (" << result.hypothesis << "), complete for all n)\n";
    return out.str();
}

// ---- adelic probe ----

namespace {

Json witness_json(const CongruenceWitness& w) {
    Json j;
    j["p"] = int_json(w.p);
    j["order"] = int_json(w.claimed_order);
    j["check_value"] = int_json(w.check_value);
    j["forced_value"] = int_json(w.forced_value);
    j["consistent"] = w.consistent;
    j["certificate"] = to_json(w.order_certificate);
    return j;
}

CongruenceWitness witness_from(const Json& j) {
    CongruenceWitness w;
    w.p = int_from(j.at("p"));
    w.claimed_order = int_from(j.at("order"));
    w.check_value = int_from(j.at("check_value"));
    w.forced_value = int_from(j.at("forced_value"));
    w.consistent = j.at("consistent").get<bool>();
    w.order_certificate = order_certificate_from_json(j.at("certificate"));
    return w;
}

} // namespace

Json to_json(const PowerLimitReport& report) {
    Json j = header("prop4");
    j["lambda"] = rat_json(report.lambda);
    j["xi"] = rat_json(report.xi);
    j["d"] = report.d;
    if (const auto* rc = std::get_if<RootOfUnityCase>(&report.outcome)) {
        j["outcome"] = "root_of_unity";
        Json set = Json::array();
        for (const auto& v : rc->limit_set) set.push_back(rat_json(v));
        j["limit_set"] = std::move(set);
        j["matching_r"] = rc->matching_r ? Json(*rc->matching_r) : Json(nullptr);
        j["witnesses"] = Json::array();
    } else {
        const auto& rf = std::get<RefutedCase>(report.outcome);
        j["outcome"] = "refuted";
        Json xi_w = Json::array(), lam_w = Json::array(), all = Json::array();
        for (const auto& w : rf.xi_forcing) {
            xi_w.push_back(witness_json(w));
            Json flat = witness_json(w);
            flat["phase"] = "xi";
            all.push_back(std::move(flat));
        }
        for (const auto& w : rf.lambda_forcing) {
            lam_w.push_back(witness_json(w));
            Json flat = witness_json(w);
            flat["phase"] = "lambda";
            all.push_back(std::move(flat));
        }
        j["xi_forcing"] = std::move(xi_w);
        j["lambda_forcing"] = std::move(lam_w);
        j["witnesses"] = std::move(all);
    }
    return j;
}

PowerLimitReport power_limit_from_json(const Json& j) {
    require_kind(j, "prop4");
    PowerLimitReport r;
    r.lambda = rat_from(j.at("lambda"));
    r.xi = rat_from(j.at("xi"));
    r.d = ulong_from(j.at("d"));
    if (j.at("outcome") == "root_of_unity") {
        RootOfUnityCase rc;
        for (const auto& v : j.at("limit_set")) rc.limit_set.push_back(rat_from(v));
        if (!j.at("matching_r").is_null()) rc.matching_r = ulong_from(j.at("matching_r"));
        r.outcome = std::move(rc);
    } else {
        RefutedCase rf;
        for (const auto& w : j.at("xi_forcing")) rf.xi_forcing.push_back(witness_from(w));
        for (const auto& w : j.at("lambda_forcing")) rf.lambda_forcing.push_back(witness_from(w));
        r.outcome = std::move(rf);
    }
    return r;
}

std::string render_text(const PowerLimitReport& report) {
    std::ostringstream out;
    out << "xi = v-lim " << to_string(report.lambda) << "^(" << report.d << "^n) with xi = "
        << to_string(report.xi) << ": ";
    if (const auto* rc = std::get_if<RootOfUnityCase>(&report.outcome)) {
        out << "lambda is a root of unity; limit set {";
        for (std::size_t i = 0; i < rc->limit_set.size(); ++i)
            out << (i ? ", " : "") << to_string(rc->limit_set[i]);
        out << "}";
        if (rc->matching_r)
            out << "; xi = lambda^(" << report.d << "^" << *rc->matching_r << ")";
        else
            out << "; xi is not a d-power of lambda (limit impossible)";
        out << "\n";
    } else {
        const auto& rf = std::get<RefutedCase>(report.outcome);
        out << "REFUTED\n";
        for (const auto& w : rf.xi_forcing)
            out << "  f_" << w.p.get_str() << "(lambda) = " << w.claimed_order.get_str()
                << " forces xi == 1 (mod " << w.p.get_str() << "); observed "
                << w.check_value.get_str() << (w.consistent ? "" : "  <-- contradiction") << "\n";
        for (const auto& w : rf.lambda_forcing)
            out << "  f_" << w.p.get_str() << "(lambda) = " << w.claimed_order.get_str()
                << " (coprime to d) forces lambda == 1 (mod " << w.p.get_str() << "); observed "
                << w.check_value.get_str() << (w.consistent ? "" : "  <-- contradiction") << "\n";
    }
    return out.str();
}

Json to_json(const ZhatReport& report) {
    Json j = header("zhat-limit");
    j["d"] = report.d;
    j["m"] = int_json(report.m);
    j["converges"] = report.verdict.converges;
    j["prime_dividing_d"] = int_json(report.verdict.prime_dividing_d);
    j["prime_not_dividing_d"] = int_json(report.verdict.prime_not_dividing_d);
    j["conflict"] = report.verdict.conflict == ZhatVerdict::Conflict::at_dividing_prime
                        ? "at_dividing_prime"
                        : "at_nondividing_prime";
    j["detail"] = report.verdict.detail;
    return j;
}

ZhatReport zhat_from_json(const Json& j) {
    require_kind(j, "zhat-limit");
    ZhatReport r;
    r.d = ulong_from(j.at("d"));
    r.m = int_from(j.at("m"));
    r.verdict.converges = j.at("converges").get<bool>();
    r.verdict.prime_dividing_d = int_from(j.at("prime_dividing_d"));
    r.verdict.prime_not_dividing_d = int_from(j.at("prime_not_dividing_d"));
    r.verdict.conflict = j.at("conflict") == "at_dividing_prime"
                             ? ZhatVerdict::Conflict::at_dividing_prime
                             : ZhatVerdict::Conflict::at_nondividing_prime;
    r.verdict.detail = j.at("detail").get<std::string>();
    return r;
}

std::string render_text(const ZhatReport& report) {
    std::ostringstream out;
    out << report.d << "^{r_i} -> " << report.m.get_str() << " in Zhat along unbounded r_i: "
        << (report.verdict.converges ? "possible" : "impossible") << "\n  " << report.verdict.detail
        << "\n";
    return out.str();
}

// ---- elliptic ----

Json ec_point_to_json(const ECPoint& P) {
    if (P.infinity) return "inf";
    return Json::array({to_string(P.x), to_string(P.y)});
}

ECPoint ec_point_from_json(const Json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") return ECPoint::inf();
    if (!j.is_array() || j.size() != 2)
        throw Error(ErrorKind::invalid_input, "point must be \"inf\" or [\"x\",\"y\"]");
    return ECPoint::affine(rat_from(j.at(0)), rat_from(j.at(1)));
}

namespace {

Json fp_point_json(const PointFp& P) {
    if (P.infinity) return "inf";
    return Json::array({int_json(P.x), int_json(P.y)});
}

PointFp fp_point_from(const Json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") return {};
    return {false, int_from(j.at(0)), int_from(j.at(1))};
}

} // namespace

Json to_json(const ECOrderCertificate& cert) {
    Json j;
    j["p"] = int_json(cert.p);
    j["group_order"] = int_json(cert.group_order);
    j["point_order"] = int_json(cert.point_order);
    j["reduced_point"] = fp_point_json(cert.reduced_point);
    j["order_factorization"] = factors_json(cert.order_factorization);
    Json w = Json::array();
    for (const auto& [q, pt] : cert.maximality_witnesses)
        w.push_back(Json::array({int_json(q), fp_point_json(pt)}));
    j["maximality_witnesses"] = std::move(w);
    return j;
}

ECOrderCertificate ec_certificate_from_json(const Json& j) {
    ECOrderCertificate cert;
    cert.p = int_from(j.at("p"));
    cert.group_order = int_from(j.at("group_order"));
    cert.point_order = int_from(j.at("point_order"));
    cert.reduced_point = fp_point_from(j.at("reduced_point"));
    cert.order_factorization = factors_from(j.at("order_factorization"));
    for (const auto& qp : j.at("maximality_witnesses"))
        cert.maximality_witnesses.emplace_back(int_from(qp.at(0)), fp_point_from(qp.at(1)));
    return cert;
}

Json to_json(const ECSpectrumReport& report) {
    Json j = header("ec-spectrum");
    j["a4"] = int_json(report.a4);
    j["a6"] = int_json(report.a6);
    j["P"] = ec_point_to_json(report.point);
    j["n_max"] = report.n_max;
    j["p_max"] = int_json(report.p_max);
    Json realized = Json::object();
    for (const auto& [n, cert] : report.realized) realized[std::to_string(n)] = to_json(cert);
    j["realized"] = std::move(realized);
    j["missing"] = report.missing;
    return j;
}

ECSpectrumReport ec_spectrum_from_json(const Json& j) {
    require_kind(j, "ec-spectrum");
    ECSpectrumReport r;
    r.a4 = int_from(j.at("a4"));
    r.a6 = int_from(j.at("a6"));
    r.point = ec_point_from_json(j.at("P"));
    r.n_max = ulong_from(j.at("n_max"));
    r.p_max = int_from(j.at("p_max"));
    for (const auto& [key, val] : j.at("realized").items())
        r.realized.emplace(std::stoul(key), ec_certificate_from_json(val));
    r.missing = j.at("missing").get<std::vector<unsigned long>>();
    return r;
}

std::string render_text(const ECSpectrumReport& report) {
    std::ostringstream out;
    out << "elliptic order spectrum on y^2 = x^3 + " << report.a4.get_str() << " x + "
        << report.a6.get_str() << ", n <= " << report.n_max << ", p <= " << report.p_max.get_str()
        << "\n";
    for (unsigned long n = 1; n <= report.n_max; ++n) {
        auto it = report.realized.find(n);
        out << "  n = " << n << ": ";
        if (it != report.realized.end())
            out << "p = " << it->second.p.get_str() << " (#E = " << it->second.group_order.get_str()
                << ")";
        else
            out << "missing under budget";
        out << "\n";
    }
    return out.str();
}

std::string render_csv(const ECSpectrumReport& report) {
    std::ostringstream out;
    out << "n,status,p,group_order\n";
    for (unsigned long n = 1; n <= report.n_max; ++n) {
        auto it = report.realized.find(n);
        if (it != report.realized.end())
            out << n << ",realized," << it->second.p.get_str() << ","
                << it->second.group_order.get_str() << "\n";
        else
            out << n << ",missing,,\n";
    }
    return out.str();
}

namespace {

Json ec_witness_json(const ECWitness& w) {
    Json j;
    j["p"] = int_json(w.p);
    j["n"] = w.n;
    j["tbar_zero_mod_p"] = w.tbar_zero_mod_p;
    j["certificate"] = to_json(w.certificate);
    return j;
}

ECWitness ec_witness_from(const Json& j) {
    ECWitness w;
    w.p = int_from(j.at("p"));
    w.n = ulong_from(j.at("n"));
    w.tbar_zero_mod_p = j.at("tbar_zero_mod_p").get<bool>();
    w.certificate = ec_certificate_from_json(j.at("certificate"));
    return w;
}

} // namespace

Json to_json(const TranslateReport& report) {
    Json j = header("ec-translate");
    j["a4"] = int_json(report.a4);
    j["a6"] = int_json(report.a6);
    j["Pbar"] = ec_point_to_json(report.pbar);
    j["Tbar"] = ec_point_to_json(report.tbar);
    j["d"] = report.d;
    if (const auto* t = std::get_if<TorsionOrbitOutcome>(&report.outcome)) {
        j["outcome"] = "torsion_orbit";
        j["member"] = t->member;
        j["matching_n"] = t->matching_n ? Json(*t->matching_n) : Json(nullptr);
        Json vals = Json::array();
        for (const auto& v : t->orbit_values) vals.push_back(ec_point_to_json(v));
        j["orbit_values"] = std::move(vals);
    } else if (const auto* f = std::get_if<ForcedZeroOutcome>(&report.outcome)) {
        j["outcome"] = "tbar_forced_zero";
        Json w = Json::array();
        for (const auto& witness : f->witnesses) w.push_back(ec_witness_json(witness));
        j["witnesses"] = std::move(w);
    } else {
        const auto& c = std::get<ContradictionOutcome>(report.outcome);
        j["outcome"] = "numeric_contradiction";
        Json w = Json::array();
        for (const auto& witness : c.witnesses) w.push_back(ec_witness_json(witness));
        j["witnesses"] = std::move(w);
        j["first_contradiction"] = c.first_contradiction;
    }
    return j;
}

TranslateReport translate_from_json(const Json& j) {
    require_kind(j, "ec-translate");
    TranslateReport r;
    r.a4 = int_from(j.at("a4"));
    r.a6 = int_from(j.at("a6"));
    r.pbar = ec_point_from_json(j.at("Pbar"));
    r.tbar = ec_point_from_json(j.at("Tbar"));
    r.d = ulong_from(j.at("d"));
    const std::string outcome = j.at("outcome");
    if (outcome == "torsion_orbit") {
        TorsionOrbitOutcome t;
        t.member = j.at("member").get<bool>();
        if (!j.at("matching_n").is_null()) t.matching_n = ulong_from(j.at("matching_n"));
        for (const auto& v : j.at("orbit_values")) t.orbit_values.push_back(ec_point_from_json(v));
        r.outcome = std::move(t);
    } else if (outcome == "tbar_forced_zero") {
        ForcedZeroOutcome f;
        for (const auto& w : j.at("witnesses")) f.witnesses.push_back(ec_witness_from(w));
        r.outcome = std::move(f);
    } else {
        ContradictionOutcome c;
        for (const auto& w : j.at("witnesses")) c.witnesses.push_back(ec_witness_from(w));
        c.first_contradiction = j.at("first_contradiction").get<std::size_t>();
        r.outcome = std::move(c);
    }
    return r;
}

std::string render_text(const TranslateReport& report) {
    std::ostringstream out;
    if (const auto* t = std::get_if<TorsionOrbitOutcome>(&report.outcome)) {
        out << "Pbar is torsion; the d-power orbit has " << t->orbit_values.size() << " values; Tbar "
            << (t->member ? "belongs to it" : "is not among them");
        if (t->matching_n) out << " (Tbar = [d^" << *t->matching_n << "]Pbar)";
        out << "\n";
    } else if (const auto* f = std::get_if<ForcedZeroOutcome>(&report.outcome)) {
        out << "Tbar forced to O: all " << f->witnesses.size() << " witness congruences consistent\n";
        for (const auto& w : f->witnesses)
            out << "  p = " << w.p.get_str() << ": f_p(Pbar) = " << report.d << "^" << w.n
                << ", Tbar == O (mod p)\n";
    } else {
        const auto& c = std::get<ContradictionOutcome>(report.outcome);
        const auto& w = c.witnesses[c.first_contradiction];
        out << "numeric contradiction at witness p = " << w.p.get_str() << " (f_p(Pbar) = "
            << report.d << "^" << w.n << "): Tbar != O (mod p); the claimed adelic limit fails\n";
    }
    return out.str();
}

std::pair<EllipticCurveQ, ECPoint> parse_curve_point(const std::string& text) {
    Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object())
        throw Error(ErrorKind::invalid_input, "curve/point input is not a JSON object");
    if (!j.contains("a4") || !j.contains("a6"))
        throw Error(ErrorKind::invalid_input, "curve input needs a4 and a6");
    const BigInt a4 = j.at("a4").is_string() ? int_from(j.at("a4")) : BigInt(j.at("a4").get<long>());
    const BigInt a6 = j.at("a6").is_string() ? int_from(j.at("a6")) : BigInt(j.at("a6").get<long>());
    EllipticCurveQ curve(a4, a6);
    ECPoint point = ECPoint::inf();
    if (j.contains("P")) point = ec_point_from_json(j.at("P"));
    return {curve, point};
}

} // namespace orbitobs
