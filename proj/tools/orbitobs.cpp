// orbitobs: decision procedures and certificates for orbit/subvariety
// intersections under power maps over Q.
//
// Exit codes: 0 success, 1 invalid input, 2 budget exhaustion (partial
// results were printed), 3 internal invariant violation.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "orbitobs/config.hpp"
#include "orbitobs/factor_cache.hpp"
#include "orbitobs/report.hpp"

using namespace orbitobs;

namespace {

struct App {
    RunConfig cfg;
    FactorCache cache;
    bool cache_loaded = false;

    FactorCacheMap* cache_map() { return cache_loaded ? &cache.entries : nullptr; }

    void load_cache() {
        if (cfg.cache_path) {
            cache = FactorCache::load(*cfg.cache_path);
            cache_loaded = true;
        }
    }
    void save_cache() {
        if (cache_loaded && cfg.cache_path) cache.save(*cfg.cache_path);
    }
};

void emit(const App& app, const Json& json_report, const std::string& text,
          const std::string& csv = "") {
    switch (app.cfg.output_format) {
        case OutputFormat::json: std::cout << json_report.dump(2) << "\n"; break;
        case OutputFormat::text: std::cout << text; break;
        case OutputFormat::csv:
            if (csv.empty())
                throw Error(ErrorKind::invalid_input,
                            "csv output exists only for spectrum reports; use --format json");
            std::cout << csv;
            break;
    }
}

ProjPoint2 parse_point(const std::string& spec) {
    std::istringstream in(spec);
    std::string part;
    std::vector<BigInt> coords;
    while (std::getline(in, part, ',')) {
        const BigRat r = parse_rational(part);
        if (den(r) != 1)
            throw Error(ErrorKind::invalid_input,
                        "--point needs integer coordinates (scale the point); got '" + part + "'");
        coords.push_back(num(r));
    }
    if (coords.size() != 3)
        throw Error(ErrorKind::invalid_input, "--point needs three comma-separated integers");
    return {coords[0], coords[1], coords[2]};
}

int run(int argc, char** argv) {
    CLI::App cli{"orbitobs: orbit/subvariety intersection certificates over Q"};
    cli.require_subcommand(1);

    App app;
    std::string config_path, cache_path, format;
    cli.add_option("--config", config_path, "flat key=value config file");
    cli.add_option("--cache", cache_path, "factorization cache file (env ORBITOBS_CACHE)");
    cli.add_option("--format", format, "output format: text | json | csv");

    // order-spectrum
    auto* sp = cli.add_subcommand("order-spectrum", "realized/missing multiplicative orders");
    std::string sp_lambda;
    unsigned long sp_nmax = 12;
    std::string sp_pmax = "1000000";
    sp->add_option("--lambda", sp_lambda, "rational a/b")->required();
    sp->add_option("--nmax", sp_nmax, "largest order checked")->required();
    sp->add_option("--pmax", sp_pmax, "prime budget");

    // zsigmondy
    auto* zs = cli.add_subcommand("zsigmondy", "primitive-divisor witnesses for one index");
    std::string zs_lambda;
    unsigned long zs_n = 1;
    std::string zs_plimit = "1000000";
    zs->add_option("--lambda", zs_lambda)->required();
    zs->add_option("--n", zs_n, "exact order wanted")->required();
    zs->add_option("--plimit", zs_plimit, "prime budget");

    // trichotomy
    auto* tr = cli.add_subcommand("trichotomy", "torus-curve trichotomy verdict");
    std::string tr_point, tr_curve;
    unsigned long tr_d = 2;
    tr->add_option("--point", tr_point, "a,b,c projective integer coordinates")->required();
    tr->add_option("--curve", tr_curve, "A,B,k,l for A X^k = B Y^l")->required();
    tr->add_option("--d", tr_d, "power map degree")->required();

    // line-intersect
    auto* li = cli.add_subcommand("line-intersect", "exact orbit/line intersection");
    std::string li_point, li_line;
    unsigned long li_d = 2;
    li->add_option("--point", li_point, "a,b,c")->required();
    li->add_option("--line", li_line, "A,B,C for A X + B Y + C Z = 0")->required();
    li->add_option("--d", li_d)->required();

    // prop4
    auto* p4 = cli.add_subcommand("prop4", "decide/refute xi = v-lim lambda^(d^n)");
    std::string p4_lambda, p4_xi;
    unsigned long p4_d = 2, p4_budget = 3;
    p4->add_option("--lambda", p4_lambda)->required();
    p4->add_option("--xi", p4_xi)->required();
    p4->add_option("--d", p4_d)->required();
    p4->add_option("--budget", p4_budget, "witnesses per phase");

    // ec-spectrum
    auto* es = cli.add_subcommand("ec-spectrum", "elliptic order spectrum");
    std::string es_curve, es_point;
    unsigned long es_nmax = 12;
    std::string es_pmax = "100000";
    es->add_option("--curve", es_curve, R"(JSON {"a4":"0","a6":"-2","P":["3","5"]})")->required();
    es->add_option("--point", es_point, R"(JSON ["x","y"] when not given in --curve)");
    es->add_option("--nmax", es_nmax)->required();
    es->add_option("--pmax", es_pmax);

    // ec-translate
    auto* et = cli.add_subcommand("ec-translate", "translated-subvariety congruence core");
    std::string et_curve, et_tbar;
    unsigned long et_d = 2, et_budget = 3;
    et->add_option("--curve", et_curve, "JSON curve with Pbar")->required();
    et->add_option("--tbar", et_tbar, R"(JSON ["x","y"] or "inf")")->required();
    et->add_option("--d", et_d)->required();
    et->add_option("--budget", et_budget, "witness primes");

    // zhat-limit
    auto* zh = cli.add_subcommand("zhat-limit", "d-power limits in the profinite integers");
    unsigned long zh_d = 2;
    std::string zh_m;
    zh->add_option("--d", zh_d)->required();
    zh->add_option("--m", zh_m, "claimed integer limit")->required();

    CLI11_PARSE(cli, argc, argv);

    if (!config_path.empty()) app.cfg = load_config_file(config_path);
    if (const char* env = std::getenv("ORBITOBS_CACHE")) app.cfg.cache_path = env;
    if (!cache_path.empty()) app.cfg.cache_path = cache_path;
    if (!format.empty()) app.cfg.output_format = parse_output_format(format);
    app.load_cache();

    const FactorOptions fopt = app.cfg.factor_options();
    int exit_code = 0;

    if (sp->parsed()) {
        const SpectrumReport report = order_spectrum(parse_rational(sp_lambda), sp_nmax,
                                                     BigInt(sp_pmax), fopt, app.cache_map());
        emit(app, to_json(report), render_text(report), render_csv(report));
        if (!report.budget_exhausted.empty()) exit_code = 2;
    } else if (zs->parsed()) {
        ZsigmondyReport report;
        report.lambda = parse_rational(zs_lambda);
        report.n = zs_n;
        report.p_limit = BigInt(zs_plimit);
        report.witnesses = primes_with_order(report.lambda, zs_n, report.p_limit, fopt, app.cache_map());
        emit(app, to_json(report), render_text(report), render_csv(report));
    } else if (tr->parsed()) {
        std::istringstream in(tr_curve);
        std::string a, b, k, l;
        if (!std::getline(in, a, ',') || !std::getline(in, b, ',') || !std::getline(in, k, ',') ||
            !std::getline(in, l, ','))
            throw Error(ErrorKind::invalid_input, "--curve needs A,B,k,l");
        const TorusCurve V(parse_rational(a), parse_rational(b), std::stoul(k), std::stoul(l));
        const TrichotomyVerdict verdict = torus_trichotomy(parse_point(tr_point), V, PowerMap(tr_d));
        emit(app, to_json(verdict), render_text(verdict));
    } else if (li->parsed()) {
        std::istringstream in(li_line);
        std::string a, b, c;
        if (!std::getline(in, a, ',') || !std::getline(in, b, ',') || !std::getline(in, c, ','))
            throw Error(ErrorKind::invalid_input, "--line needs A,B,C");
        const LineCurve L(parse_rational(a), parse_rational(b), parse_rational(c));
        const LineIntersection result =
            line_orbit_intersection(parse_point(li_point), L, PowerMap(li_d));
        emit(app, to_json(result), render_text(result));
    } else if (p4->parsed()) {
        PowerLimitReport report;
        report.lambda = parse_rational(p4_lambda);
        report.xi = parse_rational(p4_xi);
        report.d = p4_d;
        PowerLimitOptions opt;
        opt.witness_budget = p4_budget;
        opt.factor = fopt;
        opt.coprime_prime_limit = app.cfg.prime_budget;
        report.outcome = power_limit_decide(report.lambda, report.xi, p4_d, opt, app.cache_map());
        emit(app, to_json(report), render_text(report));
    } else if (es->parsed()) {
        auto [curve, point] = parse_curve_point(es_curve);
        if (!es_point.empty()) point = ec_point_from_json(Json::parse(es_point));
        GroupOrderOptions opt;
        opt.factor = fopt;
        const ECSpectrumReport report =
            elliptic_order_spectrum(curve, point, es_nmax, BigInt(es_pmax), opt, app.cache_map());
        emit(app, to_json(report), render_text(report), render_csv(report));
    } else if (et->parsed()) {
        auto [curve, pbar] = parse_curve_point(et_curve);
        const ECPoint tbar = ec_point_from_json(Json::parse(et_tbar));
        TranslateOptions opt;
        opt.witness_budget = et_budget;
        opt.order.factor = fopt;
        TranslateReport report;
        report.a4 = curve.a4;
        report.a6 = curve.a6;
        report.pbar = pbar;
        report.tbar = tbar;
        report.d = et_d;
        report.outcome = translated_subvariety_check(curve, pbar, tbar, et_d, opt, app.cache_map());
        emit(app, to_json(report), render_text(report));
    } else if (zh->parsed()) {
        ZhatReport report;
        report.d = zh_d;
        report.m = BigInt(zh_m);
        report.verdict = zhat_power_limit(zh_d, report.m);
        emit(app, to_json(report), render_text(report));
    }

    app.save_cache();
    return exit_code;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.kind());
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
