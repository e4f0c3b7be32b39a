#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include "orbitobs/factor_cache.hpp"

// Exit-code contract and cache coherence, exercised through the real
// binary (path injected by the build).

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(ORBITOBS_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

} // namespace

TEST_CASE("exit 0 on success") {
    CHECK(run_cli("order-spectrum --lambda 2 --nmax 3 --pmax 10").exit_code == 0);
    CHECK(run_cli("zhat-limit --d 6 --m 5").exit_code == 0);
    CHECK(run_cli("trichotomy --point 2,3,1 --curve 1,1,1,1 --d 2").exit_code == 0);
}

TEST_CASE("exit 1 on invalid input") {
    CHECK(run_cli("order-spectrum --lambda 1 --nmax 3 --pmax 10").exit_code == 1);
    CHECK(run_cli("order-spectrum --lambda 0 --nmax 3 --pmax 10").exit_code == 1);
    CHECK(run_cli("trichotomy --point 1,1,1 --curve 1,1,1,1 --d 2").exit_code == 1);
    CHECK(run_cli("line-intersect --point 6,2,3 --line 1,1,1 --d 2").exit_code == 1);
    CHECK(run_cli("order-spectrum --lambda nonsense --nmax 3 --pmax 10").exit_code == 1);
    // structured verdicts have no CSV form
    CHECK(run_cli("--format csv trichotomy --point 2,3,1 --curve 1,1,1,1 --d 2").exit_code == 1);
}

TEST_CASE("exit 2 on budget exhaustion, with partial results printed") {
    const std::string cfg = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                            "/orbitobs_test_config.txt";
    {
        std::ofstream f(cfg);
        f << "factor_effort = 1\n";
    }
    // Phi_53(2) has a composite cofactor beyond the trial bound, so one
    // effort unit cannot finish it
    const RunResult r = run_cli("--config " + cfg + " order-spectrum --lambda 2 --nmax 53 --pmax 100");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("n = 2: p = 3") != std::string::npos); // partial results are still there
    std::remove(cfg.c_str());
}

TEST_CASE("spectrum output formats") {
    const RunResult text = run_cli("order-spectrum --lambda 2 --nmax 12 --pmax 1000000");
    CHECK(text.out.find("n = 6: missing (proven exceptional)") != std::string::npos);
    const RunResult csv = run_cli("--format csv order-spectrum --lambda 2 --nmax 12 --pmax 1000000");
    CHECK(csv.out.find("6,proven_exceptional") != std::string::npos);
    const RunResult json = run_cli("--format json order-spectrum --lambda 2 --nmax 12 --pmax 1000000");
    CHECK(json.out.find("\"schema_version\"") != std::string::npos);
    CHECK(json.out.find("\"kind\": \"order-spectrum\"") != std::string::npos);
}

TEST_CASE("warm and cold cache runs produce identical reports") {
    const std::string dir = std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp";
    const std::string cache = dir + "/orbitobs_test_cache.json";
    std::remove(cache.c_str());
    const std::string args = "--format json order-spectrum --lambda 2 --nmax 16 --pmax 1000000";
    const RunResult cold_no_cache = run_cli(args);
    const RunResult cold = run_cli("--cache " + cache + " " + args);
    const RunResult warm = run_cli("--cache " + cache + " " + args);
    CHECK(cold_no_cache.exit_code == 0);
    CHECK(cold.out == cold_no_cache.out);
    CHECK(warm.out == cold.out);
    std::ifstream f(cache);
    CHECK(f.good()); // the cache file was created
    std::remove(cache.c_str());
}

TEST_CASE("corrupt cache entries are dropped on load, valid ones kept") {
    const std::string dir = std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp";
    const std::string cache = dir + "/orbitobs_bad_cache.json";
    {
        std::ofstream f(cache);
        // 63 = 5*13 is false, 15 = 3*5 replays; 77 = 7*11 but 7 listed twice is false
        f << R"({"version":"1","entries":{"63":[["5",1],["13",1]],"15":[["3",1],["5",1]],)"
          << R"("77":[["7",2],["11",1]]}})";
    }
    const orbitobs::FactorCache loaded = orbitobs::FactorCache::load(cache);
    CHECK(loaded.entries.size() == 1);
    CHECK(loaded.entries.count(15) == 1);
    CHECK(loaded.entries.count(63) == 0);
    std::remove(cache.c_str());
    CHECK(orbitobs::FactorCache::load(cache).entries.empty()); // missing file is just cold
}

TEST_CASE("ORBITOBS_CACHE env var selects the cache path") {
    const std::string dir = std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp";
    const std::string cache = dir + "/orbitobs_env_cache.json";
    std::remove(cache.c_str());
    const RunResult r = run_cli("order-spectrum --lambda 2 --nmax 4 --pmax 100");
    (void)r;
    const std::string cmd = "ORBITOBS_CACHE=" + cache + " " + ORBITOBS_BIN +
                            " order-spectrum --lambda 2 --nmax 4 --pmax 100 >/dev/null 2>&1";
    CHECK(std::system(cmd.c_str()) == 0);
    std::ifstream f(cache);
    CHECK(f.good());
    std::remove(cache.c_str());
}

TEST_CASE("worked CLI examples") {
    const RunResult spectrum = run_cli("order-spectrum --lambda 2 --nmax 3 --pmax 10");
    CHECK(spectrum.out.find("n = 1: missing") != std::string::npos);
    CHECK(spectrum.out.find("n = 2: p = 3") != std::string::npos);
    CHECK(spectrum.out.find("n = 3: p = 7") != std::string::npos);

    const RunResult tri = run_cli("trichotomy --point 2,4,1 --curve 1,1,2,1 --d 2");
    CHECK(tri.out.find("Case II") != std::string::npos);

    const RunResult p4 = run_cli("prop4 --lambda 2 --xi 3 --d 2");
    CHECK(p4.out.find("REFUTED") != std::string::npos);
    CHECK(p4.out.find("mod 5") != std::string::npos);

    const RunResult zh = run_cli("zhat-limit --d 6 --m 5");
    CHECK(zh.out.find("impossible") != std::string::npos);

    const RunResult ec = run_cli(
        R"(ec-spectrum --curve '{"a4":"0","a6":"-2","P":["3","5"]}' --nmax 8 --pmax 10000)");
    CHECK(ec.exit_code == 0);
    CHECK(ec.out.find("n = 2: p = 5") != std::string::npos);
}
