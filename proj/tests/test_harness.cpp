#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <string>
#include <vector>

#include "tamagawa/harness.hpp"

using namespace tamagawa;

namespace {

const TorsionFamily& family() {
    static TorsionFamily fam =
        load_torsion_family(TAMAGAWA_DATA_DIR "/torsion_2_14.json");
    return fam;
}

long count_exceptions(const ScanReport& r) {
    long k = 0;
    for (const auto& c : r.results)
        if (c.exception_tag) ++k;
    return k;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("squarefree twist enumeration is ordered by |d|, positive first") {
    auto tw = squarefree_twists(10);
    std::vector<long> expected{1, -1, 2, -2, 3, -3, 5, -5, 6, -6, 7, -7, 10, -10};
    REQUIRE(tw.size() == expected.size());
    for (size_t i = 0; i < tw.size(); ++i) CHECK(tw[i] == expected[i]);
}

TEST_CASE("factorization budget can be overridden from the environment") {
    unsetenv("TAMAGAWA_RHO_ITERATIONS");
    CHECK(budget_from_env().rho_iterations == FactorBudget{}.rho_iterations);
    setenv("TAMAGAWA_RHO_ITERATIONS", "12345", 1);
    CHECK(budget_from_env().rho_iterations == 12345);
    setenv("TAMAGAWA_RHO_ITERATIONS", "garbage", 1);
    CHECK(budget_from_env().rho_iterations == FactorBudget{}.rho_iterations);
    unsetenv("TAMAGAWA_RHO_ITERATIONS");
}

TEST_CASE("torsion scan at height 4 is clean with the three repeated fibers tagged") {
    auto r = scan_torsion_family(family(), 4);
    // 21 admissible parameters (height <= 4, u != +-1), three checks each
    CHECK(r.results.size() == 63);
    auto s = r.summary();
    CHECK(s.failed == 0);
    CHECK(s.skipped == 0);
    CHECK(s.passed == 63);
    CHECK(count_exceptions(r) == 3);
    for (const auto& c : r.results) {
        if (!c.exception_tag) continue;
        CHECK(c.proposition == "torsion/witness-prime");
        CHECK(c.exception_tag->conductor == 1922);
        CHECK(c.exception_tag->c_E == 14);
        bool repeated = c.instance == "u=0" || c.instance == "u=3" || c.instance == "u=-3";
        CHECK(repeated);
    }
    CHECK(r.config.kind == "scan torsion");
    CHECK(r.config.family_checksum == family().checksum());
}

TEST_CASE("torsion scan narrowed to one parameter") {
    ScanOptions opts;
    opts.only_parameter = Rat(2);
    auto r = scan_torsion_family(family(), 4, opts);
    REQUIRE(r.results.size() == 3);
    for (const auto& c : r.results) {
        CHECK(c.instance == "u=2");
        CHECK(c.verdict == Verdict::pass);
    }
    CHECK(r.results[0].proposition == "torsion/split-I14k-at-2");
    CHECK(r.results[0].evidence.at(0) == "p=2: split I14, f=1, c=14, v(disc)=14");
}

TEST_CASE("reports serialize deterministically and parse back") {
    auto r1 = scan_torsion_family(family(), 2);
    auto r2 = scan_torsion_family(family(), 2);
    CHECK(r1.to_json() == r2.to_json());

    auto doc = nlohmann::json::parse(r1.to_json());
    CHECK(doc["kind"] == "scan torsion");
    CHECK(doc["config"]["height"] == 2);
    CHECK(doc["summary"]["fail"] == 0);
    CHECK(doc["results"].size() == r1.results.size());
    for (const auto& item : doc["results"]) {
        CHECK(item.contains("proposition"));
        CHECK(item.contains("verdict"));
    }
}

TEST_CASE("6-isogeny scan at small height and twist bound is clean") {
    auto r = scan_isogeny_family(6, 3, 6);
    // 14 non-cusp parameters of height <= 3, 10 twists each
    CHECK(r.results.size() == 140);
    auto s = r.summary();
    CHECK(s.failed == 0);
    CHECK(s.skipped == 0);
    CHECK(r.config.kind == "scan x0");
    CHECK(r.config.n == 6);
}

TEST_CASE("6-isogeny scan narrowed to one instance") {
    ScanOptions opts;
    opts.only_parameter = Rat(2);
    opts.only_twist = Int(-3);
    auto r = scan_isogeny_family(6, 3, 6, opts);
    REQUIRE(r.results.size() == 1);
    CHECK(r.results[0].instance == "h=2 d=-3");
    CHECK(r.results[0].verdict == Verdict::pass);
}

TEST_CASE("fixed 17-isogeny classes across twists up to 10") {
    auto r = verify_fixed_isogeny(17, 10);
    // two classes, 14 twists each
    CHECK(r.results.size() == 28);
    CHECK(r.clean());
    CHECK(r.summary().skipped == 0);
    for (const auto& c : r.results) {
        CHECK(c.proposition == "fixed-17/designated-prime");
        CHECK(c.evidence.at(0).find(" III") != std::string::npos);
        CHECK(c.evidence.at(0).find("c=2") != std::string::npos);
    }
}

TEST_CASE("I_0* congruences at prime bound 30") {
    auto r = verify_i0star_congruences(30);
    // 2 representative records + 8 primes x 2 representatives + 3 table rows
    // + 1 density record
    CHECK(r.results.size() == 22);
    CHECK(r.clean());
    CHECK(r.summary().skipped == 0);
    CHECK(r.results[0].proposition == "i0star/representative-20");
    CHECK(r.results[0].instance == "d=22");
    bool saw80 = false;
    for (const auto& c : r.results)
        if (c.proposition == "i0star/representative-80") {
            saw80 = true;
            CHECK(c.instance == "d=-22");
        }
    CHECK(saw80);
}

TEST_CASE("property suite is clean and reproducible") {
    auto r1 = run_property_suite(7);
    CHECK(r1.results.size() == 6);
    CHECK(r1.clean());
    CHECK(r1.summary().skipped == 0);
    auto r2 = run_property_suite(7);
    CHECK(r1.to_json() == r2.to_json());
}

}
