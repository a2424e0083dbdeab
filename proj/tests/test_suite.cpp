#include "wittlab/suite.hpp"

#include "wittlab/error.hpp"

#include <doctest.h>

using namespace wittlab;

TEST_CASE("config validation diagnostics") {
    CHECK_THROWS_WITH_AS(SuiteConfig::from_json({{"wittLevels", {9}}}),
                         doctest::Contains("wittLevels"), error);
    CHECK_THROWS_WITH_AS(SuiteConfig::from_json({{"primes", {11}}}), doctest::Contains("primes"),
                         error);
    CHECK_THROWS_WITH_AS(SuiteConfig::from_json({{"groups", {"no-such-group"}}}),
                         doctest::Contains("unknown group"), error);
    CHECK_THROWS_WITH_AS(SuiteConfig::from_json({{"oracle", "psychic"}}),
                         doctest::Contains("oracle"), error);
    auto c = SuiteConfig::from_json({{"primes", {2, 3}}, {"seed", 7}});
    CHECK(c.seed == 7);
    // round trip
    CHECK(SuiteConfig::from_json(c.to_json()).to_json() == c.to_json());
}

TEST_CASE("difference-kernel group: p = 2 is skipped with the anomaly witness") {
    SuiteConfig cfg;
    cfg.groups = {"rigidity"};
    auto report = run_suite(cfg);
    bool found = false;
    for (const auto& c : report.checks) {
        if (c.id == "rigidity/difference-kernel/p2") {
            found = true;
            CHECK(c.status == "skipped");
            CHECK(c.witness.contains("F"));
        }
    }
    CHECK(found);
    CHECK(report.all_passed());
}

TEST_CASE("same seed gives byte-identical reports; different seed differs nowhere visible") {
    SuiteConfig cfg;
    cfg.groups = {"witt-axioms"};
    cfg.primes = {2};
    cfg.seed = 424242;
    auto a = run_suite(cfg).serialize();
    auto b = run_suite(cfg).serialize();
    CHECK(a == b);
    cfg.jobs = 4; // scheduling must not affect the report
    auto c = run_suite(cfg).serialize();
    CHECK(a == c);
}

TEST_CASE("group selection restricts the check list") {
    SuiteConfig cfg;
    cfg.groups = {"splitting"};
    cfg.primes = {2};
    auto report = run_suite(cfg);
    CHECK(report.checks.size() == 3);
    for (const auto& c : report.checks) {
        CHECK(c.id.rfind("splitting/", 0) == 0);
        CHECK(c.status == "pass");
    }
}
