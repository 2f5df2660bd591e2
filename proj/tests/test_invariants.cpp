#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hk/invariants.hpp"
#include "hk/report.hpp"
#include "oracles.hpp"

using namespace hk;

namespace {

std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

/// Sum of chi over all characters, from the loop table and coordinates only.
std::int64_t chi_sum_oracle(int n) {
    std::int64_t sum = 0;
    std::array<int, 5> a{};
    for (a[0] = 0; a[0] < n; ++a[0])
        for (a[1] = 0; a[1] < n; ++a[1])
            for (a[2] = 0; a[2] < n; ++a[2])
                for (a[3] = 0; a[3] < n; ++a[3])
                    for (a[4] = 0; a[4] < n; ++a[4]) {
                        const auto t = oracle::twist_from_loops(n, a);
                        sum += oracle::chi(t.logbits, t.delta);
                    }
    return sum;
}

const Registry& no_registry() {
    static const Registry r;
    return r;
}

nlohmann::json without_mode(nlohmann::json j) {
    j.erase("mode");
    return j;
}

}  // namespace

TEST_CASE("closed form examples") {
    CHECK(closed_form(2).K2 == 0);
    const auto s3 = closed_form(3);
    CHECK(s3.K2 == 135);
    CHECK(s3.euler == 81);
    CHECK(s3.chiO == 18);
    CHECK(s3.chiTheta == 90);
    const auto s5 = closed_form(5);
    CHECK(s5.K2 == 5625);
    CHECK(s5.euler == 1875);
    CHECK(s5.chiO == 625);
    CHECK(s5.chiTheta == 5000);
    CHECK_THROWS(closed_form(1));
}

TEST_CASE("Noether identity and stratified Euler number") {
    const auto strata = stratification();
    REQUIRE(strata.size() == 3);
    // Y is P^2 blown up in four points; ten lines, fifteen nodes, each line
    // meets three others
    std::int64_t nodes = 0;
    for (int i = 1; i <= 5; ++i)
        for (int j = i + 1; j <= 5; ++j)
            for (int h = 1; h <= 5; ++h)
                for (int k = h + 1; k <= 5; ++k)
                    if (oracle::overlap_rule(i, j, h, k) == 1) ++nodes;
    nodes /= 2;
    CHECK(nodes == 15);
    const std::int64_t euler_y = 3 + 4;
    const std::int64_t euler_d = 10 * 2 - nodes;
    const std::int64_t open_lines = 10 * (2 - 3);
    for (const auto& s : strata) {
        if (s.name == "nodes") CHECK(s.euler == nodes);
        if (s.name == "open lines") CHECK(s.euler == open_lines);
        if (s.name == "complement") CHECK(s.euler == euler_y - euler_d);
    }
    CHECK(euler_by_stratification(3) == 81);
    CHECK(euler_by_stratification(5) == 1875);
    for (int n = 2; n <= 20; ++n) {
        const auto s = closed_form(n);
        CHECK(12 * s.chiO == s.K2 + s.euler);
        CHECK(s.chiTheta == 2 * s.K2 - 10 * s.chiO);
        CHECK(euler_by_stratification(n) == s.euler);
        CHECK(euler_by_stratification(n) ==
              (euler_y - euler_d) * ipow(n, 5) + open_lines * ipow(n, 4) + nodes * ipow(n, 3));
    }
}

TEST_CASE("chi cross-check") {
    const auto c3 = chi_crosscheck(3);
    CHECK(c3.sum == 90);
    CHECK(c3.chiTheta == 90);
    const auto c5 = chi_crosscheck(5);
    CHECK(c5.sum == 5000);
    CHECK(c5.ok());
    for (int n = 3; n <= 8; ++n) {
        const auto c = chi_crosscheck(n);
        CHECK_MESSAGE(c.ok(), "n=" << n);
        CHECK(c.sum == chi_sum_oracle(n));
    }
}

TEST_CASE("rigidity at n = 3 fails on exactly one orbit") {
    const auto r = rigidity_report(3, no_registry());
    CHECK_FALSE(r.rigid);
    CHECK(r.status() == 1);
    CHECK(r.total_characters == 243);
    REQUIRE(r.nonvanishing.size() == 1);
    const auto& w = r.nonvanishing[0];
    CHECK(w.rep == canonical_character(Character(3, {2, 2, 2, 1, 1})));
    CHECK(w.orbit_size == 10);
    CHECK(w.chi == -1);
    CHECK(r.tally.at("nonvanishing") == 10);
    CHECK(r.tally.at("trivial") == 1);
    CHECK(r.tally.at("unresolved") == 0);
    CHECK(r.tally.at("registry") == 0);
    std::int64_t total = 0;
    for (const auto& [k, v] : r.tally) total += v;
    CHECK(total == 243);
    CHECK(r.replay_failures.empty());
    CHECK(r.crosscheck_ok);
}

TEST_CASE("rigidity for n = 4 .. 8") {
    for (int n = 4; n <= 8; ++n) {
        const auto r = rigidity_report(n, no_registry());
        CHECK_MESSAGE(r.rigid, "n=" << n);
        CHECK(r.status() == 0);
        CHECK(r.unresolved_keys.empty());
        CHECK(r.nonvanishing.empty());
        CHECK(r.registry_ids_used.empty());
        CHECK(r.replay_failures.empty());
        CHECK(r.certificates_replayed == r.distinct_problems);
        CHECK(r.crosscheck_ok);
        CHECK(r.total_characters == ipow(n, 5));
    }
}

TEST_CASE("orbit and full enumeration agree") {
    const std::string digest = no_registry().digest();
    for (int n = 3; n <= 6; ++n) {
        RigidityOptions orb, full;
        full.orbits = false;
        const auto a = rigidity_report(n, no_registry(), orb);
        const auto b = rigidity_report(n, no_registry(), full);
        CHECK(a.tally == b.tally);
        CHECK(a.rigid == b.rigid);
        CHECK(without_mode(report::rigidity_json(a, digest)) == without_mode(report::rigidity_json(b, digest)));
    }
}

TEST_CASE("reports do not depend on the number of workers") {
    const std::string digest = no_registry().digest();
    for (int n : {5, 7}) {
        std::string first;
        for (int jobs : {1, 2, 3, 8}) {
            RigidityOptions o;
            o.jobs = jobs;
            const auto text = report::dump(report::rigidity_json(rigidity_report(n, no_registry(), o), digest));
            if (first.empty()) first = text;
            CHECK(text == first);
        }
    }
}

TEST_CASE("report schema") {
    const auto j = report::invariants_json(3, true);
    CHECK_NOTHROW(report::require_schema(j));
    CHECK(j.at("chiTheta") == 90);
    CHECK(j.at("crosscheck_ok") == true);
    auto bad = j;
    bad["schema_version"] = 99;
    CHECK_THROWS_AS(report::require_schema(bad), report::SchemaError);
    CHECK_THROWS_AS(report::require_schema(nlohmann::json::array()), report::SchemaError);
}
