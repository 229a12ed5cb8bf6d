// Acceptance suite: every top-level guarantee of the engine, one test each,
// with a PASS/FAIL line per criterion on stdout.

#include "localg/checks.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>

using namespace localg;

namespace {

void report(const CriterionResult& r) {
    std::printf("%s [%2d] %-55s (%.2fs) %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds, r.detail.c_str());
    std::fflush(stdout);
}

} // namespace

TEST_CASE("criterion 1: S3 localization dimensions and presentation") {
    auto r = check_s3_localization();
    report(r);
    INFO(r.detail);
    CHECK(r.pass);
    CHECK(r.seconds < 60.0);
}

TEST_CASE("criterion 2: z-map composition law") {
    auto r = check_z_map_law();
    report(r);
    INFO(r.detail);
    CHECK(r.pass);
}

TEST_CASE("criterion 3: Benson five-term sequences") {
    auto r = check_benson_sequences();
    report(r);
    INFO(r.detail);
    CHECK(r.pass);
    CHECK(r.seconds < 300.0);
}

TEST_CASE("criterion 4: Tor formula shadow") {
    auto r = check_tor_formula();
    report(r);
    INFO(r.detail);
    CHECK(r.pass);
}

TEST_CASE("criterion 5: homotopy vs homological epimorphisms on the battery") {
    auto r = check_theorem_battery();
    report(r);
    INFO(r.detail);
    CHECK(r.pass);
}

TEST_CASE("criterion 6: filtration quotients match the shape formula") {
    auto r = check_filtration_battery();
    report(r);
    INFO(r.detail);
    CHECK(r.pass);
}

TEST_CASE("criterion 7: the two homological-epi criteria agree") {
    auto r = check_acyclic_differentials_agreement();
    report(r);
    INFO(r.detail);
    CHECK(r.pass);
}

TEST_CASE("criterion 8: resolution independence of Tor") {
    auto r = check_resolution_independence();
    report(r);
    INFO(r.detail);
    CHECK(r.pass);
}

TEST_CASE("criterion 9: Nakayama property") {
    auto r = check_nakayama_battery();
    report(r);
    INFO(r.detail);
    CHECK(r.pass);
}

TEST_CASE("criterion 10: Hilbert series") {
    auto r = check_hilbert_series();
    report(r);
    INFO(r.detail);
    CHECK(r.pass);
}
