#include <string>

#include "doctest.h"
#include "fscan/spectral.hpp"
#include "fscan/verify.hpp"

using namespace fscan;

TEST_SUITE("verify") {

TEST_CASE("fourier suite passes on the real transform") {
    const VerifyReport report = verify_fourier_suite();
    REQUIRE(report.items.size() == 4);
    for (const auto& item : report.items) {
        INFO(item.name, ": ", item.detail);
        CHECK(item.pass);
        CHECK(!item.name.empty());
        CHECK(!item.detail.empty());
    }
    CHECK(report.all_pass());
}

TEST_CASE("oracle suite passes on the real correlator") {
    const VerifyReport report = verify_oracle_suite();
    REQUIRE(report.items.size() == 3);
    for (const auto& item : report.items) {
        INFO(item.name, ": ", item.detail);
        CHECK(item.pass);
    }
    CHECK(report.all_pass());
}

TEST_CASE("oracle suite catches a broken correlator") {
    // argument order swapped: lags come out mirrored, so the planted
    // integer shift lands on the wrong bin and the suite must notice
    const CorrelateFn swapped = [](const Array2D& a, const Array2D& b) {
        return xcorr(b, a);
    };
    const VerifyReport report = verify_oracle_suite(swapped);
    CHECK(!report.all_pass());
    REQUIRE(!report.items.empty());
    CHECK(report.items[0].name == "integer shift recovery");
    CHECK(!report.items[0].pass);
}

TEST_CASE("all_pass is a conjunction") {
    VerifyReport report;
    CHECK(report.all_pass());  // vacuous truth on the empty report
    report.items.push_back({"a", true, ""});
    CHECK(report.all_pass());
    report.items.push_back({"b", false, ""});
    CHECK(!report.all_pass());
    report.items.push_back({"c", true, ""});
    CHECK(!report.all_pass());
}

}  // TEST_SUITE
