#include <doctest.h>

#include "kleinian/report.hpp"

using namespace kln;

TEST_CASE("every type verifies with the working data") {
    for (auto& g : test_range()) {
        auto v = verify_type(g);
        INFO(g.name(), " ", v.first_failure());
        CHECK(v.ok());
    }
}

TEST_CASE("verification JSON envelope is stable and round-trips") {
    auto v = verify_type(GammaType(Family::E8, 8));
    auto j = v.to_json();
    CHECK(j["status"] == "pass");
    CHECK(j["group_order"] == 120);
    CHECK(j["sections"]["divisors"]["detail"][0]["a"] == nlohmann::json::array({3, 6, 9, 12, 15, 10, 5, 8}));
    CHECK(j["sections"]["presentation"]["detail"]["printed"]["verbatim_ok"] == false);
    auto text = j.dump();
    CHECK(nlohmann::json::parse(text) == j);
    CHECK(verify_type(GammaType(Family::E8, 8)).to_json().dump() == text);
}

TEST_CASE("case filter") {
    auto v = verify_type(GammaType(Family::A, 7), "III");
    CHECK(v.ok());
    for (auto& s : v.sections)
        if (s.name == "involutions") CHECK(s.detail.size() == 1);
    CHECK_THROWS_AS(verify_type(GammaType(Family::A, 4), "III"), std::invalid_argument);
}

TEST_CASE("involution JSON lists images, matrix and fixed locus") {
    auto j = involutions_json(GammaType(Family::D, 6));
    REQUIRE(j["involutions"].size() == 2);
    for (auto& c : j["involutions"]) {
        CHECK(c.contains("images"));
        CHECK(c.contains("matrix"));
        CHECK(c["fixed_locus"].contains("ideal"));
        CHECK(c["fixed_locus"]["reduced"] == true);
    }
}

TEST_CASE("divisor text for the reduced fiber") {
    auto t = divisor_to_text(divisor_description(GammaType(Family::A, 5), "III"));
    CHECK(t.find("reduced exceptional fiber, all multiplicities 1") != std::string::npos);
}
