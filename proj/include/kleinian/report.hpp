#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "kleinian/groups.hpp"
#include "kleinian/involutions.hpp"
#include "kleinian/resolution.hpp"

namespace kln {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kReportSchema = "kleinian-report/1";

struct Section {
    std::string name;
    bool pass = false;
    nlohmann::json detail;
};

struct TypeVerification {
    GammaType gamma;
    std::string case_label;  // empty for every case
    std::vector<Section> sections;
    bool ok() const;
    std::string first_failure() const;  // empty when ok
    nlohmann::json to_json() const;
};

// Every exact check for one type, optionally restricted to one involution case.
TypeVerification verify_type(const GammaType& g, const std::string& case_label = "");

// A_1..A_12, D_4..D_10, E6, E7, E8.
std::vector<GammaType> test_range();

nlohmann::json polys_json(const std::array<Poly, 3>& p);
nlohmann::json involution_to_json(const AntiPoissonInvolution& inv);
nlohmann::json involutions_json(const GammaType& g);

// Text rendering of a divisor, one line per component and attachment.
std::string divisor_to_text(const PreimageDivisor& d);

}  // namespace kln
