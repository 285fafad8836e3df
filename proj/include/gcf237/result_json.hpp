#pragma once

#include <json.hpp>

#include "gcf237/engine.hpp"

namespace gcf237 {

// JSON ResultDocument: b0_word, digits, status, preperiod, period,
// unit { matrix_z, matrix_w, rho_alpha { a, b, D } }, convergents.
nlohmann::json result_document(ExpansionSession& s, long convergent_count);

// computed a_i, b_i, c_i with the verification flags of the constants table
nlohmann::json constants_document();

std::string pretty_result(const nlohmann::json& doc);

}  // namespace gcf237
