#pragma once

#include <string>

#include "qnc/operators.hpp"

// forward declaration keeps nlohmann out of most translation units
#include <json.hpp>

namespace qnc {

/// Operator file layout:
///   {lattice:{d,n}, support:[[ints]], matrix:[[[re,im],...],...]} (row major).
nlohmann::json operator_to_json(const LocalOperator& f);
LocalOperator operator_from_json(const nlohmann::json& j);

void save_operator(const LocalOperator& f, const std::string& path);
LocalOperator load_operator(const std::string& path);

} // namespace qnc
