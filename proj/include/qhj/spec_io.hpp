#pragma once

#include <json.hpp>

#include "qhj/catalog.hpp"

namespace qhj {

/// {"family": string, "params": {name: number}, "hbar": number, "mass": number}
nlohmann::json spec_to_json(const PotentialSpec& spec);
/// Missing hbar/mass default to 1. Throws Error(InvalidParameter) on a
/// malformed document and the usual validation errors otherwise.
PotentialSpec spec_from_json(const nlohmann::json& doc);

}  // namespace qhj
