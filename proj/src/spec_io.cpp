#include "qhj/spec_io.hpp"

namespace qhj {

nlohmann::json spec_to_json(const PotentialSpec& spec) {
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : spec.params()) params[k] = v;
    return {{"family", std::string(family_name(spec.family()))},
            {"params", params},
            {"hbar", spec.hbar()},
            {"mass", spec.mass()}};
}

PotentialSpec spec_from_json(const nlohmann::json& doc) {
    if (!doc.is_object())
        throw Error(ErrorCode::InvalidParameter, "potential spec must be a JSON object");
    if (!doc.contains("family") || !doc["family"].is_string())
        throw Error(ErrorCode::InvalidParameter, "potential spec needs a string 'family'", "family");
    const Family family = parse_family(doc["family"].get<std::string>());

    PotentialSpec::Params params;
    if (doc.contains("params")) {
        const auto& p = doc["params"];
        if (!p.is_object())
            throw Error(ErrorCode::InvalidParameter, "'params' must be an object", "params");
        for (const auto& [k, v] : p.items()) {
            if (!v.is_number())
                throw Error(ErrorCode::InvalidParameter, "parameter '" + k + "' must be a number", k);
            params[k] = v.get<double>();
        }
    }
    UnitSystem units;
    for (const char* key : {"hbar", "mass"}) {
        if (!doc.contains(key)) continue;
        if (!doc[key].is_number())
            throw Error(ErrorCode::InvalidParameter, std::string(key) + " must be a number", key);
        (key[0] == 'h' ? units.hbar : units.mass) = doc[key].get<double>();
    }
    return PotentialSpec::make(family, std::move(params), units);
}

}  // namespace qhj
