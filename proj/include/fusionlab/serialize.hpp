#pragma once

#include <json.hpp>

#include "fusionlab/charpoly.hpp"
#include "fusionlab/qpoly.hpp"
#include "fusionlab/rational.hpp"

namespace fusionlab {

// QPoly <-> JSON array of [exponent, coefficient-as-decimal-string], ascending exponent.
inline nlohmann::json to_json(const QPoly& p) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& [e, c] : p.coeffs()) a.push_back({e, c.str()});
    return a;
}

inline QPoly qpoly_from_json(const nlohmann::json& a) {
    QPoly p;
    for (const auto& term : a)
        p.add_term(term.at(0).get<long long>(), BigInt(term.at(1).get<std::string>()));
    return p;
}

// CharPoly <-> JSON array of [z2, d, coefficient-as-decimal-string], lex by (z2, d).
inline nlohmann::json to_json(const CharPoly& p) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& [k, c] : p.coeffs()) a.push_back({k.z2, k.d, c.str()});
    return a;
}

inline CharPoly charpoly_from_json(const nlohmann::json& a) {
    CharPoly p;
    for (const auto& term : a)
        p.add_term(term.at(0).get<long long>(), term.at(1).get<long long>(),
                   BigInt(term.at(2).get<std::string>()));
    return p;
}

inline nlohmann::json to_json(const Rational& r) { return r.str(); }

} // namespace fusionlab
