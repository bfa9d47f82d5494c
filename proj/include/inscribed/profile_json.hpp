#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "inscribed/profile2d.hpp"

namespace inscribed::profile2d {

/// JSON description of a piecewise profile: piece boundaries plus
/// coefficients. Analytic profiles carry no piece table and cannot be
/// serialized.
inline nlohmann::json profile_to_json(const ProfileCurve& p) {
    if (!p.pieces) {
        throw std::invalid_argument("profile_to_json: profile has no piece table");
    }
    nlohmann::json j;
    j["type"] = "piecewise_profile";
    j["A"] = p.A;
    j["B"] = p.B;
    j["kind"] = to_string(p.kind);
    j["pieces"] = nlohmann::json::array();
    for (const auto& piece : p.pieces->pieces) {
        nlohmann::json jp;
        jp["lo"] = piece.lo;
        jp["hi"] = piece.hi;
        jp["basis"] = piece.basis == PieceBasis::sqrt_x ? "sqrt_x" : "x";
        jp["coeffs"] = piece.coeffs;
        jp["inv"] = piece.inv;
        j["pieces"].push_back(jp);
    }
    return j;
}

inline ProfileCurve profile_from_json(const nlohmann::json& j) {
    if (j.value("type", "") != std::string("piecewise_profile")) {
        throw std::invalid_argument("profile_from_json: not a piecewise_profile document");
    }
    PiecewisePoly poly;
    for (const auto& jp : j.at("pieces")) {
        PolyPiece piece;
        piece.lo = jp.at("lo").get<double>();
        piece.hi = jp.at("hi").get<double>();
        piece.basis =
            jp.at("basis").get<std::string>() == "sqrt_x" ? PieceBasis::sqrt_x : PieceBasis::x;
        piece.coeffs = jp.at("coeffs").get<std::vector<double>>();
        piece.inv = jp.value("inv", 0.0);
        poly.pieces.push_back(piece);
    }
    if (poly.pieces.empty()) {
        throw std::invalid_argument("profile_from_json: empty piece table");
    }
    const std::string kind = j.value("kind", "piecewise_polynomial");
    ProfileCurve out = profile_from_pieces(
        std::move(poly),
        kind == "constructed" ? ProfileKind::constructed : ProfileKind::piecewise_polynomial);
    validate_profile(out);
    return out;
}

}  // namespace inscribed::profile2d
