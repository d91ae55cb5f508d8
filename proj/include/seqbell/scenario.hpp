#pragma once

#include <string>

#include <json.hpp>

#include "seqbell/chain.hpp"

namespace seqbell {

/// {"dim": d, "entries": [[re, im], ...]} with d*d entries in row-major order.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

/// Scenario schema:
///   {"dims": [dA, dB],
///    "state": matrix | "canonical",
///    "alice": [m1, m2, m3] | "canonical",
///    "bobs": [{"triple": [m1, m2, m3] | "canonical", "eta": x,
///              "weights": [w1, w2, w3]}, ...]}
/// "dims" defaults to [2, 2]; "weights" to uniform. Throws DomainError or
/// DimensionError on malformed input.
ChainConfig parse_scenario(const nlohmann::json& j);
ChainConfig load_scenario(const std::string& path);

nlohmann::json to_json(const ChainResult& r);

}  // namespace seqbell
