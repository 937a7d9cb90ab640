#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>

#include "chebzero/chebyshev.hpp"

namespace chebzero {

/// {"kind": "interval", "a": -1, "b": 1}, {"kind": "circle", "radius": 1},
/// {"kind": "disk", ...} or {"kind": "product", "factors": [f1, f2]}.
nlohmann::json set_to_json(const ModelSet& set);
ModelSet set_from_json(const nlohmann::json& config);

/// Family tag, set config, max degree, and per element the multi-index, the
/// representation, log_scale, the coefficient list as [re, im] pairs, and
/// the sup norm. Doubles are written with round-trip precision.
nlohmann::json basis_to_json(const Basis& basis);
Basis basis_from_json(const nlohmann::json& doc);

void write_basis(const Basis& basis, const std::filesystem::path& path);

/// Throws ErrorKind::kMissingArtifact when the file does not exist.
Basis read_basis(const std::filesystem::path& path);

}  // namespace chebzero
