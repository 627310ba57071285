#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "affecta/context_map.hpp"

namespace affecta {

inline constexpr int kMapDocumentVersion = 1;

/// Versioned JSON document holding the full map state, cells in row-major
/// order:
///
///   {version, width, height, attr_count, weights, base_learning_rate,
///    neighborhood_radius, rng_seed,
///    cells: [{attrs: [...], behaviors: {"0": {pos, total}, ...}}]}
nlohmann::json encode_map(const ContextMap& map);

/// Inverse of encode_map. Throws DecodeError on unknown versions, missing or
/// mistyped fields, and invariant violations; nothing is returned partially.
ContextMap decode_map(const nlohmann::json& doc);

void save_map(const ContextMap& map, const std::filesystem::path& path);
ContextMap load_map(const std::filesystem::path& path);

/// FNV-1a over the compact encoded document; used by reports to pin a map state.
std::uint64_t map_digest(const ContextMap& map);

}  // namespace affecta
