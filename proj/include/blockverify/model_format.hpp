#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "blockverify/model.hpp"

namespace blockverify {

/// Parses a .bdm document. The returned model passes validate_model;
/// structural problems raise ParseError, invariant violations raise
/// ValidationError with the full report attached.
Model parse_model(std::string_view text);

/// Canonical rendering: fixed key order, blocks sorted by id, connections
/// sorted by (to.block, to.port), numbers in shortest round-trip decimal.
/// parse_model(serialize_model(m)) == m for every valid model.
std::string serialize_model(const Model& model);

Model load_model_file(const std::filesystem::path& path);

} // namespace blockverify
