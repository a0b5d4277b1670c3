#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace handkit {

inline constexpr const char* kToolVersion = "0.1.0";

/// Provenance record written alongside every file-producing run. Equal
/// manifest plus equal inputs implies byte-identical outputs, so the
/// manifest carries no timestamps or host state.
struct RunManifest {
  std::string subcommand;
  std::string spec_path;  ///< resolved; empty when the built-in defaults ran
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
};

nlohmann::json manifest_to_json(const RunManifest& m);

/// Writes <out_dir>/manifest.json.
void write_manifest(const RunManifest& m, const std::filesystem::path& out_dir);

}  // namespace handkit
