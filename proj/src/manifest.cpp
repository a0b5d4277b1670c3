#include "handkit/manifest.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "handkit/errors.hpp"

namespace handkit {

nlohmann::json manifest_to_json(const RunManifest& m) {
  nlohmann::json j;
  j["subcommand"] = m.subcommand;
  j["spec_path"] = m.spec_path;
  j["inputs"] = m.inputs;
  j["outputs"] = m.outputs;
  j["seed"] = m.seed;
  j["tool_version"] = m.tool_version;
  return j;
}

void write_manifest(const RunManifest& m,
                    const std::filesystem::path& out_dir) {
  const std::filesystem::path path = out_dir / "manifest.json";
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << manifest_to_json(m).dump(2) << '\n';
}

}  // namespace handkit
