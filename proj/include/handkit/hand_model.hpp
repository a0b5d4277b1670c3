#pragma once

#include <filesystem>
#include <map>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "handkit/kinematics.hpp"
#include "handkit/nitinol.hpp"
#include "handkit/palm.hpp"
#include "handkit/tendon.hpp"
#include "handkit/types.hpp"

namespace handkit {

/// Full parametric description of one hand. Immutable after load; share
/// freely across threads.
struct HandSpec {
  std::map<Finger, SegmentDims> fingers;
  std::map<FingerJoint, RollingJointGeom> joints;
  FingerLimits finger_limits;
  ThumbSpec thumb;
  std::array<CmcJoint, 5> cmc;  ///< index 0 = first CMC

  nitinol::MaterialModel material;
  nitinol::StrainLifeTable strain_life;
  std::map<FingerJoint, nitinol::WireSpec> wires;

  palm::PalmGeometry palm_geometry;
  palm::CompressionCurve compression;

  std::vector<tendon::TendonRoute> tendons;

  kinematics::LinkSchedule link_schedule;
  std::vector<kinematics::DhRow> dh_chain;

  bool operator==(const HandSpec&) const = default;
};

/// The built-in parameter set: reference table values where published,
/// documented placeholders elsewhere (thumb segment lengths stay unset).
HandSpec default_hand_spec();

/// Loads a hand spec file (JSON, degrees and millimetres; see README for the
/// schema). Absent fields fall back to the defaults; the result is
/// validated. Throws ParseError on malformed JSON and ValidationError naming
/// the field on any invariant violation.
HandSpec load_hand_spec(const std::filesystem::path& path);

/// As load_hand_spec, from an already parsed document.
HandSpec hand_spec_from_json(const nlohmann::json& doc);

/// Serializes back to the file schema (degrees/mm). Loading the output
/// reproduces the spec field-for-field.
nlohmann::json hand_spec_to_json(const HandSpec& spec);

void save_hand_spec(const HandSpec& spec, const std::filesystem::path& path);

/// Checks every documented invariant; throws ValidationError with the field
/// path of the first violation. load_hand_spec calls this.
void validate(const HandSpec& spec);

}  // namespace handkit
