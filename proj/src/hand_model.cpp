#include "handkit/hand_model.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

namespace handkit {

using nlohmann::json;

HandSpec default_hand_spec() {
  HandSpec spec;
  spec.fingers = {
      {Finger::Index, {19.92, 24.43, 45.44}},
      {Finger::Middle, {20.26, 27.47, 47.26}},
      {Finger::Ring, {19.70, 25.21, 42.87}},
      {Finger::Little, {18.44, 19.43, 37.12}},
  };
  // Outer/inner radii are placeholder design values (the reference tables
  // publish only the wire bend radii); the inner radii realize the 3:2
  // PIP-DIP coupling.
  spec.joints = {
      {FingerJoint::Mcp, {8.0, 8.0, 4.0, 4.0, 20.0}},
      {FingerJoint::Pip, {6.0, 6.0, 2.0, 2.0, 18.0}},
      {FingerJoint::Dip, {5.0, 5.0, 3.0, 3.0, 15.0}},
  };
  spec.finger_limits = FingerLimits{};
  spec.thumb = ThumbSpec{};

  spec.cmc[0] = {CmcKind::Ball, JointLimits::symmetric_deg(55.0),
                 JointLimits::symmetric_deg(55.0), deg_to_rad(55.0)};
  spec.cmc[1] = {CmcKind::Fixed, {}, {}, 0.0};
  spec.cmc[2] = {CmcKind::Fixed, {}, {}, 0.0};
  spec.cmc[3] = {CmcKind::Rolling, JointLimits::from_deg(0.0, 10.0), {}, 0.0};
  spec.cmc[4] = {CmcKind::Rolling, JointLimits::from_deg(0.0, 44.0), {}, 0.0};

  spec.material = nitinol::MaterialModel{};
  spec.strain_life = nitinol::StrainLifeTable::default_table();
  spec.wires = {
      {FingerJoint::Mcp,
       {0.58, 2, nitinol::WireConfiguration::FixedFree, 0.81}},
      {FingerJoint::Pip,
       {0.58, 1, nitinol::WireConfiguration::FixedFree, 0.86}},
      {FingerJoint::Dip,
       {0.58, 1, nitinol::WireConfiguration::FixedFree, 0.65}},
  };

  spec.palm_geometry = palm::PalmGeometry::default_geometry();
  spec.compression = palm::CompressionCurve::default_curve();

  spec.tendons = tendon::default_finger_routes(
      spec.joints.at(FingerJoint::Mcp).rr1_mm,
      spec.joints.at(FingerJoint::Pip).rr1_mm,
      spec.joints.at(FingerJoint::Dip).rr1_mm);

  spec.link_schedule = kinematics::LinkSchedule::middle_finger_default();
  spec.dh_chain = kinematics::middle_finger_dh_chain();
  return spec;
}

namespace {

// ---------------------------------------------------------------------------
// serialization helpers

/// Degree value whose conversion back to radians reproduces `rad` exactly.
/// Every stored angle originates from a degree value, so an exact preimage
/// exists within a few ulp of the rounded conversion.
double deg_preimage(double rad) {
  double d = rad_to_deg(rad);
  if (deg_to_rad(d) == rad) return d;
  double up = d, dn = d;
  for (int i = 0; i < 4; ++i) {
    up = std::nextafter(up, std::numeric_limits<double>::infinity());
    if (deg_to_rad(up) == rad) return up;
    dn = std::nextafter(dn, -std::numeric_limits<double>::infinity());
    if (deg_to_rad(dn) == rad) return dn;
  }
  return d;
}

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ValidationError(path, message);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    const std::string& key = item.key();
    if (key == "note" || key.ends_with("_note")) continue;
    bool known = false;
    for (const char* a : allowed)
      if (key == a) {
        known = true;
        break;
      }
    if (!known) fail(path.empty() ? key : path, "unknown key '" + key + "'");
  }
}

const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

void read_number(const json& obj, const std::string& path, const char* key,
                 double& out) {
  if (const json* v = find(obj, key)) out = as_number(*v, join(path, key));
}

void read_angle_deg(const json& obj, const std::string& path, const char* key,
                    double& out_rad) {
  if (const json* v = find(obj, key))
    out_rad = deg_to_rad(as_number(*v, join(path, key)));
}

void read_int(const json& obj, const std::string& path, const char* key,
              int& out) {
  if (const json* v = find(obj, key)) {
    if (!v->is_number_integer()) fail(join(path, key), "expected an integer");
    out = v->get<int>();
  }
}

const json& require(const json& obj, const std::string& path,
                    const char* key) {
  const json* v = find(obj, key);
  if (!v) fail(path, "missing key '" + std::string(key) + "'");
  return *v;
}

// ---------------------------------------------------------------------------
// enum names

template <typename Enum>
Enum parse_enum(const json& v, const std::string& path,
                std::initializer_list<std::pair<const char*, Enum>> names) {
  if (!v.is_string()) fail(path, "expected a string");
  const auto s = v.get<std::string>();
  for (const auto& [name, value] : names)
    if (s == name) return value;
  std::string allowed;
  for (const auto& entry : names) {
    if (!allowed.empty()) allowed += ", ";
    allowed += entry.first;
  }
  fail(path, "unknown value '" + s + "' (expected one of: " + allowed + ")");
}

constexpr const char* kConfigNames[] = {"fixed_free", "crossed"};

const char* to_key(nitinol::WireConfiguration c) {
  return kConfigNames[c == nitinol::WireConfiguration::Crossed ? 1 : 0];
}

nitinol::WireConfiguration parse_configuration(const json& v,
                                               const std::string& path) {
  return parse_enum<nitinol::WireConfiguration>(
      v, path,
      {{"fixed_free", nitinol::WireConfiguration::FixedFree},
       {"crossed", nitinol::WireConfiguration::Crossed}});
}

CmcKind parse_cmc_kind(const json& v, const std::string& path) {
  return parse_enum<CmcKind>(v, path,
                             {{"ball", CmcKind::Ball},
                              {"fixed", CmcKind::Fixed},
                              {"rolling", CmcKind::Rolling}});
}

tendon::TendonName parse_tendon_name(const json& v, const std::string& path) {
  using tendon::TendonName;
  return parse_enum<TendonName>(
      v, path,
      {{"flexion", TendonName::Flexion},
       {"lumbrical", TendonName::Lumbrical},
       {"coupling_pip_dip", TendonName::CouplingPipDip},
       {"opposition", TendonName::Opposition},
       {"adduction", TendonName::Adduction},
       {"abduction", TendonName::Abduction}});
}

tendon::JointId parse_joint_id(const json& v, const std::string& path) {
  using tendon::JointId;
  return parse_enum<JointId>(v, path,
                             {{"mcp", JointId::Mcp},
                              {"pip", JointId::Pip},
                              {"dip", JointId::Dip},
                              {"thumb_mcp", JointId::ThumbMcp},
                              {"thumb_ip", JointId::ThumbIp},
                              {"cmc_flexion", JointId::CmcFlexion},
                              {"cmc_abduction", JointId::CmcAbduction},
                              {"cmc_axial", JointId::CmcAxial}});
}

kinematics::Rational parse_rational(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
      !v[1].is_number_integer())
    fail(path, "expected [numerator, denominator]");
  kinematics::Rational r{v[0].get<long long>(), v[1].get<long long>()};
  if (r.den == 0) fail(path, "zero denominator");
  return r;
}

void read_rational(const json& obj, const std::string& path, const char* key,
                   kinematics::Rational& out) {
  if (const json* v = find(obj, key)) out = parse_rational(*v, join(path, key));
}

json rational_to_json(const kinematics::Rational& r) {
  return json::array({r.num, r.den});
}

// ---------------------------------------------------------------------------
// section readers (each merges onto the defaults already in `spec`)

void read_limits(const json& obj, const std::string& path, JointLimits& out) {
  check_keys(obj, path, {"min_deg", "max_deg"});
  read_angle_deg(obj, path, "min_deg", out.min_rad);
  read_angle_deg(obj, path, "max_deg", out.max_rad);
}

void read_fingers(const json& obj, HandSpec& spec) {
  check_keys(obj, "fingers", {"index", "middle", "ring", "little"});
  for (Finger f : kFingers) {
    const json* entry = find(obj, to_string(f).c_str());
    if (!entry) continue;
    const std::string path = "fingers." + to_string(f);
    check_keys(*entry, path, {"tip_dip_mm", "dip_pip_mm", "pip_mcp_mm"});
    SegmentDims& dims = spec.fingers[f];
    read_number(*entry, path, "tip_dip_mm", dims.tip_dip_mm);
    read_number(*entry, path, "dip_pip_mm", dims.dip_pip_mm);
    read_number(*entry, path, "pip_mcp_mm", dims.pip_mcp_mm);
  }
}

void read_joints(const json& obj, HandSpec& spec) {
  check_keys(obj, "joints", {"mcp", "pip", "dip"});
  for (FingerJoint j : kFingerJoints) {
    const json* entry = find(obj, to_string(j).c_str());
    if (!entry) continue;
    const std::string path = "joints." + to_string(j);
    check_keys(*entry, path,
               {"r1_mm", "r2_mm", "rr1_mm", "rr2_mm", "rho_wire_mm"});
    RollingJointGeom& geom = spec.joints[j];
    read_number(*entry, path, "r1_mm", geom.r1_mm);
    read_number(*entry, path, "r2_mm", geom.r2_mm);
    read_number(*entry, path, "rr1_mm", geom.rr1_mm);
    read_number(*entry, path, "rr2_mm", geom.rr2_mm);
    read_number(*entry, path, "rho_wire_mm", geom.rho_wire_mm);
  }
}

void read_joint_limits(const json& obj, HandSpec& spec) {
  check_keys(obj, "joint_limits_deg", {"mcp", "pip", "dip"});
  for (FingerJoint j : kFingerJoints) {
    if (const json* entry = find(obj, to_string(j).c_str())) {
      JointLimits limits = spec.finger_limits.of(j);
      read_limits(*entry, "joint_limits_deg." + to_string(j), limits);
      switch (j) {
        case FingerJoint::Mcp: spec.finger_limits.mcp = limits; break;
        case FingerJoint::Pip: spec.finger_limits.pip = limits; break;
        case FingerJoint::Dip: spec.finger_limits.dip = limits; break;
      }
    }
  }
}

void read_thumb(const json& obj, HandSpec& spec) {
  const std::string path = "thumb";
  check_keys(obj, path,
             {"cmc_flexion_half_range_deg", "cmc_abduction_half_range_deg",
              "cmc_axial_half_range_deg", "mcp_ip_segment_lengths_mm",
              "ip_coupling_ratio"});
  const auto read_half = [&](const char* key, JointLimits& out) {
    if (const json* v = find(obj, key)) {
      const double half = as_number(*v, join(path, key));
      out = JointLimits::symmetric_deg(half);
    }
  };
  read_half("cmc_flexion_half_range_deg", spec.thumb.cmc_flexion);
  read_half("cmc_abduction_half_range_deg", spec.thumb.cmc_abduction);
  read_half("cmc_axial_half_range_deg", spec.thumb.cmc_axial);
  if (const json* v = find(obj, "mcp_ip_segment_lengths_mm")) {
    const std::string key = join(path, "mcp_ip_segment_lengths_mm");
    if (v->is_null()) {
      spec.thumb.mcp_ip_segment_lengths_mm.reset();
    } else {
      if (!v->is_array() || v->size() != 2)
        fail(key, "expected two lengths [mcp_mm, ip_mm]");
      spec.thumb.mcp_ip_segment_lengths_mm = {
          as_number((*v)[0], key), as_number((*v)[1], key)};
    }
  }
  read_number(obj, path, "ip_coupling_ratio", spec.thumb.ip_coupling_ratio);
}

void read_cmc(const json& arr, HandSpec& spec) {
  if (!arr.is_array() || arr.size() != 5)
    fail("cmc", "expected exactly five entries (first..fifth)");
  for (std::size_t i = 0; i < 5; ++i) {
    const json& entry = arr[i];
    const std::string path = "cmc[" + std::to_string(i + 1) + "]";
    if (!entry.is_object()) fail(path, "expected an object");
    check_keys(entry, path,
               {"kind", "flexion_min_deg", "flexion_max_deg",
                "abduction_min_deg", "abduction_max_deg", "axial_limit_deg"});
    CmcJoint& joint = spec.cmc[i];
    if (const json* v = find(entry, "kind"))
      joint.kind = parse_cmc_kind(*v, join(path, "kind"));
    read_angle_deg(entry, path, "flexion_min_deg", joint.flexion.min_rad);
    read_angle_deg(entry, path, "flexion_max_deg", joint.flexion.max_rad);
    read_angle_deg(entry, path, "abduction_min_deg", joint.abduction.min_rad);
    read_angle_deg(entry, path, "abduction_max_deg", joint.abduction.max_rad);
    read_angle_deg(entry, path, "axial_limit_deg", joint.axial_limit_rad);
  }
}

void read_material(const json& obj, HandSpec& spec) {
  const std::string path = "material";
  check_keys(obj, path,
             {"youngs_modulus_mpa", "plateau_onset_strain",
              "plateau_stress_mpa", "elastic_limit_strain",
              "moment_cap_shape_factor"});
  read_number(obj, path, "youngs_modulus_mpa",
              spec.material.youngs_modulus_mpa);
  read_number(obj, path, "plateau_onset_strain",
              spec.material.plateau_onset_strain);
  read_number(obj, path, "plateau_stress_mpa", spec.material.plateau_stress_mpa);
  read_number(obj, path, "elastic_limit_strain",
              spec.material.elastic_limit_strain);
  read_number(obj, path, "moment_cap_shape_factor",
              spec.material.moment_cap_shape_factor);
}

void read_strain_life(const json& arr, HandSpec& spec) {
  if (!arr.is_array() || arr.empty())
    fail("strain_life", "expected a non-empty array");
  spec.strain_life.anchors.clear();
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = "strain_life[" + std::to_string(i) + "]";
    const json& entry = arr[i];
    if (!entry.is_object()) fail(path, "expected an object");
    check_keys(entry, path, {"strain_pct", "cycles"});
    nitinol::StrainLifeAnchor anchor;
    anchor.strain_pct = as_number(require(entry, path, "strain_pct"),
                                  join(path, "strain_pct"));
    anchor.cycles = as_number(require(entry, path, "cycles"),
                              join(path, "cycles"));
    spec.strain_life.anchors.push_back(anchor);
  }
}

void read_wires(const json& obj, HandSpec& spec) {
  check_keys(obj, "wires", {"mcp", "pip", "dip"});
  for (FingerJoint j : kFingerJoints) {
    const json* entry = find(obj, to_string(j).c_str());
    if (!entry) continue;
    const std::string path = "wires." + to_string(j);
    check_keys(*entry, path,
               {"d_mm", "wire_count", "configuration", "fatigue_strain_pct"});
    nitinol::WireSpec& wire = spec.wires[j];
    read_number(*entry, path, "d_mm", wire.d_mm);
    read_int(*entry, path, "wire_count", wire.wire_count);
    if (const json* v = find(*entry, "configuration"))
      wire.configuration = parse_configuration(*v, join(path, "configuration"));
    read_number(*entry, path, "fatigue_strain_pct", wire.fatigue_strain_pct);
  }
}

void read_palm(const json& obj, HandSpec& spec) {
  check_keys(obj, "palm", {"metacarpals"});
  const json* arr = find(obj, "metacarpals");
  if (!arr) return;
  if (!arr->is_array() || arr->size() != 5)
    fail("palm.metacarpals", "expected exactly five rays (first..fifth)");
  for (std::size_t i = 0; i < 5; ++i) {
    const json& entry = (*arr)[i];
    const std::string path = "palm.metacarpals[" + std::to_string(i + 1) + "]";
    if (!entry.is_object()) fail(path, "expected an object");
    check_keys(entry, path,
               {"base_mm", "length_mm", "splay_deg", "neutral_tilt_deg"});
    palm::MetacarpalRay& ray = spec.palm_geometry.metacarpals[i];
    if (const json* v = find(entry, "base_mm")) {
      const std::string key = join(path, "base_mm");
      if (!v->is_array() || v->size() != 3)
        fail(key, "expected [x_mm, y_mm, z_mm]");
      for (int k = 0; k < 3; ++k)
        ray.base_mm[static_cast<std::size_t>(k)] = as_number((*v)[k], key);
    }
    read_number(entry, path, "length_mm", ray.length_mm);
    read_angle_deg(entry, path, "splay_deg", ray.splay_rad);
    read_angle_deg(entry, path, "neutral_tilt_deg", ray.neutral_tilt_rad);
  }
}

void read_compression(const json& arr, HandSpec& spec) {
  if (!arr.is_array() || arr.empty())
    fail("compression", "expected a non-empty array");
  spec.compression.anchors.clear();
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = "compression[" + std::to_string(i) + "]";
    const json& entry = arr[i];
    if (!entry.is_object()) fail(path, "expected an object");
    check_keys(entry, path, {"displacement_mm", "force_n"});
    palm::CompressionAnchor anchor;
    anchor.displacement_mm = as_number(
        require(entry, path, "displacement_mm"), join(path, "displacement_mm"));
    anchor.force_n =
        as_number(require(entry, path, "force_n"), join(path, "force_n"));
    spec.compression.anchors.push_back(anchor);
  }
}

void read_tendons(const json& arr, HandSpec& spec) {
  if (!arr.is_array()) fail("tendons", "expected an array");
  spec.tendons.clear();
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = "tendons[" + std::to_string(i) + "]";
    const json& entry = arr[i];
    if (!entry.is_object()) fail(path, "expected an object");
    check_keys(entry, path, {"name", "segments"});
    tendon::TendonRoute route;
    route.name = parse_tendon_name(require(entry, path, "name"),
                                   join(path, "name"));
    const json& segments = require(entry, path, "segments");
    if (!segments.is_array() || segments.empty())
      fail(join(path, "segments"), "expected a non-empty array");
    for (std::size_t k = 0; k < segments.size(); ++k) {
      const std::string seg_path =
          join(path, "segments[" + std::to_string(k) + "]");
      const json& seg = segments[k];
      if (!seg.is_object()) fail(seg_path, "expected an object");
      check_keys(seg, seg_path, {"joint", "radius_mm", "sign"});
      tendon::TendonSegment segment;
      segment.joint = parse_joint_id(require(seg, seg_path, "joint"),
                                     join(seg_path, "joint"));
      segment.radius_mm = as_number(require(seg, seg_path, "radius_mm"),
                                    join(seg_path, "radius_mm"));
      int sign = 1;
      read_int(seg, seg_path, "sign", sign);
      segment.sign = sign;
      route.segments.push_back(segment);
    }
    spec.tendons.push_back(std::move(route));
  }
}

void read_link_schedule(const json& arr, HandSpec& spec) {
  if (!arr.is_array() || arr.empty())
    fail("link_schedule", "expected a non-empty array");
  spec.link_schedule.terms.clear();
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = "link_schedule[" + std::to_string(i) + "]";
    const json& entry = arr[i];
    if (!entry.is_object()) fail(path, "expected an object");
    check_keys(entry, path, {"length_mm", "mcp_coeff", "pip_coeff"});
    kinematics::LinkTerm term;
    term.length_mm = as_number(require(entry, path, "length_mm"),
                               join(path, "length_mm"));
    read_rational(entry, path, "mcp_coeff", term.mcp_coeff);
    read_rational(entry, path, "pip_coeff", term.pip_coeff);
    spec.link_schedule.terms.push_back(term);
  }
}

void read_dh_chain(const json& arr, HandSpec& spec) {
  if (!arr.is_array() || arr.empty())
    fail("dh_chain", "expected a non-empty array");
  spec.dh_chain.clear();
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = "dh_chain[" + std::to_string(i) + "]";
    const json& entry = arr[i];
    if (!entry.is_object()) fail(path, "expected an object");
    check_keys(entry, path,
               {"a_mm", "alpha_deg", "d_mm", "theta_mcp_coeff",
                "theta_pip_coeff"});
    kinematics::DhRow row;
    read_number(entry, path, "a_mm", row.a_mm);
    read_angle_deg(entry, path, "alpha_deg", row.alpha_rad);
    read_number(entry, path, "d_mm", row.d_mm);
    read_rational(entry, path, "theta_mcp_coeff", row.theta_mcp_coeff);
    read_rational(entry, path, "theta_pip_coeff", row.theta_pip_coeff);
    spec.dh_chain.push_back(row);
  }
}

}  // namespace

HandSpec hand_spec_from_json(const json& doc) {
  if (!doc.is_object())
    throw ParseError("hand spec: top level must be an object");
  check_keys(doc, "",
             {"spec_version", "fingers", "joints", "joint_limits_deg", "thumb",
              "cmc", "material", "strain_life", "wires", "palm", "compression",
              "tendons", "link_schedule", "dh_chain"});
  if (const json* v = find(doc, "spec_version")) {
    if (!v->is_number_integer() || v->get<int>() != 1)
      fail("spec_version", "unsupported version (expected 1)");
  }

  HandSpec spec = default_hand_spec();
  if (const json* v = find(doc, "fingers")) read_fingers(*v, spec);
  if (const json* v = find(doc, "joints")) read_joints(*v, spec);
  if (const json* v = find(doc, "joint_limits_deg")) read_joint_limits(*v, spec);
  if (const json* v = find(doc, "thumb")) read_thumb(*v, spec);
  if (const json* v = find(doc, "cmc")) read_cmc(*v, spec);
  if (const json* v = find(doc, "material")) read_material(*v, spec);
  if (const json* v = find(doc, "strain_life")) read_strain_life(*v, spec);
  if (const json* v = find(doc, "wires")) read_wires(*v, spec);
  if (const json* v = find(doc, "palm")) read_palm(*v, spec);
  if (const json* v = find(doc, "compression")) read_compression(*v, spec);
  if (const json* v = find(doc, "tendons")) read_tendons(*v, spec);
  if (const json* v = find(doc, "link_schedule")) read_link_schedule(*v, spec);
  if (const json* v = find(doc, "dh_chain")) read_dh_chain(*v, spec);

  validate(spec);
  return spec;
}

HandSpec load_hand_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  if (text.find_first_not_of(" \t\r\n") == std::string::npos)
    return hand_spec_from_json(json::object());

  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return hand_spec_from_json(doc);
}

nlohmann::json hand_spec_to_json(const HandSpec& spec) {
  json doc;
  doc["spec_version"] = 1;

  for (const auto& [finger, dims] : spec.fingers) {
    json& f = doc["fingers"][to_string(finger)];
    f["tip_dip_mm"] = dims.tip_dip_mm;
    f["dip_pip_mm"] = dims.dip_pip_mm;
    f["pip_mcp_mm"] = dims.pip_mcp_mm;
  }

  for (const auto& [joint, geom] : spec.joints) {
    json& j = doc["joints"][to_string(joint)];
    j["r1_mm"] = geom.r1_mm;
    j["r2_mm"] = geom.r2_mm;
    j["rr1_mm"] = geom.rr1_mm;
    j["rr2_mm"] = geom.rr2_mm;
    j["rho_wire_mm"] = geom.rho_wire_mm;
  }

  for (FingerJoint joint : kFingerJoints) {
    const JointLimits& limits = spec.finger_limits.of(joint);
    json& j = doc["joint_limits_deg"][to_string(joint)];
    j["min_deg"] = deg_preimage(limits.min_rad);
    j["max_deg"] = deg_preimage(limits.max_rad);
  }

  {
    json& t = doc["thumb"];
    t["cmc_flexion_half_range_deg"] = deg_preimage(spec.thumb.cmc_flexion.max_rad);
    t["cmc_abduction_half_range_deg"] =
        deg_preimage(spec.thumb.cmc_abduction.max_rad);
    t["cmc_axial_half_range_deg"] = deg_preimage(spec.thumb.cmc_axial.max_rad);
    if (spec.thumb.mcp_ip_segment_lengths_mm) {
      t["mcp_ip_segment_lengths_mm"] = {
          (*spec.thumb.mcp_ip_segment_lengths_mm)[0],
          (*spec.thumb.mcp_ip_segment_lengths_mm)[1]};
    }
    t["ip_coupling_ratio"] = spec.thumb.ip_coupling_ratio;
  }

  doc["cmc"] = json::array();
  for (const CmcJoint& joint : spec.cmc) {
    json entry;
    entry["kind"] = to_string(joint.kind);
    entry["flexion_min_deg"] = deg_preimage(joint.flexion.min_rad);
    entry["flexion_max_deg"] = deg_preimage(joint.flexion.max_rad);
    entry["abduction_min_deg"] = deg_preimage(joint.abduction.min_rad);
    entry["abduction_max_deg"] = deg_preimage(joint.abduction.max_rad);
    entry["axial_limit_deg"] = deg_preimage(joint.axial_limit_rad);
    doc["cmc"].push_back(entry);
  }

  {
    json& m = doc["material"];
    m["youngs_modulus_mpa"] = spec.material.youngs_modulus_mpa;
    m["plateau_onset_strain"] = spec.material.plateau_onset_strain;
    m["plateau_stress_mpa"] = spec.material.plateau_stress_mpa;
    m["elastic_limit_strain"] = spec.material.elastic_limit_strain;
    m["moment_cap_shape_factor"] = spec.material.moment_cap_shape_factor;
  }

  doc["strain_life"] = json::array();
  for (const auto& anchor : spec.strain_life.anchors)
    doc["strain_life"].push_back(
        {{"strain_pct", anchor.strain_pct}, {"cycles", anchor.cycles}});

  for (const auto& [joint, wire] : spec.wires) {
    json& w = doc["wires"][to_string(joint)];
    w["d_mm"] = wire.d_mm;
    w["wire_count"] = wire.wire_count;
    w["configuration"] = to_key(wire.configuration);
    w["fatigue_strain_pct"] = wire.fatigue_strain_pct;
  }

  doc["palm"]["metacarpals"] = json::array();
  for (const auto& ray : spec.palm_geometry.metacarpals) {
    json entry;
    entry["base_mm"] = {ray.base_mm[0], ray.base_mm[1], ray.base_mm[2]};
    entry["length_mm"] = ray.length_mm;
    entry["splay_deg"] = deg_preimage(ray.splay_rad);
    entry["neutral_tilt_deg"] = deg_preimage(ray.neutral_tilt_rad);
    doc["palm"]["metacarpals"].push_back(entry);
  }

  doc["compression"] = json::array();
  for (const auto& anchor : spec.compression.anchors)
    doc["compression"].push_back({{"displacement_mm", anchor.displacement_mm},
                                  {"force_n", anchor.force_n}});

  doc["tendons"] = json::array();
  for (const auto& route : spec.tendons) {
    json entry;
    entry["name"] = to_string(route.name);
    entry["segments"] = json::array();
    for (const auto& segment : route.segments)
      entry["segments"].push_back({{"joint", to_string(segment.joint)},
                                   {"radius_mm", segment.radius_mm},
                                   {"sign", segment.sign}});
    doc["tendons"].push_back(entry);
  }

  doc["link_schedule"] = json::array();
  for (const auto& term : spec.link_schedule.terms)
    doc["link_schedule"].push_back(
        {{"length_mm", term.length_mm},
         {"mcp_coeff", rational_to_json(term.mcp_coeff)},
         {"pip_coeff", rational_to_json(term.pip_coeff)}});

  doc["dh_chain"] = json::array();
  for (const auto& row : spec.dh_chain)
    doc["dh_chain"].push_back(
        {{"a_mm", row.a_mm},
         {"alpha_deg", deg_preimage(row.alpha_rad)},
         {"d_mm", row.d_mm},
         {"theta_mcp_coeff", rational_to_json(row.theta_mcp_coeff)},
         {"theta_pip_coeff", rational_to_json(row.theta_pip_coeff)}});

  return doc;
}

void save_hand_spec(const HandSpec& spec, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << hand_spec_to_json(spec).dump(2) << '\n';
}

namespace {

void check_positive(double v, const std::string& field) {
  if (!(v > 0.0)) fail(field, "must be positive");
}

void check_limits_order(const JointLimits& limits, const std::string& field) {
  if (!(limits.min_rad <= limits.max_rad))
    fail(field, "min exceeds max");
}

}  // namespace

void validate(const HandSpec& spec) {
  for (Finger f : kFingers) {
    const auto it = spec.fingers.find(f);
    if (it == spec.fingers.end())
      fail("fingers." + to_string(f), "missing finger");
    const std::string path = "fingers." + to_string(f);
    check_positive(it->second.tip_dip_mm, path + ".tip_dip_mm");
    check_positive(it->second.dip_pip_mm, path + ".dip_pip_mm");
    check_positive(it->second.pip_mcp_mm, path + ".pip_mcp_mm");
  }

  for (FingerJoint j : kFingerJoints) {
    const auto it = spec.joints.find(j);
    if (it == spec.joints.end())
      fail("joints." + to_string(j), "missing joint");
    const std::string path = "joints." + to_string(j);
    const RollingJointGeom& geom = it->second;
    check_positive(geom.r1_mm, path + ".r1_mm");
    check_positive(geom.r2_mm, path + ".r2_mm");
    check_positive(geom.rr1_mm, path + ".rr1_mm");
    check_positive(geom.rr2_mm, path + ".rr2_mm");
    check_positive(geom.rho_wire_mm, path + ".rho_wire_mm");
    // rolling-pair constraint: outer and inner radius ratios must agree
    const double outer = geom.r1_mm / geom.r2_mm;
    const double inner = geom.rr1_mm / geom.rr2_mm;
    if (std::abs(outer - inner) > 1e-9 * std::max(outer, inner))
      fail(path, "outer and inner radius ratios disagree (r1/r2 = " +
                     std::to_string(outer) + ", rr1/rr2 = " +
                     std::to_string(inner) + ")");
  }

  for (FingerJoint j : kFingerJoints)
    check_limits_order(spec.finger_limits.of(j),
                       "joint_limits_deg." + to_string(j));

  {
    const auto check_symmetric = [](const JointLimits& limits,
                                    const std::string& field) {
      check_limits_order(limits, field);
      if (limits.min_rad != -limits.max_rad)
        fail(field, "limits must be symmetric about zero");
    };
    check_symmetric(spec.thumb.cmc_flexion, "thumb.cmc_flexion_half_range_deg");
    check_symmetric(spec.thumb.cmc_abduction,
                    "thumb.cmc_abduction_half_range_deg");
    check_symmetric(spec.thumb.cmc_axial, "thumb.cmc_axial_half_range_deg");
    if (spec.thumb.mcp_ip_segment_lengths_mm) {
      check_positive((*spec.thumb.mcp_ip_segment_lengths_mm)[0],
                     "thumb.mcp_ip_segment_lengths_mm[0]");
      check_positive((*spec.thumb.mcp_ip_segment_lengths_mm)[1],
                     "thumb.mcp_ip_segment_lengths_mm[1]");
    }
    check_positive(spec.thumb.ip_coupling_ratio, "thumb.ip_coupling_ratio");
  }

  for (std::size_t i = 0; i < spec.cmc.size(); ++i) {
    const std::string path = "cmc[" + std::to_string(i + 1) + "]";
    const CmcJoint& joint = spec.cmc[i];
    check_limits_order(joint.flexion, path + ".flexion");
    check_limits_order(joint.abduction, path + ".abduction");
    if (joint.axial_limit_rad < 0.0)
      fail(path + ".axial_limit_deg", "must be nonnegative");
    if (joint.kind == CmcKind::Fixed &&
        (joint.flexion.width() != 0.0 || joint.abduction.width() != 0.0 ||
         joint.axial_limit_rad != 0.0))
      fail(path, "fixed joints admit only zero-width limits");
  }

  {
    const nitinol::MaterialModel& m = spec.material;
    check_positive(m.youngs_modulus_mpa, "material.youngs_modulus_mpa");
    check_positive(m.plateau_onset_strain, "material.plateau_onset_strain");
    check_positive(m.plateau_stress_mpa, "material.plateau_stress_mpa");
    check_positive(m.moment_cap_shape_factor,
                   "material.moment_cap_shape_factor");
    if (!(m.elastic_limit_strain > m.plateau_onset_strain))
      fail("material.elastic_limit_strain",
           "must exceed the plateau onset strain");
    const double implied = m.youngs_modulus_mpa * m.plateau_onset_strain;
    if (std::abs(implied - m.plateau_stress_mpa) >
        1e-9 * std::max(implied, m.plateau_stress_mpa))
      fail("material",
           "bilinear continuity violated: youngs_modulus_mpa * "
           "plateau_onset_strain must equal plateau_stress_mpa");
  }

  {
    const auto& anchors = spec.strain_life.anchors;
    if (anchors.empty()) fail("strain_life", "needs at least one anchor");
    for (std::size_t i = 0; i < anchors.size(); ++i) {
      const std::string path = "strain_life[" + std::to_string(i) + "]";
      check_positive(anchors[i].strain_pct, path + ".strain_pct");
      check_positive(anchors[i].cycles, path + ".cycles");
      if (i > 0) {
        if (!(anchors[i].strain_pct > anchors[i - 1].strain_pct))
          fail(path + ".strain_pct", "anchors must be sorted by strain");
        if (!(anchors[i].cycles < anchors[i - 1].cycles))
          fail(path + ".cycles", "cycles must decrease with strain");
      }
    }
  }

  for (FingerJoint j : kFingerJoints) {
    const auto it = spec.wires.find(j);
    if (it == spec.wires.end()) fail("wires." + to_string(j), "missing wire");
    const std::string path = "wires." + to_string(j);
    check_positive(it->second.d_mm, path + ".d_mm");
    if (it->second.wire_count < 1)
      fail(path + ".wire_count", "must be at least 1");
    if (it->second.fatigue_strain_pct < 0.0)
      fail(path + ".fatigue_strain_pct", "must be nonnegative");
  }

  for (std::size_t i = 0; i < spec.palm_geometry.metacarpals.size(); ++i)
    check_positive(spec.palm_geometry.metacarpals[i].length_mm,
                   "palm.metacarpals[" + std::to_string(i + 1) + "].length_mm");

  {
    const auto& anchors = spec.compression.anchors;
    if (anchors.empty()) fail("compression", "needs at least one anchor");
    if (anchors.front().displacement_mm != 0.0 ||
        anchors.front().force_n != 0.0)
      fail("compression[0]", "curve must start at (0 mm, 0 N)");
    for (std::size_t i = 1; i < anchors.size(); ++i) {
      const std::string path = "compression[" + std::to_string(i) + "]";
      if (!(anchors[i].displacement_mm > anchors[i - 1].displacement_mm))
        fail(path + ".displacement_mm", "displacements must increase");
      if (anchors[i].force_n < anchors[i - 1].force_n)
        fail(path + ".force_n", "force must be nondecreasing");
    }
  }

  for (std::size_t i = 0; i < spec.tendons.size(); ++i) {
    const std::string path = "tendons[" + std::to_string(i) + "]";
    const auto& route = spec.tendons[i];
    if (route.segments.empty())
      fail(path + ".segments", "route needs at least one segment");
    for (std::size_t k = 0; k < route.segments.size(); ++k) {
      const std::string seg_path =
          path + ".segments[" + std::to_string(k) + "]";
      check_positive(route.segments[k].radius_mm, seg_path + ".radius_mm");
      if (route.segments[k].sign != 1 && route.segments[k].sign != -1)
        fail(seg_path + ".sign", "must be +1 or -1");
    }
  }

  {
    if (spec.link_schedule.terms.empty())
      fail("link_schedule", "needs at least one term");
    for (std::size_t i = 0; i < spec.link_schedule.terms.size(); ++i) {
      const std::string path = "link_schedule[" + std::to_string(i) + "]";
      if (spec.link_schedule.terms[i].length_mm < 0.0)
        fail(path + ".length_mm", "must be nonnegative");
      if (spec.link_schedule.terms[i].mcp_coeff.den == 0)
        fail(path + ".mcp_coeff", "zero denominator");
      if (spec.link_schedule.terms[i].pip_coeff.den == 0)
        fail(path + ".pip_coeff", "zero denominator");
    }
  }

  for (std::size_t i = 0; i < spec.dh_chain.size(); ++i) {
    const std::string path = "dh_chain[" + std::to_string(i) + "]";
    if (spec.dh_chain[i].theta_mcp_coeff.den == 0)
      fail(path + ".theta_mcp_coeff", "zero denominator");
    if (spec.dh_chain[i].theta_pip_coeff.den == 0)
      fail(path + ".theta_pip_coeff", "zero denominator");
  }
}

}  // namespace handkit
