// Python bindings for the main operations. Like the CLI, this boundary
// speaks degrees and millimetres.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "handkit/hand_model.hpp"
#include "handkit/kinematics.hpp"
#include "handkit/manifest.hpp"
#include "handkit/nitinol.hpp"
#include "handkit/palm.hpp"
#include "handkit/report.hpp"
#include "handkit/tendon.hpp"
#include "handkit/units.hpp"

namespace py = pybind11;
using namespace handkit;

namespace {

JointState state_from_deg(double mcp_deg, double pip_deg) {
  return JointState::coupled_state(deg_to_rad(mcp_deg), deg_to_rad(pip_deg));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Kinematics and mechanism analysis for a tendon-driven rolling-joint "
      "hand (angles in degrees, lengths in millimetres)";

  py::register_exception<ValidationError>(m, "ValidationError");
  py::register_exception<JointLimitError>(m, "JointLimitError");

  py::class_<HandSpec>(m, "HandSpec")
      .def_static("default", &default_hand_spec)
      .def_static(
          "load",
          [](const std::string& path) { return load_hand_spec(path); },
          py::arg("path"))
      .def("to_json",
           [](const HandSpec& spec) { return hand_spec_to_json(spec).dump(2); })
      .def("save",
           [](const HandSpec& spec, const std::string& path) {
             save_hand_spec(spec, path);
           },
           py::arg("path"))
      .def("reach_mm",
           [](const HandSpec& spec) {
             return spec.link_schedule.total_length_mm();
           })
      .def("__eq__", [](const HandSpec& a, const HandSpec& b) { return a == b; });

  m.def(
      "fk",
      [](const HandSpec& spec, double mcp_deg, double pip_deg) {
        const auto pose = kinematics::fk_planar(
            spec.link_schedule, state_from_deg(mcp_deg, pip_deg),
            spec.finger_limits);
        return py::make_tuple(pose.x_mm, pose.y_mm);
      },
      py::arg("spec"), py::arg("mcp_deg"), py::arg("pip_deg"),
      "Fingertip (x_mm, y_mm) from the closed-form planar model");

  m.def(
      "fk_dh",
      [](const HandSpec& spec, double mcp_deg, double pip_deg) {
        const auto pose =
            kinematics::fk_dh(spec.dh_chain, state_from_deg(mcp_deg, pip_deg),
                              spec.finger_limits);
        return py::make_tuple(pose.x_mm, pose.y_mm);
      },
      py::arg("spec"), py::arg("mcp_deg"), py::arg("pip_deg"),
      "Fingertip (x_mm, y_mm) from the DH chain");

  m.def(
      "ik",
      [](const HandSpec& spec, double x_mm, double y_mm, double tol_mm) {
        kinematics::IkOptions opts;
        opts.tolerance_mm = tol_mm;
        const auto result = kinematics::ik_planar(
            spec.link_schedule, {x_mm, y_mm}, spec.finger_limits, opts);
        py::dict d;
        d["theta_mcp_deg"] = rad_to_deg(result.state.theta_mcp_rad);
        d["theta_pip_deg"] = rad_to_deg(result.state.theta_pip_rad);
        d["residual_mm"] = result.residual_mm;
        d["iterations"] = result.iterations;
        d["unreached"] = result.unreached;
        return d;
      },
      py::arg("spec"), py::arg("x_mm"), py::arg("y_mm"),
      py::arg("tol_mm") = 1e-3,
      "Damped least-squares IK; unreachable targets return the closest "
      "in-limit pose, flagged");

  m.def(
      "workspace_metrics",
      [](const HandSpec& spec, double grid_step_deg) {
        const auto ws = kinematics::sample_workspace(
            spec.link_schedule, spec.finger_limits, deg_to_rad(grid_step_deg));
        py::dict d;
        d["point_count"] = ws.metrics.point_count;
        d["min_radius_mm"] = ws.metrics.min_radius_mm;
        d["max_radius_mm"] = ws.metrics.max_radius_mm;
        return d;
      },
      py::arg("spec"), py::arg("grid_step_deg") = 1.0);

  m.def(
      "excursions",
      [](const HandSpec& spec, double mcp_deg, double pip_deg) {
        const auto angles =
            tendon::to_joint_angles(state_from_deg(mcp_deg, pip_deg));
        py::dict d;
        for (const auto& route : spec.tendons)
          d[py::str(tendon::to_string(route.name))] =
              tendon::excursion(route, angles);
        return d;
      },
      py::arg("spec"), py::arg("mcp_deg"), py::arg("pip_deg"),
      "Excursion (mm) of every tendon of the spec at a coupled pose");

  m.def(
      "coupling_dip_per_pip",
      [](double rr_pip_mm, double rr_dip_mm) {
        return tendon::coupling_ratio(rr_pip_mm, rr_dip_mm).dip_per_pip();
      },
      py::arg("rr_pip_mm"), py::arg("rr_dip_mm"));

  m.def("bending_strain", &nitinol::bending_strain, py::arg("d_mm"),
        py::arg("rho_mm"), "Peak bending strain d/(2 rho)");

  m.def(
      "fatigue_life",
      [](const HandSpec& spec, double strain_pct) {
        const auto result = nitinol::fatigue_life(strain_pct, spec.strain_life);
        return py::make_tuple(result.cycles, result.extrapolated);
      },
      py::arg("spec"), py::arg("strain_pct"),
      "(cycles, extrapolated) from the strain-life table");

  m.def(
      "restoring_moment",
      [](const HandSpec& spec, double d_mm, double rho_mm) {
        const auto result = nitinol::restoring_moment(d_mm, rho_mm, spec.material);
        return py::make_tuple(result.n_mm, result.capped);
      },
      py::arg("spec"), py::arg("d_mm"), py::arg("rho_mm"),
      "(moment N*mm, capped) of one wire");

  m.def(
      "bundle_redesign",
      [](double d_mm, int n) {
        const auto result = nitinol::bundle_redesign(d_mm, n);
        py::dict d;
        d["d_each_mm"] = result.d_each_mm;
        d["strain_factor"] = result.strain_factor;
        return d;
      },
      py::arg("d_mm"), py::arg("n"),
      "Equal-stiffness bundle of n thinner wires");

  m.def(
      "arch_deformation",
      [](const HandSpec& spec, double theta4_deg, double theta5_deg) {
        return palm::arch_deformation(deg_to_rad(theta4_deg),
                                      deg_to_rad(theta5_deg),
                                      spec.palm_geometry, spec.cmc[3].flexion,
                                      spec.cmc[4].flexion);
      },
      py::arg("spec"), py::arg("theta4_deg"), py::arg("theta5_deg"),
      "Palm narrowing (percent) from fourth/fifth CMC flexion");

  m.def(
      "compression_force",
      [](const HandSpec& spec, double displacement_mm) {
        return palm::compression_force(displacement_mm, spec.compression)
            .newtons;
      },
      py::arg("spec"), py::arg("displacement_mm"));

  m.def(
      "report",
      [](const HandSpec& spec) { return report::build_report(spec).dump(2); },
      py::arg("spec"), "Full hand report as a JSON string");

  m.attr("__version__") = kToolVersion;
}
