"""Kinematics and mechanism analysis for a tendon-driven rolling-joint hand.

Angles in degrees and lengths in millimetres at this boundary; see the
project README for the hand-spec file schema.
"""

from ._core import (
    HandSpec,
    JointLimitError,
    ValidationError,
    arch_deformation,
    bending_strain,
    bundle_redesign,
    compression_force,
    coupling_dip_per_pip,
    excursions,
    fatigue_life,
    fk,
    fk_dh,
    ik,
    report,
    restoring_moment,
    workspace_metrics,
    __version__,
)

__all__ = [
    "HandSpec",
    "JointLimitError",
    "ValidationError",
    "arch_deformation",
    "bending_strain",
    "bundle_redesign",
    "compression_force",
    "coupling_dip_per_pip",
    "excursions",
    "fatigue_life",
    "fk",
    "fk_dh",
    "ik",
    "report",
    "restoring_moment",
    "workspace_metrics",
    "__version__",
]
