"""Decoupled Fourier scan matching for dense 2D radar-style power grids."""

from ._core import (
    GridSpec,
    Landmark,
    MatchConfig,
    MatchResult,
    NoiseModel,
    Pose2D,
    Scene,
    apply,
    brute_force_match,
    compose,
    config_for_grid,
    default_scene,
    integrate,
    inverse,
    kitti_drift,
    make_pair,
    normalize_angle,
    read_scan,
    render,
    scan_match,
    write_scan,
)

__all__ = [
    "GridSpec",
    "Landmark",
    "MatchConfig",
    "MatchResult",
    "NoiseModel",
    "Pose2D",
    "Scene",
    "apply",
    "brute_force_match",
    "compose",
    "config_for_grid",
    "default_scene",
    "integrate",
    "inverse",
    "kitti_drift",
    "make_pair",
    "normalize_angle",
    "read_scan",
    "render",
    "scan_match",
    "write_scan",
]
