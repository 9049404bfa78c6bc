#pragma once

#include <string>
#include <vector>

#include "fscan/grid.hpp"
#include "fscan/matcher.hpp"
#include "fscan/odometry.hpp"
#include "fscan/synth.hpp"

namespace fscan {

/// Binary scan format: 16-byte header (magic "FSCN", u32 n, f32 delta,
/// u32 reserved = 0), then n*n float32 values row-major, all little-endian.
void write_scan(const std::string& path, const ScanGrid& scan);
ScanGrid read_scan(const std::string& path);

/// Lossless import of a 16-bit grayscale PNG: values map to [0, 1] as
/// v / 65535. The writer quantizes by the inverse map (values clamped to
/// [0, 1]), so u16-valued grids round-trip exactly.
ScanGrid read_png16(const std::string& path, double delta);
void write_png16(const std::string& path, const ScanGrid& scan);

/// Flat key-value config mirroring MatchConfig field names. '#' starts a
/// comment; unknown keys are errors. Omitted n_radius / pad_angle track the
/// file's n_xy / n_theta.
MatchConfig parse_match_config(const std::string& text);
std::string serialize_match_config(const MatchConfig& cfg);
MatchConfig read_match_config(const std::string& path);
void write_match_config(const std::string& path, const MatchConfig& cfg);

/// Scene file: key-value noise/seed lines plus one "landmark x y intensity
/// radius" line per landmark.
Scene parse_scene(const std::string& text);
std::string serialize_scene(const Scene& scene);
Scene read_scene(const std::string& path);
void write_scene(const std::string& path, const Scene& scene);

/// Trajectory CSV: header then "frame,theta,tx,ty" rows, frame from 0.
void write_trajectory_csv(const std::string& path,
                          const std::vector<Pose2D>& poses);
std::vector<Pose2D> read_trajectory_csv(const std::string& path);

/// Matrix CSV of a correlation surface: first row holds column coordinates,
/// first column row coordinates, corner cell empty.
void write_surface_csv(const std::string& path, const CorrelationSurface& s);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace fscan
