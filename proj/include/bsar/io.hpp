// Serialization of scenes and sinograms: a flat binary format with a
// 16-byte magic+version header, a fixed-layout grid-metadata block, and a
// little-endian float64 payload; a comma-separated export with a one-line
// header; and a 16-bit grayscale PGM export for quick visual inspection.
#pragma once

#include <string>

#include "bsar/operators.hpp"

namespace bsar {

/// Writes a scene to the flat binary format.  Throws std::runtime_error on
/// I/O failure.
void write_scene(const Scene& scene, const std::string& path);

/// Reads a scene from the flat binary format, validating the header, the
/// grid, and value finiteness.  Throws std::runtime_error on malformed input.
Scene read_scene(const std::string& path);

/// Writes a sinogram to the flat binary format.
void write_sinogram(const Sinogram& sinogram, const std::string& path);

/// Reads a sinogram from the flat binary format.
Sinogram read_sinogram(const std::string& path);

/// Writes "x1,x2,value" rows at cell centers with full float64 precision.
void write_scene_csv(const Scene& scene, const std::string& path);

/// Writes "s,t,value" rows with full float64 precision.
void write_sinogram_csv(const Sinogram& sinogram, const std::string& path);

/// Writes a binary 16-bit PGM: width n1, height n2, the top image row at the
/// largest x2, values mapped linearly from [0, max] to [0, 65535] with
/// negatives clamped to 0.
void write_pgm16(const Scene& scene, const std::string& path);

}  // namespace bsar
