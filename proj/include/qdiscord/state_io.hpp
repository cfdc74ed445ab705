#pragma once

// JSON state files: {"matrix": [[[re, im], x4], x4]}, row-major in the
// |00>,|01>,|10>,|11> basis.

#include "qdiscord/density.hpp"

#include <filesystem>
#include <string>

namespace qdiscord {

/// Parses the raw 4x4 matrix. Throws StateError(BadShape) on malformed JSON
/// or wrong shape; no physical validation is done here.
Matrix4c parse_matrix_json(const std::string& text);

/// Parses and validates.
DensityMatrix parse_density_json(const std::string& text);

DensityMatrix load_density_file(const std::filesystem::path& path);

std::string to_json(const DensityMatrix& rho);

}  // namespace qdiscord
