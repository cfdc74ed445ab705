#pragma once

// Solver configuration files. Keys mirror the SolverConfig field names:
//   {"grid_theta": 24, "grid_phi": 48, "refine_tol": 1e-10,
//    "max_refine_iters": 200, "max_basins": 8, "measured": "B"}
// Missing keys keep their defaults; unknown keys are rejected.

#include "qdiscord/solver.hpp"

#include <filesystem>
#include <string>

namespace qdiscord {

SolverConfig solver_config_from_json(const std::string& text, SolverConfig base = {});
SolverConfig load_solver_config(const std::filesystem::path& path, SolverConfig base = {});
std::string to_json(const SolverConfig& cfg);

}  // namespace qdiscord
