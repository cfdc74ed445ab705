#include "qdiscord/config.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qdiscord {

SolverConfig solver_config_from_json(const std::string& text, SolverConfig base) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("config: expected a JSON object");
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "grid_theta")
        base.grid_theta = value.get<int>();
      else if (key == "grid_phi")
        base.grid_phi = value.get<int>();
      else if (key == "refine_tol")
        base.refine_tol = value.get<double>();
      else if (key == "max_refine_iters")
        base.max_refine_iters = value.get<int>();
      else if (key == "max_basins")
        base.max_basins = value.get<int>();
      else if (key == "measured") {
        const auto side = value.get<std::string>();
        if (side != "A" && side != "B") throw std::invalid_argument("config: measured must be \"A\" or \"B\"");
        base.measured = side == "A" ? Subsystem::A : Subsystem::B;
      } else
        throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  } catch (const nlohmann::json::type_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  validate(base);
  return base;
}

SolverConfig load_solver_config(const std::filesystem::path& path, SolverConfig base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return solver_config_from_json(ss.str(), base);
}

std::string to_json(const SolverConfig& cfg) {
  nlohmann::json j = {{"grid_theta", cfg.grid_theta},   {"grid_phi", cfg.grid_phi},
                      {"refine_tol", cfg.refine_tol},   {"max_refine_iters", cfg.max_refine_iters},
                      {"max_basins", cfg.max_basins},   {"measured", cfg.measured == Subsystem::A ? "A" : "B"}};
  return j.dump();
}

}  // namespace qdiscord
