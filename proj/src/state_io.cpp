#include "qdiscord/state_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace qdiscord {

namespace {

[[noreturn]] void bad_shape(const std::string& detail) { throw StateError(StateErrorKind::BadShape, 0.0, detail); }

}  // namespace

Matrix4c parse_matrix_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad_shape(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("matrix")) bad_shape("expected an object with a \"matrix\" field");
  const auto& rows = doc["matrix"];
  if (!rows.is_array() || rows.size() != 4) bad_shape("\"matrix\" must have 4 rows");
  Matrix4c m;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || row.size() != 4) bad_shape("row " + std::to_string(i) + " must have 4 entries");
    for (std::size_t j = 0; j < 4; ++j) {
      const auto& entry = row[j];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number())
        bad_shape("entry [" + std::to_string(i) + "][" + std::to_string(j) + "] must be [re, im]");
      m(static_cast<int>(i), static_cast<int>(j)) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return m;
}

DensityMatrix parse_density_json(const std::string& text) { return validate_density(parse_matrix_json(text)); }

DensityMatrix load_density_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad_shape("cannot open state file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_density_json(buffer.str());
}

std::string to_json(const DensityMatrix& rho) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < 4; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < 4; ++j) row.push_back({rho(i, j).real(), rho(i, j).imag()});
    rows.push_back(row);
  }
  return nlohmann::json{{"matrix", rows}}.dump();
}

}  // namespace qdiscord
