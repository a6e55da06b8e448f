#pragma once

#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "netprop/graphs.hpp"

namespace netprop {

using Json = nlohmann::ordered_json;

/// Model pieces read from a JSON document with optional fields
/// {"adjacency": [[...]], "delta": [[...]], "alpha": [...]}.
struct ModelInputs {
  std::optional<SocialNetwork> net;
  std::optional<Matrix> delta;
  std::optional<Vector> alpha;
};

ModelInputs load_model_json(const std::string& path);

/// Edge-list text format: one "i j" pair per line, 0-indexed, '#' comments.
SocialNetwork load_edge_list(const std::string& path);
void write_edge_list(const SocialNetwork& net, const std::string& path);

Matrix matrix_from_json(const Json& rows, const std::string& field);
Vector vector_from_json(const Json& values, const std::string& field);
Json matrix_to_json(const Matrix& m);
Json vector_to_json(const Vector& v);

/// 17 significant digits; round-trips doubles exactly so repeated runs
/// byte-reproduce every numeric column.
std::string format_double(double v);

}  // namespace netprop
