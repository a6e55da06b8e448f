#include "netprop/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace netprop {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Matrix matrix_from_json(const Json& rows, const std::string& field) {
  if (!rows.is_array() || rows.empty() || !rows.front().is_array()) {
    fail(ErrorCode::ConfigInvalid, field + ": expected an array of rows");
  }
  const std::size_t cols = rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != cols) {
      fail(ErrorCode::ConfigInvalid, field + ": ragged rows");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      if (!rows[i][j].is_number()) fail(ErrorCode::ConfigInvalid, field + ": non-numeric entry");
      m(i, j) = rows[i][j].get<double>();
    }
  }
  return m;
}

Vector vector_from_json(const Json& values, const std::string& field) {
  if (!values.is_array()) fail(ErrorCode::ConfigInvalid, field + ": expected an array");
  Vector v(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i].is_number()) fail(ErrorCode::ConfigInvalid, field + ": non-numeric entry");
    v(i) = values[i].get<double>();
  }
  return v;
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_to_json(const Vector& v) {
  Json values = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) values.push_back(v(i));
  return values;
}

ModelInputs load_model_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ConfigInvalid, "cannot open " + path);
  Json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ConfigInvalid, path + ": " + e.what());
  }
  ModelInputs out;
  if (doc.contains("adjacency")) {
    out.net = build_social_network(matrix_from_json(doc["adjacency"], "adjacency"));
  }
  if (doc.contains("delta")) out.delta = matrix_from_json(doc["delta"], "delta");
  if (doc.contains("alpha")) out.alpha = vector_from_json(doc["alpha"], "alpha");
  return out;
}

SocialNetwork load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ConfigInvalid, "cannot open " + path);
  std::vector<std::pair<int, int>> edges;
  int max_node = -1;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    int i = 0, j = 0;
    if (!(ls >> i >> j)) continue;
    if (i < 0 || j < 0) fail(ErrorCode::ConfigInvalid, path + ": negative node index");
    edges.emplace_back(i, j);
    max_node = std::max({max_node, i, j});
  }
  if (edges.empty()) fail(ErrorCode::ConfigInvalid, path + ": no edges");
  Matrix a = Matrix::Zero(max_node + 1, max_node + 1);
  for (auto [i, j] : edges) {
    a(i, j) = 1.0;
    a(j, i) = 1.0;
  }
  return build_social_network(a);
}

void write_edge_list(const SocialNetwork& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::ConfigInvalid, "cannot write " + path);
  for (int i = 0; i < net.n; ++i) {
    for (int j : net.neighbors[i]) {
      if (j > i) out << i << ' ' << j << '\n';
    }
  }
}

}  // namespace netprop
