// Copyright 2026 The gmeact Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "graphs.hpp"
#include "linalg.hpp"
#include "maps.hpp"
#include "ppt.hpp"
#include "seesaw.hpp"

namespace gmeact {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Complex matrices and projection sets, entries as [re, im] pairs.

inline Json to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

inline ComplexMatrix complex_matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw std::invalid_argument("matrix JSON must be a non-empty array of rows");
  const std::size_t rows = j.size(), cols = j[0].size();
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (j[r].size() != cols) throw std::invalid_argument("matrix JSON rows differ in length");
    for (std::size_t c = 0; c < cols; ++c) {
      const Json& e = j[r][c];
      if (!e.is_array() || e.size() != 2) throw std::invalid_argument("matrix entries must be [re, im] pairs");
      m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

inline Json to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back({x.real(), x.imag()});
  return out;
}

inline ComplexVector complex_vector_from_json(const Json& j) {
  ComplexVector v;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("vector entries must be [re, im] pairs");
    v.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return v;
}

inline Json to_json(const ProjectionSet& p) {
  Json f = Json::array();
  for (const auto& m : p.filters) f.push_back(to_json(m));
  return Json{{"schema", kSchemaVersion}, {"filters", f}};
}

inline ProjectionSet projection_set_from_json(const Json& j) {
  ProjectionSet p;
  for (const auto& f : j.at("filters")) p.filters.push_back(complex_matrix_from_json(f));
  if (p.filters.empty()) throw std::invalid_argument("projection set JSON has no filters");
  return p;
}

inline Json to_json(const SeesawResult& r) {
  Json v = Json::array();
  for (const auto& x : r.vectors) v.push_back(to_json(x));
  return Json{{"value", r.value}, {"iterations", r.iterations}, {"start", r.start}, {"vectors", v},
              {"projections", to_json(r.projections())}};
}

inline Json to_json(const PptMixResult& r) {
  return Json{{"t", r.t}, {"w", r.w}, {"p", r.p}, {"q", r.q}};
}

inline Json to_json(const PptRelaxResult& r) {
  return Json{{"value", r.value}, {"slack", r.slack}, {"y", r.y}};
}

// ---------------------------------------------------------------------------
// CSV with a versioned comment header. Numbers use a fixed format so equal
// inputs give byte-identical output.

inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const std::vector<std::string>& columns, const std::vector<std::string>& comments = {})
      : os_(os), width_(columns.size()) {
    os_ << "# schema=" << kSchemaVersion << '\n';
    for (const auto& c : comments) os_ << "# " << c << '\n';
    write_row(columns);
  }

  void write_row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw std::invalid_argument("CSV row has the wrong number of cells");
    for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << quote(cells[i]);
    os_ << '\n';
  }

  static std::string quote(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string q = "\"";
    for (char c : cell) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + '"';
  }

 private:
  std::ostream& os_;
  std::size_t width_;
};

// Splits a CSV body into rows, skipping '#' comment lines.
inline std::vector<std::vector<std::string>> read_csv(std::istream& is) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted) {
        if (c != '"') cells.back() += c;
        else if (i + 1 < line.size() && line[i + 1] == '"') cells.back() += line[++i];
        else quoted = false;
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        cells.emplace_back();
      } else {
        cells.back() += c;
      }
    }
    rows.push_back(cells);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Graphs: "n N" (optional node count), "i j" edges, "c i k" colors.

inline Graph read_edge_list(std::istream& is) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::pair<std::size_t, int>> colors;
  std::size_t nodes = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::stringstream ss(line);
    std::string first;
    if (!(ss >> first)) continue;
    auto fail = [&]() { throw std::invalid_argument("edge list line " + std::to_string(lineno) + ": cannot parse '" + line + "'"); };
    if (first == "c") {
      long i = -1, k = -1;
      if (!(ss >> i >> k) || i < 0 || (k != 0 && k != 1)) fail();
      colors.emplace_back(static_cast<std::size_t>(i), static_cast<int>(k));
      nodes = std::max(nodes, static_cast<std::size_t>(i) + 1);
    } else if (first == "n") {
      long n = -1;
      if (!(ss >> n) || n < 0) fail();
      nodes = std::max(nodes, static_cast<std::size_t>(n));
    } else {
      long i = -1, j = -1;
      try {
        i = std::stol(first);
      } catch (const std::exception&) {
        fail();
      }
      if (!(ss >> j) || i < 0 || j < 0) fail();
      edges.emplace_back(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      nodes = std::max({nodes, static_cast<std::size_t>(i) + 1, static_cast<std::size_t>(j) + 1});
    }
  }
  Graph g(nodes);
  for (auto [i, j] : edges) g.add_edge(i, j);
  if (!colors.empty()) {
    if (colors.size() != nodes) throw std::invalid_argument("edge list colors must cover every node");
    std::vector<int> c(nodes, -1);
    for (auto [i, k] : colors) c[i] = k;
    for (int k : c)
      if (k < 0) throw std::invalid_argument("edge list colors must cover every node");
    g.set_coloring(c);
  }
  return g;
}

inline void write_edge_list(std::ostream& os, const Graph& g) {
  os << "n " << g.node_count() << '\n';
  for (auto [i, j] : g.edges()) os << i << ' ' << j << '\n';
  if (g.coloring())
    for (std::size_t i = 0; i < g.node_count(); ++i) os << "c " << i << ' ' << (*g.coloring())[i] << '\n';
}

inline std::string to_dot(const Graph& g, const std::string& name = "G") {
  std::ostringstream os;
  os << "graph " << name << " {\n";
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    os << "  " << i;
    if (g.coloring()) os << " [style=filled, fillcolor=" << ((*g.coloring())[i] == 0 ? "lightblue" : "salmon") << "]";
    os << ";\n";
  }
  for (auto [i, j] : g.edges()) os << "  " << i << " -- " << j << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace gmeact
