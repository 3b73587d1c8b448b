#pragma once

#include "fracspec/numeric.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fracspec {

/// Sequence of cell indices; its length is the level.
using Word = std::vector<std::uint8_t>;

/// Canonical (word, corner) address of a vertex: the lexicographically least
/// of all addresses the gluing relation identifies.
struct VertexId {
  Word word;
  int corner = 0;

  friend bool operator==(const VertexId&, const VertexId&) = default;
  friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

/// "012/1": word digits, then the corner index.
std::string to_string(const VertexId& v);

/// (cell, corner) pair inside one subdivision step.
using CellCorner = std::pair<int, int>;

/// Subdivision template of a finitely ramified fractal.
struct FractalSpec {
  std::string name;
  int cells = 0;    // contraction count N
  int corners = 0;  // |V0|
  /// Each class lists the (cell, corner) pairs that become one point.
  std::vector<std::vector<CellCorner>> glue;
  /// Boundary point k of the parent is corner boundary[k].second of cell boundary[k].first.
  std::vector<CellCorner> boundary;
  int max_level = 0;
};

const FractalSpec& interval_spec();
const FractalSpec& sg_spec();
const FractalSpec& sg3_spec();
/// Built-in template by name ("interval", "sg", "sg3"); throws ValidationError otherwise.
const FractalSpec& fractal_spec(const std::string& name);
std::vector<std::string> fractal_names();

class LevelGraph {
 public:
  LevelGraph(std::string fractal, int level, int cells_per_step, std::vector<VertexId> vertices,
             std::vector<std::vector<int>> adjacency, std::vector<int> boundary, std::vector<std::vector<int>> cells);

  const std::string& fractal() const { return fractal_; }
  int level() const { return level_; }
  std::size_t size() const { return vertices_.size(); }
  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<int>& neighbors(int v) const { return adjacency_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
  /// Indices of the V0 images, in boundary-label order.
  const std::vector<int>& boundary() const { return boundary_; }
  bool is_boundary(int v) const;
  std::size_t edge_count() const;
  /// Edges (i, j) with i < j, sorted.
  std::vector<std::pair<int, int>> edges() const;
  /// Index of a canonical address, or -1.
  int index_of(const VertexId& v) const;
  /// Index of the vertex at any (word, corner) address of this level, canonical or not.
  int vertex_at(const VertexId& address) const;
  /// Vertex indices of the corners of every level-m cell, cells in lexicographic word order.
  const std::vector<std::vector<int>>& cells() const { return cells_; }

 private:
  std::string fractal_;
  int level_;
  std::vector<VertexId> vertices_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<int> boundary_;
  int cells_per_step_;
  std::vector<std::vector<int>> cells_;
};

/// Level-m graph approximation. cap < 0 uses spec.max_level.
LevelGraph build_level(const FractalSpec& spec, int m, int cap = -1);

std::vector<VertexId> boundary_vertices(const LevelGraph& graph);

/// Address of a level-(m-1) vertex inside the level-m graph.
VertexId embed_in_next_level(const FractalSpec& spec, const VertexId& v);

/// {level, vertices, edges, boundary} with stable ordering.
std::string graph_to_json(const LevelGraph& graph);

}  // namespace fracspec
