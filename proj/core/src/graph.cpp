#include "fracspec/graph.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>

namespace fracspec {

std::string to_string(const VertexId& v) {
  std::string s;
  for (auto c : v.word) s += std::to_string(c);
  return s + "/" + std::to_string(v.corner);
}

namespace {

FractalSpec make_interval() { return {"interval", 2, 2, {{{0, 1}, {1, 0}}}, {{0, 0}, {1, 1}}, 12}; }

FractalSpec make_sg() {
  return {"sg", 3, 3, {{{0, 1}, {1, 0}}, {{0, 2}, {2, 0}}, {{1, 2}, {2, 1}}}, {{0, 0}, {1, 1}, {2, 2}}, 7};
}

// Six upward triangles of the side-3 subdivision. Cell order puts the parent
// corner k in cell k; corner 0 is the lower-left lattice point (a, b), corner 1
// is (a+1, b), corner 2 is (a, b+1). Shared lattice points are glued.
FractalSpec make_sg3() {
  const std::vector<std::pair<int, int>> cells = {{0, 0}, {2, 0}, {0, 2}, {1, 0}, {0, 1}, {1, 1}};
  const std::pair<int, int> offsets[3] = {{0, 0}, {1, 0}, {0, 1}};
  std::vector<std::pair<std::pair<int, int>, std::vector<CellCorner>>> points;
  for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
    for (int c = 0; c < 3; ++c) {
      std::pair<int, int> p{cells[i].first + offsets[c].first, cells[i].second + offsets[c].second};
      auto it = std::find_if(points.begin(), points.end(), [&](const auto& e) { return e.first == p; });
      if (it == points.end()) {
        points.push_back({p, {{i, c}}});
      } else {
        it->second.push_back({i, c});
      }
    }
  }
  FractalSpec spec{"sg3", 6, 3, {}, {{0, 0}, {1, 1}, {2, 2}}, 5};
  for (auto& [p, members] : points) {
    if (members.size() > 1) spec.glue.push_back(members);
  }
  return spec;
}

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  std::vector<std::size_t> parent;
};

}  // namespace

const FractalSpec& interval_spec() {
  static const FractalSpec spec = make_interval();
  return spec;
}

const FractalSpec& sg_spec() {
  static const FractalSpec spec = make_sg();
  return spec;
}

const FractalSpec& sg3_spec() {
  static const FractalSpec spec = make_sg3();
  return spec;
}

const FractalSpec& fractal_spec(const std::string& name) {
  if (name == "interval") return interval_spec();
  if (name == "sg") return sg_spec();
  if (name == "sg3") return sg3_spec();
  throw ValidationError("unknown fractal '" + name + "' (expected interval, sg or sg3)");
}

std::vector<std::string> fractal_names() { return {"interval", "sg", "sg3"}; }

LevelGraph::LevelGraph(std::string fractal, int level, int cells_per_step, std::vector<VertexId> vertices,
                       std::vector<std::vector<int>> adjacency, std::vector<int> boundary,
                       std::vector<std::vector<int>> cells)
    : fractal_(std::move(fractal)),
      level_(level),
      vertices_(std::move(vertices)),
      adjacency_(std::move(adjacency)),
      boundary_(std::move(boundary)),
      cells_per_step_(cells_per_step),
      cells_(std::move(cells)) {}

bool LevelGraph::is_boundary(int v) const { return std::find(boundary_.begin(), boundary_.end(), v) != boundary_.end(); }

std::size_t LevelGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& a : adjacency_) total += a.size();
  return total / 2;
}

std::vector<std::pair<int, int>> LevelGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < static_cast<int>(adjacency_.size()); ++i) {
    for (int j : adjacency_[static_cast<std::size_t>(i)]) {
      if (i < j) out.emplace_back(i, j);
    }
  }
  return out;
}

int LevelGraph::index_of(const VertexId& v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || !(*it == v)) return -1;
  return static_cast<int>(it - vertices_.begin());
}

int LevelGraph::vertex_at(const VertexId& address) const {
  if (static_cast<int>(address.word.size()) != level_) return -1;
  std::size_t cell = 0;
  for (auto s : address.word) {
    if (s >= cells_per_step_) return -1;
    cell = cell * static_cast<std::size_t>(cells_per_step_) + s;
  }
  const auto& corners = cells_[cell];
  if (address.corner < 0 || address.corner >= static_cast<int>(corners.size())) return -1;
  return corners[static_cast<std::size_t>(address.corner)];
}

LevelGraph build_level(const FractalSpec& spec, int m, int cap) {
  if (m < 0) throw ValidationError("level must be nonnegative");
  const int limit = cap < 0 ? spec.max_level : cap;
  if (m > limit) {
    throw ValidationError("level " + std::to_string(m) + " exceeds the safety cap " + std::to_string(limit) + " for " +
                          spec.name);
  }

  std::vector<VertexId> verts;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> boundary;
  std::vector<std::vector<int>> cells(1);
  for (int c = 0; c < spec.corners; ++c) {
    cells[0].push_back(c);
    verts.push_back({{}, c});
    boundary.push_back(c);
    for (int d = c + 1; d < spec.corners; ++d) edges.emplace_back(c, d);
  }

  for (int level = 1; level <= m; ++level) {
    const std::size_t n = verts.size();
    const std::size_t total = n * static_cast<std::size_t>(spec.cells);
    auto raw = [n](int cell, int v) { return static_cast<std::size_t>(cell) * n + static_cast<std::size_t>(v); };

    UnionFind uf(total);
    for (const auto& cls : spec.glue) {
      const std::size_t first = raw(cls[0].first, boundary[static_cast<std::size_t>(cls[0].second)]);
      for (std::size_t k = 1; k < cls.size(); ++k) {
        uf.unite(raw(cls[k].first, boundary[static_cast<std::size_t>(cls[k].second)]), first);
      }
    }

    std::vector<VertexId> addr(total);
    for (int cell = 0; cell < spec.cells; ++cell) {
      for (std::size_t v = 0; v < n; ++v) {
        VertexId a;
        a.word.reserve(verts[v].word.size() + 1);
        a.word.push_back(static_cast<std::uint8_t>(cell));
        a.word.insert(a.word.end(), verts[v].word.begin(), verts[v].word.end());
        a.corner = verts[v].corner;
        addr[raw(cell, static_cast<int>(v))] = std::move(a);
      }
    }
    // Least address per class is the canonical one.
    std::vector<std::size_t> best(total);
    std::iota(best.begin(), best.end(), std::size_t{0});
    for (std::size_t x = 0; x < total; ++x) {
      std::size_t r = uf.find(x);
      if (addr[x] < addr[best[r]]) best[r] = x;
    }
    std::vector<VertexId> next;
    for (std::size_t x = 0; x < total; ++x) {
      if (uf.find(x) == x) next.push_back(addr[best[x]]);
    }
    std::sort(next.begin(), next.end());
    std::vector<int> index(total);
    for (std::size_t x = 0; x < total; ++x) {
      const VertexId& rep = addr[best[uf.find(x)]];
      index[x] = static_cast<int>(std::lower_bound(next.begin(), next.end(), rep) - next.begin());
    }

    std::vector<std::pair<int, int>> next_edges;
    next_edges.reserve(edges.size() * static_cast<std::size_t>(spec.cells));
    for (int cell = 0; cell < spec.cells; ++cell) {
      for (auto [a, b] : edges) {
        int x = index[raw(cell, a)];
        int y = index[raw(cell, b)];
        next_edges.emplace_back(std::min(x, y), std::max(x, y));
      }
    }
    std::sort(next_edges.begin(), next_edges.end());
    next_edges.erase(std::unique(next_edges.begin(), next_edges.end()), next_edges.end());

    std::vector<int> next_boundary;
    for (auto [cell, corner] : spec.boundary) {
      next_boundary.push_back(index[raw(cell, boundary[static_cast<std::size_t>(corner)])]);
    }
    std::vector<std::vector<int>> next_cells;
    next_cells.reserve(cells.size() * static_cast<std::size_t>(spec.cells));
    for (int cell = 0; cell < spec.cells; ++cell) {
      for (const auto& corners : cells) {
        std::vector<int> mapped;
        for (int v : corners) mapped.push_back(index[raw(cell, v)]);
        next_cells.push_back(std::move(mapped));
      }
    }
    cells = std::move(next_cells);
    verts = std::move(next);
    edges = std::move(next_edges);
    boundary = std::move(next_boundary);
  }

  std::vector<std::vector<int>> adjacency(verts.size());
  for (auto [a, b] : edges) {
    adjacency[static_cast<std::size_t>(a)].push_back(b);
    adjacency[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& row : adjacency) std::sort(row.begin(), row.end());
  return LevelGraph(spec.name, m, spec.cells, std::move(verts), std::move(adjacency), std::move(boundary),
                    std::move(cells));
}

std::vector<VertexId> boundary_vertices(const LevelGraph& graph) {
  std::vector<VertexId> out;
  for (int v : graph.boundary()) out.push_back(graph.vertices()[static_cast<std::size_t>(v)]);
  return out;
}

VertexId embed_in_next_level(const FractalSpec& spec, const VertexId& v) {
  // Corner c of a cell is corner boundary[c].second of its child boundary[c].first.
  const auto& [cell, corner] = spec.boundary.at(static_cast<std::size_t>(v.corner));
  VertexId out = v;
  out.word.push_back(static_cast<std::uint8_t>(cell));
  out.corner = corner;
  return out;
}

std::string graph_to_json(const LevelGraph& graph) {
  nlohmann::json j;
  j["fractal"] = graph.fractal();
  j["level"] = graph.level();
  auto& vs = j["vertices"] = nlohmann::json::array();
  for (const auto& v : graph.vertices()) vs.push_back(to_string(v));
  auto& es = j["edges"] = nlohmann::json::array();
  for (auto [a, b] : graph.edges()) es.push_back({a, b});
  auto& bs = j["boundary"] = nlohmann::json::array();
  for (const auto& v : boundary_vertices(graph)) bs.push_back(to_string(v));
  return j.dump(2);
}

}  // namespace fracspec
