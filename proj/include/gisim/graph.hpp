#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace gisim {

// Simple connected undirected graph over nodes 0..n-1, each carrying a
// distinct positive identifier. Edges are stored as index pairs (i < j).
class Graph {
 public:
  Graph(std::vector<uint64_t> ids, std::vector<std::pair<int, int>> edges);

  int n() const { return static_cast<int>(ids_.size()); }
  uint64_t id(int v) const { return ids_[static_cast<size_t>(v)]; }
  const std::vector<uint64_t>& ids() const { return ids_; }
  const std::vector<int>& neighbors(int v) const { return adj_[static_cast<size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(adj_[static_cast<size_t>(v)].size()); }
  bool adjacent(int u, int v) const;
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  // Returns the index holding `id`, or -1.
  int index_of_id(uint64_t id) const;

 private:
  std::vector<uint64_t> ids_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
};

bool is_connected_edge_list(int n, const std::vector<std::pair<int, int>>& edges);

// BFS distances from `src` (-1 when unreachable). Neighbor order is by index,
// so results are deterministic.
std::vector<int> bfs_dist_from(const Graph& g, int src);

// Shortest path src -> dst as a node index sequence (inclusive).
std::vector<int> bfs_path(const Graph& g, int src, int dst);

// BFS parent array rooted at `src` (parent[src] = -1).
std::vector<int> bfs_parents(const Graph& g, int src);

}  // namespace gisim
