#include "gisim/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "gisim/error.hpp"

namespace gisim {

Graph::Graph(std::vector<uint64_t> ids, std::vector<std::pair<int, int>> edges)
    : ids_(std::move(ids)) {
  int n = static_cast<int>(ids_.size());
  if (n < 1) throw Error(Errc::InvalidArgument, "graph needs at least one node");
  std::set<uint64_t> seen;
  for (uint64_t id : ids_) {
    if (id == 0 || id >= (1ull << 32))
      throw Error(Errc::InvalidArgument, "node identifier out of range");
    if (!seen.insert(id).second)
      throw Error(Errc::InvalidArgument, "duplicate node identifier");
  }
  std::set<std::pair<int, int>> edge_set;
  for (auto [a, b] : edges) {
    if (a == b) throw Error(Errc::InvalidArgument, "self-loop");
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw Error(Errc::InvalidArgument, "edge endpoint out of range");
    if (a > b) std::swap(a, b);
    if (!edge_set.insert({a, b}).second)
      throw Error(Errc::InvalidArgument, "duplicate edge");
  }
  edges_.assign(edge_set.begin(), edge_set.end());
  if (!is_connected_edge_list(n, edges_))
    throw Error(Errc::DisconnectedResult, "graph is not connected");
  adj_.assign(static_cast<size_t>(n), {});
  for (auto [a, b] : edges_) {
    adj_[static_cast<size_t>(a)].push_back(b);
    adj_[static_cast<size_t>(b)].push_back(a);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

bool Graph::adjacent(int u, int v) const {
  const auto& nb = adj_[static_cast<size_t>(u)];
  return std::binary_search(nb.begin(), nb.end(), v);
}

int Graph::index_of_id(uint64_t id) const {
  for (int v = 0; v < n(); ++v)
    if (ids_[static_cast<size_t>(v)] == id) return v;
  return -1;
}

bool is_connected_edge_list(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n <= 0) return false;
  std::vector<std::vector<int>> adj(static_cast<size_t>(n));
  for (auto [a, b] : edges) {
    adj[static_cast<size_t>(a)].push_back(b);
    adj[static_cast<size_t>(b)].push_back(a);
  }
  std::vector<char> vis(static_cast<size_t>(n), 0);
  std::queue<int> q;
  q.push(0);
  vis[0] = 1;
  int count = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int w : adj[static_cast<size_t>(u)])
      if (!vis[static_cast<size_t>(w)]) {
        vis[static_cast<size_t>(w)] = 1;
        ++count;
        q.push(w);
      }
  }
  return count == n;
}

std::vector<int> bfs_dist_from(const Graph& g, int src) {
  std::vector<int> dist(static_cast<size_t>(g.n()), -1);
  std::queue<int> q;
  dist[static_cast<size_t>(src)] = 0;
  q.push(src);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int w : g.neighbors(u))
      if (dist[static_cast<size_t>(w)] < 0) {
        dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(u)] + 1;
        q.push(w);
      }
  }
  return dist;
}

std::vector<int> bfs_parents(const Graph& g, int src) {
  std::vector<int> parent(static_cast<size_t>(g.n()), -2);
  std::queue<int> q;
  parent[static_cast<size_t>(src)] = -1;
  q.push(src);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int w : g.neighbors(u))
      if (parent[static_cast<size_t>(w)] == -2) {
        parent[static_cast<size_t>(w)] = u;
        q.push(w);
      }
  }
  return parent;
}

std::vector<int> bfs_path(const Graph& g, int src, int dst) {
  std::vector<int> parent = bfs_parents(g, src);
  std::vector<int> path;
  for (int v = dst; v != -1; v = parent[static_cast<size_t>(v)]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace gisim
