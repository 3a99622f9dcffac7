#include "aisemi/graphs.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace aisemi {

TermGraph::TermGraph(VariableSet vertices, const std::vector<Edge>& edges)
    : vertices_(std::move(vertices)) {
  for (const auto& v : vertices_) adjacency_[v];
  for (auto [a, b] : edges) {
    if (!vertices_.count(a) || !vertices_.count(b)) {
      throw GraphError("edge endpoint is not a vertex");
    }
    if (b < a) std::swap(a, b);
    edges_.insert({a, b});
    adjacency_[a].insert(b);
    adjacency_[b].insert(a);
  }
}

bool TermGraph::has_edge(const Variable& a, const Variable& b) const {
  return edges_.count(a < b ? Edge{a, b} : Edge{b, a}) != 0;
}

const VariableSet& TermGraph::neighbours(const Variable& v) const {
  auto it = adjacency_.find(v);
  if (it == adjacency_.end()) throw GraphError("'" + v + "' is not a vertex");
  return it->second;
}

TermGraph graph_of(const Term& u) {
  VariableSet vertices;
  std::vector<Edge> edges;
  for (const auto& w : level(2, u)) {
    vertices.insert(w[0]);
    vertices.insert(w[1]);
    edges.emplace_back(w[0], w[1]);
  }
  return TermGraph(std::move(vertices), edges);
}

namespace {

struct Bfs {
  std::map<Variable, std::size_t> dist;
  std::map<Variable, Variable> parent;
};

Bfs bfs(const TermGraph& g, const Variable& root) {
  Bfs r;
  r.dist[root] = 0;
  std::deque<Variable> queue{root};
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (const auto& w : g.neighbours(v)) {
      if (r.dist.count(w)) continue;
      r.dist[w] = r.dist[v] + 1;
      r.parent[w] = v;
      queue.push_back(w);
    }
  }
  return r;
}

std::vector<Variable> path_to_root(const Bfs& b, Variable v) {
  std::vector<Variable> path{v};
  while (b.dist.at(v) != 0) {
    v = b.parent.at(v);
    path.push_back(v);
  }
  return path;  // v ... root
}

// Odd cycle in the component explored by b, if any: an edge between two
// vertices at equal distance closes one through their lowest common
// ancestor in the BFS tree.
std::optional<Cycle> odd_cycle_in(const TermGraph& g, const Bfs& b) {
  for (const auto& [a, c] : g.edges()) {
    if (!b.dist.count(a)) continue;
    if (a == c) return Cycle{a};
    if (b.dist.at(a) != b.dist.at(c)) continue;
    auto pa = path_to_root(b, a);
    auto pc = path_to_root(b, c);
    // Strip the shared tail (common ancestors) except the LCA itself.
    while (pa.size() >= 2 && pc.size() >= 2 &&
           pa[pa.size() - 2] == pc[pc.size() - 2]) {
      pa.pop_back();
      pc.pop_back();
    }
    Cycle cycle(pa.begin(), pa.end());  // a ... lca
    for (std::size_t i = pc.size() - 1; i-- > 0;) cycle.push_back(pc[i]);  // ... c
    return cycle;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Cycle> find_odd_cycle(const TermGraph& g) {
  VariableSet seen;
  for (const auto& v : g.vertices()) {
    if (seen.count(v)) continue;
    auto b = bfs(g, v);
    for (const auto& [w, d] : b.dist) seen.insert(w);
    if (auto c = odd_cycle_in(g, b)) return c;
  }
  return std::nullopt;
}

bool odd_path_exists(const TermGraph& g, const Variable& x, const Variable& y) {
  g.neighbours(x);
  g.neighbours(y);
  // Two-state traversal over (vertex, parity of walk length).
  std::set<std::pair<Variable, bool>> seen{{x, false}};
  std::deque<std::pair<Variable, bool>> queue{{x, false}};
  while (!queue.empty()) {
    auto [v, odd] = queue.front();
    queue.pop_front();
    if (v == y && odd) return true;
    for (const auto& w : g.neighbours(v)) {
      std::pair<Variable, bool> next{w, !odd};
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return false;
}

BipartitionResult constrained_bipartition(const TermGraph& g,
                                          const VariableSet& h) {
  if (auto c = find_odd_cycle(g)) return OddCycleWitness{*c};

  Bipartition result;
  VariableSet seen;
  for (const auto& start : g.vertices()) {
    if (seen.count(start)) continue;
    // Component of start, then its representative.
    auto comp = bfs(g, start);
    Variable root = start;
    for (const auto& [v, d] : comp.dist) {
      if (h.count(v)) {
        root = v;
        break;
      }
    }
    auto b = bfs(g, root);
    for (const auto& [v, d] : b.dist) {
      seen.insert(v);
      (d % 2 == 0 ? result.y : result.z).insert(v);
      if (h.count(v) && d % 2 == 1) {
        auto path = path_to_root(b, v);
        std::reverse(path.begin(), path.end());
        return OddPathWitness{root, v, std::move(path)};
      }
    }
  }
  return result;
}

}  // namespace aisemi
