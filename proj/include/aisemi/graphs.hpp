#pragma once

// The graph of the two-letter summands of a term, bipartiteness and the
// constrained bipartition used for terms whose length-2 part is bipartite.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "aisemi/terms.hpp"

namespace aisemi {

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Edge = std::pair<Variable, Variable>;  // first <= second; loops allowed

class TermGraph {
 public:
  TermGraph() = default;
  TermGraph(VariableSet vertices, const std::vector<Edge>& edges);

  const VariableSet& vertices() const { return vertices_; }
  const std::set<Edge>& edges() const { return edges_; }
  bool has_edge(const Variable& a, const Variable& b) const;
  const VariableSet& neighbours(const Variable& v) const;

 private:
  VariableSet vertices_;
  std::set<Edge> edges_;
  std::map<Variable, VariableSet> adjacency_;
};

// Vertices c(L2(u)); one edge {x, y} per summand xy (a loop for xx).
TermGraph graph_of(const Term& u);

// Closed walk v0 v1 ... v_{k-1} (back to v0) of odd length k.
using Cycle = std::vector<Variable>;

std::optional<Cycle> find_odd_cycle(const TermGraph& g);
inline bool is_bipartite(const TermGraph& g) { return !find_odd_cycle(g); }

// True iff some walk of odd length joins x and y. Throws GraphError when
// either is not a vertex.
bool odd_path_exists(const TermGraph& g, const Variable& x, const Variable& y);

struct Bipartition {
  VariableSet y;
  VariableSet z;
};

struct OddCycleWitness {
  Cycle cycle;
};

struct OddPathWitness {
  Variable from;
  Variable to;
  std::vector<Variable> path;  // from ... to, odd number of edges
};

using BipartitionResult =
    std::variant<Bipartition, OddCycleWitness, OddPathWitness>;

// Per component, takes the least H-vertex (else the least vertex) as root
// and puts the even-distance vertices in Y.
BipartitionResult constrained_bipartition(const TermGraph& g,
                                          const VariableSet& h);

}  // namespace aisemi
