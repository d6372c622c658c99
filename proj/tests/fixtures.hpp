#pragma once

#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mpx/graph.hpp"
#include "mpx/io.hpp"
#include "mpx/random.hpp"

namespace mpx::testing {

/// Actors {a,b,c,d}; L1 = {a-b, b-c}; L2 = {b-c, c-d}.
inline MultiplexNetwork toy1() {
  return parse_multiplex("a,b,L1\nb,c,L1\nb,c,L2\nc,d,L2\n").network;
}

/// Single-layer graph from label pairs plus optional isolated nodes.
inline FlattenedGraph graph_of(std::initializer_list<std::pair<const char*, const char*>> edges,
                               std::initializer_list<const char*> isolated = {}) {
  NetworkBuilder builder;
  builder.add_layer(LayerId("G"));
  for (auto* a : isolated) builder.add_actor(ActorId(a));
  for (auto [a, b] : edges) builder.add_edge(ActorId(a), ActorId(b), LayerId("G"));
  return flatten(builder.build());
}

inline FlattenedGraph path_graph(std::uint32_t n) {
  std::vector<IndexEdge> edges;
  for (std::uint32_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return FlattenedGraph::unlabeled(n, edges);
}

inline FlattenedGraph cycle_graph(std::uint32_t n) {
  std::vector<IndexEdge> edges;
  for (std::uint32_t i = 0; i < n; ++i) edges.push_back(make_index_edge(i, (i + 1) % n));
  return FlattenedGraph::unlabeled(n, edges);
}

inline FlattenedGraph complete_graph(std::uint32_t n) {
  std::vector<IndexEdge> edges;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) edges.push_back({i, j});
  }
  return FlattenedGraph::unlabeled(n, edges);
}

/// Erdos-Renyi style graph with edge probability p.
inline FlattenedGraph random_graph(Rng& rng, std::uint32_t n, double p) {
  std::vector<IndexEdge> edges;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (rng.unit() < p) edges.push_back({i, j});
    }
  }
  return FlattenedGraph::unlabeled(n, edges);
}

/// Random multiplex with 1..max_actors actors and 1..max_layers layers. Layers
/// overlap because later layers partly copy earlier ones.
inline MultiplexNetwork random_multiplex(Rng& rng, std::size_t max_actors, std::size_t max_layers,
                                         std::size_t min_layers = 1) {
  const auto n = 1 + rng.below(max_actors);
  const auto layers = min_layers + rng.below(max_layers - min_layers + 1);
  const double p = 0.05 + 0.4 * rng.unit();
  NetworkBuilder builder;
  std::vector<ActorId> actors;
  for (std::size_t i = 0; i < n; ++i) {
    actors.emplace_back("v" + std::to_string(i));
    builder.add_actor(actors.back());
  }
  std::vector<std::pair<std::size_t, std::size_t>> previous;
  for (std::size_t l = 0; l < layers; ++l) {
    LayerId layer("l" + std::to_string(l));
    builder.add_layer(layer);
    std::vector<std::pair<std::size_t, std::size_t>> current;
    for (auto [a, b] : previous) {
      if (rng.unit() < 0.5) current.emplace_back(a, b);
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (rng.unit() < p * 0.5) current.emplace_back(a, b);
      }
    }
    for (auto [a, b] : current) builder.add_edge(actors[a], actors[b], layer);
    previous = current;
  }
  return builder.build();
}

/// Label-level edge sets per layer, independent of the library's index form.
inline std::map<std::string, std::set<std::pair<std::string, std::string>>> label_edges(
    const MultiplexNetwork& network) {
  std::map<std::string, std::set<std::pair<std::string, std::string>>> out;
  for (const auto& layer : network.layers()) {
    auto& set = out[layer.str()];
    for (const auto& e : network.edges(layer)) set.emplace(e.u.str(), e.v.str());
  }
  return out;
}

}  // namespace mpx::testing
