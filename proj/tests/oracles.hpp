#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "mpx/metrics.hpp"

// Reference implementations that share no code with the library.
namespace mpx::testing {

// Floyd-Warshall over an adjacency matrix: independent of the BFS path.
struct DistanceOracle {
  std::size_t diameter = 0;
  double apl = 0.0;
  bool connected = true;
};

inline DistanceOracle floyd_warshall(const FlattenedGraph& g) {
  const auto n = g.node_count();
  constexpr std::size_t inf = std::numeric_limits<std::size_t>::max() / 4;
  std::vector<std::size_t> d(n * n, inf);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0;
  for (const auto& e : g.edges()) d[e.u * n + e.v] = d[e.v * n + e.u] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
  DistanceOracle out;
  std::size_t sum = 0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d[i * n + j] >= inf) {
        out.connected = false;
        continue;
      }
      sum += d[i * n + j];
      ++pairs;
      out.diameter = std::max(out.diameter, d[i * n + j]);
    }
  }
  out.apl = pairs == 0 ? 0.0 : static_cast<double>(sum) / static_cast<double>(pairs);
  if (n == 0) out.connected = false;
  return out;
}

// Brute-force Jaccard on label sets.
inline double jaccard_oracle(const MultiplexNetwork& net, const std::vector<std::string>& layers) {
  auto sets = label_edges(net);
  std::set<std::pair<std::string, std::string>> inter = sets[layers[0]];
  std::set<std::pair<std::string, std::string>> uni;
  for (const auto& l : layers) {
    std::set<std::pair<std::string, std::string>> next;
    for (const auto& e : inter)
      if (sets[l].contains(e)) next.insert(e);
    inter = next;
    uni.insert(sets[l].begin(), sets[l].end());
  }
  if (uni.empty()) return 1.0;
  return static_cast<double>(inter.size()) / static_cast<double>(uni.size());
}

// Per-neighbour exclusivity scan on label sets.
inline double xrel_oracle(const MultiplexNetwork& net, const std::string& actor,
                   const std::string& layer) {
  auto sets = label_edges(net);
  std::map<std::string, std::set<std::string>> layers_of;  // neighbour -> layers
  for (const auto& [l, edges] : sets) {
    for (const auto& [u, v] : edges) {
      if (u == actor) layers_of[v].insert(l);
      if (v == actor) layers_of[u].insert(l);
    }
  }
  if (layers_of.empty()) return 0.0;
  std::size_t exclusive = 0;
  for (const auto& [nbr, ls] : layers_of) {
    if (ls.size() == 1 && *ls.begin() == layer) ++exclusive;
  }
  return static_cast<double>(exclusive) / static_cast<double>(layers_of.size());
}

}  // namespace mpx::testing
