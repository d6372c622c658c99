#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mpx/error.hpp"
#include "mpx/graph.hpp"

namespace mpx {

class MetricsError : public Error {
 public:
  explicit MetricsError(const std::string& message) : Error("metrics", message) {}
};

/// Which node pairs enter diameter and average path length.
enum class PathSemantics {
  kFinitePairs,       ///< every pair at finite distance
  kLargestComponent,  ///< only pairs inside the largest connected component
};

enum class ClusteringMode {
  kAverageLocal,        ///< mean local coefficient over nodes of degree >= 2
  kGlobalTransitivity,  ///< closed / connected triples
};

struct MetricsOptions {
  PathSemantics paths = PathSemantics::kFinitePairs;
  ClusteringMode clustering = ClusteringMode::kAverageLocal;
  unsigned threads = 1;
};

struct PathStatistics {
  std::size_t diameter = 0;
  double average_path_length = 0.0;
  bool connected = false;
  std::uint64_t pair_count = 0;  ///< unordered pairs that entered the mean
  std::uint64_t distance_sum = 0;
};

/// All-pairs breadth-first traversal. Work is split over source nodes; the
/// integer accumulators make the result independent of `threads`.
PathStatistics path_statistics(const FlattenedGraph& graph,
                               PathSemantics semantics = PathSemantics::kFinitePairs,
                               unsigned threads = 1);

std::size_t diameter(const FlattenedGraph& graph,
                     PathSemantics semantics = PathSemantics::kFinitePairs);
double average_path_length(const FlattenedGraph& graph,
                           PathSemantics semantics = PathSemantics::kFinitePairs);
/// A graph with one node is connected; an empty graph is not.
bool is_connected(const FlattenedGraph& graph);
double clustering_coefficient(const FlattenedGraph& graph,
                              ClusteringMode mode = ClusteringMode::kAverageLocal);

struct MetricsReport {
  std::size_t diameter = 0;
  double clustering_coefficient = 0.0;
  double avg_path_length = 0.0;
  bool is_connected = false;
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
};

MetricsReport compute_metrics(const FlattenedGraph& graph, const MetricsOptions& options = {});
MetricsReport metrics_report(const MultiplexNetwork& network, std::span<const LayerId> layers,
                             const MetricsOptions& options = {});

/// Intersection over union of the selected layers' edge sets, with edges
/// compared as actor pairs. Duplicate ids in the selection are ignored; fewer
/// than two distinct layers is an error. All-empty layers give 1.0.
double jaccard_similarity(const MultiplexNetwork& network, std::span<const LayerId> layers);
double jaccard_similarity(const MultiplexNetwork& network, std::initializer_list<LayerId> layers);
double jaccard_similarity_indices(const MultiplexNetwork& network,
                                  std::span<const std::size_t> layer_indices);

/// Pairwise layer similarities plus the similarity of the whole selection.
struct SimilarityMatrix {
  std::vector<LayerId> layers;
  std::vector<double> pairwise;  // row-major, layers.size()^2
  double combined = 1.0;

  double at(std::size_t i, std::size_t j) const { return pairwise[i * layers.size() + j]; }
  /// Mean similarity of layer i to every other layer.
  double mean_to_others(std::size_t i) const;
};

SimilarityMatrix similarity_matrix(const MultiplexNetwork& network,
                                   std::span<const LayerId> layers);
SimilarityMatrix similarity_matrix(const MultiplexNetwork& network);

/// xRelevance of every (actor, layer): neighbours reachable through that
/// layer and no other, divided by the actor's neighbours over all layers.
class XRelevanceTable {
 public:
  XRelevanceTable(std::size_t actors, std::size_t layers)
      : layers_(layers),
        exclusive_(actors * layers, 0),
        degree_(actors, 0),
        shared_(actors, 0) {}

  std::size_t actor_count() const noexcept { return degree_.size(); }
  std::size_t layer_count() const noexcept { return layers_; }

  double value(std::size_t actor, std::size_t layer) const;
  std::uint32_t exclusive_count(std::size_t actor, std::size_t layer) const {
    return exclusive_[actor * layers_ + layer];
  }
  std::uint32_t flatten_degree(std::size_t actor) const { return degree_[actor]; }
  /// Neighbours of `actor` present on two or more layers.
  std::uint32_t shared_count(std::size_t actor) const { return shared_[actor]; }

  /// Mean over all actors, isolated actors contributing 0.
  double layer_mean(std::size_t layer) const;

 private:
  friend XRelevanceTable x_relevance_table(const MultiplexNetwork& network);
  std::size_t layers_;
  std::vector<std::uint32_t> exclusive_;
  std::vector<std::uint32_t> degree_;
  std::vector<std::uint32_t> shared_;
};

XRelevanceTable x_relevance_table(const MultiplexNetwork& network);
double x_relevance(const MultiplexNetwork& network, const ActorId& actor, const LayerId& layer);

}  // namespace mpx
