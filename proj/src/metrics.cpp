#include "mpx/metrics.hpp"

#include <algorithm>
#include <limits>

#include "mpx/parallel.hpp"

namespace mpx {
namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

struct BfsAccumulator {
  std::uint64_t distance_sum = 0;
  std::uint64_t reached = 0;  // ordered pairs
  std::size_t eccentricity = 0;
};

class Bfs {
 public:
  explicit Bfs(std::size_t n) : distance_(n, kUnreached), queue_(n) {}

  BfsAccumulator run(const FlattenedGraph& graph, std::uint32_t source) {
    BfsAccumulator acc;
    std::size_t head = 0;
    std::size_t tail = 0;
    queue_[tail++] = source;
    distance_[source] = 0;
    while (head < tail) {
      const auto v = queue_[head++];
      const auto d = distance_[v];
      for (auto w : graph.neighbors(v)) {
        if (distance_[w] != kUnreached) continue;
        distance_[w] = d + 1;
        queue_[tail++] = w;
        acc.distance_sum += d + 1;
        acc.eccentricity = std::max<std::size_t>(acc.eccentricity, d + 1);
      }
    }
    acc.reached = tail - 1;
    for (std::size_t i = 0; i < tail; ++i) distance_[queue_[i]] = kUnreached;
    return acc;
  }

  /// Component labels via repeated traversal; returns the label per node.
  std::vector<std::uint32_t> components(const FlattenedGraph& graph) {
    const auto n = graph.node_count();
    std::vector<std::uint32_t> label(n, kUnreached);
    std::uint32_t next = 0;
    for (std::uint32_t s = 0; s < n; ++s) {
      if (label[s] != kUnreached) continue;
      std::size_t head = 0;
      std::size_t tail = 0;
      queue_[tail++] = s;
      label[s] = next;
      while (head < tail) {
        for (auto w : graph.neighbors(queue_[head++])) {
          if (label[w] == kUnreached) {
            label[w] = next;
            queue_[tail++] = w;
          }
        }
      }
      ++next;
    }
    return label;
  }

 private:
  std::vector<std::uint32_t> distance_;
  std::vector<std::uint32_t> queue_;
};

// Nodes of the largest component; ties go to the component holding the
// smallest node index.
std::vector<std::uint32_t> largest_component(const FlattenedGraph& graph) {
  Bfs bfs(graph.node_count());
  const auto label = bfs.components(graph);
  std::vector<std::size_t> size;
  for (auto l : label) {
    if (l >= size.size()) size.resize(l + 1, 0);
    ++size[l];
  }
  std::uint32_t best = 0;
  for (std::uint32_t l = 1; l < size.size(); ++l) {
    if (size[l] > size[best]) best = l;
  }
  std::vector<std::uint32_t> nodes;
  for (std::uint32_t v = 0; v < label.size(); ++v) {
    if (label[v] == best) nodes.push_back(v);
  }
  return nodes;
}

std::vector<std::size_t> distinct_layer_indices(const MultiplexNetwork& network,
                                                std::span<const LayerId> layers) {
  std::vector<std::size_t> indices;
  for (const auto& id : layers) indices.push_back(network.layer_index(id));
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  return indices;
}

}  // namespace

PathStatistics path_statistics(const FlattenedGraph& graph, PathSemantics semantics,
                               unsigned threads) {
  const auto n = graph.node_count();
  PathStatistics stats;
  if (n == 0) return stats;

  std::vector<std::uint32_t> sources;
  if (semantics == PathSemantics::kLargestComponent) {
    sources = largest_component(graph);
  } else {
    sources.resize(n);
    for (std::uint32_t v = 0; v < n; ++v) sources[v] = v;
  }

  const unsigned workers = std::max(1u, threads);
  std::vector<Bfs> scratch;
  scratch.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) scratch.emplace_back(n);
  std::vector<BfsAccumulator> per_source(sources.size());
  parallel_for(sources.size(), workers, [&](std::size_t i, unsigned w) {
    per_source[i] = scratch[w].run(graph, sources[i]);
  });

  std::uint64_t ordered_pairs = 0;
  std::uint64_t ordered_sum = 0;
  for (const auto& acc : per_source) {
    ordered_pairs += acc.reached;
    ordered_sum += acc.distance_sum;
    stats.diameter = std::max(stats.diameter, acc.eccentricity);
  }
  stats.pair_count = ordered_pairs / 2;
  stats.distance_sum = ordered_sum / 2;
  stats.average_path_length =
      stats.pair_count == 0
          ? 0.0
          : static_cast<double>(stats.distance_sum) / static_cast<double>(stats.pair_count);

  if (semantics == PathSemantics::kLargestComponent) {
    stats.connected = sources.size() == n;
  } else {
    // Source 0 reaches everything iff the graph is connected.
    stats.connected = per_source.front().reached + 1 == n;
  }
  return stats;
}

std::size_t diameter(const FlattenedGraph& graph, PathSemantics semantics) {
  return path_statistics(graph, semantics).diameter;
}

double average_path_length(const FlattenedGraph& graph, PathSemantics semantics) {
  return path_statistics(graph, semantics).average_path_length;
}

bool is_connected(const FlattenedGraph& graph) {
  if (graph.node_count() == 0) return false;
  Bfs bfs(graph.node_count());
  return bfs.run(graph, 0).reached + 1 == graph.node_count();
}

double clustering_coefficient(const FlattenedGraph& graph, ClusteringMode mode) {
  const auto n = graph.node_count();
  std::vector<char> marked(n, 0);
  double local_sum = 0.0;
  std::size_t counted = 0;
  std::uint64_t closed = 0;   // sum of per-node triangle counts
  std::uint64_t triples = 0;  // sum of C(deg, 2)

  for (std::size_t v = 0; v < n; ++v) {
    const auto nbrs = graph.neighbors(v);
    const std::uint64_t d = nbrs.size();
    if (d < 2) continue;
    for (auto w : nbrs) marked[w] = 1;
    std::uint64_t links = 0;
    for (auto w : nbrs) {
      for (auto x : graph.neighbors(w)) {
        if (x > w && marked[x]) ++links;
      }
    }
    for (auto w : nbrs) marked[w] = 0;
    const std::uint64_t possible = d * (d - 1) / 2;
    local_sum += static_cast<double>(links) / static_cast<double>(possible);
    ++counted;
    closed += links;
    triples += possible;
  }

  if (mode == ClusteringMode::kGlobalTransitivity) {
    return triples == 0 ? 0.0 : static_cast<double>(closed) / static_cast<double>(triples);
  }
  return counted == 0 ? 0.0 : local_sum / static_cast<double>(counted);
}

MetricsReport compute_metrics(const FlattenedGraph& graph, const MetricsOptions& options) {
  const auto paths = path_statistics(graph, options.paths, options.threads);
  MetricsReport report;
  report.diameter = paths.diameter;
  report.avg_path_length = paths.average_path_length;
  report.is_connected = paths.connected;
  report.clustering_coefficient = clustering_coefficient(graph, options.clustering);
  report.node_count = graph.node_count();
  report.edge_count = graph.edge_count();
  return report;
}

MetricsReport metrics_report(const MultiplexNetwork& network, std::span<const LayerId> layers,
                             const MetricsOptions& options) {
  return compute_metrics(flatten(network, layers), options);
}

// --- layer similarity -------------------------------------------------------

double jaccard_similarity_indices(const MultiplexNetwork& network,
                                  std::span<const std::size_t> layer_indices) {
  if (layer_indices.size() < 2) {
    throw MetricsError("jaccard similarity needs at least two distinct layers");
  }
  auto first = network.layer_edges(layer_indices.front());
  std::vector<IndexEdge> common(first.begin(), first.end());
  for (auto l : layer_indices.subspan(1)) {
    auto edges = network.layer_edges(l);
    std::vector<IndexEdge> next;
    std::set_intersection(common.begin(), common.end(), edges.begin(), edges.end(),
                          std::back_inserter(next));
    common = std::move(next);
  }
  const auto all = union_edges(network, layer_indices);
  if (all.empty()) return 1.0;
  return static_cast<double>(common.size()) / static_cast<double>(all.size());
}

double jaccard_similarity(const MultiplexNetwork& network, std::span<const LayerId> layers) {
  const auto indices = distinct_layer_indices(network, layers);
  return jaccard_similarity_indices(network, indices);
}

double jaccard_similarity(const MultiplexNetwork& network, std::initializer_list<LayerId> layers) {
  return jaccard_similarity(network, std::span<const LayerId>(layers.begin(), layers.size()));
}

double SimilarityMatrix::mean_to_others(std::size_t i) const {
  const auto n = layers.size();
  if (n < 2) return 0.0;
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j != i) sum += at(i, j);
  }
  return sum / static_cast<double>(n - 1);
}

SimilarityMatrix similarity_matrix(const MultiplexNetwork& network,
                                   std::span<const LayerId> layers) {
  SimilarityMatrix out;
  std::vector<std::size_t> indices;
  for (const auto& id : layers) {
    const auto idx = network.layer_index(id);
    if (std::find(indices.begin(), indices.end(), idx) != indices.end()) continue;
    indices.push_back(idx);
    out.layers.push_back(id);
  }
  const auto n = indices.size();
  out.pairwise.assign(n * n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t pair[2] = {indices[i], indices[j]};
      const double s = jaccard_similarity_indices(network, pair);
      out.pairwise[i * n + j] = s;
      out.pairwise[j * n + i] = s;
    }
  }
  out.combined = n >= 2 ? jaccard_similarity_indices(network, indices) : 1.0;
  return out;
}

SimilarityMatrix similarity_matrix(const MultiplexNetwork& network) {
  return similarity_matrix(network, network.layers());
}

// --- xRelevance -------------------------------------------------------------

double XRelevanceTable::value(std::size_t actor, std::size_t layer) const {
  const auto degree = degree_.at(actor);
  if (degree == 0) return 0.0;
  return static_cast<double>(exclusive_count(actor, layer)) / static_cast<double>(degree);
}

double XRelevanceTable::layer_mean(std::size_t layer) const {
  if (degree_.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t a = 0; a < degree_.size(); ++a) sum += value(a, layer);
  return sum / static_cast<double>(degree_.size());
}

XRelevanceTable x_relevance_table(const MultiplexNetwork& network) {
  const auto n = network.actor_count();
  const auto layers = network.layer_count();
  XRelevanceTable table(n, layers);

  // Per-actor incidence list of (neighbour, layer), bucketed by actor.
  std::vector<std::size_t> offsets(n + 1, 0);
  for (std::size_t l = 0; l < layers; ++l) {
    for (const auto& e : network.layer_edges(l)) {
      ++offsets[e.u + 1];
      ++offsets[e.v + 1];
    }
  }
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  std::vector<std::pair<std::uint32_t, std::uint32_t>> incidence(offsets[n]);
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (std::uint32_t l = 0; l < layers; ++l) {
    for (const auto& e : network.layer_edges(l)) {
      incidence[cursor[e.u]++] = {e.v, l};
      incidence[cursor[e.v]++] = {e.u, l};
    }
  }

  for (std::size_t a = 0; a < n; ++a) {
    auto begin = incidence.begin() + static_cast<std::ptrdiff_t>(offsets[a]);
    auto end = incidence.begin() + static_cast<std::ptrdiff_t>(offsets[a + 1]);
    std::sort(begin, end);
    for (auto it = begin; it != end;) {
      auto group_end = std::find_if(it, end, [&](const auto& p) { return p.first != it->first; });
      ++table.degree_[a];
      // Each layer appears at most once per neighbour: layers are simple.
      if (group_end - it == 1) {
        ++table.exclusive_[a * layers + it->second];
      } else {
        ++table.shared_[a];
      }
      it = group_end;
    }
  }
  return table;
}

double x_relevance(const MultiplexNetwork& network, const ActorId& actor, const LayerId& layer) {
  const auto a = static_cast<std::uint32_t>(network.actor_index(actor));
  const auto target = network.layer_index(layer);
  std::vector<std::pair<std::uint32_t, std::size_t>> incident;
  for (std::size_t l = 0; l < network.layer_count(); ++l) {
    for (const auto& e : network.layer_edges(l)) {
      if (e.u == a) incident.emplace_back(e.v, l);
      if (e.v == a) incident.emplace_back(e.u, l);
    }
  }
  std::sort(incident.begin(), incident.end());
  std::size_t degree = 0;
  std::size_t exclusive = 0;
  for (auto it = incident.begin(); it != incident.end();) {
    auto group_end =
        std::find_if(it, incident.end(), [&](const auto& p) { return p.first != it->first; });
    ++degree;
    if (group_end - it == 1 && it->second == target) ++exclusive;
    it = group_end;
  }
  return degree == 0 ? 0.0 : static_cast<double>(exclusive) / static_cast<double>(degree);
}

}  // namespace mpx
