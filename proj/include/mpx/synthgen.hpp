#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mpx/error.hpp"
#include "mpx/graph.hpp"

namespace mpx {

class SynthError : public Error {
 public:
  explicit SynthError(const std::string& message) : Error("synthgen", message) {}
};

/// The requested similarity cannot be met within tolerance.
class InfeasibleSimilarity : public SynthError {
 public:
  InfeasibleSimilarity(double target, double best)
      : SynthError("similarity " + std::to_string(target) +
                   " infeasible; best achievable is " + std::to_string(best)),
        best_(best) {}

  double best_similarity() const noexcept { return best_; }

 private:
  double best_;
};

struct SynthSpec {
  std::size_t n = 1000;
  std::size_t m = 3;
  double target_similarity = 0.0;
  std::uint64_t seed = 0;
  double tolerance = 0.02;

  void validate() const;
};

/// Barabasi-Albert edge list: an m-clique core, then every new node links to
/// m distinct existing nodes chosen with probability proportional to their
/// current degree. Returns C(m,2) + (n-m)*m edges, sorted.
std::vector<IndexEdge> ba_edges(std::size_t n, std::size_t m, std::uint64_t seed);
FlattenedGraph generate_ba(std::size_t n, std::size_t m, std::uint64_t seed);

/// Shared-edge count k that makes two layers of `edges` edges each reach
/// Jaccard similarity k / (2*edges - k) = s, rounded half up.
std::size_t shared_edge_count(std::size_t edges, double similarity);

/// Two-layer network (L0, L1) over n actors. L0 is a BA graph; L1 copies k of
/// its edges and adds edges-k fresh ones drawn by preferential attachment on
/// L0's degrees, none of which exist in L0. Both layers have the same size.
MultiplexNetwork generate_multiplex_with_similarity(const SynthSpec& spec);

struct SyntheticMultiplex {
  double target_similarity;
  MultiplexNetwork network;
};

/// Eleven networks with targets 0.0, 0.1, ..., 1.0; network i is seeded with
/// mix_seed(base_seed, i).
std::vector<SyntheticMultiplex> generate_similarity_sweep(std::size_t n, std::size_t m,
                                                          std::uint64_t base_seed,
                                                          double tolerance = 0.02);

}  // namespace mpx
