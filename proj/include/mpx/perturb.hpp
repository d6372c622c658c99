#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "mpx/error.hpp"
#include "mpx/graph.hpp"

namespace mpx {

class PerturbError : public Error {
 public:
  explicit PerturbError(const std::string& message) : Error("perturb", message) {}
};

/// Missing-data mechanisms.
///
///  - edge-removal: uniform edge loss on chosen layers (survey non-response,
///    possibly layer dependent)
///  - node-removal: uniform actor loss across all layers (horizontal
///    boundary when applied to a chosen actor subset, see remove_actors)
///  - layer-removal: a whole relation type is not collected (vertical
///    boundary)
///  - degree-censor: actors excluded by degree thresholds on several layers
///  - identity-split: the cross-layer identity of actors is lost
enum class Mechanism { kEdgeRemoval, kNodeRemoval, kLayerRemoval, kDegreeCensor, kIdentitySplit };

std::string_view mechanism_name(Mechanism mechanism) noexcept;
/// Accepts the names returned by mechanism_name(). Throws PerturbError.
Mechanism parse_mechanism(std::string_view name);

struct PerturbationSpec {
  Mechanism mechanism = Mechanism::kEdgeRemoval;
  std::vector<LayerId> target_layers;  ///< empty means every layer
  double fraction = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::pair<LayerId, std::size_t>> censor_thresholds;

  /// Throws PerturbError unless fraction is in [0, 1].
  void validate() const;
};

struct RemovedEdge {
  Edge edge;
  LayerId layer;

  friend bool operator==(const RemovedEdge&, const RemovedEdge&) = default;
};

struct SplitActor {
  ActorId original;
  /// One fresh actor per layer the original had edges on, in layer order.
  /// Empty when the actor had no edges and was left untouched.
  std::vector<std::pair<LayerId, ActorId>> replacements;

  friend bool operator==(const SplitActor&, const SplitActor&) = default;
};

struct RemovedLayer {
  LayerId layer;
  std::size_t position;  ///< index in the original layer list

  friend bool operator==(const RemovedLayer&, const RemovedLayer&) = default;
};

/// Everything a perturbation took away, enough to undo it with restore().
struct PerturbationRecord {
  PerturbationSpec spec;
  std::vector<RemovedEdge> removed_edges;
  std::vector<ActorId> removed_actors;
  std::vector<SplitActor> split_actors;
  std::vector<RemovedLayer> removed_layers;

  bool empty() const noexcept {
    return removed_edges.empty() && removed_actors.empty() && split_actors.empty() &&
           removed_layers.empty();
  }
};

struct Perturbed {
  MultiplexNetwork network;
  PerturbationRecord record;
};

/// Number of items removed for a fraction of `total`: round(fraction * total),
/// halves rounded up.
std::size_t removal_count(double fraction, std::size_t total);

/// First `k` positions of a Fisher-Yates shuffle of [0, m) driven by
/// Rng(seed). Prefixes are stable in k: the first j entries do not depend on
/// k >= j.
std::vector<std::size_t> sample_prefix(std::size_t m, std::size_t k, std::uint64_t seed);

/// Stream id used with mix_seed() for actor-level sampling. Layer-level
/// sampling uses the layer's index as stream.
inline constexpr std::uint64_t kActorStream = 0x6163746f72ULL;

/// Removes round(fraction * m) edges uniformly from each target layer (all
/// layers when `layers` is empty). The sample for layer i is the prefix of a
/// permutation seeded with mix_seed(seed, i), so larger fractions remove
/// supersets of smaller ones.
Perturbed remove_edges_random(const MultiplexNetwork& network, std::span<const LayerId> layers,
                              double fraction, std::uint64_t seed);

/// Removes edges of one layer given their positions in its canonical list.
MultiplexNetwork without_layer_edges(const MultiplexNetwork& network, std::size_t layer,
                                     std::span<const std::size_t> positions);

/// Removes round(fraction * |actors|) actors and all their edges.
Perturbed remove_nodes_random(const MultiplexNetwork& network, double fraction,
                              std::uint64_t seed);

/// Removes the given actors and all their edges (boundary truncation).
Perturbed remove_actors(const MultiplexNetwork& network, std::span<const ActorId> actors);

/// Removes a layer, recording it and its edges.
Perturbed remove_layer_recorded(const MultiplexNetwork& network, const LayerId& layer);

/// Removes every actor whose degree is below the threshold on every
/// thresholded layer. Degrees come from the input network (no cascade). An
/// empty threshold list removes nothing.
Perturbed censor_by_degree(const MultiplexNetwork& network,
                           std::span<const std::pair<LayerId, std::size_t>> thresholds);

/// Splits round(fraction * |actors|) sampled actors into one fresh actor per
/// layer they have edges on, named `actor@layer`. Needs two or more layers.
Perturbed split_identities(const MultiplexNetwork& network, double fraction, std::uint64_t seed);

/// Dispatches on spec.mechanism. Layer removal takes the single target layer.
Perturbed apply_perturbation(const MultiplexNetwork& network, const PerturbationSpec& spec);

/// Re-inserts everything `record` lists into `perturbed`, reproducing the
/// network the perturbation started from.
MultiplexNetwork restore(const MultiplexNetwork& perturbed, const PerturbationRecord& record);

}  // namespace mpx
