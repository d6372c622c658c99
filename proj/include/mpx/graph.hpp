#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mpx/error.hpp"

namespace mpx {

/// True when `text` can be used as an actor or layer label: nonempty, and
/// free of whitespace, commas and `#` (the `.mpx` field separator and
/// comment marker).
bool is_valid_label(std::string_view text) noexcept;

/// Opaque, case-sensitive string label. The tag keeps actor and layer ids
/// from being mixed up.
template <typename Tag>
class Label {
 public:
  Label() = default;

  explicit Label(std::string value) : value_(std::move(value)) {
    if (!is_valid_label(value_)) {
      throw GraphError("invalid label '" + value_ + "'");
    }
  }

  const std::string& str() const noexcept { return value_; }

  friend auto operator<=>(const Label&, const Label&) = default;
  friend bool operator==(const Label&, const Label&) = default;

 private:
  std::string value_;
};

using ActorId = Label<struct ActorTag>;
using LayerId = Label<struct LayerTag>;

/// Undirected edge between two distinct actors, stored with `u < v`.
struct Edge {
  ActorId u;
  ActorId v;

  Edge(ActorId a, ActorId b);

  friend auto operator<=>(const Edge&, const Edge&) = default;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Edge over dense actor indices, `u < v`. Actor indices follow the sorted
/// label order, so sorting these pairs gives the lexicographic edge order.
struct IndexEdge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;

  friend auto operator<=>(const IndexEdge&, const IndexEdge&) = default;
  friend bool operator==(const IndexEdge&, const IndexEdge&) = default;
};

/// Builds an IndexEdge from two distinct indices in either order.
inline IndexEdge make_index_edge(std::uint32_t a, std::uint32_t b) noexcept {
  return a < b ? IndexEdge{a, b} : IndexEdge{b, a};
}

/// Node-aligned multiplex network: one global actor set shared by every
/// layer, and one simple undirected edge set per layer.
///
/// Actors are kept sorted by label and addressed by their position in that
/// order. Layers keep insertion order. Each layer's edges are sorted and
/// duplicate free. Instances are immutable; every transformation returns a
/// new network.
class MultiplexNetwork {
 public:
  MultiplexNetwork() = default;

  /// Assembles a network from already-canonical parts. Throws GraphError if
  /// actors are not strictly sorted, layers repeat, or any layer's edge list
  /// is unsorted, duplicated, a self-loop, or out of range.
  static MultiplexNetwork from_parts(std::vector<ActorId> actors, std::vector<LayerId> layers,
                                     std::vector<std::vector<IndexEdge>> layer_edges);

  std::span<const ActorId> actors() const noexcept { return actors_; }
  std::span<const LayerId> layers() const noexcept { return layers_; }
  std::size_t actor_count() const noexcept { return actors_.size(); }
  std::size_t layer_count() const noexcept { return layers_.size(); }

  const ActorId& actor(std::size_t index) const { return actors_.at(index); }
  const LayerId& layer(std::size_t index) const { return layers_.at(index); }

  std::optional<std::size_t> find_actor(const ActorId& id) const noexcept;
  std::optional<std::size_t> find_layer(const LayerId& id) const noexcept;

  /// Like find_*, but throws GraphError naming the unknown id.
  std::size_t actor_index(const ActorId& id) const;
  std::size_t layer_index(const LayerId& id) const;

  std::span<const IndexEdge> layer_edges(std::size_t layer) const { return edges_.at(layer); }
  std::span<const IndexEdge> layer_edges(const LayerId& id) const {
    return edges_[layer_index(id)];
  }

  /// Edges of one layer as label pairs, in canonical order.
  std::vector<Edge> edges(const LayerId& id) const;

  bool has_edge(std::size_t layer, IndexEdge edge) const;

  /// Sum of per-layer edge counts (a pair on two layers counts twice).
  std::size_t total_edge_count() const noexcept;

  friend bool operator==(const MultiplexNetwork&, const MultiplexNetwork&) = default;

 private:
  std::vector<ActorId> actors_;
  std::vector<LayerId> layers_;
  std::vector<std::vector<IndexEdge>> edges_;
};

/// Incremental, label-based construction of a MultiplexNetwork.
///
/// Edges may arrive in any order and orientation. Self-loops are dropped and
/// counted when added; duplicate edges within a layer are collapsed and
/// counted by build().
class NetworkBuilder {
 public:
  /// Declares a layer. Re-declaring an existing layer is a no-op.
  NetworkBuilder& add_layer(const LayerId& layer);
  NetworkBuilder& add_actor(const ActorId& actor);

  /// Adds an edge, declaring unseen actors and layers. Returns false when the
  /// edge was a self-loop and therefore dropped.
  bool add_edge(const ActorId& a, const ActorId& b, const LayerId& layer);

  bool has_layer(const LayerId& layer) const noexcept;
  bool has_actor(const ActorId& actor) const noexcept;

  std::size_t self_loops_dropped() const noexcept { return self_loops_; }
  /// Valid after build().
  std::size_t duplicates_dropped() const noexcept { return duplicates_; }

  MultiplexNetwork build();

 private:
  std::vector<LayerId> layers_;
  std::vector<ActorId> actors_;  // insertion order
  std::unordered_map<std::string, std::size_t> layer_slots_;
  std::unordered_map<std::string, std::size_t> actor_slots_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pending_;  // per layer
  std::size_t self_loops_ = 0;
  std::size_t duplicates_ = 0;

  std::size_t actor_slot(const ActorId& actor);
  std::size_t layer_slot(const LayerId& layer);
};

/// Simple undirected graph with a compressed adjacency structure.
class FlattenedGraph {
 public:
  FlattenedGraph() = default;

  /// `nodes` must be strictly sorted. Edges are canonicalized: self-loops and
  /// duplicates are dropped and the list sorted.
  FlattenedGraph(std::vector<ActorId> nodes, std::vector<IndexEdge> edges);

  /// Graph over `n` nodes labelled by zero-padded decimal indices.
  static FlattenedGraph unlabeled(std::size_t n, std::vector<IndexEdge> edges);

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const ActorId> nodes() const noexcept { return nodes_; }
  std::span<const IndexEdge> edges() const noexcept { return edges_; }

  std::span<const std::uint32_t> neighbors(std::size_t node) const noexcept {
    return {adjacency_.data() + offsets_[node], adjacency_.data() + offsets_[node + 1]};
  }
  std::size_t degree(std::size_t node) const noexcept {
    return offsets_[node + 1] - offsets_[node];
  }

  friend bool operator==(const FlattenedGraph& a, const FlattenedGraph& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<ActorId> nodes_;
  std::vector<IndexEdge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::uint32_t> adjacency_;
};

/// Zero-padded decimal labels "0".."n-1" whose lexicographic order matches
/// numeric order.
std::vector<ActorId> numbered_actors(std::size_t n, std::string_view prefix = "n");

/// Union of the selected layers' edge sets over the full actor set. Throws
/// GraphError on an empty selection or unknown layer.
FlattenedGraph flatten(const MultiplexNetwork& network, std::span<const LayerId> layers);
FlattenedGraph flatten(const MultiplexNetwork& network, std::initializer_list<LayerId> layers);
/// Flatten over all layers.
FlattenedGraph flatten(const MultiplexNetwork& network);
/// Sorted, deduplicated union of the given layer indices' edge lists.
std::vector<IndexEdge> union_edges(const MultiplexNetwork& network,
                                   std::span<const std::size_t> layer_indices);

/// Actors adjacent to `actor` on `layer`, sorted.
std::vector<ActorId> neighbors(const MultiplexNetwork& network, const ActorId& actor,
                               const LayerId& layer);

/// Drops one layer and its edges. The actor set is unchanged. Removing the
/// last remaining layer is an error.
MultiplexNetwork remove_layer(const MultiplexNetwork& network, const LayerId& layer);

/// Appends an edgeless layer. Throws if the id already exists.
MultiplexNetwork add_empty_layer(const MultiplexNetwork& network, const LayerId& layer);

}  // namespace mpx
