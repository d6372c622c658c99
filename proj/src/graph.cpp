#include "mpx/graph.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace mpx {

bool is_valid_label(std::string_view text) noexcept {
  if (text.empty()) return false;
  return std::none_of(text.begin(), text.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '#';
  });
}

Edge::Edge(ActorId a, ActorId b) {
  if (a == b) throw GraphError("self-loop on actor '" + a.str() + "'");
  if (b < a) std::swap(a, b);
  u = std::move(a);
  v = std::move(b);
}

// --- MultiplexNetwork -------------------------------------------------------

MultiplexNetwork MultiplexNetwork::from_parts(std::vector<ActorId> actors,
                                              std::vector<LayerId> layers,
                                              std::vector<std::vector<IndexEdge>> layer_edges) {
  for (std::size_t i = 1; i < actors.size(); ++i) {
    if (!(actors[i - 1] < actors[i])) {
      throw GraphError("actor list not strictly sorted at '" + actors[i].str() + "'");
    }
  }
  {
    std::vector<LayerId> sorted = layers;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) throw GraphError("duplicate layer '" + dup->str() + "'");
  }
  if (layer_edges.size() != layers.size()) {
    throw GraphError("edge lists do not match layer count");
  }
  const auto n = actors.size();
  for (std::size_t l = 0; l < layer_edges.size(); ++l) {
    const auto& edges = layer_edges[l];
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const auto& e = edges[i];
      if (e.u >= e.v || e.v >= n) {
        throw GraphError("malformed edge on layer '" + layers[l].str() + "'");
      }
      if (i > 0 && !(edges[i - 1] < e)) {
        throw GraphError("edges of layer '" + layers[l].str() + "' not canonical");
      }
    }
  }
  MultiplexNetwork net;
  net.actors_ = std::move(actors);
  net.layers_ = std::move(layers);
  net.edges_ = std::move(layer_edges);
  return net;
}

std::optional<std::size_t> MultiplexNetwork::find_actor(const ActorId& id) const noexcept {
  auto it = std::lower_bound(actors_.begin(), actors_.end(), id);
  if (it == actors_.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - actors_.begin());
}

std::optional<std::size_t> MultiplexNetwork::find_layer(const LayerId& id) const noexcept {
  auto it = std::find(layers_.begin(), layers_.end(), id);
  if (it == layers_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - layers_.begin());
}

std::size_t MultiplexNetwork::actor_index(const ActorId& id) const {
  if (auto i = find_actor(id)) return *i;
  throw GraphError("unknown actor '" + id.str() + "'");
}

std::size_t MultiplexNetwork::layer_index(const LayerId& id) const {
  if (auto i = find_layer(id)) return *i;
  throw GraphError("unknown layer '" + id.str() + "'");
}

std::vector<Edge> MultiplexNetwork::edges(const LayerId& id) const {
  std::vector<Edge> out;
  for (const auto& e : layer_edges(id)) out.emplace_back(actors_[e.u], actors_[e.v]);
  return out;
}

bool MultiplexNetwork::has_edge(std::size_t layer, IndexEdge edge) const {
  const auto& edges = edges_.at(layer);
  return std::binary_search(edges.begin(), edges.end(), edge);
}

std::size_t MultiplexNetwork::total_edge_count() const noexcept {
  std::size_t total = 0;
  for (const auto& e : edges_) total += e.size();
  return total;
}

// --- NetworkBuilder ---------------------------------------------------------

std::size_t NetworkBuilder::layer_slot(const LayerId& layer) {
  auto [it, inserted] = layer_slots_.try_emplace(layer.str(), layers_.size());
  if (inserted) {
    layers_.push_back(layer);
    pending_.emplace_back();
  }
  return it->second;
}

std::size_t NetworkBuilder::actor_slot(const ActorId& actor) {
  auto [it, inserted] = actor_slots_.try_emplace(actor.str(), actors_.size());
  if (inserted) actors_.push_back(actor);
  return it->second;
}

NetworkBuilder& NetworkBuilder::add_layer(const LayerId& layer) {
  layer_slot(layer);
  return *this;
}

NetworkBuilder& NetworkBuilder::add_actor(const ActorId& actor) {
  actor_slot(actor);
  return *this;
}

bool NetworkBuilder::add_edge(const ActorId& a, const ActorId& b, const LayerId& layer) {
  const auto l = layer_slot(layer);
  const auto sa = actor_slot(a);
  const auto sb = actor_slot(b);
  if (sa == sb) {
    ++self_loops_;
    return false;
  }
  pending_[l].emplace_back(sa, sb);
  return true;
}

bool NetworkBuilder::has_layer(const LayerId& layer) const noexcept {
  return layer_slots_.contains(layer.str());
}

bool NetworkBuilder::has_actor(const ActorId& actor) const noexcept {
  return actor_slots_.contains(actor.str());
}

MultiplexNetwork NetworkBuilder::build() {
  std::vector<std::size_t> order(actors_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return actors_[x] < actors_[y]; });
  std::vector<std::uint32_t> rank(actors_.size());
  std::vector<ActorId> sorted;
  sorted.reserve(actors_.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    rank[order[r]] = static_cast<std::uint32_t>(r);
    sorted.push_back(actors_[order[r]]);
  }

  duplicates_ = 0;
  std::vector<std::vector<IndexEdge>> edges(layers_.size());
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    auto& out = edges[l];
    out.reserve(pending_[l].size());
    for (auto [a, b] : pending_[l]) out.push_back(make_index_edge(rank[a], rank[b]));
    std::sort(out.begin(), out.end());
    const auto before = out.size();
    out.erase(std::unique(out.begin(), out.end()), out.end());
    duplicates_ += before - out.size();
  }
  return MultiplexNetwork::from_parts(std::move(sorted), layers_, std::move(edges));
}

// --- FlattenedGraph ---------------------------------------------------------

FlattenedGraph::FlattenedGraph(std::vector<ActorId> nodes, std::vector<IndexEdge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (!(nodes_[i - 1] < nodes_[i])) throw GraphError("node list not strictly sorted");
  }
  const auto n = nodes_.size();
  for (auto& e : edges_) {
    if (e.u >= n || e.v >= n) throw GraphError("edge endpoint out of range");
    e = make_index_edge(e.u, e.v);
  }
  std::erase_if(edges_, [](const IndexEdge& e) { return e.u == e.v; });
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  offsets_.assign(n + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  adjacency_.resize(2 * edges_.size());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  // Lower neighbours first, then higher ones: with sorted edges every row
  // comes out sorted.
  for (const auto& e : edges_) adjacency_[cursor[e.v]++] = e.u;
  for (const auto& e : edges_) adjacency_[cursor[e.u]++] = e.v;
}

FlattenedGraph FlattenedGraph::unlabeled(std::size_t n, std::vector<IndexEdge> edges) {
  return FlattenedGraph(numbered_actors(n), std::move(edges));
}

std::vector<ActorId> numbered_actors(std::size_t n, std::string_view prefix) {
  std::size_t width = 1;
  for (std::size_t x = n > 0 ? n - 1 : 0; x >= 10; x /= 10) ++width;
  std::vector<ActorId> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string digits = std::to_string(i);
    out.emplace_back(std::string(prefix) + std::string(width - digits.size(), '0') + digits);
  }
  return out;
}

// --- operations -------------------------------------------------------------

std::vector<IndexEdge> union_edges(const MultiplexNetwork& network,
                                   std::span<const std::size_t> layer_indices) {
  std::vector<IndexEdge> out;
  for (auto l : layer_indices) {
    auto edges = network.layer_edges(l);
    if (out.empty()) {
      out.assign(edges.begin(), edges.end());
      continue;
    }
    std::vector<IndexEdge> merged;
    merged.reserve(out.size() + edges.size());
    std::set_union(out.begin(), out.end(), edges.begin(), edges.end(), std::back_inserter(merged));
    out = std::move(merged);
  }
  return out;
}

FlattenedGraph flatten(const MultiplexNetwork& network, std::span<const LayerId> layers) {
  if (layers.empty()) throw GraphError("flatten needs at least one layer");
  std::vector<std::size_t> indices;
  for (const auto& id : layers) indices.push_back(network.layer_index(id));
  auto actors = network.actors();
  return FlattenedGraph({actors.begin(), actors.end()}, union_edges(network, indices));
}

FlattenedGraph flatten(const MultiplexNetwork& network, std::initializer_list<LayerId> layers) {
  return flatten(network, std::span<const LayerId>(layers.begin(), layers.size()));
}

FlattenedGraph flatten(const MultiplexNetwork& network) {
  return flatten(network, network.layers());
}

std::vector<ActorId> neighbors(const MultiplexNetwork& network, const ActorId& actor,
                               const LayerId& layer) {
  const auto a = static_cast<std::uint32_t>(network.actor_index(actor));
  std::vector<ActorId> out;
  for (const auto& e : network.layer_edges(layer)) {
    if (e.u == a) out.push_back(network.actor(e.v));
    if (e.v == a) out.push_back(network.actor(e.u));
  }
  std::sort(out.begin(), out.end());
  return out;
}

MultiplexNetwork remove_layer(const MultiplexNetwork& network, const LayerId& layer) {
  const auto idx = network.layer_index(layer);
  if (network.layer_count() < 2) {
    throw GraphError("cannot remove '" + layer.str() + "': it is the last layer");
  }
  std::vector<LayerId> layers;
  std::vector<std::vector<IndexEdge>> edges;
  for (std::size_t l = 0; l < network.layer_count(); ++l) {
    if (l == idx) continue;
    layers.push_back(network.layer(l));
    auto e = network.layer_edges(l);
    edges.emplace_back(e.begin(), e.end());
  }
  auto actors = network.actors();
  return MultiplexNetwork::from_parts({actors.begin(), actors.end()}, std::move(layers),
                                      std::move(edges));
}

MultiplexNetwork add_empty_layer(const MultiplexNetwork& network, const LayerId& layer) {
  if (network.find_layer(layer)) throw GraphError("layer '" + layer.str() + "' already exists");
  std::vector<LayerId> layers(network.layers().begin(), network.layers().end());
  std::vector<std::vector<IndexEdge>> edges;
  for (std::size_t l = 0; l < network.layer_count(); ++l) {
    auto e = network.layer_edges(l);
    edges.emplace_back(e.begin(), e.end());
  }
  layers.push_back(layer);
  edges.emplace_back();
  auto actors = network.actors();
  return MultiplexNetwork::from_parts({actors.begin(), actors.end()}, std::move(layers),
                                      std::move(edges));
}

}  // namespace mpx
