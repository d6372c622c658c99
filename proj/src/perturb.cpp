#include "mpx/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <set>

#include "mpx/random.hpp"

namespace mpx {
namespace {

std::vector<LayerId> copy_layers(const MultiplexNetwork& network) {
  return {network.layers().begin(), network.layers().end()};
}

std::vector<std::vector<IndexEdge>> copy_edges(const MultiplexNetwork& network) {
  std::vector<std::vector<IndexEdge>> out;
  for (std::size_t l = 0; l < network.layer_count(); ++l) {
    auto e = network.layer_edges(l);
    out.emplace_back(e.begin(), e.end());
  }
  return out;
}

void check_fraction(double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw PerturbError("fraction must lie in [0, 1], got " + std::to_string(fraction));
  }
}

// Drops actors flagged in `drop`, logging their edges. Index order is
// preserved, so filtered edge lists stay sorted.
Perturbed drop_actors(const MultiplexNetwork& network, const std::vector<char>& drop,
                      PerturbationSpec spec) {
  Perturbed out;
  out.record.spec = std::move(spec);
  std::vector<std::uint32_t> remap(network.actor_count(), 0);
  std::vector<ActorId> actors;
  for (std::size_t a = 0; a < network.actor_count(); ++a) {
    if (drop[a]) {
      out.record.removed_actors.push_back(network.actor(a));
    } else {
      remap[a] = static_cast<std::uint32_t>(actors.size());
      actors.push_back(network.actor(a));
    }
  }
  std::vector<std::vector<IndexEdge>> edges(network.layer_count());
  for (std::size_t l = 0; l < network.layer_count(); ++l) {
    for (const auto& e : network.layer_edges(l)) {
      if (drop[e.u] || drop[e.v]) {
        out.record.removed_edges.push_back(
            {Edge(network.actor(e.u), network.actor(e.v)), network.layer(l)});
      } else {
        edges[l].push_back({remap[e.u], remap[e.v]});
      }
    }
  }
  out.network = MultiplexNetwork::from_parts(std::move(actors), copy_layers(network),
                                             std::move(edges));
  return out;
}

}  // namespace

std::string_view mechanism_name(Mechanism mechanism) noexcept {
  switch (mechanism) {
    case Mechanism::kEdgeRemoval: return "edge-removal";
    case Mechanism::kNodeRemoval: return "node-removal";
    case Mechanism::kLayerRemoval: return "layer-removal";
    case Mechanism::kDegreeCensor: return "degree-censor";
    case Mechanism::kIdentitySplit: return "identity-split";
  }
  return "unknown";
}

Mechanism parse_mechanism(std::string_view name) {
  for (auto m : {Mechanism::kEdgeRemoval, Mechanism::kNodeRemoval, Mechanism::kLayerRemoval,
                 Mechanism::kDegreeCensor, Mechanism::kIdentitySplit}) {
    if (mechanism_name(m) == name) return m;
  }
  throw PerturbError("unknown mechanism '" + std::string(name) + "'");
}

void PerturbationSpec::validate() const { check_fraction(fraction); }

std::size_t removal_count(double fraction, std::size_t total) {
  check_fraction(fraction);
  // The epsilon absorbs binary representation error of decimal fractions
  // such as 0.35 * 10, which must round half up to 4.
  const double scaled = fraction * static_cast<double>(total);
  const auto k = static_cast<std::size_t>(std::floor(scaled + 0.5 + 1e-9));
  return std::min(k, total);
}

std::vector<std::size_t> sample_prefix(std::size_t m, std::size_t k, std::uint64_t seed) {
  k = std::min(k, m);
  std::vector<std::size_t> items(m);
  std::iota(items.begin(), items.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(m - i));
    std::swap(items[i], items[j]);
  }
  items.resize(k);
  return items;
}

MultiplexNetwork without_layer_edges(const MultiplexNetwork& network, std::size_t layer,
                                     std::span<const std::size_t> positions) {
  auto edges = copy_edges(network);
  auto& target = edges.at(layer);
  std::vector<char> drop(target.size(), 0);
  for (auto p : positions) drop.at(p) = 1;
  std::vector<IndexEdge> kept;
  kept.reserve(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (!drop[i]) kept.push_back(target[i]);
  }
  target = std::move(kept);
  auto actors = network.actors();
  return MultiplexNetwork::from_parts({actors.begin(), actors.end()}, copy_layers(network),
                                      std::move(edges));
}

Perturbed remove_edges_random(const MultiplexNetwork& network, std::span<const LayerId> layers,
                              double fraction, std::uint64_t seed) {
  check_fraction(fraction);
  std::vector<std::size_t> targets;
  if (layers.empty()) {
    targets.resize(network.layer_count());
    std::iota(targets.begin(), targets.end(), std::size_t{0});
  } else {
    for (const auto& id : layers) targets.push_back(network.layer_index(id));
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  }

  Perturbed out;
  out.record.spec.mechanism = Mechanism::kEdgeRemoval;
  out.record.spec.target_layers.assign(layers.begin(), layers.end());
  out.record.spec.fraction = fraction;
  out.record.spec.seed = seed;

  auto edges = copy_edges(network);
  for (auto l : targets) {
    auto& list = edges[l];
    const auto k = removal_count(fraction, list.size());
    const auto picked = sample_prefix(list.size(), k, mix_seed(seed, l));
    std::vector<char> drop(list.size(), 0);
    for (auto p : picked) {
      drop[p] = 1;
      out.record.removed_edges.push_back(
          {Edge(network.actor(list[p].u), network.actor(list[p].v)), network.layer(l)});
    }
    std::vector<IndexEdge> kept;
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (!drop[i]) kept.push_back(list[i]);
    }
    list = std::move(kept);
  }
  auto actors = network.actors();
  out.network = MultiplexNetwork::from_parts({actors.begin(), actors.end()}, copy_layers(network),
                                             std::move(edges));
  return out;
}

Perturbed remove_nodes_random(const MultiplexNetwork& network, double fraction,
                              std::uint64_t seed) {
  const auto n = network.actor_count();
  const auto k = removal_count(fraction, n);
  std::vector<char> drop(n, 0);
  for (auto p : sample_prefix(n, k, mix_seed(seed, kActorStream))) drop[p] = 1;
  PerturbationSpec spec;
  spec.mechanism = Mechanism::kNodeRemoval;
  spec.fraction = fraction;
  spec.seed = seed;
  return drop_actors(network, drop, std::move(spec));
}

Perturbed remove_actors(const MultiplexNetwork& network, std::span<const ActorId> actors) {
  std::vector<char> drop(network.actor_count(), 0);
  for (const auto& a : actors) drop[network.actor_index(a)] = 1;
  PerturbationSpec spec;
  spec.mechanism = Mechanism::kNodeRemoval;
  return drop_actors(network, drop, std::move(spec));
}

Perturbed remove_layer_recorded(const MultiplexNetwork& network, const LayerId& layer) {
  const auto idx = network.layer_index(layer);
  Perturbed out;
  out.record.spec.mechanism = Mechanism::kLayerRemoval;
  out.record.spec.target_layers = {layer};
  out.record.removed_layers.push_back({layer, idx});
  for (const auto& e : network.layer_edges(idx)) {
    out.record.removed_edges.push_back({Edge(network.actor(e.u), network.actor(e.v)), layer});
  }
  out.network = remove_layer(network, layer);
  return out;
}

Perturbed censor_by_degree(const MultiplexNetwork& network,
                           std::span<const std::pair<LayerId, std::size_t>> thresholds) {
  const auto n = network.actor_count();
  std::vector<char> drop(n, 0);
  if (!thresholds.empty()) {
    std::vector<char> survives(n, 0);
    for (const auto& [layer, threshold] : thresholds) {
      std::vector<std::size_t> degree(n, 0);
      for (const auto& e : network.layer_edges(layer)) {
        ++degree[e.u];
        ++degree[e.v];
      }
      for (std::size_t a = 0; a < n; ++a) {
        if (degree[a] >= threshold) survives[a] = 1;
      }
    }
    for (std::size_t a = 0; a < n; ++a) drop[a] = !survives[a];
  }
  PerturbationSpec spec;
  spec.mechanism = Mechanism::kDegreeCensor;
  spec.censor_thresholds.assign(thresholds.begin(), thresholds.end());
  return drop_actors(network, drop, std::move(spec));
}

Perturbed split_identities(const MultiplexNetwork& network, double fraction,
                           std::uint64_t seed) {
  if (network.layer_count() < 2) {
    throw PerturbError("identity split needs at least two layers");
  }
  const auto n = network.actor_count();
  const auto layers = network.layer_count();
  const auto k = removal_count(fraction, n);
  auto picked = sample_prefix(n, k, mix_seed(seed, kActorStream));
  std::sort(picked.begin(), picked.end());

  // Which layers each actor has edges on.
  std::vector<char> active(n * layers, 0);
  for (std::size_t l = 0; l < layers; ++l) {
    for (const auto& e : network.layer_edges(l)) {
      active[e.u * layers + l] = 1;
      active[e.v * layers + l] = 1;
    }
  }

  std::set<std::string> taken;
  for (const auto& a : network.actors()) taken.insert(a.str());

  Perturbed out;
  out.record.spec.mechanism = Mechanism::kIdentitySplit;
  out.record.spec.fraction = fraction;
  out.record.spec.seed = seed;

  // replacement[a * layers + l]: label actor a takes on layer l.
  std::vector<std::optional<ActorId>> replacement(n * layers);
  std::vector<char> split(n, 0);
  for (auto a : picked) {
    SplitActor entry{network.actor(a), {}};
    for (std::size_t l = 0; l < layers; ++l) {
      if (!active[a * layers + l]) continue;
      std::string base = network.actor(a).str() + "@" + network.layer(l).str();
      std::string label = base;
      for (int suffix = 2; taken.contains(label); ++suffix) {
        label = base + "~" + std::to_string(suffix);
      }
      taken.insert(label);
      ActorId fresh(label);
      replacement[a * layers + l] = fresh;
      entry.replacements.emplace_back(network.layer(l), fresh);
    }
    if (!entry.replacements.empty()) split[a] = 1;
    out.record.split_actors.push_back(std::move(entry));
  }

  NetworkBuilder builder;
  for (const auto& layer : network.layers()) builder.add_layer(layer);
  for (std::size_t a = 0; a < n; ++a) {
    if (!split[a]) builder.add_actor(network.actor(a));
  }
  auto label_of = [&](std::uint32_t a, std::size_t l) -> const ActorId& {
    return split[a] ? *replacement[a * layers + l] : network.actor(a);
  };
  for (std::size_t l = 0; l < layers; ++l) {
    for (const auto& e : network.layer_edges(l)) {
      builder.add_edge(label_of(e.u, l), label_of(e.v, l), network.layer(l));
    }
  }
  out.network = builder.build();
  return out;
}

Perturbed apply_perturbation(const MultiplexNetwork& network, const PerturbationSpec& spec) {
  spec.validate();
  Perturbed out;
  switch (spec.mechanism) {
    case Mechanism::kEdgeRemoval:
      out = remove_edges_random(network, spec.target_layers, spec.fraction, spec.seed);
      break;
    case Mechanism::kNodeRemoval:
      out = remove_nodes_random(network, spec.fraction, spec.seed);
      break;
    case Mechanism::kLayerRemoval:
      if (spec.target_layers.size() != 1) {
        throw PerturbError("layer-removal takes exactly one target layer");
      }
      out = remove_layer_recorded(network, spec.target_layers.front());
      break;
    case Mechanism::kDegreeCensor:
      out = censor_by_degree(network, spec.censor_thresholds);
      break;
    case Mechanism::kIdentitySplit:
      out = split_identities(network, spec.fraction, spec.seed);
      break;
  }
  out.record.spec = spec;
  return out;
}

MultiplexNetwork restore(const MultiplexNetwork& perturbed, const PerturbationRecord& record) {
  std::map<std::string, ActorId> merged;  // replacement label -> original
  for (const auto& s : record.split_actors) {
    for (const auto& [layer, fresh] : s.replacements) merged.emplace(fresh.str(), s.original);
  }
  auto original_of = [&](const ActorId& a) -> const ActorId& {
    auto it = merged.find(a.str());
    return it == merged.end() ? a : it->second;
  };

  std::vector<LayerId> layers = copy_layers(perturbed);
  auto removed_layers = record.removed_layers;
  std::sort(removed_layers.begin(), removed_layers.end(),
            [](const auto& x, const auto& y) { return x.position < y.position; });
  for (const auto& r : removed_layers) {
    const auto pos = std::min(r.position, layers.size());
    layers.insert(layers.begin() + static_cast<std::ptrdiff_t>(pos), r.layer);
  }

  NetworkBuilder builder;
  for (const auto& layer : layers) builder.add_layer(layer);
  for (const auto& a : perturbed.actors()) builder.add_actor(original_of(a));
  for (const auto& a : record.removed_actors) builder.add_actor(a);
  for (const auto& s : record.split_actors) builder.add_actor(s.original);
  for (std::size_t l = 0; l < perturbed.layer_count(); ++l) {
    for (const auto& e : perturbed.layer_edges(l)) {
      builder.add_edge(original_of(perturbed.actor(e.u)), original_of(perturbed.actor(e.v)),
                       perturbed.layer(l));
    }
  }
  for (const auto& r : record.removed_edges) builder.add_edge(r.edge.u, r.edge.v, r.layer);
  return builder.build();
}

}  // namespace mpx
