#include "mpx/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "mpx/perturb.hpp"
#include "mpx/random.hpp"

namespace mpx {
namespace {

std::uint64_t pair_key(IndexEdge e) { return (std::uint64_t{e.u} << 32) | e.v; }

void validate_ba(std::size_t n, std::size_t m) {
  if (m < 1 || n <= m) {
    throw SynthError("BA model needs n > m >= 1 (n=" + std::to_string(n) +
                     ", m=" + std::to_string(m) + ")");
  }
  if (n > std::size_t{0xFFFFFFFF}) throw SynthError("n too large");
}

double similarity_for(std::size_t edges, std::size_t shared) {
  const auto total = 2 * edges - shared;
  return total == 0 ? 1.0 : static_cast<double>(shared) / static_cast<double>(total);
}

}  // namespace

void SynthSpec::validate() const {
  validate_ba(n, m);
  if (!(target_similarity >= 0.0 && target_similarity <= 1.0)) {
    throw SynthError("target similarity must lie in [0, 1]");
  }
  if (!(tolerance >= 0.0)) throw SynthError("tolerance must be non-negative");
}

std::vector<IndexEdge> ba_edges(std::size_t n, std::size_t m, std::uint64_t seed) {
  validate_ba(n, m);
  Rng rng(seed);
  std::vector<IndexEdge> edges;
  edges.reserve(m * (m - 1) / 2 + (n - m) * m);
  // One entry per edge endpoint: sampling from it is degree-proportional.
  std::vector<std::uint32_t> endpoints;
  endpoints.reserve(2 * edges.capacity());

  for (std::uint32_t u = 0; u < m; ++u) {
    for (std::uint32_t v = u + 1; v < m; ++v) {
      edges.push_back({u, v});
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }

  std::vector<std::uint32_t> chosen;
  for (auto t = static_cast<std::uint32_t>(m); t < n; ++t) {
    chosen.clear();
    while (chosen.size() < m) {
      // Only the single-node core of m = 1 has no degree mass yet.
      const auto x = endpoints.empty() ? static_cast<std::uint32_t>(rng.below(t))
                                       : endpoints[rng.below(endpoints.size())];
      if (std::find(chosen.begin(), chosen.end(), x) == chosen.end()) chosen.push_back(x);
    }
    for (auto x : chosen) {
      edges.push_back({x, t});
      endpoints.push_back(x);
      endpoints.push_back(t);
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

FlattenedGraph generate_ba(std::size_t n, std::size_t m, std::uint64_t seed) {
  return FlattenedGraph::unlabeled(n, ba_edges(n, m, seed));
}

std::size_t shared_edge_count(std::size_t edges, double similarity) {
  const double exact = 2.0 * static_cast<double>(edges) * similarity / (1.0 + similarity);
  return std::min(edges, static_cast<std::size_t>(std::floor(exact + 0.5 + 1e-9)));
}

MultiplexNetwork generate_multiplex_with_similarity(const SynthSpec& spec) {
  spec.validate();
  const auto n = spec.n;
  const auto base = ba_edges(n, spec.m, mix_seed(spec.seed, 0));
  const auto edges = base.size();
  const std::uint64_t all_pairs = std::uint64_t{n} * (n - 1) / 2;
  const std::uint64_t free_pairs = all_pairs - edges;

  // Candidate shared counts around the closed form, clamped to what the
  // number of non-base pairs allows; keep the one closest to the target.
  const std::size_t min_shared =
      edges > free_pairs ? static_cast<std::size_t>(edges - free_pairs) : 0;
  const auto ideal = shared_edge_count(edges, spec.target_similarity);
  std::size_t shared = std::max(ideal, min_shared);
  for (std::size_t candidate : {ideal > 0 ? ideal - 1 : ideal, ideal + 1}) {
    if (candidate < min_shared || candidate > edges) continue;
    if (std::abs(similarity_for(edges, candidate) - spec.target_similarity) <
        std::abs(similarity_for(edges, shared) - spec.target_similarity)) {
      shared = candidate;
    }
  }
  const double achieved = similarity_for(edges, shared);
  if (std::abs(achieved - spec.target_similarity) > spec.tolerance + 1e-12) {
    throw InfeasibleSimilarity(spec.target_similarity, achieved);
  }

  std::vector<IndexEdge> second;
  second.reserve(edges);
  for (auto p : sample_prefix(edges, shared, mix_seed(spec.seed, 1))) second.push_back(base[p]);

  std::unordered_set<std::uint64_t> used;
  used.reserve(2 * edges);
  for (const auto& e : base) used.insert(pair_key(e));

  std::vector<std::uint32_t> endpoints;
  endpoints.reserve(2 * edges);
  for (const auto& e : base) {
    endpoints.push_back(e.u);
    endpoints.push_back(e.v);
  }

  const std::size_t fresh_needed = edges - shared;
  Rng rng(mix_seed(spec.seed, 2));
  const std::size_t budget = 64 * fresh_needed + 4096;
  std::size_t added = 0;
  for (std::size_t attempt = 0; added < fresh_needed && attempt < budget; ++attempt) {
    const auto a = endpoints[rng.below(endpoints.size())];
    const auto b = endpoints[rng.below(endpoints.size())];
    if (a == b) continue;
    const auto e = make_index_edge(a, b);
    if (!used.insert(pair_key(e)).second) continue;
    second.push_back(e);
    ++added;
  }
  if (added < fresh_needed) {
    // Dense corner cases: draw the rest uniformly from the unused pairs.
    std::vector<IndexEdge> candidates;
    for (std::uint32_t u = 0; u < n; ++u) {
      for (std::uint32_t v = u + 1; v < n; ++v) {
        if (!used.contains(pair_key({u, v}))) candidates.push_back({u, v});
      }
    }
    for (auto p : sample_prefix(candidates.size(), fresh_needed - added, rng())) {
      second.push_back(candidates[p]);
    }
  }
  std::sort(second.begin(), second.end());

  return MultiplexNetwork::from_parts(numbered_actors(n), {LayerId("L0"), LayerId("L1")},
                                      {base, std::move(second)});
}

std::vector<SyntheticMultiplex> generate_similarity_sweep(std::size_t n, std::size_t m,
                                                          std::uint64_t base_seed,
                                                          double tolerance) {
  std::vector<SyntheticMultiplex> out;
  for (int i = 0; i <= 10; ++i) {
    SynthSpec spec;
    spec.n = n;
    spec.m = m;
    spec.target_similarity = i / 10.0;
    spec.seed = mix_seed(base_seed, static_cast<std::uint64_t>(i));
    spec.tolerance = tolerance;
    out.push_back({spec.target_similarity, generate_multiplex_with_similarity(spec)});
  }
  return out;
}

}  // namespace mpx
