#include "doctest.h"

#include <algorithm>
#include <limits>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "mpx/metrics.hpp"

using namespace mpx;
using namespace mpx::testing;

TEST_CASE("path metrics on hand graphs") {
  SUBCASE("P4") {
    auto g = path_graph(4);
    CHECK(diameter(g) == 3);
    CHECK(average_path_length(g) == doctest::Approx(10.0 / 6.0).epsilon(1e-15));
    CHECK(is_connected(g));
  }
  SUBCASE("K4") {
    auto g = complete_graph(4);
    CHECK(diameter(g) == 1);
    CHECK(average_path_length(g) == 1.0);
  }
  SUBCASE("C5") {
    auto g = cycle_graph(5);
    CHECK(diameter(g) == 2);
    CHECK(average_path_length(g) == 1.5);
  }
  SUBCASE("two disjoint edges") {
    auto g = graph_of({{"a", "b"}, {"c", "d"}});
    CHECK(diameter(g) == 1);
    CHECK(average_path_length(g) == 1.0);
    CHECK_FALSE(is_connected(g));
  }
  SUBCASE("edgeless") {
    auto g = graph_of({}, {"a", "b", "c"});
    auto stats = path_statistics(g);
    CHECK(stats.diameter == 0);
    CHECK(stats.average_path_length == 0.0);
    CHECK_FALSE(stats.connected);
  }
  SUBCASE("single node is connected, empty graph is not") {
    CHECK(is_connected(graph_of({}, {"solo"})));
    CHECK_FALSE(is_connected(FlattenedGraph{}));
  }
}

TEST_CASE("largest-component semantics") {
  // triangle plus a separate path of length 3
  auto g = graph_of({{"a", "b"}, {"b", "c"}, {"a", "c"}, {"p", "q"}, {"q", "r"}, {"r", "s"}});
  auto finite = path_statistics(g, PathSemantics::kFinitePairs);
  auto largest = path_statistics(g, PathSemantics::kLargestComponent);
  CHECK(finite.diameter == 3);
  CHECK(finite.pair_count == 3 + 6);
  CHECK(largest.diameter == 3);  // the 4-node path is the largest component
  CHECK(largest.pair_count == 6);
  CHECK(largest.average_path_length == doctest::Approx(10.0 / 6.0));
  CHECK_FALSE(largest.connected);
}

TEST_CASE("clustering coefficient on hand graphs") {
  CHECK(clustering_coefficient(complete_graph(3)) == 1.0);
  CHECK(clustering_coefficient(path_graph(4)) == 0.0);
  // K4 minus one edge: the two degree-2 nodes are closed (1), the two
  // degree-3 nodes see 2 of 3 neighbour links (2/3): mean 5/6.
  auto k4e = graph_of({{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}, {"c", "d"}});
  CHECK(clustering_coefficient(k4e) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
  // 2 triangles, 8 connected triples
  CHECK(clustering_coefficient(k4e, ClusteringMode::kGlobalTransitivity) == 0.75);
  // degree < 2 nodes are excluded from the mean
  auto tri_tail = graph_of({{"a", "b"}, {"b", "c"}, {"a", "c"}, {"c", "d"}});
  CHECK(clustering_coefficient(tri_tail) == doctest::Approx((1.0 + 1.0 + 1.0 / 3.0) / 3.0));
  CHECK(clustering_coefficient(graph_of({{"a", "b"}})) == 0.0);
}

TEST_CASE("metrics_report bundles flatten metrics") {
  SUBCASE("TOY1 all layers") {
    auto net = toy1();
    auto r = metrics_report(net, net.layers());
    CHECK(r.diameter == 3);
    CHECK(r.clustering_coefficient == 0.0);
    CHECK(r.avg_path_length == doctest::Approx(1.6667).epsilon(1e-4));
    CHECK(r.is_connected);
    CHECK(r.node_count == 4);
    CHECK(r.edge_count == 3);
  }
  SUBCASE("single empty layer") {
    auto net = parse_multiplex("#LAYERS\nE\n#ACTORS\na\nb\n").network;
    auto r = metrics_report(net, net.layers());
    CHECK(r.diameter == 0);
    CHECK(r.clustering_coefficient == 0.0);
    CHECK(r.avg_path_length == 0.0);
    CHECK_FALSE(r.is_connected);
  }
  SUBCASE("K4 as one layer") {
    auto net = parse_multiplex("a,b,K\na,c,K\na,d,K\nb,c,K\nb,d,K\nc,d,K\n").network;
    auto r = metrics_report(net, net.layers());
    CHECK(r.diameter == 1);
    CHECK(r.clustering_coefficient == 1.0);
    CHECK(r.avg_path_length == 1.0);
    CHECK(r.is_connected);
  }
}

TEST_CASE("BFS path statistics agree with Floyd-Warshall") {
  Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = static_cast<std::uint32_t>(1 + rng.below(40));
    auto g = random_graph(rng, n, 0.02 + 0.3 * rng.unit());
    auto oracle = floyd_warshall(g);
    auto stats = path_statistics(g);
    CHECK(stats.diameter == oracle.diameter);
    CHECK(stats.average_path_length == oracle.apl);
    CHECK(stats.connected == (oracle.connected || n == 1));
    if (stats.pair_count > 0) CHECK(stats.average_path_length <= stats.diameter);
  }
}

TEST_CASE("path statistics do not depend on thread count") {
  Rng rng(8);
  auto g = random_graph(rng, 300, 0.02);
  auto one = path_statistics(g, PathSemantics::kFinitePairs, 1);
  for (unsigned threads : {2u, 3u, 8u}) {
    auto many = path_statistics(g, PathSemantics::kFinitePairs, threads);
    CHECK(many.diameter == one.diameter);
    CHECK(many.distance_sum == one.distance_sum);
    CHECK(many.average_path_length == one.average_path_length);
  }
}

TEST_CASE("jaccard similarity") {
  auto net = toy1();
  CHECK(jaccard_similarity(net, {LayerId("L1"), LayerId("L2")}) == doctest::Approx(1.0 / 3.0));
  CHECK(jaccard_similarity(net, {LayerId("L2"), LayerId("L1")}) ==
        jaccard_similarity(net, {LayerId("L1"), LayerId("L2")}));
  CHECK_THROWS_AS(jaccard_similarity(net, {LayerId("L1")}), MetricsError);
  CHECK_THROWS_AS(jaccard_similarity(net, {LayerId("L1"), LayerId("L1")}), MetricsError);
  CHECK_THROWS_AS(jaccard_similarity(net, {LayerId("L1"), LayerId("Q")}), GraphError);

  auto same = parse_multiplex("a,b,X\nb,c,X\na,b,Y\nb,c,Y\n").network;
  CHECK(jaccard_similarity(same, {LayerId("X"), LayerId("Y")}) == 1.0);

  auto empty = parse_multiplex("#LAYERS\nX\nY\n#ACTORS\na\n").network;
  CHECK(jaccard_similarity(empty, {LayerId("X"), LayerId("Y")}) == 1.0);
}

TEST_CASE("similarity matrix") {
  auto net = toy1();
  auto sim = similarity_matrix(net);
  CHECK(sim.at(0, 0) == 1.0);
  CHECK(sim.at(0, 1) == sim.at(1, 0));
  CHECK(sim.combined == doctest::Approx(1.0 / 3.0));
  CHECK(sim.mean_to_others(0) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("xRelevance") {
  auto net = toy1();
  CHECK(x_relevance(net, ActorId("b"), LayerId("L1")) == 0.5);
  CHECK(x_relevance(net, ActorId("a"), LayerId("L2")) == 0.0);
  CHECK(x_relevance(net, ActorId("a"), LayerId("L1")) == 1.0);
  CHECK(x_relevance(net, ActorId("c"), LayerId("L2")) == 0.5);
  CHECK_THROWS_AS(x_relevance(net, ActorId("zz"), LayerId("L1")), GraphError);
  CHECK_THROWS_AS(x_relevance(net, ActorId("a"), LayerId("L7")), GraphError);

  auto table = x_relevance_table(net);
  CHECK(table.value(net.actor_index(ActorId("b")), 0) == 0.5);
  CHECK(table.flatten_degree(net.actor_index(ActorId("b"))) == 2);
  CHECK(table.shared_count(net.actor_index(ActorId("b"))) == 1);
  // layer means over all four actors: L1 {1, .5, 0, 0}, L2 {0, 0, .5, 1}
  CHECK(table.layer_mean(0) == 0.375);
  CHECK(table.layer_mean(1) == 0.375);
}

TEST_CASE("jaccard and xRelevance agree with brute-force oracles") {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const auto net = random_multiplex(rng, 30, 4, 2);
    std::vector<std::string> names;
    for (const auto& l : net.layers()) names.push_back(l.str());

    CHECK(jaccard_similarity(net, net.layers()) == jaccard_oracle(net, names));
    auto sim = similarity_matrix(net);
    for (std::size_t i = 0; i < names.size(); ++i) {
      for (std::size_t j = i + 1; j < names.size(); ++j) {
        CHECK(sim.at(i, j) == jaccard_oracle(net, {names[i], names[j]}));
        CHECK(sim.combined <= sim.at(i, j));
      }
    }

    // adding layers never raises similarity
    for (std::size_t k = 3; k <= names.size(); ++k) {
      auto prefix = net.layers().first(k);
      CHECK(jaccard_similarity(net, prefix) <= jaccard_similarity(net, prefix.first(k - 1)));
    }

    auto table = x_relevance_table(net);
    for (std::size_t a = 0; a < net.actor_count(); ++a) {
      std::uint32_t exclusive_total = 0;
      for (std::size_t l = 0; l < net.layer_count(); ++l) {
        const auto expected = xrel_oracle(net, net.actor(a).str(), names[l]);
        CHECK(table.value(a, l) == expected);
        CHECK(x_relevance(net, net.actor(a), net.layer(l)) == expected);
        exclusive_total += table.exclusive_count(a, l);
      }
      CHECK(exclusive_total + table.shared_count(a) == table.flatten_degree(a));
      CHECK(table.flatten_degree(a) == flatten(net).degree(a));
    }
  }
}

TEST_CASE("relabeling actors leaves every metric unchanged") {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const auto net = random_multiplex(rng, 25, 3, 2);
    const auto n = net.actor_count();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);

    NetworkBuilder b;
    for (const auto& l : net.layers()) b.add_layer(l);
    auto relabel = [&](std::size_t a) { return ActorId("w" + std::to_string(perm[a] * 7 + 3)); };
    for (std::size_t a = 0; a < n; ++a) b.add_actor(relabel(a));
    for (std::size_t l = 0; l < net.layer_count(); ++l) {
      for (const auto& e : net.layer_edges(l)) b.add_edge(relabel(e.u), relabel(e.v), net.layer(l));
    }
    const auto other = b.build();

    const auto r1 = metrics_report(net, net.layers());
    const auto r2 = metrics_report(other, other.layers());
    CHECK(r1.diameter == r2.diameter);
    CHECK(r1.avg_path_length == r2.avg_path_length);
    CHECK(r1.clustering_coefficient == doctest::Approx(r2.clustering_coefficient).epsilon(1e-12));
    CHECK(jaccard_similarity(net, net.layers()) == jaccard_similarity(other, other.layers()));

    auto values = [](const MultiplexNetwork& m) {
      auto t = x_relevance_table(m);
      std::vector<double> v;
      for (std::size_t a = 0; a < m.actor_count(); ++a)
        for (std::size_t l = 0; l < m.layer_count(); ++l) v.push_back(t.value(a, l));
      std::sort(v.begin(), v.end());
      return v;
    };
    CHECK(values(net) == values(other));
  }
}
