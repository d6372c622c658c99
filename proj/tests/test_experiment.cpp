#include "doctest.h"

#include <cmath>

#include "fixtures.hpp"
#include "mpx/experiment.hpp"
#include "mpx/perturb.hpp"
#include "mpx/random.hpp"

using namespace mpx;
using namespace mpx::testing;

TEST_CASE("variation percent") {
  CHECK(*variation_percent(3.0, 2.0) == doctest::Approx(100.0 / 3.0));
  CHECK(*variation_percent(2.0, 3.0) == doctest::Approx(50.0));
  CHECK(*variation_percent(0.0, 0.0) == 0.0);
  CHECK_FALSE(variation_percent(0.0, 1.0).has_value());
  CHECK(*variation_percent(-2.0, -1.0) == doctest::Approx(50.0));
}

TEST_CASE("aggregate_cell averages variation over replicates") {
  std::vector<double> values{2.0, 4.0};
  auto cell = aggregate_cell(2.0, values);
  CHECK(cell.perturbed == 3.0);
  CHECK(*cell.variation_pct == doctest::Approx(50.0));
  CHECK(cell.replicates == 2);
  std::vector<double> mixed{0.0, 1.0};
  CHECK_FALSE(aggregate_cell(0.0, mixed).variation_pct.has_value());
  std::vector<double> zeros{0.0, 0.0};
  CHECK(*aggregate_cell(0.0, zeros).variation_pct == 0.0);
}

TEST_CASE("missing sweep on TOY1") {
  const auto net = toy1();
  std::vector<LayerId> layers{LayerId("L1"), LayerId("L2")};
  SweepOptions opts;
  opts.replicates = 3;
  opts.seed = 1;
  opts.metrics.clustering = ClusteringMode::kAverageLocal;
  SUBCASE("fraction 0 is all zeros") {
    std::vector<double> fractions{0.0};
    auto grid = run_missing_sweep(net, layers, fractions, opts);
    CHECK(grid.column_axis == "layer");
    CHECK(grid.columns == std::vector<std::string>{"L1", "L2"});
    for (const auto& c : grid.cells) CHECK(*c.variation_pct == 0.0);
  }
  SUBCASE("removing all of L1") {
    std::vector<double> fractions{1.0};
    std::vector<LayerId> only{LayerId("L1")};
    auto grid = run_missing_sweep(net, only, fractions, opts);
    const auto d = grid.metric_slot(Metric::kDiameter);
    CHECK(grid.cell(d, 0, 0).original == 3.0);
    CHECK(grid.cell(d, 0, 0).perturbed == 2.0);
    CHECK(*grid.cell(d, 0, 0).variation_pct == doctest::Approx(100.0 / 3.0));
  }
  SUBCASE("invalid fractions") {
    std::vector<double> descending{0.5, 0.1};
    CHECK_THROWS_AS(run_missing_sweep(net, layers, descending, opts), ExperimentError);
    std::vector<double> empty;
    CHECK_THROWS_AS(run_missing_sweep(net, layers, empty, opts), ExperimentError);
  }
}

TEST_CASE("sweep cells equal a brute-force replicate loop") {
  Rng rng(8);
  const auto net = random_multiplex(rng, 25, 3, 3);
  std::vector<LayerId> layers(net.layers().begin(), net.layers().end());
  std::vector<double> fractions{0.1, 0.3, 0.6};
  SweepOptions opts;
  opts.replicates = 4;
  opts.seed = 77;
  opts.threads = 3;
  auto grid = run_missing_sweep(net, layers, fractions, opts);

  const auto original = compute_metrics(flatten(net));
  for (std::size_t col = 0; col < layers.size(); ++col) {
    for (std::size_t row = 0; row < fractions.size(); ++row) {
      std::vector<std::vector<double>> values(grid.metrics.size());
      for (std::size_t r = 0; r < opts.replicates; ++r) {
        auto out = remove_edges_random(net, {&layers[col], 1}, fractions[row], mix_seed(opts.seed, r));
        const auto report = compute_metrics(flatten(out.network));
        for (std::size_t m = 0; m < grid.metrics.size(); ++m) {
          values[m].push_back(metric_value(report, grid.metrics[m]));
        }
      }
      for (std::size_t m = 0; m < grid.metrics.size(); ++m) {
        const auto expected = aggregate_cell(metric_value(original, grid.metrics[m]), values[m]);
        const auto& cell = grid.cell(m, row, col);
        CHECK(cell.original == expected.original);
        CHECK(cell.perturbed == expected.perturbed);
        CHECK(cell.variation_pct == expected.variation_pct);
        for (std::size_t r = 0; r < opts.replicates; ++r) {
          CHECK(grid.sample(m, row, col, r) == values[m][r]);
        }
      }
    }
  }
}

TEST_CASE("sweeps do not depend on the thread count") {
  Rng rng(9);
  const auto net = random_multiplex(rng, 30, 3, 3);
  std::vector<LayerId> layers(net.layers().begin(), net.layers().end());
  std::vector<double> fractions{0.2, 0.5};
  SweepOptions one;
  one.replicates = 5;
  one.seed = 3;
  SweepOptions many = one;
  many.threads = 4;
  CHECK(emit_csv(run_missing_sweep(net, layers, fractions, one)) ==
        emit_csv(run_missing_sweep(net, layers, fractions, many)));
}

TEST_CASE("similarity sweep") {
  auto networks = generate_similarity_sweep(120, 3, 5);
  std::vector<double> fractions{0.0, 0.1, 0.2};
  SweepOptions opts;
  opts.replicates = 3;
  opts.seed = 2;
  opts.threads = 2;
  auto grid = run_similarity_sweep(networks, fractions, opts);
  CHECK(grid.column_axis == "similarity");
  CHECK(grid.cols() == 11);
  CHECK(grid.columns.front() == "0.00");
  CHECK(grid.columns.back() == "1.00");
  // layer 1 still holds every removed edge when the layers are identical
  for (std::size_t m = 0; m < grid.metrics.size(); ++m) {
    for (std::size_t row = 0; row < grid.rows(); ++row) {
      CHECK(*grid.cell(m, row, 10).variation_pct == 0.0);
    }
    CHECK(*grid.cell(m, 0, 3).variation_pct == 0.0);
  }
  const double trend = similarity_trend(grid, Metric::kPathLength, 2);
  CHECK(trend >= -1.0);
  CHECK(trend <= 1.0);
}

TEST_CASE("csv round trip and shape") {
  SweepGrid grid;
  grid.column_axis = "similarity";
  grid.metrics = {kFlattenMetrics.begin(), kFlattenMetrics.end()};
  grid.replicates = 2;
  for (int i = 1; i <= 10; ++i) grid.fractions.push_back(i / 100.0);
  for (int j = 0; j <= 10; ++j) {
    grid.columns.push_back(format_fixed(j / 10.0, 2));
    grid.column_values.push_back(j / 10.0);
  }
  Rng rng(1);
  grid.cells.resize(grid.metrics.size() * grid.rows() * grid.cols());
  for (auto& c : grid.cells) {
    c.original = rng.unit() * 10.0;
    c.perturbed = rng.unit() * 10.0;
    c.variation_pct = rng.unit() < 0.1 ? std::nullopt : std::optional<double>(rng.unit() * 100.0);
    c.replicates = 2;
  }
  const auto text = emit_csv(grid, "seed=1\nthreads=2");
  CHECK(text.rfind("# seed=1\n# threads=2\n", 0) == 0);
  std::size_t data_rows = 0;
  std::size_t header_rows = 0;
  for (std::size_t pos = 0, next; pos < text.size(); pos = next + 1) {
    next = text.find('\n', pos);
    const auto line = text.substr(pos, next - pos);
    if (line.starts_with("#")) continue;
    if (line.starts_with("missing_pct")) {
      ++header_rows;
    } else {
      ++data_rows;
    }
  }
  CHECK(header_rows == 1);
  CHECK(data_rows == 110);

  const auto back = parse_grid_csv(text);
  REQUIRE(back.cells.size() == grid.cells.size());
  CHECK(back.columns == grid.columns);
  CHECK(back.metrics == grid.metrics);
  for (std::size_t i = 0; i < grid.cells.size(); ++i) {
    CHECK(std::abs(back.cells[i].original - grid.cells[i].original) <= 5e-7);
    CHECK(back.cells[i].variation_pct.has_value() == grid.cells[i].variation_pct.has_value());
    if (grid.cells[i].variation_pct) {
      CHECK(std::abs(*back.cells[i].variation_pct - *grid.cells[i].variation_pct) <= 5e-7);
    }
  }
  CHECK(emit_csv(back, "seed=1\nthreads=2") == text);
}

TEST_CASE("format_fixed") {
  CHECK(format_fixed(1.0 / 3.0) == "0.333333");
  CHECK(format_fixed(-0.0) == "0.000000");
  CHECK(format_fixed(-1e-9) == "0.000000");
  CHECK(format_fixed(2.5, 2) == "2.50");
}

TEST_CASE("heatmap shading") {
  SweepGrid grid;
  grid.column_axis = "layer";
  grid.metrics = {Metric::kDiameter};
  grid.fractions = {0.1, 0.2};
  grid.columns = {"A", "B"};
  grid.replicates = 1;
  grid.cells.assign(4, VariationCell{1.0, 1.0, 0.0, 1});
  const auto blank = emit_heatmap(grid, "zeros");
  CHECK(blank.find("<svg") != std::string::npos);
  CHECK(blank.find("rgb(255,255,255)") != std::string::npos);
  CHECK(blank.find("url(#undefined)\"") == std::string::npos);

  grid.cells[1].variation_pct = 50.0;
  grid.cells[2].variation_pct = std::nullopt;
  const auto svg = emit_heatmap(grid, "mixed", "a -- b");
  CHECK(svg.find("rgb(40,40,40)") != std::string::npos);
  CHECK(svg.find("url(#undefined)") != std::string::npos);
  CHECK(svg.find("a -- b") == std::string::npos);
}

TEST_CASE("layer removal") {
  auto net = parse_multiplex("#LAYERS\nE\nA\nB\n#EDGES\na,b,A\nb,c,A\nc,d,B\nb,c,B\n").network;
  std::vector<std::pair<LayerId, LayerId>> pairs{{LayerId("E"), LayerId("B")},
                                                 {LayerId("A"), LayerId("B")}};
  auto table = run_layer_removal(net, pairs);
  REQUIRE(table.rows.size() == 2);
  for (const auto& v : table.rows[0].variation_first) CHECK(*v == 0.0);
  CHECK(table.original.diameter == 3.0);
  CHECK(table.rows[1].after_first.diameter == 2.0);
  CHECK(emit_csv(table).find("E,B") != std::string::npos);

  std::vector<std::pair<LayerId, LayerId>> same{{LayerId("A"), LayerId("A")}};
  CHECK_THROWS_AS(run_layer_removal(net, same), ExperimentError);
  CHECK_THROWS_AS(run_layer_removal(toy1(), pairs), Error);
}

TEST_CASE("xrelevance sweep") {
  auto net = parse_multiplex("a,b,X\nb,c,X\nc,d,X\na,b,Y\nb,c,Y\nc,d,Y\n").network;
  std::vector<double> fractions{0.0, 0.5, 1.0};
  SweepOptions opts;
  opts.replicates = 4;
  opts.seed = 5;
  auto curves = run_xrelevance_sweep(net, LayerId("X"), fractions, opts);
  REQUIRE(curves.layers.size() == 2);
  CHECK(curves.at(0, 0) == 0.0);
  CHECK(curves.at(0, 1) == 0.0);
  CHECK(curves.at(1, 1) > 0.0);
  CHECK(curves.at(2, 0) == 0.0);
  CHECK(curves.at(2, 1) == 1.0);
  CHECK(emit_csv(curves).find(",xrel_X,xrel_Y") != std::string::npos);
}

TEST_CASE("spearman correlation") {
  std::vector<double> x{1, 2, 3, 4, 5};
  std::vector<double> up{2, 4, 6, 8, 10};
  std::vector<double> down{5, 4, 3, 2, 1};
  std::vector<double> flat{1, 1, 1, 1, 1};
  CHECK(spearman_correlation(x, up) == doctest::Approx(1.0));
  CHECK(spearman_correlation(x, down) == doctest::Approx(-1.0));
  CHECK(spearman_correlation(x, flat) == 0.0);
  std::vector<double> ties{1, 2, 2, 3};
  std::vector<double> y{1, 2, 3, 4};
  // Pearson on ranks {1, 2.5, 2.5, 4} vs {1, 2, 3, 4}
  CHECK(spearman_correlation(ties, y) == doctest::Approx(0.9486832980505138));
}

TEST_CASE("fraction lists") {
  auto range = parse_fraction_list("1:10:1");
  REQUIRE(range.size() == 10);
  CHECK(range.front() == doctest::Approx(0.01));
  CHECK(range.back() == doctest::Approx(0.10));
  auto list = parse_fraction_list("5,10,40");
  CHECK(list == std::vector<double>{0.05, 0.10, 0.40});
  CHECK_THROWS_AS(parse_fraction_list("5:1:1"), ExperimentError);
  CHECK_THROWS_AS(parse_fraction_list("abc"), ExperimentError);
  CHECK_THROWS_AS(parse_fraction_list("150"), ExperimentError);
}

TEST_CASE("metric names") {
  for (auto m : {Metric::kDiameter, Metric::kClustering, Metric::kPathLength, Metric::kXRelevanceMean}) {
    CHECK(parse_metric(metric_name(m)) == m);
  }
  CHECK_THROWS_AS(parse_metric("Q"), ExperimentError);
}
