// mpxmiss: missing-data experiments on multiplex networks.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mpx/experiment.hpp"
#include "mpx/io.hpp"
#include "mpx/metrics.hpp"
#include "mpx/parallel.hpp"
#include "mpx/perturb.hpp"
#include "mpx/synthgen.hpp"

namespace {

using namespace mpx;

// Bad flag values detected after CLI11 parsing; exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  unsigned threads = 0;
  bool strict = false;
  std::uint64_t seed = 0;
  std::string paths = "finite";
  std::string clustering = "local";
};

// Ordered key=value pairs echoed into every artifact.
class Config {
 public:
  Config(std::string command, const Globals& g) {
    add("command", std::move(command));
    add("seed", std::to_string(g.seed));
    add("strict", g.strict ? "true" : "false");
    add("paths", g.paths);
    add("clustering", g.clustering);
  }
  Config& add(std::string key, std::string value) {
    entries_.emplace_back(std::move(key), std::move(value));
    return *this;
  }
  std::string text() const {
    std::string out = "mpxmiss";
    for (const auto& [k, v] : entries_) out += "\n" + k + "=" + v;
    return out;
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

std::string join(const std::vector<std::string>& items, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

// Four decimals with trailing zeros dropped: 1.6667, 0.3333, 3, 0.
std::string compact(double value) {
  auto text = format_fixed(value, 4);
  text.erase(text.find_last_not_of('0') + 1);
  if (text.back() == '.') text.pop_back();
  return text;
}

MetricsOptions metrics_options(const Globals& g) {
  MetricsOptions opts;
  opts.paths = g.paths == "largest" ? PathSemantics::kLargestComponent : PathSemantics::kFinitePairs;
  opts.clustering =
      g.clustering == "global" ? ClusteringMode::kGlobalTransitivity : ClusteringMode::kAverageLocal;
  opts.threads = resolve_threads(g.threads);
  return opts;
}

SweepOptions sweep_options(const Globals& g, std::size_t replicates) {
  SweepOptions opts;
  opts.replicates = replicates;
  opts.seed = g.seed;
  opts.threads = resolve_threads(g.threads);
  opts.metrics = metrics_options(g);
  opts.metrics.threads = 1;
  return opts;
}

MultiplexNetwork load(const std::string& path, const Globals& g) {
  auto parsed = read_multiplex_file(path, ParseOptions{.strict = g.strict});
  for (const auto& w : parsed.warnings) {
    std::cerr << "warning: " << path << ": line " << w.line << ": " << w.message << '\n';
  }
  return std::move(parsed.network);
}

std::vector<LayerId> layer_ids(const std::vector<std::string>& names) {
  std::vector<LayerId> out;
  for (const auto& n : names) out.emplace_back(n);
  return out;
}

std::vector<double> fractions_from(const std::string& text) {
  try {
    return parse_fraction_list(text);
  } catch (const Error& e) {
    throw UsageError("--fractions: " + std::string(e.what()));
  }
}

std::string comment_lines(const std::string& text) {
  std::string out;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) out += "# " + line + "\n";
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cli", "cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Error("cli", "failed writing '" + path + "'");
}

// Default second layer: the one most similar to the layers left after the
// first is removed.
std::vector<std::pair<LayerId, LayerId>> default_pairs(const MultiplexNetwork& net) {
  std::vector<std::pair<LayerId, LayerId>> pairs;
  for (const auto& first : net.layers()) {
    const auto remaining = remove_layer(net, first);
    const auto matrix = similarity_matrix(remaining);
    std::size_t best = 0;
    for (std::size_t i = 1; i < matrix.layers.size(); ++i) {
      if (matrix.mean_to_others(i) > matrix.mean_to_others(best)) best = i;
    }
    pairs.emplace_back(first, matrix.layers[best]);
  }
  return pairs;
}

std::vector<std::pair<LayerId, LayerId>> parse_pairs(const std::vector<std::string>& items) {
  std::vector<std::pair<LayerId, LayerId>> pairs;
  for (const auto& item : items) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw UsageError("--pair expects FIRST:SECOND, got '" + item + "'");
    pairs.emplace_back(LayerId(item.substr(0, colon)), LayerId(item.substr(colon + 1)));
  }
  return pairs;
}

std::vector<std::pair<LayerId, std::size_t>> parse_thresholds(const std::vector<std::string>& items) {
  std::vector<std::pair<LayerId, std::size_t>> out;
  for (const auto& item : items) {
    const auto colon = item.find(':');
    std::size_t value = 0;
    try {
      if (colon == std::string::npos) throw std::invalid_argument("missing ':'");
      std::size_t used = 0;
      value = std::stoul(item.substr(colon + 1), &used);
      if (used != item.size() - colon - 1) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw UsageError("--threshold expects LAYER:DEGREE, got '" + item + "'");
    }
    out.emplace_back(LayerId(item.substr(0, colon)), value);
  }
  return out;
}

void print_summary(const SweepGrid& grid) {
  for (const auto metric : grid.metrics) {
    const auto slot = grid.metric_slot(metric);
    double worst = 0.0;
    for (std::size_t r = 0; r < grid.rows(); ++r) {
      for (std::size_t c = 0; c < grid.cols(); ++c) {
        if (const auto& v = grid.cell(slot, r, c).variation_pct) worst = std::max(worst, *v);
      }
    }
    std::cout << metric_name(metric) << " max variation " << format_fixed(worst, 2) << "%\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantify how missing data distorts multiplex network structure."};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  Globals g;
  // Shared flags live on every subcommand so each --help lists them.
  auto add_common = [&g](CLI::App* sub) {
    sub->add_option("--threads", g.threads, "Worker threads, 0 for all cores")->capture_default_str();
    sub->add_flag("--strict", g.strict, "Require declared layers and actors in input files");
    sub->add_option("--seed", g.seed, "Random seed (env MPX_SEED)")
        ->envname("MPX_SEED")
        ->capture_default_str();
    sub->add_option("--paths", g.paths, "Path semantics for D and APL: finite or largest")
        ->check(CLI::IsMember({"finite", "largest"}))
        ->capture_default_str();
    sub->add_option("--clustering", g.clustering, "Clustering coefficient: local or global")
        ->check(CLI::IsMember({"local", "global"}))
        ->capture_default_str();
  };

  // metrics
  std::string input;
  std::vector<std::string> layers;
  auto* metrics = app.add_subcommand("metrics", "Flatten metrics and layer similarity");
  metrics->add_option("--input", input, "Network file")->required();
  metrics->add_option("--layers", layers, "Layers to flatten (default: all)")->delimiter(',');

  // xrelevance
  std::string csv_path;
  auto* xrel = app.add_subcommand("xrelevance", "Per-layer xRelevance of every actor");
  xrel->add_option("--input", input, "Network file")->required();
  xrel->add_option("--csv", csv_path, "Write actor,layer,value rows here");

  // perturb
  std::string out_path;
  std::string mechanism = "edge-removal";
  double fraction = 0.1;
  std::vector<std::string> thresholds;
  auto* perturb = app.add_subcommand("perturb", "Apply one perturbation and write the result");
  perturb->add_option("--input", input, "Network file")->required();
  perturb->add_option("--mechanism", mechanism,
                      "edge-removal, node-removal, layer-removal, degree-censor or identity-split")
      ->capture_default_str();
  perturb->add_option("--fraction", fraction, "Fraction in [0,1] to remove or split")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  perturb->add_option("--layers", layers, "Target layers (default: all)")->delimiter(',');
  perturb->add_option("--threshold", thresholds, "Censoring threshold LAYER:DEGREE, repeatable");
  perturb->add_option("--out", out_path, "Output network file")->required();

  // generate
  std::size_t n = 1000;
  std::size_t m = 3;
  double similarity = 0.5;
  double tolerance = 0.02;
  auto* generate = app.add_subcommand("generate", "Two-layer BA multiplex with a target similarity");
  generate->add_option("--n", n, "Actors")->capture_default_str();
  generate->add_option("--m", m, "Edges per new node")->capture_default_str();
  generate->add_option("--similarity", similarity, "Target Jaccard similarity")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  generate->add_option("--tolerance", tolerance, "Accepted |realized - target|")->capture_default_str();
  generate->add_option("--out", out_path, "Output network file")->required();

  // sweep-missing
  std::string fractions_text;
  std::size_t replicates = 20;
  std::string heatmap_path;
  auto* sweep_missing = app.add_subcommand("sweep-missing", "Edge-removal sweep per layer of a network");
  sweep_missing->add_option("--input", input, "Network file")->required();
  sweep_missing->add_option("--layers", layers, "Layers to perturb, one column each (default: all)")
      ->delimiter(',');
  sweep_missing->add_option("--fractions", fractions_text, "Percent range start:end:step or list")
      ->default_str("5:50:5");
  sweep_missing->add_option("--replicates", replicates, "Replicates per cell")->capture_default_str();
  sweep_missing->add_option("--csv", csv_path, "CSV output")->required();
  sweep_missing->add_option("--heatmap", heatmap_path, "SVG heatmap output");

  // sweep-similarity
  auto* sweep_similarity =
      app.add_subcommand("sweep-similarity", "Edge removal from layer 0 of 11 synthetic multiplexes");
  sweep_similarity->add_option("--n", n, "Actors")->capture_default_str();
  sweep_similarity->add_option("--m", m, "Edges per new node")->capture_default_str();
  sweep_similarity->add_option("--tolerance", tolerance, "Accepted similarity error")->capture_default_str();
  sweep_similarity->add_option("--fractions", fractions_text, "Percent range start:end:step or list")
      ->default_str("1:10:1");
  sweep_similarity->add_option("--replicates", replicates, "Replicates per cell")->capture_default_str();
  sweep_similarity->add_option("--csv", csv_path, "CSV output")->required();
  sweep_similarity->add_option("--heatmap", heatmap_path, "SVG heatmap output");

  // layer-removal
  std::vector<std::string> pair_items;
  auto* layer_removal = app.add_subcommand("layer-removal", "Remove two layers in turn");
  layer_removal->add_option("--input", input, "Network file")->required();
  layer_removal->add_option("--pair", pair_items,
                            "FIRST:SECOND, repeatable (default: each layer, then the layer most "
                            "similar to the rest)");
  layer_removal->add_option("--csv", csv_path, "CSV output");

  // sweep-xrelevance
  std::string target;
  auto* sweep_xrel = app.add_subcommand(
      "sweep-xrelevance", "xRelevance of every layer while edges are removed from one layer");
  sweep_xrel->add_option("--input", input, "Network file (default: generate a synthetic multiplex)");
  sweep_xrel->add_option("--target", target, "Layer losing edges (default: first layer)");
  sweep_xrel->add_option("--n", n, "Synthetic actors")->capture_default_str();
  sweep_xrel->add_option("--m", m, "Synthetic edges per new node")->capture_default_str();
  sweep_xrel->add_option("--similarity", similarity, "Synthetic target similarity")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  sweep_xrel->add_option("--fractions", fractions_text, "Percent range start:end:step or list")
      ->default_str("5:40:5");
  sweep_xrel->add_option("--replicates", replicates, "Replicates per fraction")->capture_default_str();
  sweep_xrel->add_option("--csv", csv_path, "CSV output")->required();

  for (auto* sub : app.get_subcommands({})) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  auto fractions_or = [&](const char* fallback) {
    return fractions_from(fractions_text.empty() ? fallback : fractions_text);
  };

  try {
    if (*metrics) {
      const auto net = load(input, g);
      const auto selected = layers.empty() ? net.layers() : layer_ids(layers);
      const auto report = metrics_report(net, selected, metrics_options(g));
      std::cout << "D=" << compact(report.diameter) << " CC=" << compact(report.clustering_coefficient)
                << " APL=" << compact(report.avg_path_length);
      if (selected.size() >= 2) {
        std::vector<std::string> names;
        for (const auto& l : selected) names.push_back(l.str());
        std::cout << " sim(" << join(names) << ")=" << compact(jaccard_similarity(net, selected));
      }
      std::cout << '\n';
      if (!report.is_connected) std::cerr << "note: flattened graph is disconnected\n";
    } else if (*xrel) {
      const auto net = load(input, g);
      const auto table = x_relevance_table(net);
      for (std::size_t l = 0; l < net.layer_count(); ++l) {
        std::cout << net.layer(l).str() << " mean=" << compact(table.layer_mean(l)) << '\n';
      }
      if (!csv_path.empty()) {
        Config config("xrelevance", g);
        config.add("input", input);
        std::string csv = comment_lines(config.text()) + "actor,layer,xrelevance\n";
        for (std::size_t a = 0; a < net.actor_count(); ++a) {
          for (std::size_t l = 0; l < net.layer_count(); ++l) {
            csv += net.actor(a).str() + "," + net.layer(l).str() + "," +
                   format_fixed(table.value(a, l)) + "\n";
          }
        }
        write_text(csv_path, csv);
      }
    } else if (*perturb) {
      const auto net = load(input, g);
      PerturbationSpec spec;
      try {
        spec.mechanism = parse_mechanism(mechanism);
      } catch (const Error& e) {
        throw UsageError("--mechanism: " + std::string(e.what()));
      }
      spec.fraction = fraction;
      spec.seed = g.seed;
      spec.target_layers = layer_ids(layers);
      spec.censor_thresholds = parse_thresholds(thresholds);
      const auto out = apply_perturbation(net, spec);
      Config config("perturb", g);
      config.add("input", input)
          .add("mechanism", mechanism)
          .add("fraction", format_fixed(fraction))
          .add("layers", layers.empty() ? "all" : join(layers))
          .add("thresholds", join(thresholds));
      write_multiplex_file(out.network, out_path, config.text());
      std::cout << "removed " << out.record.removed_edges.size() << " edge(s), "
                << out.record.removed_actors.size() << " actor(s), " << out.record.removed_layers.size()
                << " layer(s); split " << out.record.split_actors.size() << " actor(s)\n";
    } else if (*generate) {
      const auto net = generate_multiplex_with_similarity({n, m, similarity, g.seed, tolerance});
      Config config("generate", g);
      config.add("n", std::to_string(n))
          .add("m", std::to_string(m))
          .add("similarity", format_fixed(similarity))
          .add("tolerance", format_fixed(tolerance));
      write_multiplex_file(net, out_path, config.text());
      std::cout << "realized similarity "
                << format_fixed(jaccard_similarity_indices(net, std::vector<std::size_t>{0, 1}), 4) << '\n';
    } else if (*sweep_missing) {
      const auto net = load(input, g);
      const auto fractions = fractions_or("5:50:5");
      const auto selected = layers.empty() ? net.layers() : layer_ids(layers);
      const auto grid = run_missing_sweep(net, selected, fractions, sweep_options(g, replicates));
      Config config("sweep-missing", g);
      config.add("input", input)
          .add("layers", layers.empty() ? "all" : join(layers))
          .add("fractions", fractions_text.empty() ? "5:50:5" : fractions_text)
          .add("replicates", std::to_string(replicates));
      write_text(csv_path, emit_csv(grid, config.text()));
      if (!heatmap_path.empty()) {
        write_text(heatmap_path, emit_heatmap(grid, "Variation % under edge removal", config.text()));
      }
      print_summary(grid);
    } else if (*sweep_similarity) {
      const auto fractions = fractions_or("1:10:1");
      const auto networks = generate_similarity_sweep(n, m, g.seed, tolerance);
      const auto grid = run_similarity_sweep(networks, fractions, sweep_options(g, replicates));
      Config config("sweep-similarity", g);
      config.add("n", std::to_string(n))
          .add("m", std::to_string(m))
          .add("tolerance", format_fixed(tolerance))
          .add("fractions", fractions_text.empty() ? "1:10:1" : fractions_text)
          .add("replicates", std::to_string(replicates));
      write_text(csv_path, emit_csv(grid, config.text()));
      if (!heatmap_path.empty()) {
        write_text(heatmap_path,
                   emit_heatmap(grid, "Variation % by layer similarity", config.text()));
      }
      print_summary(grid);
      for (const auto metric : grid.metrics) {
        std::cout << metric_name(metric) << " spearman(1-sim, variation) at "
                  << format_fixed(fractions.back() * 100.0, 2) << "% = "
                  << format_fixed(similarity_trend(grid, metric, grid.rows() - 1), 4) << '\n';
      }
    } else if (*layer_removal) {
      const auto net = load(input, g);
      const auto pairs = pair_items.empty() ? default_pairs(net) : parse_pairs(pair_items);
      const auto table = run_layer_removal(net, pairs, metrics_options(g));
      Config config("layer-removal", g);
      std::vector<std::string> names;
      for (const auto& [a, b] : pairs) names.push_back(a.str() + ":" + b.str());
      config.add("input", input).add("pairs", join(names));
      const auto csv = emit_csv(table, config.text());
      if (csv_path.empty()) {
        std::cout << csv;
      } else {
        write_text(csv_path, csv);
      }
    } else if (*sweep_xrel) {
      const auto fractions = fractions_or("5:40:5");
      Config config("sweep-xrelevance", g);
      MultiplexNetwork net;
      if (input.empty()) {
        net = generate_multiplex_with_similarity({n, m, similarity, g.seed, tolerance});
        config.add("n", std::to_string(n)).add("m", std::to_string(m)).add("similarity", format_fixed(similarity));
      } else {
        net = load(input, g);
        config.add("input", input);
      }
      const LayerId target_layer = target.empty() ? net.layer(0) : LayerId(target);
      config.add("target", target_layer.str())
          .add("fractions", fractions_text.empty() ? "5:40:5" : fractions_text)
          .add("replicates", std::to_string(replicates));
      const auto curves = run_xrelevance_sweep(net, target_layer, fractions, sweep_options(g, replicates));
      write_text(csv_path, emit_csv(curves, config.text()));
      for (std::size_t l = 0; l < curves.layers.size(); ++l) {
        std::cout << curves.layers[l].str() << " " << format_fixed(curves.at(0, l), 4) << " -> "
                  << format_fixed(curves.at(curves.fractions.size() - 1, l), 4) << '\n';
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "error [cli]: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error [" << e.module() << "]: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
