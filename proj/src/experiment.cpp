#include "mpx/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mpx/parallel.hpp"
#include "mpx/perturb.hpp"
#include "mpx/random.hpp"

namespace mpx {
namespace {

void check_fractions(std::span<const double> fractions) {
  if (fractions.empty()) throw ExperimentError("fraction list is empty");
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    if (!(fractions[i] >= 0.0 && fractions[i] <= 1.0)) {
      throw ExperimentError("fractions must lie in [0, 1]");
    }
    if (i > 0 && !(fractions[i - 1] < fractions[i])) {
      throw ExperimentError("fractions must be strictly ascending");
    }
  }
}

// One sweep column: a network and the layer whose edges get removed.
struct ColumnJob {
  const MultiplexNetwork* network;
  std::size_t layer;
};

std::vector<double> evaluate(const MultiplexNetwork& network, std::size_t layer,
                             std::span<const Metric> metrics, const MetricsOptions& options) {
  std::vector<double> out;
  std::optional<MetricsReport> report;
  for (auto metric : metrics) {
    if (metric == Metric::kXRelevanceMean) {
      out.push_back(x_relevance_table(network).layer_mean(layer));
      continue;
    }
    if (!report) report = compute_metrics(flatten(network), options);
    out.push_back(metric_value(*report, metric));
  }
  return out;
}

SweepGrid sweep_columns(std::span<const ColumnJob> jobs, std::vector<std::string> labels,
                        std::span<const double> fractions, const SweepOptions& options) {
  check_fractions(fractions);
  if (options.replicates < 1) throw ExperimentError("replicates must be >= 1");

  SweepGrid grid;
  grid.fractions.assign(fractions.begin(), fractions.end());
  grid.columns = std::move(labels);
  grid.metrics.assign(kFlattenMetrics.begin(), kFlattenMetrics.end());
  grid.replicates = options.replicates;

  const auto metric_count = grid.metrics.size();
  const auto rows = grid.rows();
  const auto cols = grid.cols();
  const auto reps = options.replicates;
  MetricsOptions metric_options = options.metrics;
  metric_options.threads = 1;

  std::vector<std::vector<double>> originals(cols);
  parallel_for(cols, options.threads, [&](std::size_t c, unsigned) {
    originals[c] = evaluate(*jobs[c].network, jobs[c].layer, grid.metrics, metric_options);
  });

  grid.samples.assign(metric_count * rows * cols * reps, 0.0);
  parallel_for(cols * reps, options.threads, [&](std::size_t task, unsigned) {
    const auto c = task / reps;
    const auto r = task % reps;
    const auto& network = *jobs[c].network;
    const auto layer = jobs[c].layer;
    const auto m = network.layer_edges(layer).size();
    const auto k_max = removal_count(fractions.back(), m);
    // Same stream as remove_edges_random(network, {layer}, f, mix_seed(seed, r)).
    const auto order = sample_prefix(m, k_max, mix_seed(mix_seed(options.seed, r), layer));
    for (std::size_t row = 0; row < rows; ++row) {
      const auto k = removal_count(fractions[row], m);
      std::vector<double> values;
      if (k == 0) {
        values = originals[c];
      } else {
        const auto perturbed =
            without_layer_edges(network, layer, std::span(order).first(k));
        values = evaluate(perturbed, layer, grid.metrics, metric_options);
      }
      for (std::size_t mi = 0; mi < metric_count; ++mi) {
        grid.samples[grid.cell_index(mi, row, c) * reps + r] = values[mi];
      }
    }
  });

  grid.cells.resize(metric_count * rows * cols);
  for (std::size_t mi = 0; mi < metric_count; ++mi) {
    for (std::size_t row = 0; row < rows; ++row) {
      for (std::size_t c = 0; c < cols; ++c) {
        const auto base = grid.cell_index(mi, row, c) * reps;
        grid.cell(mi, row, c) = aggregate_cell(
            originals[c][mi], std::span(grid.samples).subspan(base, reps));
      }
    }
  }
  return grid;
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = rank;
    i = j + 1;
  }
  return ranks;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view text) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ExperimentError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::string comment_block(std::string_view header_comment) {
  std::string out;
  std::istringstream lines{std::string(header_comment)};
  for (std::string line; std::getline(lines, line);) out += "# " + line + "\n";
  return out;
}

std::string format_optional(const std::optional<double>& value) {
  return value ? format_fixed(*value) : std::string("UNDEFINED");
}

}  // namespace

std::string format_fixed(double value, int digits) {
  char buffer[64];
  if (value == 0.0) value = 0.0;  // drop negative zero
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::fixed,
                                 digits);
  if (ec != std::errc()) return "nan";
  std::string text(buffer, ptr);
  if (text.front() == '-' && text.find_first_not_of("-0.") == std::string::npos) text.erase(0, 1);
  return text;
}

std::string_view metric_name(Metric metric) noexcept {
  switch (metric) {
    case Metric::kDiameter: return "D";
    case Metric::kClustering: return "CC";
    case Metric::kPathLength: return "APL";
    case Metric::kXRelevanceMean: return "xRelevance-mean";
  }
  return "?";
}

Metric parse_metric(std::string_view name) {
  for (auto m : {Metric::kDiameter, Metric::kClustering, Metric::kPathLength,
                 Metric::kXRelevanceMean}) {
    if (metric_name(m) == name) return m;
  }
  throw ExperimentError("unknown metric '" + std::string(name) + "'");
}

std::optional<double> variation_percent(double original, double perturbed) {
  if (original == 0.0) {
    if (perturbed == 0.0) return 0.0;
    return std::nullopt;
  }
  return 100.0 * std::abs(perturbed - original) / std::abs(original);
}

double metric_value(const MetricsReport& report, Metric metric) {
  switch (metric) {
    case Metric::kDiameter: return static_cast<double>(report.diameter);
    case Metric::kClustering: return report.clustering_coefficient;
    case Metric::kPathLength: return report.avg_path_length;
    case Metric::kXRelevanceMean: break;
  }
  throw ExperimentError("xRelevance-mean is not a flatten metric");
}

std::size_t SweepGrid::metric_slot(Metric metric) const {
  auto it = std::find(metrics.begin(), metrics.end(), metric);
  if (it == metrics.end()) {
    throw ExperimentError("grid has no metric " + std::string(metric_name(metric)));
  }
  return static_cast<std::size_t>(it - metrics.begin());
}

VariationCell aggregate_cell(double original, std::span<const double> replicate_values) {
  VariationCell cell;
  cell.original = original;
  cell.replicates = replicate_values.size();
  if (replicate_values.empty()) return cell;
  double perturbed_sum = 0.0;
  double variation_sum = 0.0;
  bool defined = true;
  for (double v : replicate_values) {
    perturbed_sum += v;
    if (auto var = variation_percent(original, v)) {
      variation_sum += *var;
    } else {
      defined = false;
    }
  }
  const auto n = static_cast<double>(replicate_values.size());
  cell.perturbed = perturbed_sum / n;
  if (defined) cell.variation_pct = variation_sum / n;
  return cell;
}

SweepGrid run_missing_sweep(const MultiplexNetwork& network, std::span<const LayerId> layers,
                            std::span<const double> fractions, const SweepOptions& options) {
  if (layers.empty()) throw ExperimentError("no target layer given");
  std::vector<ColumnJob> jobs;
  std::vector<std::string> labels;
  for (const auto& id : layers) {
    jobs.push_back({&network, network.layer_index(id)});
    labels.push_back(id.str());
  }
  auto grid = sweep_columns(jobs, std::move(labels), fractions, options);
  grid.column_axis = "layer";
  return grid;
}

SweepGrid run_similarity_sweep(std::span<const SyntheticMultiplex> networks,
                               std::span<const double> fractions, const SweepOptions& options) {
  if (networks.empty()) throw ExperimentError("no synthetic networks given");
  std::vector<ColumnJob> jobs;
  std::vector<std::string> labels;
  std::vector<double> values;
  for (const auto& s : networks) {
    if (s.network.layer_count() < 2) throw ExperimentError("synthetic network needs two layers");
    jobs.push_back({&s.network, 0});
    labels.push_back(format_fixed(s.target_similarity, 2));
    values.push_back(s.target_similarity);
  }
  auto grid = sweep_columns(jobs, std::move(labels), fractions, options);
  grid.column_axis = "similarity";
  grid.column_values = std::move(values);
  return grid;
}

LayerRemovalTable run_layer_removal(const MultiplexNetwork& network,
                                    std::span<const std::pair<LayerId, LayerId>> pairs,
                                    const MetricsOptions& options) {
  LayerRemovalTable table;
  table.original = compute_metrics(flatten(network), options);
  for (const auto& [first, second] : pairs) {
    network.layer_index(first);
    network.layer_index(second);
    if (first == second) throw ExperimentError("pair repeats layer '" + first.str() + "'");
    if (network.layer_count() < 3) {
      throw ExperimentError("removing '" + first.str() + "' and '" + second.str() +
                            "' would leave no layer");
    }
    LayerRemovalRow row{first, second, {}, {}, {}, {}};
    const auto without_first = remove_layer(network, first);
    row.after_first = compute_metrics(flatten(without_first), options);
    row.after_both = compute_metrics(flatten(remove_layer(without_first, second)), options);
    for (std::size_t i = 0; i < kFlattenMetrics.size(); ++i) {
      const double base = metric_value(table.original, kFlattenMetrics[i]);
      row.variation_first[i] =
          variation_percent(base, metric_value(row.after_first, kFlattenMetrics[i]));
      row.variation_second[i] =
          variation_percent(base, metric_value(row.after_both, kFlattenMetrics[i]));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

XRelevanceCurves run_xrelevance_sweep(const MultiplexNetwork& network, const LayerId& target,
                                      std::span<const double> fractions,
                                      const SweepOptions& options) {
  check_fractions(fractions);
  if (options.replicates < 1) throw ExperimentError("replicates must be >= 1");
  const auto layer = network.layer_index(target);
  XRelevanceCurves curves;
  curves.target = target;
  curves.layers.assign(network.layers().begin(), network.layers().end());
  curves.fractions.assign(fractions.begin(), fractions.end());
  curves.replicates = options.replicates;

  const auto layers = network.layer_count();
  const auto rows = fractions.size();
  const auto reps = options.replicates;
  const auto m = network.layer_edges(layer).size();
  const auto k_max = removal_count(fractions.back(), m);
  curves.samples.assign(rows * layers * reps, 0.0);

  parallel_for(reps, options.threads, [&](std::size_t r, unsigned) {
    const auto order = sample_prefix(m, k_max, mix_seed(mix_seed(options.seed, r), layer));
    for (std::size_t row = 0; row < rows; ++row) {
      const auto k = removal_count(fractions[row], m);
      const auto table =
          x_relevance_table(without_layer_edges(network, layer, std::span(order).first(k)));
      for (std::size_t l = 0; l < layers; ++l) {
        curves.samples[(row * layers + l) * reps + r] = table.layer_mean(l);
      }
    }
  });

  curves.mean.assign(rows * layers, 0.0);
  for (std::size_t i = 0; i < rows * layers; ++i) {
    double sum = 0.0;
    for (std::size_t r = 0; r < reps; ++r) sum += curves.samples[i * reps + r];
    curves.mean[i] = sum / static_cast<double>(reps);
  }
  return curves;
}

double spearman_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ExperimentError("spearman inputs differ in length");
  if (x.size() < 2) return 0.0;
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

double similarity_trend(const SweepGrid& grid, Metric metric, std::size_t row) {
  if (grid.column_values.size() != grid.cols()) {
    throw ExperimentError("grid columns carry no similarity values");
  }
  const auto slot = grid.metric_slot(metric);
  std::vector<double> dissimilarity;
  std::vector<double> variation;
  for (std::size_t c = 0; c < grid.cols(); ++c) {
    const auto& cell = grid.cell(slot, row, c);
    if (!cell.variation_pct) continue;
    dissimilarity.push_back(1.0 - grid.column_values[c]);
    variation.push_back(*cell.variation_pct);
  }
  return spearman_correlation(dissimilarity, variation);
}

std::vector<double> parse_fraction_list(std::string_view text) {
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw ExperimentError("range must be start:end:step");
    const double start = parse_double(parts[0]);
    const double end = parse_double(parts[1]);
    const double step = parse_double(parts[2]);
    if (!(step > 0.0)) throw ExperimentError("range step must be positive");
    const auto count = static_cast<std::size_t>(std::floor((end - start) / step + 1e-9)) + 1;
    if (end < start) throw ExperimentError("range end precedes start");
    for (std::size_t i = 0; i < count; ++i) {
      out.push_back((start + static_cast<double>(i) * step) / 100.0);
    }
  } else {
    for (const auto& part : split(text, ',')) out.push_back(parse_double(part) / 100.0);
  }
  check_fractions(out);
  return out;
}

// --- CSV --------------------------------------------------------------------

std::string emit_csv(const SweepGrid& grid, std::string_view header_comment) {
  std::string out = comment_block(header_comment);
  out += "missing_pct," + (grid.column_axis.empty() ? std::string("column") : grid.column_axis) +
         ",replicates";
  for (auto metric : grid.metrics) {
    const std::string name(metric_name(metric));
    out += "," + name + "_original," + name + "_perturbed," + name + "_variation_pct";
  }
  out += '\n';
  for (std::size_t row = 0; row < grid.rows(); ++row) {
    for (std::size_t c = 0; c < grid.cols(); ++c) {
      out += format_fixed(grid.fractions[row] * 100.0) + "," + grid.columns[c] + ",";
      out += std::to_string(grid.cell(0, row, c).replicates);
      for (std::size_t mi = 0; mi < grid.metrics.size(); ++mi) {
        const auto& cell = grid.cell(mi, row, c);
        out += "," + format_fixed(cell.original) + "," + format_fixed(cell.perturbed) + "," +
               format_optional(cell.variation_pct);
      }
      out += '\n';
    }
  }
  return out;
}

SweepGrid parse_grid_csv(std::string_view text) {
  std::vector<std::string> lines;
  for (auto& line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    lines.push_back(std::move(line));
  }
  if (lines.empty()) throw ExperimentError("CSV has no header");
  const auto header = split(lines.front(), ',');
  if (header.size() < 3 || (header.size() - 3) % 3 != 0 || header[0] != "missing_pct") {
    throw ExperimentError("unrecognised grid CSV header");
  }
  SweepGrid grid;
  grid.column_axis = header[1];
  for (std::size_t i = 3; i < header.size(); i += 3) {
    const auto& h = header[i];
    grid.metrics.push_back(parse_metric(h.substr(0, h.rfind("_original"))));
  }

  struct Row {
    double fraction;
    std::string column;
    std::size_t replicates;
    std::vector<VariationCell> cells;
  };
  std::vector<Row> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split(lines[i], ',');
    if (fields.size() != header.size()) throw ExperimentError("CSV row has wrong field count");
    Row row{parse_double(fields[0]) / 100.0, fields[1],
            static_cast<std::size_t>(parse_double(fields[2])), {}};
    for (std::size_t f = 3; f < fields.size(); f += 3) {
      VariationCell cell;
      cell.original = parse_double(fields[f]);
      cell.perturbed = parse_double(fields[f + 1]);
      if (fields[f + 2] != "UNDEFINED") cell.variation_pct = parse_double(fields[f + 2]);
      cell.replicates = row.replicates;
      row.cells.push_back(cell);
    }
    rows.push_back(std::move(row));
  }

  for (const auto& row : rows) {
    if (std::find(grid.columns.begin(), grid.columns.end(), row.column) == grid.columns.end()) {
      grid.columns.push_back(row.column);
    }
    if (grid.fractions.empty() || grid.fractions.back() != row.fraction) {
      grid.fractions.push_back(row.fraction);
    }
  }
  if (rows.size() != grid.rows() * grid.cols()) throw ExperimentError("CSV grid is not full");
  if (grid.column_axis == "similarity") {
    for (const auto& c : grid.columns) grid.column_values.push_back(parse_double(c));
  }
  grid.replicates = rows.empty() ? 0 : rows.front().replicates;
  grid.cells.resize(grid.metrics.size() * grid.rows() * grid.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto r = i / grid.cols();
    const auto c = i % grid.cols();
    for (std::size_t mi = 0; mi < grid.metrics.size(); ++mi) {
      grid.cell(mi, r, c) = rows[i].cells[mi];
    }
  }
  return grid;
}

std::string emit_csv(const LayerRemovalTable& table, std::string_view header_comment) {
  std::string out = comment_block(header_comment);
  out +=
      "first,second,D_first,D_second,CC_first,CC_second,APL_first,APL_second,"
      "connected_first,connected_second\n";
  for (const auto& row : table.rows) {
    out += row.first.str() + "," + row.second.str();
    for (std::size_t i = 0; i < kFlattenMetrics.size(); ++i) {
      out += "," + format_optional(row.variation_first[i]) + "," +
             format_optional(row.variation_second[i]);
    }
    out += std::string(",") + (row.after_first.is_connected ? "true" : "false") + "," +
           (row.after_both.is_connected ? "true" : "false") + "\n";
  }
  return out;
}

std::string emit_csv(const XRelevanceCurves& curves, std::string_view header_comment) {
  std::string out = comment_block(header_comment);
  out += "missing_pct,target,replicates";
  for (const auto& layer : curves.layers) out += ",xrel_" + layer.str();
  out += '\n';
  for (std::size_t row = 0; row < curves.fractions.size(); ++row) {
    out += format_fixed(curves.fractions[row] * 100.0) + "," + curves.target.str() + "," +
           std::to_string(curves.replicates);
    for (std::size_t l = 0; l < curves.layers.size(); ++l) {
      out += "," + format_fixed(curves.at(row, l));
    }
    out += '\n';
  }
  return out;
}

}  // namespace mpx
