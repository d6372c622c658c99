#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mpx/error.hpp"
#include "mpx/graph.hpp"
#include "mpx/metrics.hpp"
#include "mpx/synthgen.hpp"

namespace mpx {

class ExperimentError : public Error {
 public:
  explicit ExperimentError(const std::string& message) : Error("experiment", message) {}
};

enum class Metric { kDiameter, kClustering, kPathLength, kXRelevanceMean };

/// "D", "CC", "APL", "xRelevance-mean".
std::string_view metric_name(Metric metric) noexcept;
Metric parse_metric(std::string_view name);

inline constexpr std::array<Metric, 3> kFlattenMetrics = {Metric::kDiameter, Metric::kClustering,
                                                         Metric::kPathLength};

/// 100 * |perturbed - original| / |original|. Zero when both are zero;
/// nullopt (undefined) when only the original is zero.
std::optional<double> variation_percent(double original, double perturbed);

/// Reads one flatten metric out of a report.
double metric_value(const MetricsReport& report, Metric metric);

struct VariationCell {
  double original = 0.0;
  double perturbed = 0.0;                ///< replicate mean
  std::optional<double> variation_pct;  ///< replicate mean; nullopt = undefined
  std::size_t replicates = 0;
};

/// Variation-% per (metric, missing fraction, column). Columns are
/// similarity targets or layers depending on the experiment.
struct SweepGrid {
  std::string column_axis;
  std::vector<double> fractions;
  std::vector<std::string> columns;
  std::vector<double> column_values;  ///< numeric column keys (similarity), may be empty
  std::vector<Metric> metrics;
  std::size_t replicates = 0;
  std::vector<VariationCell> cells;  ///< [metric][row][column]
  /// Perturbed metric value per replicate, [metric][row][column][replicate].
  /// Empty for grids read back from CSV.
  std::vector<double> samples;

  std::size_t rows() const noexcept { return fractions.size(); }
  std::size_t cols() const noexcept { return columns.size(); }

  std::size_t cell_index(std::size_t metric, std::size_t row, std::size_t col) const {
    return (metric * rows() + row) * cols() + col;
  }
  const VariationCell& cell(std::size_t metric, std::size_t row, std::size_t col) const {
    return cells.at(cell_index(metric, row, col));
  }
  VariationCell& cell(std::size_t metric, std::size_t row, std::size_t col) {
    return cells.at(cell_index(metric, row, col));
  }
  double sample(std::size_t metric, std::size_t row, std::size_t col, std::size_t rep) const {
    return samples.at(cell_index(metric, row, col) * replicates + rep);
  }
  /// Position of `metric` in `metrics`; throws if absent.
  std::size_t metric_slot(Metric metric) const;
};

struct SweepOptions {
  std::size_t replicates = 20;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  MetricsOptions metrics;  ///< its thread count is ignored inside sweeps
};

/// Aggregates replicate values into a cell. Undefined when the original is
/// zero and any replicate is not.
VariationCell aggregate_cell(double original, std::span<const double> replicate_values);

/// Edge-removal sweep on a real network. Each entry of `layers` becomes a
/// column whose edges alone are removed; metrics are taken on the flatten of
/// all layers. Replicate r at fraction f equals
/// remove_edges_random(network, {layer}, f, mix_seed(seed, r)).
SweepGrid run_missing_sweep(const MultiplexNetwork& network, std::span<const LayerId> layers,
                            std::span<const double> fractions, const SweepOptions& options);

/// Edge removal from layer 0 of each synthetic network, one column per
/// network, metrics on the two-layer flatten.
SweepGrid run_similarity_sweep(std::span<const SyntheticMultiplex> networks,
                               std::span<const double> fractions, const SweepOptions& options);

struct LayerRemovalRow {
  LayerId first;
  LayerId second;
  MetricsReport after_first;
  MetricsReport after_both;
  std::array<std::optional<double>, 3> variation_first;   ///< D, CC, APL
  std::array<std::optional<double>, 3> variation_second;  ///< D, CC, APL
};

struct LayerRemovalTable {
  MetricsReport original;
  std::vector<LayerRemovalRow> rows;
};

/// For each ordered pair: variation of D, CC and APL of the flatten after
/// removing the first layer, then after removing both, relative to the flatten
/// of the full network.
LayerRemovalTable run_layer_removal(const MultiplexNetwork& network,
                                    std::span<const std::pair<LayerId, LayerId>> pairs,
                                    const MetricsOptions& options = {});

struct XRelevanceCurves {
  LayerId target;
  std::vector<LayerId> layers;
  std::vector<double> fractions;
  std::size_t replicates = 0;
  std::vector<double> mean;     ///< [row][layer], replicate mean of the layer mean
  std::vector<double> samples;  ///< [row][layer][replicate]

  double at(std::size_t row, std::size_t layer) const { return mean.at(row * layers.size() + layer); }
};

/// Removes edges from `target` at each fraction and records the mean
/// xRelevance of every layer over all actors.
XRelevanceCurves run_xrelevance_sweep(const MultiplexNetwork& network, const LayerId& target,
                                      std::span<const double> fractions,
                                      const SweepOptions& options);

/// Spearman rank correlation with average ranks for ties. Returns 0 when
/// either input is constant or shorter than two.
double spearman_correlation(std::span<const double> x, std::span<const double> y);

/// Spearman correlation between (1 - column value) and the variation-% of
/// `metric` on `row`, skipping undefined cells.
double similarity_trend(const SweepGrid& grid, Metric metric, std::size_t row);

/// `start:end:step` in percent (inclusive end) or a comma list of percents,
/// returned as fractions in [0, 1].
std::vector<double> parse_fraction_list(std::string_view text);

/// CSV with one row per (fraction, column) and original/perturbed/variation
/// columns per metric, fixed 6-decimal formatting, LF endings. Every line of
/// `header_comment` is emitted first, prefixed with "# ".
std::string emit_csv(const SweepGrid& grid, std::string_view header_comment = {});
/// Reads emit_csv() output back (cells only, no replicate samples).
SweepGrid parse_grid_csv(std::string_view text);

std::string emit_csv(const LayerRemovalTable& table, std::string_view header_comment = {});
std::string emit_csv(const XRelevanceCurves& curves, std::string_view header_comment = {});

/// Standalone SVG: one monochrome panel per metric, cell darkness
/// proportional to variation-% over the metric's maximum, undefined cells
/// hatched.
std::string emit_heatmap(const SweepGrid& grid, std::string_view title = {},
                         std::string_view header_comment = {});

/// Fixed-point decimal with `digits` places, locale independent.
std::string format_fixed(double value, int digits = 6);

}  // namespace mpx
