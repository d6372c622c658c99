#include <algorithm>
#include <cmath>
#include <sstream>

#include "mpx/experiment.hpp"

namespace mpx {
namespace {

constexpr int kCellWidth = 48;
constexpr int kCellHeight = 22;
constexpr int kRowLabelWidth = 64;
constexpr int kPanelGap = 28;
constexpr int kTitleHeight = 28;
constexpr int kHeaderHeight = 40;
constexpr int kMargin = 12;

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// 255 (white) at zero variation down to 40 at the metric's maximum.
int shade(double variation, double max_variation) {
  if (max_variation <= 0.0) return 255;
  const double t = std::clamp(variation / max_variation, 0.0, 1.0);
  return static_cast<int>(std::lround(255.0 - 215.0 * t));
}

}  // namespace

std::string emit_heatmap(const SweepGrid& grid, std::string_view title,
                         std::string_view header_comment) {
  const int rows = static_cast<int>(grid.rows());
  const int cols = static_cast<int>(grid.cols());
  const int panels = static_cast<int>(grid.metrics.size());
  const int panel_width = kRowLabelWidth + cols * kCellWidth;
  const int width = 2 * kMargin + panels * panel_width + std::max(0, panels - 1) * kPanelGap;
  const int height = 2 * kMargin + kTitleHeight + kHeaderHeight + rows * kCellHeight + 24;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  if (!header_comment.empty()) {
    std::string comment(header_comment);
    // "--" may not appear inside an XML comment.
    for (auto pos = comment.find("--"); pos != std::string::npos; pos = comment.find("--", pos)) {
      comment.replace(pos, 2, "- -");
    }
    svg << "<!--\n" << comment << "\n-->\n";
  }
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  svg << "<defs><pattern id=\"undefined\" patternUnits=\"userSpaceOnUse\" width=\"6\" "
         "height=\"6\" patternTransform=\"rotate(45)\"><rect width=\"6\" height=\"6\" "
         "fill=\"#ffffff\"/><line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#000000\" "
         "stroke-width=\"2\"/></pattern></defs>\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"#ffffff\"/>\n";
  svg << "<g font-family=\"sans-serif\" font-size=\"10\">\n";
  if (!title.empty()) {
    svg << "<text x=\"" << kMargin << "\" y=\"" << kMargin + 14
        << "\" font-size=\"14\">" << escape(title) << "</text>\n";
  }

  for (int p = 0; p < panels; ++p) {
    const int x0 = kMargin + p * (panel_width + kPanelGap);
    const int y0 = kMargin + kTitleHeight;
    double max_variation = 0.0;
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        const auto& cell = grid.cell(static_cast<std::size_t>(p), static_cast<std::size_t>(r),
                                     static_cast<std::size_t>(c));
        if (cell.variation_pct) max_variation = std::max(max_variation, *cell.variation_pct);
      }
    }

    svg << "<text x=\"" << x0 + kRowLabelWidth << "\" y=\"" << y0 + 12
        << "\" font-size=\"12\" font-weight=\"bold\">"
        << escape(metric_name(grid.metrics[static_cast<std::size_t>(p)])) << " (max "
        << format_fixed(max_variation, 2) << "%)</text>\n";
    svg << "<text x=\"" << x0 << "\" y=\"" << y0 + kHeaderHeight - 6 << "\">missing %</text>\n";
    for (int c = 0; c < cols; ++c) {
      svg << "<text x=\"" << x0 + kRowLabelWidth + c * kCellWidth + kCellWidth / 2 << "\" y=\""
          << y0 + kHeaderHeight - 6 << "\" text-anchor=\"middle\">"
          << escape(grid.columns[static_cast<std::size_t>(c)]) << "</text>\n";
    }

    for (int r = 0; r < rows; ++r) {
      const int y = y0 + kHeaderHeight + r * kCellHeight;
      svg << "<text x=\"" << x0 + kRowLabelWidth - 6 << "\" y=\"" << y + kCellHeight / 2 + 4
          << "\" text-anchor=\"end\">"
          << format_fixed(grid.fractions[static_cast<std::size_t>(r)] * 100.0, 1) << "</text>\n";
      for (int c = 0; c < cols; ++c) {
        const auto& cell = grid.cell(static_cast<std::size_t>(p), static_cast<std::size_t>(r),
                                     static_cast<std::size_t>(c));
        const int x = x0 + kRowLabelWidth + c * kCellWidth;
        svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << kCellWidth
            << "\" height=\"" << kCellHeight << "\" stroke=\"#808080\" stroke-width=\"0.5\" ";
        if (!cell.variation_pct) {
          svg << "fill=\"url(#undefined)\"/>\n";
          continue;
        }
        const int g = shade(*cell.variation_pct, max_variation);
        svg << "fill=\"rgb(" << g << ',' << g << ',' << g << ")\"/>\n";
        svg << "<text x=\"" << x + kCellWidth / 2 << "\" y=\"" << y + kCellHeight / 2 + 4
            << "\" text-anchor=\"middle\" fill=\"" << (g < 140 ? "#ffffff" : "#000000") << "\">"
            << format_fixed(*cell.variation_pct, 1) << "</text>\n";
      }
    }
    svg << "<text x=\"" << x0 + kRowLabelWidth << "\" y=\""
        << y0 + kHeaderHeight + rows * kCellHeight + 16 << "\">" << escape(grid.column_axis)
        << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace mpx
