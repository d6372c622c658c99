#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mpx/error.hpp"
#include "mpx/graph.hpp"

namespace mpx {

/// Malformed `.mpx` input. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("data-io", line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct ParseOptions {
  /// Strict mode rejects edges on undeclared layers, and on undeclared actors
  /// when an `#ACTORS` section is present. Permissive mode declares them.
  bool strict = false;
};

struct ParseWarning {
  std::size_t line;
  std::string message;
};

struct ParsedNetwork {
  MultiplexNetwork network;
  std::size_t duplicate_edges = 0;
  std::size_t self_loops = 0;
  std::vector<ParseWarning> warnings;
};

/// Parses the `.mpx` edge-list format:
///
///     #LAYERS
///     lunch
///     work
///     #ACTORS        (optional)
///     U1
///     #EDGES
///     U1,U2,lunch
///
/// Section headers are case-insensitive. Any other line starting with `#` is
/// a comment; blank lines are ignored; CRLF is accepted. Lines before the
/// first header are edge records.
ParsedNetwork parse_multiplex(std::string_view text, const ParseOptions& options = {});

/// Reads and parses a file. Throws Error("data-io") if it cannot be opened.
ParsedNetwork read_multiplex_file(const std::filesystem::path& path,
                                  const ParseOptions& options = {});

/// Canonical serialization: layers in network order, all actors sorted,
/// edges grouped by layer and sorted lexicographically; LF line endings.
std::string write_multiplex(const MultiplexNetwork& network);

void write_multiplex_file(const MultiplexNetwork& network, const std::filesystem::path& path,
                          std::string_view header_comment = {});

}  // namespace mpx
