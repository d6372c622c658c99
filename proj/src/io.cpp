#include "mpx/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace mpx {
namespace {

enum class Section { kLayers, kActors, kEdges };

std::string_view trim(std::string_view s) {
  auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

template <typename Id>
Id parse_label(std::string_view field, std::size_t line, const char* what) {
  auto text = trim(field);
  if (!is_valid_label(text)) {
    throw ParseError(line, std::string("invalid ") + what + " label '" + std::string(text) + "'");
  }
  return Id(std::string(text));
}

}  // namespace

ParsedNetwork parse_multiplex(std::string_view text, const ParseOptions& options) {
  NetworkBuilder builder;
  ParsedNetwork result;
  Section section = Section::kEdges;
  bool saw_actor_section = false;
  std::unordered_set<std::string> declared_actors;

  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    auto line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto header = upper(trim(line.substr(1)));
      if (header == "LAYERS") {
        section = Section::kLayers;
      } else if (header == "ACTORS") {
        section = Section::kActors;
        saw_actor_section = true;
      } else if (header == "EDGES") {
        section = Section::kEdges;
      }
      continue;
    }

    switch (section) {
      case Section::kLayers:
        builder.add_layer(parse_label<LayerId>(line, line_no, "layer"));
        break;
      case Section::kActors: {
        auto actor = parse_label<ActorId>(line, line_no, "actor");
        declared_actors.insert(actor.str());
        builder.add_actor(actor);
        break;
      }
      case Section::kEdges: {
        std::string_view fields[3];
        std::size_t count = 0;
        std::string_view rest = line;
        while (true) {
          auto comma = rest.find(',');
          if (count == 3) throw ParseError(line_no, "expected 'actor,actor,layer'");
          fields[count++] = rest.substr(0, comma);
          if (comma == std::string_view::npos) break;
          rest = rest.substr(comma + 1);
        }
        if (count != 3) throw ParseError(line_no, "expected 'actor,actor,layer'");
        auto a = parse_label<ActorId>(fields[0], line_no, "actor");
        auto b = parse_label<ActorId>(fields[1], line_no, "actor");
        auto layer = parse_label<LayerId>(fields[2], line_no, "layer");
        if (options.strict) {
          if (!builder.has_layer(layer)) {
            throw ParseError(line_no, "undeclared layer '" + layer.str() + "'");
          }
          if (saw_actor_section) {
            for (const auto* actor : {&a, &b}) {
              if (!declared_actors.contains(actor->str())) {
                throw ParseError(line_no, "undeclared actor '" + actor->str() + "'");
              }
            }
          }
        }
        if (!builder.add_edge(a, b, layer)) {
          result.warnings.push_back({line_no, "self-loop on '" + a.str() + "' skipped"});
        }
        break;
      }
    }
  }

  result.network = builder.build();
  result.duplicate_edges = builder.duplicates_dropped();
  result.self_loops = builder.self_loops_dropped();
  return result;
}

ParsedNetwork read_multiplex_file(const std::filesystem::path& path, const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("data-io", "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_multiplex(buffer.str(), options);
}

std::string write_multiplex(const MultiplexNetwork& network) {
  std::string out = "#LAYERS\n";
  for (const auto& layer : network.layers()) out += layer.str() + '\n';
  out += "#ACTORS\n";
  for (const auto& actor : network.actors()) out += actor.str() + '\n';
  out += "#EDGES\n";
  for (std::size_t l = 0; l < network.layer_count(); ++l) {
    const auto& layer = network.layer(l).str();
    for (const auto& e : network.layer_edges(l)) {
      out += network.actor(e.u).str();
      out += ',';
      out += network.actor(e.v).str();
      out += ',';
      out += layer;
      out += '\n';
    }
  }
  return out;
}

void write_multiplex_file(const MultiplexNetwork& network, const std::filesystem::path& path,
                          std::string_view header_comment) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("data-io", "cannot write '" + path.string() + "'");
  std::istringstream lines{std::string(header_comment)};
  for (std::string line; std::getline(lines, line);) out << "# " << line << '\n';
  out << write_multiplex(network);
  if (!out) throw Error("data-io", "write failed for '" + path.string() + "'");
}

}  // namespace mpx
