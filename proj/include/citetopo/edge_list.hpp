#pragma once

#include <filesystem>
#include <istream>
#include <string_view>

#include "citetopo/graph.hpp"

namespace citetopo {

/// SNAP files comment with '#', KONECT files with '%'. Data lines hold
/// exactly two whitespace-separated integer labels: "source target".
enum class EdgeListFormat { snap, konect };

EdgeListFormat parse_format(std::string_view name);
const char* to_string(EdgeListFormat format) noexcept;

/// Parses every data line. Duplicates and self-loops are kept.
/// Throws ParseError with the line number on malformed lines.
RawEdgeList parse_edge_list(std::istream& in, EdgeListFormat format,
                            std::string_view source_name = "<stream>");

RawEdgeList read_edge_list(const std::filesystem::path& path, EdgeListFormat format);

}  // namespace citetopo
