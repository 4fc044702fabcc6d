#include "citetopo/edge_list.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <string>

#include "citetopo/error.hpp"

namespace citetopo {

EdgeListFormat parse_format(std::string_view name) {
  if (name == "snap") return EdgeListFormat::snap;
  if (name == "konect") return EdgeListFormat::konect;
  throw InvalidArgument("unknown edge-list format '" + std::string(name) + "'");
}

const char* to_string(EdgeListFormat format) noexcept {
  return format == EdgeListFormat::konect ? "konect" : "snap";
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

}  // namespace

RawEdgeList parse_edge_list(std::istream& in, EdgeListFormat format, std::string_view source_name) {
  const char comment = format == EdgeListFormat::konect ? '%' : '#';
  const std::string source(source_name);
  if (!in) throw DataError(source + ": unreadable stream");

  RawEdgeList raw;
  std::string line;
  std::size_t line_no = 0;
  std::string_view tokens[3];
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest(line);
    std::size_t count = 0;
    while (!rest.empty()) {
      std::size_t start = 0;
      while (start < rest.size() && is_space(rest[start])) ++start;
      rest.remove_prefix(start);
      if (rest.empty()) break;
      std::size_t end = 0;
      while (end < rest.size() && !is_space(rest[end])) ++end;
      if (count < 3) tokens[count] = rest.substr(0, end);
      ++count;
      rest.remove_prefix(end);
    }
    if (count == 0 || tokens[0].front() == comment) continue;
    if (count != 2)
      throw ParseError(source, line_no, "expected 2 tokens, found " + std::to_string(count));

    Label ends[2];
    for (int i = 0; i < 2; ++i) {
      auto tok = tokens[i];
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), ends[i]);
      if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(source, line_no, "non-integer token '" + std::string(tok) + "'");
    }
    raw.edges.push_back({ends[0], ends[1]});
    raw.labels.push_back(ends[0]);
    raw.labels.push_back(ends[1]);
  }
  if (in.bad()) throw DataError(source + ": read error after line " + std::to_string(line_no));

  std::sort(raw.labels.begin(), raw.labels.end());
  raw.labels.erase(std::unique(raw.labels.begin(), raw.labels.end()), raw.labels.end());
  return raw;
}

RawEdgeList read_edge_list(const std::filesystem::path& path, EdgeListFormat format) {
  std::ifstream in(path);
  if (!in) throw DataError(path.string() + ": cannot open");
  return parse_edge_list(in, format, path.string());
}

}  // namespace citetopo
