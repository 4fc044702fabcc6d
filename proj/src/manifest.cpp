#include "citetopo/manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <fstream>
#include <memory>
#include <ostream>

#include "citetopo/error.hpp"

namespace citetopo {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::size_t parse_count(std::string_view value, std::size_t line) {
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw ParseError("manifest", line, "expected a non-negative integer, got '" + std::string(value) + "'");
  return out;
}

}  // namespace

std::vector<DatasetManifest> parse_manifest(std::istream& in, const std::filesystem::path& base_dir) {
  std::vector<DatasetManifest> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ParseError("manifest", line_no, "expected 'key = value'");
    auto key = trim(text.substr(0, eq));
    auto value = trim(text.substr(eq + 1));

    if (key == "name") {
      entries.emplace_back().name = std::string(value);
      continue;
    }
    if (entries.empty()) throw ParseError("manifest", line_no, "record must start with 'name'");
    DatasetManifest& e = entries.back();
    if (key == "path") {
      std::filesystem::path p{std::string(value)};
      e.path = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
    } else if (key == "format") {
      e.format = parse_format(value);
    } else if (key == "expected_n") {
      e.expected_n = parse_count(value, line_no);
    } else if (key == "expected_m") {
      e.expected_m = parse_count(value, line_no);
    } else if (key == "checksum") {
      e.checksum = std::string(value);
    } else {
      throw ParseError("manifest", line_no, "unknown key '" + std::string(key) + "'");
    }
  }
  for (const auto& e : entries)
    if (e.path.empty()) throw DataError("manifest: dataset '" + e.name + "' has no path");
  return entries;
}

std::vector<DatasetManifest> load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path.string() + ": cannot open manifest");
  return parse_manifest(in, path.parent_path());
}

void write_manifest(std::ostream& out, const std::vector<DatasetManifest>& entries) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (i) out << '\n';
    out << "name = " << e.name << '\n' << "path = " << e.path.string() << '\n'
        << "format = " << to_string(e.format) << '\n';
    if (e.expected_n) out << "expected_n = " << *e.expected_n << '\n';
    if (e.expected_m) out << "expected_m = " << *e.expected_m << '\n';
    if (!e.checksum.empty()) out << "checksum = " << e.checksum << '\n';
  }
}

std::string file_checksum(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path.string() + ": cannot open");

  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 unavailable");
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);

  static constexpr char hex[] = "0123456789abcdef";
  std::string out = "sha256:";
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

LoadedDataset load_dataset(const DatasetManifest& entry) {
  std::vector<std::string> warnings;
  if (!entry.checksum.empty()) {
    auto actual = file_checksum(entry.path);
    if (actual != entry.checksum)
      warnings.push_back("checksum mismatch for '" + entry.name + "': manifest " + entry.checksum +
                         ", file " + actual);
  }
  PreprocessReport report;
  DirectedGraph g = preprocess(read_edge_list(entry.path, entry.format), &report);
  if (entry.expected_n && *entry.expected_n != g.num_nodes())
    throw DataError("dataset '" + entry.name + "': expected n = " + std::to_string(*entry.expected_n) +
                    ", got " + std::to_string(g.num_nodes()));
  if (entry.expected_m && *entry.expected_m != g.num_edges())
    throw DataError("dataset '" + entry.name + "': expected m = " + std::to_string(*entry.expected_m) +
                    ", got " + std::to_string(g.num_edges()));
  return LoadedDataset{std::move(g), report, std::move(warnings)};
}

}  // namespace citetopo
