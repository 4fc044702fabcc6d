#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "citetopo/edge_list.hpp"
#include "citetopo/graph.hpp"

namespace citetopo {

/// One dataset record. In the manifest file records are blocks of
/// `key = value` lines, each block starting with a `name` key:
///
///     name = cit-HepPh
///     path = data/cit-HepPh.txt
///     format = snap
///     expected_n = 34546
///     expected_m = 421534
///     checksum = sha256:...
///
/// Relative paths resolve against the manifest's directory.
struct DatasetManifest {
  std::string name;
  std::filesystem::path path;
  EdgeListFormat format = EdgeListFormat::snap;
  std::optional<std::size_t> expected_n;
  std::optional<std::size_t> expected_m;
  std::string checksum;  // empty = unchecked
};

std::vector<DatasetManifest> parse_manifest(std::istream& in,
                                            const std::filesystem::path& base_dir = {});
std::vector<DatasetManifest> load_manifest(const std::filesystem::path& path);
void write_manifest(std::ostream& out, const std::vector<DatasetManifest>& entries);

/// "sha256:<hex>" over the file's bytes.
std::string file_checksum(const std::filesystem::path& path);

struct LoadedDataset {
  DirectedGraph graph;
  PreprocessReport report;
  std::vector<std::string> warnings;
};

/// Parses and preprocesses the dataset. A checksum mismatch becomes a
/// warning; an n/m mismatch after preprocessing throws DataError.
LoadedDataset load_dataset(const DatasetManifest& entry);

}  // namespace citetopo
