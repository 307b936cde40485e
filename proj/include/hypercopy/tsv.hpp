#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hypercopy/temporal_hypergraph.hpp"

namespace hypercopy {

// Canonical on-disk format: UTF-8, one edge per line,
//   <timestamp>\t<node>,<node>,...
// `#`-prefixed lines are comments; node tokens are arbitrary strings and are
// remapped to dense ids by first appearance in the sorted edge order.
struct LoadResult {
  TemporalHypergraph hypergraph;
  std::vector<std::string> names;  // names[i] is the original token of node i
};

// `with_timestamps = false` accepts lines holding only the node list and
// assigns the input line order as the timestamp.
LoadResult load_tsv(std::istream& in, bool with_timestamps = true);
LoadResult load_tsv_file(const std::string& path, bool with_timestamps = true);

void write_tsv(const TemporalHypergraph& h, std::ostream& out);
void write_tsv_file(const TemporalHypergraph& h, const std::string& path);

// Sidecar label file: line i holds the original token of node i.
void write_names_file(const std::vector<std::string>& names, const std::string& path);

}  // namespace hypercopy
