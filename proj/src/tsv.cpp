#include "hypercopy/tsv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace hypercopy {

namespace {

double parse_timestamp(const std::string& token, std::size_t line_no) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw DataError("line " + std::to_string(line_no) + ": bad timestamp '" + token + "'");
  return value;
}

}  // namespace

LoadResult load_tsv(std::istream& in, bool with_timestamps) {
  std::vector<EdgeRecord> records;
  std::unordered_map<std::string, NodeId> token_ids;
  std::vector<std::string> tokens_in_input_order;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;

    std::string node_part;
    EdgeRecord rec;
    if (with_timestamps) {
      auto tab = line.find('\t');
      if (tab == std::string::npos)
        throw DataError("line " + std::to_string(line_no) + ": expected <timestamp>\\t<nodes>");
      rec.timestamp = parse_timestamp(line.substr(0, tab), line_no);
      node_part = line.substr(tab + 1);
    } else {
      rec.timestamp = static_cast<double>(records.size());
      node_part = line;
    }

    std::size_t start = 0;
    while (start <= node_part.size()) {
      std::size_t comma = node_part.find(',', start);
      std::string token = node_part.substr(
          start, comma == std::string::npos ? std::string::npos : comma - start);
      if (token.empty())
        throw DataError("line " + std::to_string(line_no) + ": empty node token");
      auto [it, inserted] = token_ids.try_emplace(token, static_cast<NodeId>(token_ids.size()));
      if (inserted) tokens_in_input_order.push_back(token);
      for (NodeId v : rec.nodes)
        if (v == it->second)
          throw DataError("line " + std::to_string(line_no) + ": duplicate node '" + token + "'");
      rec.nodes.push_back(it->second);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (rec.nodes.empty())
      throw DataError("line " + std::to_string(line_no) + ": empty edge");
    records.push_back(std::move(rec));
  }
  if (records.empty()) throw DataError("no edges in input");

  // build() relabels by first appearance in sorted order; recover the final
  // id of each original token so the sidecar names line up.
  LoadResult out;
  // Pre-relabel ids are assigned in input order; build() maps them again.
  // Track the mapping by replaying: find, for each final id, the original token.
  std::vector<EdgeRecord> copy = records;
  out.hypergraph = TemporalHypergraph::build(std::move(records));

  // Replay the sort + first-appearance relabel on the copy to align names.
  std::vector<std::size_t> order(copy.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return copy[a].timestamp < copy[b].timestamp;
  });
  out.names.resize(tokens_in_input_order.size());
  std::vector<bool> assigned(tokens_in_input_order.size(), false);
  NodeId next = 0;
  for (std::size_t pos : order) {
    for (NodeId v : copy[pos].nodes) {
      if (!assigned[v]) {
        assigned[v] = true;
        out.names[next++] = tokens_in_input_order[v];
      }
    }
  }
  return out;
}

LoadResult load_tsv_file(const std::string& path, bool with_timestamps) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return load_tsv(in, with_timestamps);
}

void write_tsv(const TemporalHypergraph& h, std::ostream& out) {
  std::ostringstream buf;
  buf.precision(17);
  for (const EdgeRecord& e : h.edges()) {
    const double ts = e.timestamp;
    if (ts == static_cast<double>(static_cast<long long>(ts)))
      buf << static_cast<long long>(ts);
    else
      buf << ts;
    buf << '\t';
    for (std::size_t i = 0; i < e.nodes.size(); ++i) {
      if (i) buf << ',';
      buf << e.nodes[i];
    }
    buf << '\n';
  }
  out << buf.str();
  if (!out) throw DataError("write failed");
}

void write_tsv_file(const TemporalHypergraph& h, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  write_tsv(h, out);
}

void write_names_file(const std::vector<std::string>& names, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  for (const std::string& name : names) out << name << '\n';
  if (!out) throw DataError("write failed");
}

}  // namespace hypercopy
