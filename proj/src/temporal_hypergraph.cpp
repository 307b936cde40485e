#include "hypercopy/temporal_hypergraph.hpp"

#include <algorithm>
#include <numeric>

namespace hypercopy {

TemporalHypergraph TemporalHypergraph::build(std::vector<EdgeRecord> records) {
  if (records.empty()) throw DataError("hypergraph has no edges");

  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return records[a].timestamp < records[b].timestamp;
  });

  TemporalHypergraph h;
  h.edges_.reserve(records.size());
  for (std::size_t pos : order) h.edges_.push_back(std::move(records[pos]));

  // Relabel node ids densely by first appearance in the sorted order.
  NodeId max_id = 0;
  for (const EdgeRecord& e : h.edges_) {
    if (e.nodes.empty()) throw DataError("edge with no nodes");
    for (NodeId v : e.nodes) max_id = std::max(max_id, v);
  }
  constexpr NodeId kUnset = static_cast<NodeId>(-1);
  std::vector<NodeId> relabel(static_cast<std::size_t>(max_id) + 1, kUnset);
  NodeId next = 0;
  for (EdgeRecord& e : h.edges_) {
    for (NodeId& v : e.nodes) {
      if (relabel[v] == kUnset) relabel[v] = next++;
      v = relabel[v];
    }
    std::sort(e.nodes.begin(), e.nodes.end());
    for (std::size_t i = 1; i < e.nodes.size(); ++i)
      if (e.nodes[i] == e.nodes[i - 1]) throw DataError("duplicate node within an edge");
  }

  h.index_edges();
  return h;
}

void TemporalHypergraph::index_edges() {
  NodeId n = 0;
  for (const EdgeRecord& e : edges_)
    for (NodeId v : e.nodes) n = std::max(n, v + 1);

  first_seen_.assign(n, static_cast<EdgeIndex>(-1));
  incidence_.assign(n, {});
  nodes_upto_.assign(edges_.size(), 0);
  total_pins_ = 0;

  std::uint32_t seen = 0;
  for (EdgeIndex t = 0; t < edges_.size(); ++t) {
    for (NodeId v : edges_[t].nodes) {
      if (first_seen_[v] == static_cast<EdgeIndex>(-1)) {
        first_seen_[v] = t;
        ++seen;
      }
      incidence_[v].push_back(t);
      ++total_pins_;
    }
    nodes_upto_[t] = seen;
  }
}

std::size_t TemporalHypergraph::degree(NodeId v, EdgeIndex upto) const {
  if (v >= incidence_.size()) return 0;
  if (edges_.empty()) return 0;
  const EdgeIndex last = static_cast<EdgeIndex>(edges_.size() - 1);
  if (upto > last) upto = last;
  const auto& inc = incidence_[v];
  return static_cast<std::size_t>(
      std::upper_bound(inc.begin(), inc.end(), upto) - inc.begin());
}

std::pair<std::size_t, std::size_t> TemporalHypergraph::snapshot_counts(
    EdgeIndex upto) const {
  if (edges_.empty()) return {0, 0};
  const EdgeIndex last = static_cast<EdgeIndex>(edges_.size() - 1);
  if (upto > last) upto = last;
  return {nodes_upto_[upto], static_cast<std::size_t>(upto) + 1};
}

std::vector<EdgeIndex> TemporalHypergraph::candidate_sources(
    std::span<const NodeId> e, EdgeIndex upto) const {
  std::vector<EdgeIndex> out;
  for (NodeId v : e) {
    if (v >= incidence_.size()) continue;
    const auto& inc = incidence_[v];
    auto end = std::lower_bound(inc.begin(), inc.end(), upto);
    out.insert(out.end(), inc.begin(), end);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TemporalHypergraph TemporalHypergraph::reordered(
    const std::vector<EdgeIndex>& perm) const {
  std::vector<EdgeRecord> records;
  records.reserve(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    EdgeRecord e = edges_[perm[i]];
    e.timestamp = static_cast<double>(i);
    records.push_back(std::move(e));
  }
  return build(std::move(records));
}

}  // namespace hypercopy
