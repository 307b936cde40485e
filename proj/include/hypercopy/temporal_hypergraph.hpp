#pragma once

#include <span>
#include <utility>
#include <vector>

#include "hypercopy/types.hpp"

namespace hypercopy {

// One timestamped hyperedge. `nodes` is a nonempty duplicate-free set,
// stored sorted ascending.
struct EdgeRecord {
  double timestamp = 0.0;
  std::vector<NodeId> nodes;

  bool operator==(const EdgeRecord&) const = default;
};

// An ordered sequence of timestamped hyperedges over a growing node set.
// Edges are ordered by (timestamp, arrival order); node ids are dense and
// assigned by first appearance in that order, so node v exists strictly
// before edge t iff v < nodes_before(t). Immutable after construction and
// safe for concurrent reads.
class TemporalHypergraph {
 public:
  TemporalHypergraph() = default;

  // Canonical constructor: stable-sorts by (timestamp, input order),
  // relabels node ids densely by first appearance, builds indices.
  // Throws DataError on an empty edge list, an empty edge, or a duplicate
  // node within an edge.
  static TemporalHypergraph build(std::vector<EdgeRecord> records);

  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_nodes() const { return incidence_.size(); }

  const EdgeRecord& edge(EdgeIndex t) const { return edges_[t]; }
  const std::vector<EdgeRecord>& edges() const { return edges_; }

  // Index of the edge in which v first appears.
  EdgeIndex first_seen(NodeId v) const { return first_seen_[v]; }

  // Ascending indices of the edges containing v.
  std::span<const EdgeIndex> incidence(NodeId v) const {
    return v < incidence_.size() ? std::span<const EdgeIndex>(incidence_[v])
                                 : std::span<const EdgeIndex>();
  }

  // Number of edges among edges[0..upto] containing v. Unknown nodes have
  // degree 0 by convention; upto is clamped to the last edge index.
  std::size_t degree(NodeId v, EdgeIndex upto) const;
  std::size_t degree(NodeId v) const {
    return v < incidence_.size() ? incidence_[v].size() : 0;
  }

  // (n, m) of the prefix ending at `upto` inclusive: m = upto+1 and n the
  // number of nodes first seen at or before upto.
  std::pair<std::size_t, std::size_t> snapshot_counts(EdgeIndex upto) const;

  // Nodes present strictly before edge t, i.e. |N^(t)| when edge t arrives.
  std::size_t nodes_before(EdgeIndex t) const {
    return t == 0 ? 0 : nodes_upto_[t - 1];
  }

  // Ascending indices of edges with index < upto sharing at least one node
  // with `e`. Exactly the support of the source posterior.
  std::vector<EdgeIndex> candidate_sources(std::span<const NodeId> e,
                                           EdgeIndex upto) const;

  // Total node-edge memberships (sum of edge sizes == sum of degrees).
  std::size_t total_pins() const { return total_pins_; }

  // Same edges re-ordered by `perm` (new index i holds old edges[perm[i]]),
  // timestamps rewritten to 0..m-1 and node ids relabeled by first
  // appearance in the new order. Used for pseudo-temporal shuffling.
  TemporalHypergraph reordered(const std::vector<EdgeIndex>& perm) const;

 private:
  std::vector<EdgeRecord> edges_;
  std::vector<EdgeIndex> first_seen_;
  std::vector<std::vector<EdgeIndex>> incidence_;
  std::vector<std::uint32_t> nodes_upto_;  // nodes_upto_[t]: nodes with first_seen <= t
  std::size_t total_pins_ = 0;

  void index_edges();  // expects edges_ sorted and densely labeled
};

}  // namespace hypercopy
