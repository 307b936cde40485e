#include "hypercopy/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace hypercopy {

namespace {

// Shared incremental traversal: processes edges in order, and for each edge
// counts its intersection sizes with all earlier co-incident edges by
// accumulating per-source counters over the incidence lists. Disjoint pairs
// are never enumerated; r_0 is defined by complement.
class PairCounter {
 public:
  PairCounter(const TemporalHypergraph& h, int kmax)
      : h_(h), kmax_(kmax), scratch_(h.num_edges(), 0),
        counts_(static_cast<std::size_t>(kmax) + 1, 0) {}

  // Fold in edge t (counts pairs (f, t) for f < t).
  void advance(EdgeIndex t) {
    touched_.clear();
    const EdgeRecord& e = h_.edge(t);
    for (NodeId v : e.nodes) {
      for (EdgeIndex f : h_.incidence(v)) {
        if (f >= t) break;  // incidence lists are ascending
        if (scratch_[f]++ == 0) touched_.push_back(f);
      }
    }
    for (EdgeIndex f : touched_) {
      const std::uint32_t c = scratch_[f];
      scratch_[f] = 0;
      if (c <= static_cast<std::uint32_t>(kmax_))
        ++counts_[c];
      else
        ++overflow_;
    }
  }

  IntersectionDensity density(std::size_t m) const {
    IntersectionDensity out;
    out.r.assign(static_cast<std::size_t>(kmax_) + 1, 0.0);
    const double pairs = 0.5 * static_cast<double>(m) * static_cast<double>(m - 1);
    double nonzero = 0.0;
    for (int k = 1; k <= kmax_; ++k) {
      out.r[k] = static_cast<double>(counts_[k]) / pairs;
      nonzero += out.r[k];
    }
    out.overflow = static_cast<double>(overflow_) / pairs;
    out.r[0] = 1.0 - nonzero - out.overflow;
    return out;
  }

 private:
  const TemporalHypergraph& h_;
  int kmax_;
  std::vector<std::uint32_t> scratch_;
  std::vector<EdgeIndex> touched_;
  std::vector<std::size_t> counts_;
  std::size_t overflow_ = 0;
};

}  // namespace

IntersectionDensity intersection_density(const TemporalHypergraph& h, EdgeIndex upto,
                                         int kmax) {
  const EdgeIndex last = static_cast<EdgeIndex>(h.num_edges() - 1);
  if (upto > last) upto = last;
  const std::size_t m = static_cast<std::size_t>(upto) + 1;
  if (m < 2) throw DataError("intersection density needs at least two edges");

  PairCounter counter(h, kmax);
  for (EdgeIndex t = 0; t <= upto; ++t) counter.advance(t);
  return counter.density(m);
}

RkSeries rk_timeseries(const TemporalHypergraph& h,
                       const std::vector<std::size_t>& checkpoints, int kmax) {
  RkSeries series;
  if (checkpoints.empty()) return series;
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end()))
    throw DataError("checkpoints must be ascending");

  PairCounter counter(h, kmax);
  EdgeIndex t = 0;
  for (std::size_t m : checkpoints) {
    if (m < 2 || m > h.num_edges())
      throw DataError("checkpoint " + std::to_string(m) + " out of range");
    while (t < m) counter.advance(t++);
    series.m.push_back(m);
    series.rows.push_back(counter.density(m));
  }
  return series;
}

std::map<std::size_t, std::size_t> degree_histogram(const TemporalHypergraph& h,
                                                    EdgeIndex upto) {
  std::map<std::size_t, std::size_t> hist;
  const auto [n, m] = h.snapshot_counts(upto);
  (void)m;
  for (NodeId v = 0; v < n; ++v) ++hist[h.degree(v, upto)];
  return hist;
}

std::map<std::size_t, std::size_t> edge_size_histogram(const TemporalHypergraph& h,
                                                       EdgeIndex upto) {
  std::map<std::size_t, std::size_t> hist;
  const auto [n, m] = h.snapshot_counts(upto);
  (void)n;
  for (EdgeIndex t = 0; t < m; ++t) ++hist[h.edge(t).nodes.size()];
  return hist;
}

double tail_slope(const std::map<std::size_t, std::size_t>& histogram, std::size_t dmin) {
  if (dmin < 1) throw DataError("dmin must be at least 1");
  std::size_t n = 0;
  std::size_t distinct = 0;
  double log_sum = 0.0;
  const double shifted_min = static_cast<double>(dmin) - 0.5;
  for (const auto& [d, count] : histogram) {
    if (d < dmin || count == 0) continue;
    ++distinct;
    n += count;
    log_sum += static_cast<double>(count) * std::log(static_cast<double>(d) / shifted_min);
  }
  if (distinct < 10)
    throw DataError("tail fit needs at least 10 distinct degrees >= dmin (got " +
                    std::to_string(distinct) + ")");
  return 1.0 + static_cast<double>(n) / log_sum;
}

}  // namespace hypercopy
