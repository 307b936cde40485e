#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "hypercopy/temporal_hypergraph.hpp"

namespace hypercopy {

// Fractions of unordered edge pairs by intersection size: r[k] for
// k = 0..kmax plus an overflow bucket for larger intersections; the row
// (r, overflow) sums to 1 with r[0] defined by complement.
struct IntersectionDensity {
  std::vector<double> r;
  double overflow = 0.0;
};

// Exact intersection densities of the prefix ending at `upto` (inclusive).
// Requires at least two edges in the prefix.
IntersectionDensity intersection_density(const TemporalHypergraph& h, EdgeIndex upto,
                                         int kmax = 12);

struct RkSeries {
  std::vector<std::size_t> m;               // prefix sizes, ascending
  std::vector<IntersectionDensity> rows;    // one per checkpoint
};

// intersection_density at each checkpoint prefix, maintained incrementally
// in one pass over co-incident edge pairs.
RkSeries rk_timeseries(const TemporalHypergraph& h,
                       const std::vector<std::size_t>& checkpoints, int kmax = 12);

// Exact histograms over the prefix ending at `upto`.
std::map<std::size_t, std::size_t> degree_histogram(const TemporalHypergraph& h,
                                                    EdgeIndex upto);
std::map<std::size_t, std::size_t> edge_size_histogram(const TemporalHypergraph& h,
                                                       EdgeIndex upto);

// Power-law tail exponent via the Hill estimator in its continuous
// approximation for integer data:
//   zeta = 1 + N / sum_i ln(d_i / (dmin - 1/2)),
// over all observations d_i >= dmin. Requires at least 10 distinct degree
// values >= dmin; throws DataError otherwise.
double tail_slope(const std::map<std::size_t, std::size_t>& histogram,
                  std::size_t dmin = 10);

}  // namespace hypercopy
