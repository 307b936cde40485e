#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hypercopy/params.hpp"
#include "hypercopy/sem.hpp"
#include "hypercopy/temporal_hypergraph.hpp"

namespace hypercopy {

// Log marginal likelihood of candidate edge `e` under parameters fitted to
// the first train_edges of h: log (1/m) sum_f P(e | f), f ranging over the
// training edges. Candidates sharing no node with any training edge score
// -inf. Nodes of e outside the training node set count as novel (beta).
// max_sources caps the posterior support per candidate; exceeding it throws
// DataError (pathologically dense data).
double candidate_score(std::span<const NodeId> e, const TemporalHypergraph& h,
                       EdgeIndex train_edges, const ModelParams& params,
                       std::size_t max_sources = 0);

// Negatives matched to the data: size drawn from the empirical edge-size
// distribution, nodes drawn proportionally to degree without replacement.
// A draw equal to an observed edge (as a set) is rejected; more than 100
// rejections for a single negative throws DataError.
std::vector<std::vector<NodeId>> sample_negatives_matched(const TemporalHypergraph& h,
                                                          std::size_t count,
                                                          std::uint64_t rng_seed);

// One negative per positive of size >= 2, obtained by replacing floor(k/2)
// member nodes with uniformly chosen non-member nodes. Size-1 positives are
// skipped (counted by the caller via the size difference).
std::vector<std::vector<NodeId>> sample_negatives_halfswap(
    const std::vector<std::vector<NodeId>>& positives, const TemporalHypergraph& h,
    std::uint64_t rng_seed);

// Mann-Whitney AUC over (score, is_positive) pairs; ties credit 0.5, -inf
// sentinels rank below every finite score. Throws DataError on single-class
// input.
double auc(std::span<const double> scores, const std::vector<bool>& labels);

// F1 with the decision threshold at the median of all pooled scores
// (predict positive iff score > median). 0 when precision or recall is
// undefined. Throws DataError on single-class input.
double f1_at_median(std::span<const double> scores, const std::vector<bool>& labels);
double f1_at_threshold(std::span<const double> scores, const std::vector<bool>& labels,
                       double threshold);

enum class NegativeSampler { matched, halfswap };
enum class MedianSource { pooled, train };

struct EvalConfig {
  Ordering ordering = Ordering::shuffled;
  NegativeSampler negatives = NegativeSampler::matched;
  double train_frac = 0.2;
  std::size_t max_positives = 100000;
  std::uint64_t rng_seed = 0;
  int kbar = 0;                   // 0: use the largest edge size in the data
  std::size_t batch_size = 30;
  std::size_t max_steps = 100000;
  std::size_t max_sources = 0;    // 0: uncapped
  MedianSource median_source = MedianSource::pooled;
};

struct ScoredCandidate {
  std::vector<NodeId> nodes;
  bool positive = false;
  double log_score = kMinusInf;
};

struct EvalReport {
  double auc = 0.0;
  double f1 = 0.0;
  double threshold = 0.0;
  std::size_t n_positives = 0;
  std::size_t n_negatives = 0;
  std::size_t sentinel_scores = 0;        // candidates with no possible source
  double unseen_node_fraction = 0.0;      // positives containing non-training nodes
  ModelParams fitted;
  bool fit_converged = false;
  std::size_t train_edges = 0;
  double seconds = 0.0;
  std::vector<ScoredCandidate> candidates;
  EvalConfig config;
};

// End-to-end protocol: fit on the first train_frac of the (temporal or
// shuffled pseudo-temporal) edge order, take up to max_positives held-out
// edges as positives, an equal number of sampler negatives, score everything
// against the trained prefix and report AUC / F1-at-median.
EvalReport evaluate(const TemporalHypergraph& h, const EvalConfig& config);

}  // namespace hypercopy
