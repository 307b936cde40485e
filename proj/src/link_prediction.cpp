#include "hypercopy/link_prediction.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "hypercopy/rng.hpp"

namespace hypercopy {

namespace {

struct NodeSetHash {
  std::size_t operator()(const std::vector<NodeId>& nodes) const {
    std::size_t h = 0x9E3779B97F4A7C15ULL;
    for (NodeId v : nodes) {
      h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

}  // namespace

double candidate_score(std::span<const NodeId> e, const TemporalHypergraph& h,
                       EdgeIndex train_edges, const ModelParams& params,
                       std::size_t max_sources) {
  if (train_edges == 0 || train_edges > h.num_edges())
    throw DataError("invalid training prefix");
  const std::size_t n_train = h.nodes_before(train_edges);

  int novel = 0;
  for (NodeId v : e)
    if (v >= n_train) ++novel;
  if (params.beta_at(novel) <= 0.0) return kMinusInf;

  std::vector<EdgeIndex> sources = h.candidate_sources(e, train_edges);
  if (max_sources != 0 && sources.size() > max_sources)
    throw DataError("candidate has " + std::to_string(sources.size()) +
                    " possible sources, above the configured cap of " +
                    std::to_string(max_sources) +
                    "; the data is too dense for marginal-likelihood scoring");
  if (sources.empty()) return kMinusInf;

  // Marginal over the uniform source choice, accumulated in log space.
  std::vector<double> log_liks;
  log_liks.reserve(sources.size());
  double max_log = kMinusInf;
  for (EdgeIndex f : sources) {
    const double ll = log_edge_generation_likelihood(e, h.edge(f), n_train, params, true);
    if (ll == kMinusInf) continue;
    log_liks.push_back(ll);
    max_log = std::max(max_log, ll);
  }
  if (log_liks.empty()) return kMinusInf;
  double sum = 0.0;
  for (double ll : log_liks) sum += std::exp(ll - max_log);
  return max_log + std::log(sum) - std::log(static_cast<double>(train_edges));
}

std::vector<std::vector<NodeId>> sample_negatives_matched(const TemporalHypergraph& h,
                                                          std::size_t count,
                                                          std::uint64_t rng_seed) {
  if (h.num_edges() == 0) throw DataError("empty hypergraph");
  Rng rng(rng_seed);

  std::unordered_set<std::vector<NodeId>, NodeSetHash> observed;
  observed.reserve(h.num_edges() * 2);
  std::vector<std::size_t> sizes;
  sizes.reserve(h.num_edges());
  std::vector<NodeId> membership;
  membership.reserve(h.total_pins());
  for (const EdgeRecord& e : h.edges()) {
    observed.insert(e.nodes);
    sizes.push_back(e.nodes.size());
    membership.insert(membership.end(), e.nodes.begin(), e.nodes.end());
  }

  std::vector<std::vector<NodeId>> negatives;
  negatives.reserve(count);
  std::vector<NodeId> draw;
  for (std::size_t i = 0; i < count; ++i) {
    int rejections = 0;
    for (;;) {
      const std::size_t k = sizes[rng.uniform_index(sizes.size())];
      draw.clear();
      // Degree-proportional without replacement: uniform picks from the pin
      // multiset, rejecting nodes already in the draw.
      std::size_t node_tries = 0;
      while (draw.size() < k && node_tries < 64 * k + 256) {
        ++node_tries;
        NodeId v = membership[rng.uniform_index(membership.size())];
        if (std::find(draw.begin(), draw.end(), v) == draw.end()) draw.push_back(v);
      }
      bool ok = draw.size() == k;
      if (ok) {
        std::sort(draw.begin(), draw.end());
        ok = !observed.contains(draw);
      }
      if (ok) {
        negatives.push_back(draw);
        break;
      }
      if (++rejections >= 100)
        throw DataError("negative sampling exhausted its budget of 100 rejections; "
                        "the observed edges cover almost all candidate sets");
    }
  }
  return negatives;
}

std::vector<std::vector<NodeId>> sample_negatives_halfswap(
    const std::vector<std::vector<NodeId>>& positives, const TemporalHypergraph& h,
    std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  const std::size_t n = h.num_nodes();
  std::vector<std::vector<NodeId>> negatives;
  negatives.reserve(positives.size());

  for (const std::vector<NodeId>& pos : positives) {
    const std::size_t k = pos.size();
    if (k < 2) continue;  // degenerate: half of one node is zero swaps
    const std::size_t swaps = k / 2;
    if (n < k + swaps)
      throw DataError("not enough nodes outside a positive edge for a half swap");

    std::vector<std::uint32_t> victim_pos = rng.distinct_indices(k, swaps);
    std::vector<NodeId> result;
    result.reserve(k);
    for (std::size_t i = 0; i < k; ++i)
      if (!std::binary_search(victim_pos.begin(), victim_pos.end(),
                              static_cast<std::uint32_t>(i)))
        result.push_back(pos[i]);
    // Replacements: uniform over nodes outside the original positive,
    // distinct among themselves.
    while (result.size() < k) {
      NodeId v = static_cast<NodeId>(rng.uniform_index(n));
      if (std::binary_search(pos.begin(), pos.end(), v)) continue;
      if (std::find(result.begin(), result.end(), v) != result.end()) continue;
      result.push_back(v);
    }
    std::sort(result.begin(), result.end());
    negatives.push_back(std::move(result));
  }
  return negatives;
}

namespace {

// Average ranks (1-based) with ties sharing their mean rank; -inf compares
// equal to -inf and below everything finite, which is the sentinel contract.
double rank_sum_of_positives(std::span<const double> scores, const std::vector<bool>& labels,
                             std::size_t& n_pos, std::size_t& n_neg) {
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  n_pos = 0;
  n_neg = 0;
  double rank_sum = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);  // mean of i+1..j
    for (std::size_t p = i; p < j; ++p) {
      if (labels[order[p]]) {
        rank_sum += avg_rank;
        ++n_pos;
      } else {
        ++n_neg;
      }
    }
    i = j;
  }
  return rank_sum;
}

}  // namespace

double auc(std::span<const double> scores, const std::vector<bool>& labels) {
  if (scores.size() != labels.size()) throw DataError("scores/labels size mismatch");
  std::size_t n_pos = 0, n_neg = 0;
  const double rank_sum = rank_sum_of_positives(scores, labels, n_pos, n_neg);
  if (n_pos == 0 || n_neg == 0)
    throw DataError("AUC needs at least one positive and one negative");
  const double u = rank_sum - 0.5 * static_cast<double>(n_pos) * (n_pos + 1);
  return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

double f1_at_threshold(std::span<const double> scores, const std::vector<bool>& labels,
                       double threshold) {
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool predicted = scores[i] > threshold;
    if (predicted && labels[i]) ++tp;
    if (predicted && !labels[i]) ++fp;
    if (!predicted && labels[i]) ++fn;
  }
  if (tp + fp == 0 || tp + fn == 0) return 0.0;
  const double precision = static_cast<double>(tp) / (tp + fp);
  const double recall = static_cast<double>(tp) / (tp + fn);
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

namespace {

double median(std::vector<double> values) {
  const std::size_t n = values.size();
  std::nth_element(values.begin(), values.begin() + n / 2, values.end());
  const double upper = values[n / 2];
  if (n % 2 == 1) return upper;
  std::nth_element(values.begin(), values.begin() + n / 2 - 1, values.end());
  const double lower = values[n / 2 - 1];
  return 0.5 * (lower + upper);
}

}  // namespace

double f1_at_median(std::span<const double> scores, const std::vector<bool>& labels) {
  if (scores.size() != labels.size() || scores.empty())
    throw DataError("scores/labels size mismatch");
  bool has_pos = false, has_neg = false;
  for (bool l : labels) (l ? has_pos : has_neg) = true;
  if (!has_pos || !has_neg)
    throw DataError("F1 needs at least one positive and one negative");
  return f1_at_threshold(scores, labels,
                         median(std::vector<double>(scores.begin(), scores.end())));
}

EvalReport evaluate(const TemporalHypergraph& h, const EvalConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  EvalReport report;
  report.config = config;
  Rng rng = Rng(config.rng_seed);

  const TemporalHypergraph* data = &h;
  TemporalHypergraph shuffled_graph;
  if (config.ordering == Ordering::shuffled) {
    std::vector<EdgeIndex> perm(h.num_edges());
    std::iota(perm.begin(), perm.end(), 0);
    Rng perm_rng = rng.substream(1);
    for (std::size_t i = perm.size(); i > 1; --i)
      std::swap(perm[i - 1], perm[perm_rng.uniform_index(i)]);
    shuffled_graph = h.reordered(perm);
    data = &shuffled_graph;
  }

  const std::size_t m = data->num_edges();
  const std::size_t train_m =
      static_cast<std::size_t>(std::ceil(config.train_frac * static_cast<double>(m)));
  if (train_m < 2 || train_m >= m)
    throw DataError("train fraction leaves no usable train/test split");
  report.train_edges = train_m;

  int kbar = config.kbar;
  if (kbar == 0)
    for (const EdgeRecord& e : data->edges())
      kbar = std::max<int>(kbar, static_cast<int>(e.nodes.size()));

  SemConfig sem;
  sem.kbar = kbar;
  sem.batch_size = config.batch_size;
  sem.max_steps = config.max_steps;
  sem.ordering = Ordering::temporal;  // `data` already carries the chosen order
  sem.train_edges = train_m;
  FitResult fit = sem_fit(*data, sem, splitmix64(config.rng_seed ^ 0x5EEDF17ULL));
  report.fitted = fit.params;
  report.fit_converged = fit.trace.converged;

  // Positives: the held-out edges immediately after the training prefix.
  // Under shuffled ordering that prefix boundary is already a uniform split.
  const std::size_t n_pos = std::min(config.max_positives, m - train_m);
  std::vector<std::vector<NodeId>> positives;
  positives.reserve(n_pos);
  for (std::size_t t = train_m; t < train_m + n_pos; ++t)
    positives.push_back(data->edge(static_cast<EdgeIndex>(t)).nodes);

  std::vector<std::vector<NodeId>> negatives;
  if (config.negatives == NegativeSampler::matched) {
    negatives = sample_negatives_matched(*data, n_pos,
                                         splitmix64(config.rng_seed ^ 0x0DDBA11ULL));
  } else {
    negatives = sample_negatives_halfswap(positives, *data,
                                          splitmix64(config.rng_seed ^ 0x0DDBA11ULL));
    // Size-1 positives have no half-swap negative; drop them to keep the
    // classes balanced.
    if (negatives.size() != positives.size()) {
      std::vector<std::vector<NodeId>> kept;
      kept.reserve(negatives.size());
      for (const auto& p : positives)
        if (p.size() >= 2) kept.push_back(p);
      positives = std::move(kept);
    }
  }
  report.n_positives = positives.size();
  report.n_negatives = negatives.size();

  const std::size_t n_train_nodes = data->nodes_before(static_cast<EdgeIndex>(train_m));
  std::size_t unseen = 0;
  for (const auto& p : positives)
    for (NodeId v : p)
      if (v >= n_train_nodes) {
        ++unseen;
        break;
      }
  report.unseen_node_fraction =
      positives.empty() ? 0.0 : static_cast<double>(unseen) / positives.size();

  report.candidates.reserve(positives.size() + negatives.size());
  for (auto& p : positives) report.candidates.push_back({std::move(p), true, 0.0});
  for (auto& nset : negatives) report.candidates.push_back({std::move(nset), false, 0.0});

  for (ScoredCandidate& cand : report.candidates) {
    cand.log_score = candidate_score(cand.nodes, *data, static_cast<EdgeIndex>(train_m),
                                     fit.params, config.max_sources);
    if (cand.log_score == kMinusInf) ++report.sentinel_scores;
  }

  std::vector<double> scores;
  std::vector<bool> labels;
  scores.reserve(report.candidates.size());
  for (const ScoredCandidate& cand : report.candidates) {
    scores.push_back(cand.log_score);
    labels.push_back(cand.positive);
  }
  report.auc = auc(scores, labels);

  std::vector<double> threshold_pool;
  if (config.median_source == MedianSource::train) {
    // Median of the scores the trained model assigns to its own training
    // window, scored against the same prefix.
    threshold_pool.reserve(train_m);
    for (std::size_t t = 1; t < train_m; ++t)
      threshold_pool.push_back(candidate_score(data->edge(static_cast<EdgeIndex>(t)).nodes,
                                               *data, static_cast<EdgeIndex>(train_m),
                                               fit.params, config.max_sources));
  } else {
    threshold_pool = scores;
  }
  report.threshold = median(std::move(threshold_pool));
  report.f1 = f1_at_threshold(scores, labels, report.threshold);

  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace hypercopy
