#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hypercopy/params.hpp"
#include "hypercopy/temporal_hypergraph.hpp"

namespace hypercopy {

// Expected sufficient statistics of one observed edge against the posterior
// over its unobserved source. s1 >= 1 always (the seed node is shared).
struct SuffStats {
  double s1 = 0.0;              // E[|f ∩ e|]
  double s2 = 0.0;              // E[|f \ e|]
  std::vector<double> s3;       // indicator expectations of the novel-node count
  std::vector<double> s4;       // indicator expectations of the extant-node count
};

// Log of P(e | source = f) under the model, with n_prior = |N| when the edge
// formed. Decomposing e against f: c = |e ∩ f|, j = |f|, g extant additions,
// b novel additions, the probability is
//   (c/j) eta^(c-1) (1-eta)^(j-c) gamma_g / C(n_prior - j, g) * beta_b,
// and -inf when c = 0 or any count is outside the model's support.
// `include_beta = false` drops the beta_b factor (constant across sources).
double log_edge_generation_likelihood(std::span<const NodeId> e, const EdgeRecord& f,
                                      std::size_t n_prior, const ModelParams& params,
                                      bool include_beta = true);
double edge_generation_likelihood(std::span<const NodeId> e, const EdgeRecord& f,
                                  std::size_t n_prior, const ModelParams& params);

// Posterior over the unobserved source of `e` given the strictly earlier
// edges of h. Empty support (no prior edge shares a node with e, or every
// candidate has zero likelihood) yields the null posterior.
struct SourcePosterior {
  std::vector<EdgeIndex> support;
  std::vector<double> probabilities;
  bool null() const { return support.empty(); }
};
SourcePosterior posterior_over_sources(std::span<const NodeId> e,
                                       const TemporalHypergraph& h, EdgeIndex upto,
                                       const ModelParams& params);

// Posterior-expected sufficient statistics of node set e arriving at
// position upto. std::nullopt when the posterior is null (caller skips).
std::optional<SuffStats> expected_sufficient_stats(std::span<const NodeId> e,
                                                   const TemporalHypergraph& h,
                                                   EdgeIndex upto,
                                                   const ModelParams& params);

// Closed-form maximizer given expected sufficient statistics:
// eta = (s1-1)/(s1+s2-1) (0 at the s1=1, s2=0 boundary), gamma = s4, beta = s3.
ModelParams m_step(const SuffStats& stats);

enum class Ordering { temporal, shuffled };

struct SemConfig {
  int kbar = 12;
  std::size_t batch_size = 30;
  std::size_t check_interval = 100;   // convergence test cadence, in steps
  double rel_tol = 1e-2;              // on the windowed mean of eta
  std::size_t max_steps = 100000;
  Ordering ordering = Ordering::temporal;
  std::size_t train_edges = 0;        // 0: use the whole hypergraph
};

struct FitCheckpoint {
  std::size_t tau = 0;
  ModelParams params;
  double seconds = 0.0;  // wall clock since fit start
};

struct FitTrace {
  std::vector<FitCheckpoint> checkpoints;
  bool converged = false;
  std::size_t steps = 0;
  std::size_t skipped_samples = 0;  // edges with a null posterior
  std::size_t used_edges = 0;
};

struct FitResult {
  ModelParams params;
  FitTrace trace;
};

// Stochastic EM: each step averages the expected sufficient statistics of a
// uniformly sampled batch of edges and folds them into a running estimate
// with the schedule rho(tau) = 1/tau; parameters are re-estimated by m_step.
// Stops when the mean eta over the two most recent disjoint check_interval
// windows changes by less than rel_tol (relative), or at max_steps.
// Under shuffled ordering the hypergraph is re-ordered pseudo-temporally
// first and no edge is sampled twice across the run.
FitResult sem_fit(const TemporalHypergraph& h, const SemConfig& config,
                  std::uint64_t rng_seed);

// KL divergence sum_i p_i log(p_i / q_i) with q floored at 1e-12.
double kl_divergence(std::span<const double> p, std::span<const double> q);

}  // namespace hypercopy
