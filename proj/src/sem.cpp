#include "hypercopy/sem.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "hypercopy/rng.hpp"

namespace hypercopy {

namespace {

double log_binom(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// x * log(p) with the 0 * log(0) = 0 convention.
double xlogp(int x, double p) {
  if (x == 0) return 0.0;
  return static_cast<double>(x) * std::log(p);
}

struct Decomposition {
  int c = 0;  // |e ∩ f|
  int j = 0;  // |f|
  int g = 0;  // |e ∩ (N \ f)|
  int b = 0;  // |e \ N|
};

// Node ids are assigned by first appearance, so id < n_prior is exactly
// membership in the prior node set.
Decomposition decompose(std::span<const NodeId> e, const EdgeRecord& f,
                        std::size_t n_prior) {
  Decomposition d;
  d.j = static_cast<int>(f.nodes.size());
  int known = 0;
  for (NodeId v : e) {
    if (v < n_prior) ++known;
    if (std::binary_search(f.nodes.begin(), f.nodes.end(), v)) ++d.c;
  }
  d.g = known - d.c;
  d.b = static_cast<int>(e.size()) - known;
  return d;
}

double log_likelihood_from_parts(const Decomposition& d, std::size_t n_prior,
                                 const ModelParams& params, bool include_beta) {
  if (d.c == 0) return kMinusInf;
  const double gamma_g = params.gamma_at(d.g);
  if (gamma_g <= 0.0) return kMinusInf;
  const long long pool = static_cast<long long>(n_prior) - d.j;
  if (d.g > pool) return kMinusInf;  // impossible extant draw

  double log_lik = std::log(static_cast<double>(d.c) / d.j);
  log_lik += xlogp(d.c - 1, params.eta);
  log_lik += xlogp(d.j - d.c, 1.0 - params.eta);
  log_lik += std::log(gamma_g);
  if (d.g > 0) log_lik -= log_binom(static_cast<double>(pool), d.g);
  if (include_beta) {
    const double beta_b = params.beta_at(d.b);
    if (beta_b <= 0.0) return kMinusInf;
    log_lik += std::log(beta_b);
  }
  return log_lik;
}

}  // namespace

double log_edge_generation_likelihood(std::span<const NodeId> e, const EdgeRecord& f,
                                      std::size_t n_prior, const ModelParams& params,
                                      bool include_beta) {
  return log_likelihood_from_parts(decompose(e, f, n_prior), n_prior, params,
                                   include_beta);
}

double edge_generation_likelihood(std::span<const NodeId> e, const EdgeRecord& f,
                                  std::size_t n_prior, const ModelParams& params) {
  const double ll = log_edge_generation_likelihood(e, f, n_prior, params, true);
  return ll == kMinusInf ? 0.0 : std::exp(ll);
}

SourcePosterior posterior_over_sources(std::span<const NodeId> e,
                                       const TemporalHypergraph& h, EdgeIndex upto,
                                       const ModelParams& params) {
  SourcePosterior post;

  // The novel-node factor beta_b is constant across sources and cancels in
  // the normalization, but a zero factor still kills every candidate.
  int novel = 0;
  const std::size_t n_prior = h.nodes_before(upto);
  for (NodeId v : e)
    if (v >= n_prior) ++novel;
  if (params.beta_at(novel) <= 0.0) return post;

  std::vector<EdgeIndex> candidates = h.candidate_sources(e, upto);
  if (candidates.empty()) return post;

  std::vector<double> log_liks;
  log_liks.reserve(candidates.size());
  double max_log = kMinusInf;
  for (EdgeIndex f : candidates) {
    const double ll =
        log_edge_generation_likelihood(e, h.edge(f), n_prior, params, false);
    log_liks.push_back(ll);
    max_log = std::max(max_log, ll);
  }
  if (max_log == kMinusInf) return post;

  double total = 0.0;
  for (double& ll : log_liks) {
    ll = ll == kMinusInf ? 0.0 : std::exp(ll - max_log);
    total += ll;
  }
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (log_liks[i] == 0.0) continue;
    post.support.push_back(candidates[i]);
    post.probabilities.push_back(log_liks[i] / total);
  }
  return post;
}

std::optional<SuffStats> expected_sufficient_stats(std::span<const NodeId> e,
                                                   const TemporalHypergraph& h,
                                                   EdgeIndex upto,
                                                   const ModelParams& params) {
  const SourcePosterior post = posterior_over_sources(e, h, upto, params);
  if (post.null()) return std::nullopt;

  const std::size_t n_prior = h.nodes_before(upto);
  const int kbar = params.kbar();
  SuffStats stats;
  stats.s3.assign(static_cast<std::size_t>(kbar) + 1, 0.0);
  stats.s4.assign(static_cast<std::size_t>(kbar) + 1, 0.0);

  int novel = 0;
  for (NodeId v : e)
    if (v >= n_prior) ++novel;
  stats.s3.at(novel) = 1.0;  // constant across sources

  for (std::size_t idx = 0; idx < post.support.size(); ++idx) {
    const double p = post.probabilities[idx];
    const Decomposition d = decompose(e, h.edge(post.support[idx]), n_prior);
    stats.s1 += p * d.c;
    stats.s2 += p * (d.j - d.c);
    stats.s4.at(d.g) += p;  // d.g <= kbar: larger values have zero posterior
  }
  return stats;
}

ModelParams m_step(const SuffStats& stats) {
  ModelParams params;
  const double denom = stats.s1 + stats.s2 - 1.0;
  params.eta = denom <= 0.0 ? 0.0 : (stats.s1 - 1.0) / denom;
  params.eta = std::clamp(params.eta, 0.0, 1.0);
  params.gamma = stats.s4;
  params.beta = stats.s3;
  return params;
}

FitResult sem_fit(const TemporalHypergraph& h, const SemConfig& config,
                  std::uint64_t rng_seed) {
  if (h.num_edges() < 2) throw DataError("fit needs at least two edges");
  Rng rng(rng_seed);

  const TemporalHypergraph* data = &h;
  TemporalHypergraph shuffled_graph;
  if (config.ordering == Ordering::shuffled) {
    std::vector<EdgeIndex> perm(h.num_edges());
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = perm.size(); i > 1; --i)
      std::swap(perm[i - 1], perm[rng.uniform_index(i)]);
    shuffled_graph = h.reordered(perm);
    data = &shuffled_graph;
  }

  std::size_t train_m = config.train_edges == 0
                            ? data->num_edges()
                            : std::min(config.train_edges, data->num_edges());
  if (train_m < 2) throw DataError("fit needs at least two training edges");

  // Sampling pool: every edge except index 0, which has no possible source.
  // Under shuffled ordering each edge is used at most once across the run.
  std::vector<EdgeIndex> pool(train_m - 1);
  std::iota(pool.begin(), pool.end(), 1);
  std::size_t pool_left = pool.size();
  const bool without_replacement = config.ordering == Ordering::shuffled;

  const std::size_t kdim = static_cast<std::size_t>(config.kbar) + 1;
  SuffStats shat;
  shat.s3.assign(kdim, 0.0);
  shat.s4.assign(kdim, 0.0);

  ModelParams theta;
  theta.eta = 0.5;
  theta.gamma.assign(kdim, 1.0 / static_cast<double>(kdim));
  theta.beta = theta.gamma;

  FitResult result;
  FitTrace& trace = result.trace;
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  std::vector<double> eta_history;
  eta_history.reserve(config.max_steps);
  std::vector<EdgeIndex> batch(config.batch_size);

  std::size_t tau = 0;
  std::size_t attempts = 0;
  while (tau < config.max_steps) {
    // Uniform batch, without replacement within the batch (partial
    // Fisher-Yates over the prefix of the pool that is still live).
    const std::size_t take = std::min(config.batch_size, pool_left);
    if (take == 0) break;
    if (++attempts > 2 * config.max_steps + 16) break;  // every batch skipping
    for (std::size_t i = 0; i < take; ++i) {
      const std::size_t j = i + rng.uniform_index(pool_left - i);
      std::swap(pool[i], pool[j]);
      batch[i] = pool[i];
    }
    if (without_replacement) {
      // Consumed edges move to the dead suffix.
      for (std::size_t i = 0; i < take; ++i)
        std::swap(pool[i], pool[pool_left - take + i]);
      pool_left -= take;
    }

    SuffStats sbar;
    sbar.s3.assign(kdim, 0.0);
    sbar.s4.assign(kdim, 0.0);
    std::size_t used = 0;
    for (std::size_t i = 0; i < take; ++i) {
      const EdgeIndex t = batch[i];
      auto stats = expected_sufficient_stats(data->edge(t).nodes, *data, t, theta);
      if (!stats) {
        ++trace.skipped_samples;
        continue;
      }
      sbar.s1 += stats->s1;
      sbar.s2 += stats->s2;
      for (std::size_t k = 0; k < kdim; ++k) {
        sbar.s3[k] += stats->s3[k];
        sbar.s4[k] += stats->s4[k];
      }
      ++used;
    }
    if (used == 0) continue;  // nothing informative in this batch
    trace.used_edges += used;

    const double inv = 1.0 / static_cast<double>(used);
    sbar.s1 *= inv;
    sbar.s2 *= inv;
    for (std::size_t k = 0; k < kdim; ++k) {
      sbar.s3[k] *= inv;
      sbar.s4[k] *= inv;
    }

    ++tau;
    const double rho = 1.0 / static_cast<double>(tau);  // rho(1) = 1
    shat.s1 = (1.0 - rho) * shat.s1 + rho * sbar.s1;
    shat.s2 = (1.0 - rho) * shat.s2 + rho * sbar.s2;
    for (std::size_t k = 0; k < kdim; ++k) {
      shat.s3[k] = (1.0 - rho) * shat.s3[k] + rho * sbar.s3[k];
      shat.s4[k] = (1.0 - rho) * shat.s4[k] + rho * sbar.s4[k];
    }
    theta = m_step(shat);
    eta_history.push_back(theta.eta);

    if (tau % config.check_interval == 0) {
      trace.checkpoints.push_back({tau, theta, elapsed()});
      if (tau >= 2 * config.check_interval) {
        const std::size_t w = config.check_interval;
        double recent = 0.0, previous = 0.0;
        for (std::size_t s = tau - w; s < tau; ++s) recent += eta_history[s];
        for (std::size_t s = tau - 2 * w; s < tau - w; ++s) previous += eta_history[s];
        recent /= static_cast<double>(w);
        previous /= static_cast<double>(w);
        const double rel = std::abs(recent - previous) / std::max(std::abs(previous), 1e-12);
        if (rel < config.rel_tol) {
          trace.converged = true;
          break;
        }
      }
    }
  }

  trace.steps = tau;
  if (trace.checkpoints.empty() || trace.checkpoints.back().tau != tau)
    trace.checkpoints.push_back({tau, theta, elapsed()});
  result.params = theta;
  return result;
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    const double qi = i < q.size() ? std::max(q[i], 1e-12) : 1e-12;
    kl += p[i] * std::log(p[i] / qi);
  }
  return kl;
}

}  // namespace hypercopy
