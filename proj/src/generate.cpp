#include "hypercopy/generate.hpp"

#include <algorithm>
#include <cmath>

namespace hypercopy {

namespace {

// g distinct extant nodes uniform over [0, n) minus an exclusion set.
// Rejection is cheap because the exclusion set is one edge; falls back to an
// explicit pool when the complement is nearly exhausted.
std::vector<NodeId> draw_extant(Rng& rng, std::size_t n,
                                const std::vector<NodeId>& exclude, std::size_t g) {
  std::vector<NodeId> out;
  if (g == 0) return out;
  const std::size_t avail = n - exclude.size();
  out.reserve(g);
  if (avail <= 2 * (g + exclude.size())) {
    std::vector<NodeId> pool;
    pool.reserve(avail);
    for (NodeId v = 0; v < n; ++v)
      if (!std::binary_search(exclude.begin(), exclude.end(), v)) pool.push_back(v);
    for (std::size_t i = 0; i < g; ++i) {
      std::size_t j = i + rng.uniform_index(pool.size() - i);
      std::swap(pool[i], pool[j]);
      out.push_back(pool[i]);
    }
  } else {
    while (out.size() < g) {
      NodeId v = static_cast<NodeId>(rng.uniform_index(n));
      if (std::binary_search(exclude.begin(), exclude.end(), v)) continue;
      if (std::find(out.begin(), out.end(), v) != out.end()) continue;
      out.push_back(v);
    }
  }
  return out;
}

int draw_count(Rng& rng, const std::vector<double>& dist) {
  return static_cast<int>(rng.categorical(dist));
}

}  // namespace

GrowthState::GrowthState(const TemporalHypergraph& seed, std::uint64_t rng_seed)
    : master_(rng_seed) {
  if (seed.num_edges() == 0) throw DataError("seed hypergraph is empty");
  edges_ = seed.edges();
  num_nodes_ = seed.num_nodes();
  membership_.reserve(seed.total_pins());
  for (const EdgeRecord& e : edges_)
    membership_.insert(membership_.end(), e.nodes.begin(), e.nodes.end());
}

void GrowthState::append(EdgeRecord e) {
  membership_.insert(membership_.end(), e.nodes.begin(), e.nodes.end());
  edges_.push_back(std::move(e));
}

TemporalHypergraph GrowthState::finish() && {
  return TemporalHypergraph::build(std::move(edges_));
}

EdgeRecord hcm_step(GrowthState& state, const ModelParams& params) {
  Rng rng = state.step_rng();
  const auto& edges = state.edges_;

  const EdgeIndex fi = static_cast<EdgeIndex>(rng.uniform_index(edges.size()));
  const std::vector<NodeId>& f = edges[fi].nodes;

  // Seed node plus independent copies of the rest of f.
  std::vector<NodeId> nodes;
  const std::size_t seed_pos = rng.uniform_index(f.size());
  nodes.push_back(f[seed_pos]);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i == seed_pos) continue;
    if (rng.bernoulli(params.eta)) nodes.push_back(f[i]);
  }
  state.last_step_ = {fi, static_cast<int>(f.size()), static_cast<int>(nodes.size())};

  // Extant nodes from N \ f, clamped to the pool (diagnostic, not an error).
  std::size_t g = static_cast<std::size_t>(draw_count(rng, params.gamma));
  const std::size_t pool = state.num_nodes_ - f.size();
  if (g > pool) {
    g = pool;
    ++state.extant_clamp_count;
  }
  for (NodeId v : draw_extant(rng, state.num_nodes_, f, g)) nodes.push_back(v);

  // Fresh node ids n, n+1, ...
  const int b = draw_count(rng, params.beta);
  for (int i = 0; i < b; ++i) nodes.push_back(static_cast<NodeId>(state.num_nodes_++));

  EdgeRecord e;
  e.timestamp = state.next_timestamp();
  std::sort(nodes.begin(), nodes.end());
  e.nodes = std::move(nodes);
  state.append(e);
  return e;
}

namespace {

// Shared ER/PA novel-node draw: b ~ beta sets the Poisson mean; the draw is
// capped at 4*kbar to keep a pathological tail out of the edge sizes.
int poisson_novel(Rng& rng, GrowthState& state, const ModelParams& params) {
  const int b = draw_count(rng, params.beta);
  int bhat = rng.poisson(static_cast<double>(b));
  const int cap = 4 * params.kbar();
  if (bhat > cap) {
    bhat = cap;
    ++state.poisson_cap_count;
  }
  return bhat;
}

// alpha = 1 + Binomial(|f|-1, eta) for a uniformly chosen current edge f:
// the size of the copied part of an HCM step, resampled per step.
std::size_t hcm_alpha(Rng& rng, const std::vector<EdgeRecord>& edges, double eta) {
  const auto& f = edges[rng.uniform_index(edges.size())].nodes;
  return 1 + static_cast<std::size_t>(rng.binomial(static_cast<int>(f.size()) - 1, eta));
}

}  // namespace

EdgeRecord er_step(GrowthState& state, const ModelParams& params) {
  Rng rng = state.step_rng();

  std::size_t want = hcm_alpha(rng, state.edges_, params.eta) +
                     static_cast<std::size_t>(draw_count(rng, params.gamma));
  if (want > state.num_nodes_) {
    want = state.num_nodes_;
    ++state.extant_clamp_count;
  }
  std::vector<NodeId> nodes = rng.distinct_indices(state.num_nodes_, want);

  const int bhat = poisson_novel(rng, state, params);
  for (int i = 0; i < bhat; ++i) nodes.push_back(static_cast<NodeId>(state.num_nodes_++));

  EdgeRecord e;
  e.timestamp = state.next_timestamp();
  std::sort(nodes.begin(), nodes.end());
  e.nodes = std::move(nodes);
  state.append(e);
  return e;
}

EdgeRecord pa_step(GrowthState& state, const ModelParams& params) {
  Rng rng = state.step_rng();

  std::size_t alpha = hcm_alpha(rng, state.edges_, params.eta);
  // Degree-proportional draws: uniform picks from the pin multiset, with
  // rejection of already-selected nodes. Every node enters via some edge, so
  // all n nodes have positive degree and alpha is only clamped by n.
  std::vector<NodeId> nodes;
  if (alpha > state.num_nodes_) {
    alpha = state.num_nodes_;
    ++state.extant_clamp_count;
  }
  while (nodes.size() < alpha) {
    NodeId v = state.membership_[rng.uniform_index(state.membership_.size())];
    if (std::find(nodes.begin(), nodes.end(), v) == nodes.end()) nodes.push_back(v);
  }

  std::vector<NodeId> chosen = nodes;
  std::sort(chosen.begin(), chosen.end());
  std::size_t g = static_cast<std::size_t>(draw_count(rng, params.gamma));
  const std::size_t pool = state.num_nodes_ - chosen.size();
  if (g > pool) {
    g = pool;
    ++state.extant_clamp_count;
  }
  for (NodeId v : draw_extant(rng, state.num_nodes_, chosen, g)) nodes.push_back(v);

  const int bhat = poisson_novel(rng, state, params);
  for (int i = 0; i < bhat; ++i) nodes.push_back(static_cast<NodeId>(state.num_nodes_++));

  EdgeRecord e;
  e.timestamp = state.next_timestamp();
  std::sort(nodes.begin(), nodes.end());
  e.nodes = std::move(nodes);
  state.append(e);
  return e;
}

TemporalHypergraph default_seed_hypergraph(const ModelParams& params) {
  const int size = (params.kbar() + 1) / 2 + 1;
  EdgeRecord e;
  e.timestamp = 0.0;
  for (int v = 0; v < size; ++v) e.nodes.push_back(static_cast<NodeId>(v));
  return TemporalHypergraph::build({e});
}

namespace {

template <typename Step>
SimulationResult run(const ModelParams& params, std::size_t steps,
                     const TemporalHypergraph& seed, std::uint64_t rng_seed,
                     Step step) {
  params.validate();
  GrowthState state(seed, rng_seed);
  for (std::size_t i = 0; i < steps; ++i) step(state, params);
  SimulationResult out;
  out.extant_clamp_count = state.extant_clamp_count;
  out.poisson_cap_count = state.poisson_cap_count;
  out.hypergraph = std::move(state).finish();
  return out;
}

}  // namespace

SimulationResult simulate_hcm(const ModelParams& params, std::size_t steps,
                              const TemporalHypergraph& seed, std::uint64_t rng_seed) {
  return run(params, steps, seed, rng_seed, hcm_step);
}

SimulationResult simulate_er(const ModelParams& params, std::size_t steps,
                             const TemporalHypergraph& seed, std::uint64_t rng_seed) {
  return run(params, steps, seed, rng_seed, er_step);
}

SimulationResult simulate_pa(const ModelParams& params, std::size_t steps,
                             const TemporalHypergraph& seed, std::uint64_t rng_seed) {
  return run(params, steps, seed, rng_seed, pa_step);
}

}  // namespace hypercopy
