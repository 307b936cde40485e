#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hypercopy/params.hpp"
#include "hypercopy/rng.hpp"
#include "hypercopy/temporal_hypergraph.hpp"

namespace hypercopy {

// Mutable hypergraph-under-construction for the growth models. Single
// threaded; independent simulations may run concurrently on separate states.
class GrowthState {
 public:
  GrowthState(const TemporalHypergraph& seed, std::uint64_t rng_seed);

  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<EdgeRecord>& edges() const { return edges_; }

  // Diagnostics accumulated over the run.
  std::size_t extant_clamp_count = 0;   // gamma draw exceeded the extant pool
  std::size_t poisson_cap_count = 0;    // Poisson novel-node draw hit the cap

  // Copy provenance of the most recent step, for distribution tests.
  struct StepInfo {
    EdgeIndex source = 0;
    int source_size = 0;
    int copied = 0;  // |e ∩ f|, seed node included
  };
  const StepInfo& last_step() const { return last_step_; }

  TemporalHypergraph finish() &&;

 private:
  friend EdgeRecord hcm_step(GrowthState&, const ModelParams&);
  friend EdgeRecord er_step(GrowthState&, const ModelParams&);
  friend EdgeRecord pa_step(GrowthState&, const ModelParams&);

  void append(EdgeRecord e);
  Rng step_rng() const { return master_.substream(edges_.size()); }
  // Step index of the new edge; never ahead of the seed's timestamps so the
  // generated sequence stays temporally ordered for arbitrary seeds.
  double next_timestamp() const {
    return std::max(static_cast<double>(edges_.size()), edges_.back().timestamp);
  }

  std::vector<EdgeRecord> edges_;
  std::size_t num_nodes_ = 0;
  std::vector<NodeId> membership_;  // one entry per (edge, node) pin
  Rng master_;
  StepInfo last_step_;
};

// One update step of the copy model: uniform source edge f, uniform seed
// node v0 in f, each remaining node of f copied independently with
// probability eta, g ~ gamma extant nodes drawn uniformly from N \ f, and
// b ~ beta fresh nodes. Requires at least one existing edge. If g exceeds
// |N \ f| it is clamped and counted in extant_clamp_count.
EdgeRecord hcm_step(GrowthState& state, const ModelParams& params);

// Erdos-Renyi style step matched to the HCM's count distributions: the edge
// is alpha + g uniform extant nodes plus Poisson(b) fresh nodes, where
// alpha = 1 + Binomial(|f|-1, eta) for a uniformly chosen f, g ~ gamma and
// b ~ beta. Poisson draws are capped at 4*kbar (counted).
EdgeRecord er_step(GrowthState& state, const ModelParams& params);

// Preferential-attachment style step: alpha nodes drawn proportionally to
// degree (repeated draws from the membership multiset, rejecting repeats),
// g uniform from the remaining extant nodes, Poisson(b) fresh nodes.
EdgeRecord pa_step(GrowthState& state, const ModelParams& params);

// Default seed when none is supplied: a single edge of ceil(kbar/2)+1 nodes.
TemporalHypergraph default_seed_hypergraph(const ModelParams& params);

struct SimulationResult {
  TemporalHypergraph hypergraph;
  std::size_t extant_clamp_count = 0;
  std::size_t poisson_cap_count = 0;
};

// Appends `steps` edges to a copy of `seed` (timestamps are step indices,
// continuing after the seed). Deterministic in (params, steps, seed, rng_seed).
SimulationResult simulate_hcm(const ModelParams& params, std::size_t steps,
                              const TemporalHypergraph& seed, std::uint64_t rng_seed);
SimulationResult simulate_er(const ModelParams& params, std::size_t steps,
                             const TemporalHypergraph& seed, std::uint64_t rng_seed);
SimulationResult simulate_pa(const ModelParams& params, std::size_t steps,
                             const TemporalHypergraph& seed, std::uint64_t rng_seed);

}  // namespace hypercopy
