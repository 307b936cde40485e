#pragma once

#include <string>
#include <vector>

#include "hypercopy/types.hpp"

namespace hypercopy {

// Model parameter vector theta = (eta, gamma, beta). gamma and beta are
// probability vectors indexed 0..kbar: gamma[g] is the probability of adding
// g extant nodes to a new edge, beta[b] the probability of adding b novel
// nodes. eta is the per-node copy probability.
struct ModelParams {
  double eta = 0.0;
  std::vector<double> gamma;
  std::vector<double> beta;

  ModelParams() = default;
  ModelParams(double eta_, std::vector<double> gamma_, std::vector<double> beta_);

  int kbar() const { return static_cast<int>(gamma.size()) - 1; }
  double mu_gamma() const;
  double mu_beta() const;

  double gamma_at(int i) const {
    return (i >= 0 && i < static_cast<int>(gamma.size())) ? gamma[i] : 0.0;
  }
  double beta_at(int i) const {
    return (i >= 0 && i < static_cast<int>(beta.size())) ? beta[i] : 0.0;
  }

  // Pads the shorter of gamma/beta with zeros so both are indexed 0..kbar.
  void normalize_lengths();

  // Throws DataError unless both vectors are nonnegative, sum to 1 within
  // 1e-9, have equal length, and eta is in [0,1].
  void validate() const;

  // JSON interchange schema: {"eta": f64, "gamma": [f64...], "beta": [f64...]}
  std::string to_json() const;
  static ModelParams from_json(const std::string& text);
  static ModelParams from_json_file(const std::string& path);
  void to_json_file(const std::string& path) const;

  // Poisson(mean) restricted to 0..cutoff and renormalized.
  static std::vector<double> truncated_poisson(double mean, int cutoff);
  // Point mass at index k with support 0..kbar.
  static std::vector<double> delta(int k, int kbar);
};

}  // namespace hypercopy
