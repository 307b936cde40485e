#pragma once

#include <functional>
#include <vector>

#include "hypercopy/params.hpp"

namespace hypercopy {

// Closed-form asymptotic mean edge size (1 - eta + mu_gamma + mu_beta)/(1 - eta).
// Throws DataError at eta = 1 (edge size is nonstationary).
double mean_edge_size(const ModelParams& params);

// Asymptotic mean degree, mean_edge_size / mu_beta. Throws DataError when
// mu_beta = 0 (no new nodes, degree unbounded) or eta = 1.
double mean_degree(const ModelParams& params);

// Exponent of the asymptotic power-law degree tail p_d ~ d^-zeta. Throws
// DataError when eta = 1 or the denominator 1 - eta(1 - mu_gamma - mu_beta)
// is not positive.
double powerlaw_exponent(const ModelParams& params);

// Column-stochastic-up-to-truncation transition matrix of edge sizes:
// entry(i, j) is the probability that an edge copied from a size-j source
// has size i, for sizes 1..kmax. Column deficits are the probability mass of
// sizes beyond kmax.
class EdgeSizeMatrix {
 public:
  EdgeSizeMatrix(const ModelParams& params, int kmax);

  int kmax() const { return kmax_; }
  double entry(int size_i, int size_j) const {  // sizes are 1-based
    return w_[(size_i - 1) * static_cast<std::size_t>(kmax_) + (size_j - 1)];
  }
  double column_sum(int size_j) const;
  double truncation_mass(int size_j) const { return 1.0 - column_sum(size_j); }
  double max_truncation_mass() const;

 private:
  int kmax_;
  std::vector<double> w_;
};

struct PerronResult {
  std::vector<double> vector;  // nonnegative, L1-normalized
  double value = 0.0;          // eigenvalue estimate
  double residual = 0.0;       // ||Mv - value*v||_1 / value at exit
  std::size_t iterations = 0;
};

// Power iteration with L1 normalization on a nonnegative square matrix given
// as dim and a matvec. Converges when the relative L1 residual drops to tol;
// throws ConvergenceError (carrying the final residual) after max_iter.
PerronResult perron_vector(
    std::size_t dim,
    const std::function<void(const std::vector<double>&, std::vector<double>&)>& matvec,
    double tol = 1e-12, std::size_t max_iter = 1000000);

// Dense convenience overload; `matrix` is row-major dim x dim.
PerronResult perron_vector(const std::vector<double>& matrix, std::size_t dim,
                           double tol = 1e-12, std::size_t max_iter = 1000000);

struct StationaryEdgeSizeDist {
  std::vector<double> probabilities;  // probabilities[i] is P(size = i+1)
  double max_truncation_mass = 0.0;
  PerronResult solve;
};

// Stationary edge-size distribution: Perron eigenvector of the edge-size
// matrix with columns renormalized after truncation at kmax.
StationaryEdgeSizeDist stationary_edge_size_dist(const ModelParams& params, int kmax,
                                                 double tol = 1e-12,
                                                 std::size_t max_iter = 1000000);

}  // namespace hypercopy
