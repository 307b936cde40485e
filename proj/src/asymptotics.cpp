#include "hypercopy/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hypercopy {

double mean_edge_size(const ModelParams& params) {
  params.validate();
  if (params.eta >= 1.0)
    throw DataError("edge size is nonstationary at eta = 1");
  return (1.0 - params.eta + params.mu_gamma() + params.mu_beta()) / (1.0 - params.eta);
}

double mean_degree(const ModelParams& params) {
  const double k = mean_edge_size(params);
  const double mb = params.mu_beta();
  if (mb <= 0.0)
    throw DataError("mean degree diverges when no novel nodes are added (mu_beta = 0)");
  return k / mb;
}

double powerlaw_exponent(const ModelParams& params) {
  params.validate();
  if (params.eta >= 1.0) throw DataError("exponent undefined at eta = 1");
  const double mg = params.mu_gamma();
  const double mb = params.mu_beta();
  const double denom = 1.0 - params.eta * (1.0 - mg - mb);
  if (denom <= 0.0)
    throw DataError("power-law exponent formula invalid: 1 - eta(1 - mu_gamma - mu_beta) <= 0");
  return 1.0 + (1.0 - params.eta + mg + mb) / denom;
}

namespace {

// Binomial pmf factor with the 0^0 = 1 convention so eta in {0, 1} works.
double pow0(double base, int exp) {
  if (exp == 0) return 1.0;
  return std::pow(base, exp);
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double binom(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0.0;
  return std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k));
}

}  // namespace

EdgeSizeMatrix::EdgeSizeMatrix(const ModelParams& params, int kmax) : kmax_(kmax) {
  params.validate();
  if (kmax < 2) throw DataError("edge-size matrix needs kmax >= 2");
  w_.assign(static_cast<std::size_t>(kmax) * kmax, 0.0);

  // Size bookkeeping: a new edge of size i from a size-j source consists of
  // the seed node, l copied non-seed nodes, h extant nodes and i-1-l-h novel
  // nodes. Out-of-range gamma/beta indices contribute nothing.
  const double eta = params.eta;
  for (int j = 1; j <= kmax; ++j) {
    for (int l = 0; l <= j - 1; ++l) {
      const double copy_prob = binom(j - 1, l) * pow0(eta, l) * pow0(1.0 - eta, j - 1 - l);
      if (copy_prob == 0.0) continue;
      for (int i = l + 1; i <= kmax; ++i) {
        double conv = 0.0;
        for (int h = 0; h <= i - 1 - l; ++h)
          conv += params.gamma_at(h) * params.beta_at(i - 1 - l - h);
        w_[(i - 1) * static_cast<std::size_t>(kmax) + (j - 1)] += copy_prob * conv;
      }
    }
  }
}

double EdgeSizeMatrix::column_sum(int size_j) const {
  double sum = 0.0;
  for (int i = 1; i <= kmax_; ++i) sum += entry(i, size_j);
  return sum;
}

double EdgeSizeMatrix::max_truncation_mass() const {
  double worst = 0.0;
  for (int j = 1; j <= kmax_; ++j) worst = std::max(worst, truncation_mass(j));
  return worst;
}

PerronResult perron_vector(
    std::size_t dim,
    const std::function<void(const std::vector<double>&, std::vector<double>&)>& matvec,
    double tol, std::size_t max_iter) {
  if (dim == 0) throw DataError("empty matrix");
  std::vector<double> v(dim, 1.0 / static_cast<double>(dim));
  std::vector<double> mv(dim, 0.0);

  double lambda = 0.0;
  double residual = 0.0;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    matvec(v, mv);
    lambda = std::accumulate(mv.begin(), mv.end(), 0.0);
    if (lambda <= 0.0)
      throw ConvergenceError("power iteration collapsed to the zero vector", 1.0);
    residual = 0.0;
    for (std::size_t i = 0; i < dim; ++i) residual += std::abs(mv[i] - lambda * v[i]);
    residual /= lambda;
    for (std::size_t i = 0; i < dim; ++i) v[i] = mv[i] / lambda;
    if (residual <= tol) return {std::move(v), lambda, residual, it};
  }
  throw ConvergenceError("power iteration did not converge within " +
                             std::to_string(max_iter) + " iterations (residual " +
                             std::to_string(residual) + ")",
                         residual);
}

PerronResult perron_vector(const std::vector<double>& matrix, std::size_t dim,
                           double tol, std::size_t max_iter) {
  if (matrix.size() != dim * dim) throw DataError("matrix size mismatch");
  for (double x : matrix)
    if (x < 0.0) throw DataError("matrix must be nonnegative");
  auto matvec = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < dim; ++i) {
      double acc = 0.0;
      const double* row = matrix.data() + i * dim;
      for (std::size_t j = 0; j < dim; ++j) acc += row[j] * x[j];
      y[i] = acc;
    }
  };
  return perron_vector(dim, matvec, tol, max_iter);
}

StationaryEdgeSizeDist stationary_edge_size_dist(const ModelParams& params, int kmax,
                                                 double tol, std::size_t max_iter) {
  if (params.eta >= 1.0)
    throw DataError("edge-size distribution is nonstationary at eta = 1");
  EdgeSizeMatrix w(params, kmax);

  const std::size_t dim = static_cast<std::size_t>(kmax);
  std::vector<double> m(dim * dim, 0.0);
  for (int j = 1; j <= kmax; ++j) {
    const double colsum = w.column_sum(j);
    if (colsum <= 0.0) throw DataError("edge-size matrix has an empty column");
    for (int i = 1; i <= kmax; ++i)
      m[(i - 1) * dim + (j - 1)] = w.entry(i, j) / colsum;
  }

  StationaryEdgeSizeDist out;
  out.max_truncation_mass = w.max_truncation_mass();
  out.solve = perron_vector(m, dim, tol, max_iter);
  out.probabilities = out.solve.vector;
  return out;
}

}  // namespace hypercopy
