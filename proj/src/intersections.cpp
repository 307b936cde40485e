#include "hypercopy/intersections.hpp"

#include <algorithm>
#include <cmath>

namespace hypercopy {

namespace {

double pow0(double base, int exp) { return exp == 0 ? 1.0 : std::pow(base, exp); }

double binom(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0.0;
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

// P(s nodes of a size-l source are copied, seed included).
double copied_count_prob(int s, int l, double eta) {
  if (s < 1 || s > l) return 0.0;
  return binom(l - 1, s - 1) * pow0(eta, s - 1) * pow0(1.0 - eta, l - s);
}

}  // namespace

std::size_t IntersectionCoefficients::idx4(int i, int k, int l, int h) const {
  const std::size_t d = static_cast<std::size_t>(imax_) + 1;
  return ((static_cast<std::size_t>(i) * d + k) * d + l) * d + h;
}

IntersectionCoefficients::IntersectionCoefficients(const ModelParams& params, int imax)
    : imax_(imax) {
  params.validate();
  if (imax < 2) throw DataError("intersection coefficients need imax >= 2");
  if (params.beta_at(0) >= 1.0)
    throw DataError("intersection asymptotics require beta_0 < 1 (novel nodes must occur)");

  const double eta = params.eta;
  const int kbar = params.kbar();
  const std::size_t d = static_cast<std::size_t>(imax) + 1;

  // b(i, k, j): the copied source f itself is the tracked edge. The new edge
  // shares exactly its k copied nodes with f and reaches size i through the
  // extant/novel convolution.
  b_.assign(d * d * d, 0.0);
  for (int j = 1; j <= imax; ++j)
    for (int k = 1; k <= j; ++k) {
      const double copy = copied_count_prob(k, j, eta);
      if (copy == 0.0) continue;
      for (int i = k; i <= imax; ++i) {
        double conv = 0.0;
        for (int x = 0; x <= std::min(i - k, kbar); ++x)
          conv += params.beta_at(x) * params.gamma_at(i - k - x);
        b_[(static_cast<std::size_t>(i) * d + k) * d + j] += copy * conv;
      }
    }

  // phi / psi: the tracked edge g is not the source. Conditional on s copied
  // nodes (a uniform s-subset of f), the overlap carried over from f into g
  // is hypergeometric; an intersection of size k needs either k such nodes
  // (order m^0, phi) or k-1 plus one extant addition landing in g (order
  // m^-1, psi). psi still lacks its (j - k + 1) factor here, applied by the
  // accessor, j being the size of g.
  phi_.assign(d * d * d * d, 0.0);
  psi_base_.assign(d * d * d * d, 0.0);
  const double mu_beta = params.mu_beta();
  for (int l = 1; l <= imax; ++l)
    for (int h = 0; h <= l; ++h)
      for (int s = 1; s <= l; ++s) {
        const double t1 = copied_count_prob(s, l, eta);
        if (t1 == 0.0) continue;
        const double denom = binom(l, s);
        for (int x = 0; x <= kbar; ++x) {
          const double gx = params.gamma_at(x);
          if (gx == 0.0) continue;
          for (int i = s + x; i <= std::min(imax, s + x + kbar); ++i) {
            const double weight = t1 * gx * params.beta_at(i - s - x);
            if (weight == 0.0) continue;
            for (int k = 0; k <= std::min({h + 1, l, imax}); ++k) {
              const double w1 = binom(h, k) * binom(l - h, s - k) / denom;
              if (w1 > 0.0 && k <= h) phi_[idx4(i, k, l, h)] += weight * w1;
              if (k >= 1) {
                const double w2 = binom(h, k - 1) * binom(l - h, s - k + 1) / denom *
                                  static_cast<double>(x) * mu_beta;
                if (w2 > 0.0) psi_base_[idx4(i, k, l, h)] += weight * w2;
              }
            }
          }
        }
      }
}

double IntersectionCoefficients::b(int i, int k, int j) const {
  const std::size_t d = static_cast<std::size_t>(imax_) + 1;
  if (i < 1 || i > imax_ || j < 1 || j > imax_ || k < 1 || k > imax_) return 0.0;
  return b_[(static_cast<std::size_t>(i) * d + k) * d + j];
}

double IntersectionCoefficients::phi(int i, int k, int fsize, int h) const {
  if (i < 1 || i > imax_ || k < 0 || fsize < 1 || fsize > imax_ || h < 0 || h > imax_)
    return 0.0;
  if (k > h || k > fsize) return 0.0;
  return phi_[idx4(i, k, fsize, h)];
}

double IntersectionCoefficients::psi_base(int i, int k, int fsize, int h) const {
  if (i < 1 || i > imax_ || k < 1 || fsize < 1 || fsize > imax_ || h < 0 || h > imax_)
    return 0.0;
  if (k > h + 1 || k > fsize) return 0.0;
  return psi_base_[idx4(i, k, fsize, h)];
}

namespace {

// Compressed sparse rows for the flattened q = Cq system.
struct SparseMatrix {
  std::size_t dim = 0;
  std::vector<std::size_t> row_start;
  std::vector<std::uint32_t> col;
  std::vector<double> val;

  void apply(const std::vector<double>& x, std::vector<double>& y) const {
    for (std::size_t r = 0; r < dim; ++r) {
      double acc = 0.0;
      for (std::size_t p = row_start[r]; p < row_start[r + 1]; ++p)
        acc += val[p] * x[col[p]];
      y[r] = acc;
    }
  }
};

}  // namespace

IntersectionProfile intersection_profile(const ModelParams& params, int imax, double tol,
                                         std::size_t max_iter) {
  IntersectionCoefficients coef(params, imax);

  IntersectionProfile profile;
  profile.imax_ = imax;
  const std::size_t dim =
      static_cast<std::size_t>(imax) * imax * (static_cast<std::size_t>(imax) + 1);

  // One row per q(i, j, k). Each row couples to columns q(l, j, h) and
  // q(j, l, h): the tracked pair in either temporal order, with the copied
  // source always the l-sized edge. Entries on the same column accumulate.
  SparseMatrix c;
  c.dim = dim;
  c.row_start.assign(dim + 1, 0);
  std::vector<double> row_acc(dim, 0.0);
  std::vector<std::uint32_t> touched;

  auto add = [&](std::size_t col_index, double value) {
    if (value == 0.0) return;
    if (row_acc[col_index] == 0.0) touched.push_back(static_cast<std::uint32_t>(col_index));
    row_acc[col_index] += value;
  };

  for (int i = 1; i <= imax; ++i)
    for (int j = 1; j <= imax; ++j)
      for (int k = 0; k <= imax; ++k) {
        touched.clear();
        if (k == 0) {
          for (int l = 1; l <= imax; ++l) {
            const double p = 0.5 * coef.phi(i, 0, l, 0);
            add(profile.flat(l, j, 0), p);
            add(profile.flat(j, l, 0), p);
          }
        } else {
          const double bk = coef.b(i, k, j);
          for (int l = 1; l <= imax; ++l) {
            double w = bk;
            if (k == 1) w += coef.psi(i, 1, l, j, 0);
            add(profile.flat(l, j, 0), w);
            add(profile.flat(j, l, 0), w);
            for (int h = std::max(k, 1); h <= std::min(l, imax); ++h) {
              const double p = coef.phi(i, k, l, h);
              add(profile.flat(l, j, h), p);
              add(profile.flat(j, l, h), p);
            }
          }
        }
        std::sort(touched.begin(), touched.end());
        for (std::uint32_t t : touched) {
          c.col.push_back(t);
          c.val.push_back(row_acc[t]);
          row_acc[t] = 0.0;
        }
        c.row_start[profile.flat(i, j, k) + 1] = c.col.size();
      }
  for (std::size_t r = 1; r <= dim; ++r)
    c.row_start[r] = std::max(c.row_start[r], c.row_start[r - 1]);

  try {
    profile.solve_ = perron_vector(
        dim, [&](const std::vector<double>& x, std::vector<double>& y) { c.apply(x, y); },
        tol, max_iter);
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(std::string("intersection eigenproblem: ") + e.what() +
                               " (large eta is the known hard region)",
                           e.residual);
  }

  profile.q_ = profile.solve_.vector;
  double k0_mass = 0.0;
  for (int i = 1; i <= imax; ++i)
    for (int j = 1; j <= imax; ++j) k0_mass += profile.q_[profile.flat(i, j, 0)];
  if (k0_mass <= 0.0)
    throw ConvergenceError("intersection eigenvector has no mass in the k = 0 block",
                           1.0);
  for (double& x : profile.q_) x /= k0_mass;

  profile.q_mass_.assign(static_cast<std::size_t>(imax) + 1, 0.0);
  for (int i = 1; i <= imax; ++i)
    for (int j = 1; j <= imax; ++j)
      for (int k = 0; k <= imax; ++k)
        profile.q_mass_[k] += profile.q_[profile.flat(i, j, k)];
  return profile;
}

std::vector<double> predicted_rk(const IntersectionProfile& profile, std::size_t m) {
  std::vector<double> r(static_cast<std::size_t>(profile.imax()) + 1, 0.0);
  r[0] = profile.q_mass(0);
  for (int k = 1; k <= profile.imax(); ++k)
    r[k] = profile.q_mass(k) / static_cast<double>(m);
  return r;
}

}  // namespace hypercopy
