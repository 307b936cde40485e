#pragma once

#include <vector>

#include "hypercopy/asymptotics.hpp"
#include "hypercopy/params.hpp"

namespace hypercopy {

// Coefficient tables of the pairwise-intersection linear system. All edge
// sizes are tracked up to imax. In every accessor the argument names mean:
//   i      size of the newly formed edge e
//   k      |e ∩ g| for the tracked prior edge g
//   j      size of g
//   fsize  size of the copied source edge f
//   h      |f ∩ g|
// b(i,k,j) covers the g = f case; phi/psi cover g != f at orders m^0 / m^-1.
class IntersectionCoefficients {
 public:
  IntersectionCoefficients(const ModelParams& params, int imax);

  int imax() const { return imax_; }

  double b(int i, int k, int j) const;
  double phi(int i, int k, int fsize, int h) const;  // independent of j
  double psi(int i, int k, int fsize, int j, int h) const {
    return psi_base(i, k, fsize, h) * static_cast<double>(j - k + 1);
  }
  double psi_base(int i, int k, int fsize, int h) const;

 private:
  int imax_;
  std::vector<double> b_, phi_, psi_base_;
  std::size_t idx4(int i, int k, int l, int h) const;
};

// Asymptotic intersection profile: constants q(i,j,k) with
// r_{ijk} ~ m^{-lambda_k} q_{ijk}, lambda_0 = 0 and lambda_k = 1 for k >= 1,
// normalized so that the k = 0 block sums to 1.
class IntersectionProfile {
 public:
  int imax() const { return imax_; }
  double q(int i, int j, int k) const {  // i, j in 1..imax, k in 0..imax
    return q_[flat(i, j, k)];
  }
  double lambda(int k) const { return k == 0 ? 0.0 : 1.0; }
  // Sum of q over (i, j) at fixed k.
  double q_mass(int k) const { return q_mass_[k]; }
  const PerronResult& solve() const { return solve_; }

  std::size_t flat(int i, int j, int k) const {
    return ((static_cast<std::size_t>(i) - 1) * imax_ + (j - 1)) * (imax_ + 1) + k;
  }

 private:
  friend IntersectionProfile intersection_profile(const ModelParams&, int, double,
                                                  std::size_t);
  int imax_ = 0;
  std::vector<double> q_;
  std::vector<double> q_mass_;
  PerronResult solve_;
};

// Assembles the system matrix from the coefficient tables and solves
// q = Cq by power iteration. Requires beta_0 < 1; throws DataError
// otherwise and ConvergenceError if the solve stalls (large eta is the
// known hard region).
IntersectionProfile intersection_profile(const ModelParams& params, int imax = 12,
                                         double tol = 1e-12,
                                         std::size_t max_iter = 1000000);

// Predicted pair-intersection densities at m edges: r_0 = sum_ij q_ij0 and
// r_k = q_mass(k)/m for k >= 1. Index k of the result runs 0..imax.
std::vector<double> predicted_rk(const IntersectionProfile& profile, std::size_t m);

}  // namespace hypercopy
