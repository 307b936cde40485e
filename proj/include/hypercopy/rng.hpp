#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace hypercopy {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Self-contained 64-bit generator. All draw primitives are implemented here
// (no std::*_distribution) so that a given seed produces the same stream on
// every platform; reproducibility is part of the external contract.
//
// Stream-splitting rule: a simulation with master seed S uses
// Rng(S).substream(step) for the step-th edge, so each step's draws are
// independent of how many values earlier steps consumed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(splitmix64(seed ^ 0xD1B54A32D192ED03ULL)) {}

  Rng substream(std::uint64_t index) const {
    return Rng(splitmix64(state_ + 0x9E3779B97F4A7C15ULL * (index + 1)));
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). Rejection keeps the draw exactly uniform.
  std::uint64_t uniform_index(std::uint64_t n) {
    const std::uint64_t threshold = -n % n;  // (2^64 - n) mod n
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  bool bernoulli(double p) { return next_double() < p; }

  // Index drawn from an (unnormalized is fine) probability vector by CDF walk.
  std::size_t categorical(std::span<const double> probs) {
    double total = 0.0;
    for (double p : probs) total += p;
    double u = next_double() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
      acc += probs[i];
      if (u < acc) return i;
    }
    return probs.empty() ? 0 : probs.size() - 1;
  }

  // Sum of n independent coins; n is a small edge size throughout.
  int binomial(int n, double p) {
    int c = 0;
    for (int i = 0; i < n; ++i) c += bernoulli(p) ? 1 : 0;
    return c;
  }

  // Knuth's method; means here are bounded by the model's count cutoff.
  int poisson(double mean) {
    if (mean <= 0.0) return 0;
    const double limit = std::exp(-mean);
    double prod = 1.0;
    int k = -1;
    do {
      ++k;
      prod *= next_double();
    } while (prod > limit);
    return k;
  }

  // k distinct values from [0, n), ascending.
  std::vector<std::uint32_t> distinct_indices(std::uint64_t n, std::size_t k);

 private:
  std::uint64_t state_;
};

inline std::vector<std::uint32_t> Rng::distinct_indices(std::uint64_t n, std::size_t k) {
  std::vector<std::uint32_t> out;
  if (k == 0 || n == 0) return out;
  if (k >= n) {
    out.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) out[i] = static_cast<std::uint32_t>(i);
    return out;
  }
  out.reserve(k);
  if (k * 3 >= n) {
    // Dense case: partial Fisher-Yates over an explicit pool.
    std::vector<std::uint32_t> pool(n);
    for (std::uint64_t i = 0; i < n; ++i) pool[i] = static_cast<std::uint32_t>(i);
    for (std::size_t i = 0; i < k; ++i) {
      std::uint64_t j = i + uniform_index(n - i);
      std::swap(pool[i], pool[j]);
      out.push_back(pool[i]);
    }
  } else {
    for (;;) {
      std::uint32_t v = static_cast<std::uint32_t>(uniform_index(n));
      bool seen = false;
      for (std::uint32_t u : out) seen |= (u == v);
      if (!seen) {
        out.push_back(v);
        if (out.size() == k) break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hypercopy
