#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "randnet/rng.hpp"

namespace randnet {

/// Gaussian coupling matrix with iid N(0, sigma^2/n) entries. Entries are
/// drawn column-major from a Counter64 stream, so (n, sigma, seed) rebuilds
/// the matrix bit-identically.
struct ConnectivityMatrix {
  int n = 0;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  Eigen::MatrixXd entries;
};

inline ConnectivityMatrix sample_matrix(int n, double sigma, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_matrix: n must be >= 1");
  if (sigma <= 0) throw std::invalid_argument("sample_matrix: sigma must be > 0");
  ConnectivityMatrix m;
  m.n = n;
  m.sigma = sigma;
  m.seed = seed;
  m.entries.resize(n, n);
  Counter64 rng(seed);
  const double sd = sigma / std::sqrt(static_cast<double>(n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m.entries(i, j) = sd * rng.next_normal();
  return m;
}

}  // namespace randnet
