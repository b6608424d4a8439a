#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "randnet/connectivity.hpp"

namespace randnet {

struct Spectrum {
  Eigen::VectorXcd eigenvalues;
  int n = 0;
  double source_sigma = 0.0;
  std::uint64_t source_seed = 0;
};

/// All eigenvalues of a square real matrix, via Hessenberg reduction plus
/// shifted QR (Eigen's real Schur path). Convergence failure throws instead
/// of returning a truncated spectrum. The O(n^3) cost is capped at
/// max_n = 4096 by default; pass a larger cap explicitly to go beyond.
inline Spectrum eigenvalues(const Eigen::MatrixXd& m, int max_n = 4096) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigenvalues: matrix must be square");
  if (m.rows() > max_n)
    throw std::invalid_argument("eigenvalues: n exceeds the cost cap of " +
                                std::to_string(max_n));
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigenvalues: QR iteration did not converge");
  Spectrum sp;
  sp.eigenvalues = solver.eigenvalues();
  sp.n = static_cast<int>(m.rows());
  return sp;
}

inline Spectrum eigenvalues(const ConnectivityMatrix& m) {
  Spectrum sp = eigenvalues(m.entries);
  sp.source_sigma = m.sigma;
  sp.source_seed = m.seed;
  return sp;
}

inline double spectral_radius(const Eigen::MatrixXd& m) {
  return eigenvalues(m).eigenvalues.cwiseAbs().maxCoeff();
}

/// Predicted asymptotic spectral radius of J * diag(g) for J with iid
/// N(0, sigma^2/n) entries: sqrt((sigma^2/n) * sum g_i^2). With g == 1 this
/// reduces to the circular-law radius sigma.
inline double scaled_support_radius(double sigma, const Eigen::VectorXd& gains) {
  const double n = static_cast<double>(gains.size());
  return std::sqrt(sigma * sigma / n * gains.squaredNorm());
}

/// Radial Kolmogorov-Smirnov distance between the empirical modulus law of a
/// spectrum and the uniform-disc prediction F(r) = (r/sigma)^2 on (0, sigma].
inline double circular_law_discrepancy(const Spectrum& sp, double sigma) {
  if (sp.eigenvalues.size() == 0)
    throw std::invalid_argument("circular_law_discrepancy: empty spectrum");
  std::vector<double> mod(static_cast<std::size_t>(sp.eigenvalues.size()));
  for (Eigen::Index i = 0; i < sp.eigenvalues.size(); ++i)
    mod[static_cast<std::size_t>(i)] = std::abs(sp.eigenvalues[i]);
  std::sort(mod.begin(), mod.end());
  const double n = static_cast<double>(mod.size());
  double d = 0.0;
  for (std::size_t i = 0; i < mod.size(); ++i) {
    const double f = std::min(1.0, (mod[i] / sigma) * (mod[i] / sigma));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    d = std::max(d, std::abs(static_cast<double>(i) / n - f));
  }
  return d;
}

struct LogDet {
  double value = 0.0;    // (1/n) log |det(-I + J)|
  bool singular = false;  // exactly singular shift: value is -infinity
};

/// Per-row log-determinant of the shifted matrix -I + J, computed from the
/// pivoted LU of (J - I); the sign is discarded.
inline LogDet log_abs_det_shifted(const Eigen::MatrixXd& J) {
  if (J.rows() != J.cols())
    throw std::invalid_argument("log_abs_det_shifted: matrix must be square");
  const auto n = J.rows();
  Eigen::MatrixXd shifted = J;
  shifted.diagonal().array() -= 1.0;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(shifted);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = std::abs(lu.matrixLU()(i, i));
    if (u == 0.0)
      return LogDet{-std::numeric_limits<double>::infinity(), true};
    acc += std::log(u);
  }
  return LogDet{acc / static_cast<double>(n), false};
}

inline LogDet log_abs_det_shifted(const ConnectivityMatrix& J) {
  return log_abs_det_shifted(J.entries);
}

}  // namespace randnet
