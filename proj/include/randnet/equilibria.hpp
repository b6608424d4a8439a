#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "randnet/complexity.hpp"
#include "randnet/connectivity.hpp"
#include "randnet/network.hpp"
#include "randnet/parallel.hpp"
#include "randnet/rng.hpp"
#include "randnet/sigmoid.hpp"
#include "randnet/spectra.hpp"
#include "randnet/stats.hpp"

namespace randnet {

struct NewtonResult {
  enum class Status { converged, max_iter, singular, diverged };

  Status status = Status::max_iter;
  Vec root;
  int iterations = 0;

  bool ok() const { return status == Status::converged; }
};

namespace detail {

// Solve A dx = -f with partial pivoting; on a numerically singular pivot,
// retry once with a small diagonal shift. Returns false if still unusable.
inline bool newton_direction(Mat A, const Vec& f, Vec& dx) {
  for (int attempt = 0; attempt < 2; ++attempt) {
    Eigen::PartialPivLU<Mat> lu(A);
    const auto& diag = lu.matrixLU().diagonal();
    const double dmax = diag.cwiseAbs().maxCoeff();
    const double dmin = diag.cwiseAbs().minCoeff();
    if (dmax > 0 && dmin > 1e-14 * dmax) {
      dx = lu.solve(-f);
      return dx.allFinite();
    }
    A.diagonal().array() += 1e-8 * std::max(1.0, dmax);
  }
  return false;
}

}  // namespace detail

/// Damped Newton iteration on F(x) = -x + J*S(x). Step lengths are halved
/// (up to 30 times) until the residual decreases; plain Newton diverges
/// frequently from saturated regions.
inline NewtonResult newton_solve(const Mat& J, const SigmoidSpec& s, const Vec& x0,
                                 double tol = 1e-10, int max_iter = 100) {
  if (tol <= 0) throw std::invalid_argument("newton_solve: tol must be > 0");
  const double diverge_cap = 1e6;

  NewtonResult res;
  Vec x = x0;
  Vec f = vector_field(J, s, x);
  for (int it = 0; it < max_iter; ++it) {
    res.iterations = it;
    const double fnorm = f.lpNorm<Eigen::Infinity>();
    if (fnorm <= tol) {
      res.status = NewtonResult::Status::converged;
      res.root = x;
      return res;
    }
    Vec dx;
    if (!detail::newton_direction(jacobian_at(J, s, x), f, dx)) {
      res.status = NewtonResult::Status::singular;
      return res;
    }
    double step = 1.0;
    Vec x_next, f_next;
    bool accepted = false;
    for (int bt = 0; bt < 30; ++bt) {
      x_next = x + step * dx;
      f_next = vector_field(J, s, x_next);
      if (f_next.lpNorm<Eigen::Infinity>() < fnorm) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      res.status = NewtonResult::Status::max_iter;
      return res;
    }
    x = std::move(x_next);
    f = std::move(f_next);
    if (x.lpNorm<Eigen::Infinity>() > diverge_cap) {
      res.status = NewtonResult::Status::diverged;
      return res;
    }
  }
  res.status = NewtonResult::Status::max_iter;
  return res;
}

struct EquilibriumSet {
  std::vector<Vec> roots;
  std::vector<int> unstable;  // Jacobian eigenvalues with positive real part, per root
  double residual_tol = 1e-10;
  double dedup_tol = 0.0;
  int starts_attempted = 0;
  int starts_converged = 0;

  int count() const { return static_cast<int>(roots.size()); }
};

namespace detail {

inline bool near_any(const std::vector<Vec>& roots, const Vec& x, double tol) {
  for (const auto& r : roots)
    if ((r - x).lpNorm<Eigen::Infinity>() < tol) return true;
  return false;
}

inline int unstable_directions(const Mat& J, const SigmoidSpec& s, const Vec& root) {
  const Spectrum sp = eigenvalues(jacobian_at(J, s, root));
  int k = 0;
  for (Eigen::Index i = 0; i < sp.eigenvalues.size(); ++i)
    if (sp.eigenvalues[i].real() > 0) ++k;
  return k;
}

}  // namespace detail

/// Multi-start search for solutions of x = J*S(x): Newton from the origin and
/// from n_starts points uniform in the centered box, deduplicated, closed
/// under x -> -x (the field is odd), and classified by the Jacobian spectrum.
/// Counts are lower bounds by construction; search effort is recorded.
inline EquilibriumSet find_equilibria(const Mat& J, const SigmoidSpec& s, int n_starts,
                                      double box_radius, std::uint64_t seed) {
  if (n_starts < 1) throw std::invalid_argument("find_equilibria: n_starts must be >= 1");
  const auto n = J.rows();
  EquilibriumSet set;
  set.residual_tol = 1e-10;
  set.dedup_tol = 1e-6 * std::sqrt(static_cast<double>(n));

  Counter64 rng(seed);
  auto admit = [&](const Vec& x) {
    if (detail::near_any(set.roots, x, set.dedup_tol)) return;
    set.roots.push_back(x);
    const Vec minus = -x;
    if (vector_field(J, s, minus).lpNorm<Eigen::Infinity>() <= set.residual_tol &&
        !detail::near_any(set.roots, minus, set.dedup_tol))
      set.roots.push_back(minus);
  };

  admit(Vec::Zero(n));  // the origin is always an equilibrium: S(0) = 0

  Vec x0(n);
  for (int k = 0; k < n_starts; ++k) {
    for (Eigen::Index i = 0; i < n; ++i) x0[i] = rng.next_uniform(-box_radius, box_radius);
    ++set.starts_attempted;
    const NewtonResult r = newton_solve(J, s, x0, set.residual_tol);
    if (!r.ok()) continue;
    ++set.starts_converged;
    admit(r.root);
  }

  set.unstable.reserve(set.roots.size());
  for (const auto& root : set.roots) set.unstable.push_back(detail::unstable_directions(J, s, root));
  return set;
}

inline double default_box_radius(double sigma, const SigmoidSpec& s) {
  // every root satisfies |x_i| <= |row_i(J)| * sup|S|; 3*sigma*sat covers it
  return 3.0 * std::max(1.0, sigma) * s.saturation();
}

/// Brute-force root count for n <= 2: sign-change scan of the scalar equation
/// in 1-D, Newton refinement from every grid cell in 2-D. Finds every root
/// pair separated by more than 2*box_radius/resolution.
inline int grid_oracle(const Mat& J, const SigmoidSpec& s, double box_radius, int resolution) {
  const auto n = J.rows();
  if (n > 2) throw std::invalid_argument("grid_oracle: only n in {1, 2} supported");
  if (resolution < 2) throw std::invalid_argument("grid_oracle: resolution too small");

  if (n == 1) {
    const double j11 = J(0, 0);
    auto f = [&](double x) { return -x + j11 * sigmoid_eval(s, x); };
    int count = 0;
    double prev = f(-box_radius);
    for (int k = 1; k <= resolution; ++k) {
      const double x = -box_radius + 2.0 * box_radius * k / resolution;
      const double cur = f(x);
      if (prev == 0.0)
        ++count;
      else if (prev * cur < 0)
        ++count;
      prev = cur;
    }
    if (prev == 0.0) ++count;
    return count;
  }

  const double dedup = 1e-6 * std::sqrt(2.0);
  const double margin = 1e-6;
  std::vector<Vec> roots;
  Vec c(2);
  for (int i = 0; i < resolution; ++i) {
    c[0] = -box_radius + (2.0 * i + 1.0) * box_radius / resolution;
    for (int j = 0; j < resolution; ++j) {
      c[1] = -box_radius + (2.0 * j + 1.0) * box_radius / resolution;
      const NewtonResult r = newton_solve(J, s, c, 1e-10, 60);
      if (!r.ok()) continue;
      if (r.root.lpNorm<Eigen::Infinity>() > box_radius + margin) continue;
      if (!detail::near_any(roots, r.root, dedup)) roots.push_back(r.root);
    }
  }
  return static_cast<int>(roots.size());
}

struct CountEstimate {
  double sigma = 0.0;
  int n = 0;
  double mean = 0.0;
  double stderr_ = 0.0;
  int n_matrices = 0;
  int n_starts = 0;
  std::vector<int> counts;             // per-realization equilibrium counts
  std::vector<std::uint64_t> seeds;    // per-realization matrix seeds
  std::vector<int> converged_starts;   // search effort per realization
};

/// Mean equilibrium count over independent coupling realizations at fixed
/// (sigma, n). Multi-start counts are lower bounds, so the per-realization
/// search effort is kept alongside the counts.
inline CountEstimate mean_count(double sigma, int n, int n_matrices, int n_starts,
                                std::uint64_t seed, int n_threads = 1) {
  if (sigma <= 0 || n < 1 || n_matrices < 1 || n_starts < 1)
    throw std::invalid_argument("mean_count: all parameters must be positive");

  const SigmoidSpec s = SigmoidSpec::base();
  const double box = default_box_radius(sigma, s);

  CountEstimate est;
  est.sigma = sigma;
  est.n = n;
  est.n_matrices = n_matrices;
  est.n_starts = n_starts;
  est.counts.resize(static_cast<std::size_t>(n_matrices));
  est.seeds.resize(static_cast<std::size_t>(n_matrices));
  est.converged_starts.resize(static_cast<std::size_t>(n_matrices));

  parallel_tasks(n_matrices, n_threads, [&](int i) {
    const std::uint64_t mseed = derive_seed(seed, static_cast<std::uint64_t>(i));
    const auto J = sample_matrix(n, sigma, mseed);
    const auto set = find_equilibria(J.entries, s, n_starts, box,
                                     derive_seed(mseed, 0x5745u));
    est.counts[static_cast<std::size_t>(i)] = set.count();
    est.seeds[static_cast<std::size_t>(i)] = mseed;
    est.converged_starts[static_cast<std::size_t>(i)] = set.starts_converged;
  });

  RunningStat stat;
  for (int c : est.counts) stat.add(static_cast<double>(c));
  est.mean = stat.mean();
  est.stderr_ = stat.stderr_of_mean();
  return est;
}

/// True iff every equilibrium found by a wide-box search lies within
/// infinity-norm radius rho(eps) of the origin (10% slack). Near criticality
/// the claim holds with probability approaching one as n grows.
inline bool ball_confinement_check(const ConnectivityMatrix& J, const SigmoidSpec& s,
                                   int n_starts, std::uint64_t seed) {
  const double rho = rho_of_epsilon(J.sigma, s);
  const auto set = find_equilibria(J.entries, s, n_starts,
                                   default_box_radius(J.sigma, s), seed);
  for (const auto& r : set.roots)
    if (r.lpNorm<Eigen::Infinity>() > 1.1 * rho + 1e-12) return false;
  return true;
}

}  // namespace randnet
