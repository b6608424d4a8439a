#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "randnet/fakir.hpp"
#include "randnet/parallel.hpp"

using namespace randnet;

namespace {

FakirLandscape single_hill_at_origin(double confine_amp = 1e-12, double confine_radius = 1e6) {
  FakirParams prm;
  prm.confine_amp = confine_amp;
  prm.confine_radius = confine_radius;
  FakirLandscape l;
  l.k = 1;
  l.prm = prm;
  l.centers = Eigen::Matrix2Xd::Zero(2, 1);
  l.seed = 0;
  return l;
}

}  // namespace

TEST_CASE("landscape sampling") {
  const FakirParams prm;
  const auto empty = sample_landscape(0, prm, 5);
  CHECK(empty.k == 0);
  CHECK(empty.centers.cols() == 0);

  const auto l = sample_landscape(50, prm, 5);
  CHECK(l.centers.cols() == 50);
  for (int a = 0; a < 50; ++a) CHECK(l.centers.col(a).norm() <= prm.placement_radius);

  const auto l2 = sample_landscape(10, prm, 6);
  const auto l3 = sample_landscape(10, prm, 6);
  const auto l4 = sample_landscape(10, prm, 7);
  CHECK(l2.centers == l3.centers);
  CHECK(l2.centers != l4.centers);
}

TEST_CASE("potential basics") {
  const auto flat = sample_landscape(0, FakirParams{}, 1);
  const auto at0 = potential(flat, Vec2(0, 0));
  CHECK(at0.U == 0.0);
  CHECK(at0.grad.norm() == 0.0);

  const auto hill = single_hill_at_origin();
  const auto top = potential(hill, Vec2(0, 0));
  CHECK(top.U == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(top.grad.norm() < 1e-12);
  // the top is a strict maximum
  Eigen::SelfAdjointEigenSolver<Mat2> es(potential_hessian(hill, Vec2(0, 0)));
  CHECK(es.eigenvalues().maxCoeff() < 0.0);
}

TEST_CASE("gradient and hessian match finite differences") {
  const auto l = sample_landscape(25, FakirParams{}, 17);
  Counter64 rng(2);
  const double h = 1e-6;
  for (int rep = 0; rep < 40; ++rep) {
    const Vec2 q(rng.next_uniform(-5, 5), rng.next_uniform(-5, 5));
    const auto pe = potential(l, q);
    for (int d = 0; d < 2; ++d) {
      Vec2 qp = q, qm = q;
      qp[d] += h;
      qm[d] -= h;
      const double fd = (potential(l, qp).U - potential(l, qm).U) / (2 * h);
      CHECK(pe.grad[d] == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
      const Vec2 gd = (potential(l, qp).grad - potential(l, qm).grad) / (2 * h);
      const Mat2 hess = potential_hessian(l, q);
      CHECK(hess(0, d) == doctest::Approx(gd[0]).epsilon(1e-5).scale(1.0));
      CHECK(hess(1, d) == doctest::Approx(gd[1]).epsilon(1e-5).scale(1.0));
    }
  }
}

TEST_CASE("free interior flight when there are no hills") {
  const auto l = sample_landscape(0, FakirParams{}, 1);
  ParticleState s0;
  s0.q = Vec2(0.3, -0.2);
  s0.p = Vec2(0.4, 0.5);
  const auto traj = integrate_particle(l, s0, 1e-3, 2.0);
  const auto& end = traj.back();
  const Vec2 expected = s0.q + end.t * s0.p;
  // wall force is ~(r/6)^8 inside, negligible here
  CHECK((end.q - expected).norm() < 1e-4);
}

TEST_CASE("energy conservation over long runs") {
  const auto l = sample_landscape(30, FakirParams{}, 23);
  const auto s0 = random_initial_state(l, 5);
  const double e0 = total_energy(l, s0);
  const auto traj = integrate_particle(l, s0, 1e-3, 10000.0, 5000);
  for (const auto& st : traj) {
    const double e = total_energy(l, st);
    CHECK(std::abs(e - e0) / std::abs(e0) < 1e-4);
  }
}

TEST_CASE("verlet is time reversible") {
  const auto l = sample_landscape(12, FakirParams{}, 29);
  const auto s0 = random_initial_state(l, 6);
  auto fwd = integrate_particle(l, s0, 1e-3, 10.0, 1000000);
  ParticleState back = fwd.back();
  back.p = -back.p;
  back.t = 0.0;
  const auto ret = integrate_particle(l, back, 1e-3, 10.0, 1000000);
  CHECK((ret.back().q - s0.q).norm() < 1e-6);
  CHECK((ret.back().p + s0.p).norm() < 1e-6);
}

TEST_CASE("no scatterers, no exponential separation") {
  const auto l = sample_landscape(0, FakirParams{}, 1);
  ParticleState s0;
  s0.q = Vec2(1.0, 0.0);
  s0.p = Vec2(0.0, 0.9);
  const double lam = fakir_lyapunov(l, s0, 1e-3, 50.0, 550.0, 1.0);
  CHECK(std::abs(lam) < 0.01);
}

TEST_CASE("crossing a hill flank expands the tangent") {
  const auto hill = single_hill_at_origin();
  ParticleState s0;
  s0.q = Vec2(-3.0, 0.02);
  s0.p = Vec2(1.0, 0.0);
  // window covering one encounter with the unstable top region
  const double lam = fakir_lyapunov(hill, s0, 1e-3, 0.0, 6.0, 6.0);
  CHECK(lam > 0.0);
}

TEST_CASE("default landscapes are chaotic for most seeds at k = 30") {
  const int n_seeds = 50;
  std::vector<int> positive(n_seeds, 0);
  parallel_tasks(n_seeds, default_thread_count(), [&](int i) {
    const auto l = sample_landscape(30, FakirParams{}, derive_seed(808, static_cast<std::uint64_t>(i)));
    const auto s0 = random_initial_state(l, derive_seed(809, static_cast<std::uint64_t>(i)));
    const double lam = fakir_lyapunov(l, s0, 1e-3, 20.0, 220.0, 1.0);
    positive[static_cast<std::size_t>(i)] = lam > 0 ? 1 : 0;
  });
  int hits = 0;
  for (int v : positive) hits += v;
  CHECK(hits >= 45);  // >= 90%
}

TEST_CASE("unstable critical point counting") {
  CHECK(count_critical_points(sample_landscape(0, FakirParams{}, 3), 500, 1) == 0);
  CHECK(count_critical_points(single_hill_at_origin(), 2000, 2) == 1);

  // well-separated narrow hills: every top persists, saddles may add more
  FakirParams prm;
  prm.hill_width = 0.15;
  const int k = 20;
  for (std::uint64_t seed : {41ull, 42ull}) {
    const auto l = sample_landscape(k, prm, seed);
    const int count = count_critical_points(l, 40000, seed);
    CHECK(count >= k * 9 / 10);
  }
}

TEST_CASE("slope experiment bookkeeping") {
  FakirRunParams rp;
  rp.transient = 10.0;
  rp.t_total = 110.0;
  const std::vector<int> ks = {4, 16};
  const auto ex = slope_experiment(ks, 4, rp, 99, default_thread_count());
  REQUIRE(ex.mean.size() == 2);
  CHECK(ex.lambdas[0].size() == 4);
  CHECK(ex.slope == doctest::Approx((ex.mean[1] - ex.mean[0]) /
                                    (std::log(16.0) - std::log(4.0))).epsilon(1e-12));

  // regression is order-free
  const auto swapped = slope_experiment({16, 4}, 4, rp, 99, 1);
  // same per-k statistics appear under permutation with per-task seeds
  // re-derived, so only check the fit's invariance on identical data
  std::vector<double> lx = {std::log(4.0), std::log(16.0)};
  std::vector<double> ly = {ex.mean[0], ex.mean[1]};
  std::vector<double> lx2 = {std::log(16.0), std::log(4.0)};
  std::vector<double> ly2 = {ex.mean[1], ex.mean[0]};
  const auto f1 = fit_linear(lx, ly);
  const auto f2 = fit_linear(lx2, ly2);
  CHECK(f1.slope == doctest::Approx(f2.slope).epsilon(1e-12));
  CHECK(f1.intercept == doctest::Approx(f2.intercept).epsilon(1e-12));
  (void)swapped;
}

TEST_CASE("slope experiment is deterministic across worker counts") {
  FakirRunParams rp;
  rp.transient = 5.0;
  rp.t_total = 55.0;
  const auto a = slope_experiment({5, 10}, 3, rp, 7, 1);
  const auto b = slope_experiment({5, 10}, 3, rp, 7, 2);
  CHECK(a.lambdas == b.lambdas);
  CHECK(a.slope == b.slope);
}
