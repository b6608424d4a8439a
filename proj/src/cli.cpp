#include "cli.hpp"

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "randnet/complexity.hpp"
#include "randnet/connectivity.hpp"
#include "randnet/equilibria.hpp"
#include "randnet/fakir.hpp"
#include "randnet/io.hpp"
#include "randnet/lyapunov.hpp"
#include "randnet/network.hpp"
#include "randnet/parallel.hpp"
#include "randnet/spectra.hpp"
#include "randnet/svg.hpp"

namespace randnet {
namespace {

using nlohmann::json;

std::string iso_utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct DataTable {
  std::string name;  // basename without extension
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
      out += header[i];
      out += (i + 1 < header.size()) ? ',' : '\n';
    }
    for (const auto& row : rows)
      for (std::size_t i = 0; i < row.size(); ++i) {
        out += row[i];
        out += (i + 1 < row.size()) ? ',' : '\n';
      }
    return out;
  }

  json to_json() const {
    json arr = json::array();
    for (const auto& row : rows) {
      json obj;
      for (std::size_t i = 0; i < header.size() && i < row.size(); ++i)
        obj[header[i]] = row[i];
      arr.push_back(std::move(obj));
    }
    return arr;
  }
};

/// Collects config, derived seeds and output files of one run, then writes
/// everything plus the manifest in one go.
struct RunContext {
  std::string subcommand;
  std::string out_dir = ".";
  std::string format = "csv";
  std::uint64_t seed = 1;
  int threads = 0;  // 0: hardware
  json config;
  json results;
  std::vector<std::uint64_t> task_seeds;
  std::vector<std::pair<std::string, std::string>> files;  // name -> bytes
  std::string started_at = iso_utc_now();

  int effective_threads() const { return threads > 0 ? threads : default_thread_count(); }

  void add_table(const DataTable& t) {
    if (format == "json")
      files.emplace_back(t.name + ".json", t.to_json().dump(2) + "\n");
    else
      files.emplace_back(t.name + ".csv", t.to_csv());
  }

  void add_file(std::string name, std::string bytes) {
    files.emplace_back(std::move(name), std::move(bytes));
  }

  int finish() {
    std::filesystem::create_directories(out_dir);
    json inventory = json::array();
    for (const auto& [name, bytes] : files) {
      const auto path = std::filesystem::path(out_dir) / name;
      write_file_atomic(path, bytes);
      inventory.push_back(
          {{"path", name}, {"bytes", bytes.size()}, {"fnv1a64", fnv1a64_hex(bytes)}});
    }
    json seeds = json::array();
    for (auto s : task_seeds) seeds.push_back(s);

    json manifest = {{"subcommand", subcommand}, {"config", config},
                     {"started_at", started_at},  {"finished_at", iso_utc_now()},
                     {"task_seeds", seeds},       {"outputs", inventory}};
    write_file_atomic(std::filesystem::path(out_dir) / "manifest.json",
                      manifest.dump(2) + "\n");

    json summary = {{"subcommand", subcommand}, {"config", config},
                    {"task_seeds", seeds},      {"results", results},
                    {"outputs", inventory}};
    std::cout << summary.dump(2) << "\n";
    return 0;
  }
};

std::string fmt(double x) { return format_real(x); }

json benettin_json(const BenettinParams& p) {
  return {{"dt", p.dt},
          {"transient", p.transient},
          {"t_total", p.t_total},
          {"renorm_every", p.renorm_every}};
}

Vec random_box_vector(std::uint64_t seed, int n, double amp) {
  Counter64 rng(seed);
  Vec x(n);
  for (int i = 0; i < n; ++i) x[i] = rng.next_uniform(-amp, amp);
  return x;
}

// ---- subcommand bodies ----------------------------------------------------

int run_spectrum(RunContext& ctx, int n, double sigma) {
  const std::uint64_t mseed = derive_seed(ctx.seed, 0);
  ctx.task_seeds = {mseed};
  const auto J = sample_matrix(n, sigma, mseed);
  const auto sp = eigenvalues(J);

  DataTable t;
  t.name = "spectrum";
  t.header = {"re", "im"};
  for (Eigen::Index i = 0; i < sp.eigenvalues.size(); ++i)
    t.rows.push_back({fmt(sp.eigenvalues[i].real()), fmt(sp.eigenvalues[i].imag())});
  ctx.add_table(t);

  SvgSeries cloud;
  cloud.name = "spectrum";
  cloud.line = false;
  for (Eigen::Index i = 0; i < sp.eigenvalues.size(); ++i)
    cloud.points.emplace_back(sp.eigenvalues[i].real(), sp.eigenvalues[i].imag());
  ctx.add_file("spectrum.svg",
               render_svg({cloud}, SvgAxes{"Re", "Im", "coupling spectrum", false, false}));

  ctx.results = {{"n", n},
                 {"sigma", sigma},
                 {"spectral_radius", sp.eigenvalues.cwiseAbs().maxCoeff()},
                 {"circular_law_discrepancy", circular_law_discrepancy(sp, sigma)}};
  return ctx.finish();
}

int run_trajectory(RunContext& ctx, int n, double sigma, double dt, double t_end,
                   int store_every) {
  const std::uint64_t mseed = derive_seed(ctx.seed, 0);
  ctx.task_seeds = {mseed};
  const auto J = sample_matrix(n, sigma, mseed);
  const Vec x0 = random_box_vector(derive_seed(mseed, 1), n, 1.0);
  if (store_every < 1) {
    const double steps = t_end / dt;
    store_every = t_end <= 100.0 ? 1 : static_cast<int>(std::ceil(steps / 10000.0));
  }
  const auto traj = integrate(J.entries, SigmoidSpec::base(), x0, dt, t_end, store_every);

  const int m = std::min(n, 16);
  DataTable t;
  t.name = "trajectory";
  t.header = {"t", "norm"};
  for (int i = 0; i < m; ++i) t.header.push_back("x_" + std::to_string(i));
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    std::vector<std::string> row = {fmt(traj.times[k]), fmt(traj.states[k].norm())};
    for (int i = 0; i < m; ++i) row.push_back(fmt(traj.states[k][i]));
    t.rows.push_back(std::move(row));
  }
  ctx.add_table(t);

  ctx.results = {{"n", n},
                 {"sigma", sigma},
                 {"t_end", traj.final_time()},
                 {"final_norm", traj.final_state().norm()},
                 {"stored_states", traj.states.size()},
                 {"store_every", store_every}};
  return ctx.finish();
}

int run_equilibria(RunContext& ctx, int n, double sigma, int starts, double box) {
  const std::uint64_t mseed = derive_seed(ctx.seed, 0);
  ctx.task_seeds = {mseed};
  const auto J = sample_matrix(n, sigma, mseed);
  const auto s = SigmoidSpec::base();
  if (box <= 0) box = default_box_radius(sigma, s);
  const auto set = find_equilibria(J.entries, s, starts, box, derive_seed(mseed, 0x5745u));

  DataTable t;
  t.name = "equilibria";
  t.header = {"index", "unstable", "norm_inf", "residual"};
  for (int i = 0; i < set.count(); ++i) {
    const auto& r = set.roots[static_cast<std::size_t>(i)];
    t.rows.push_back({std::to_string(i), std::to_string(set.unstable[static_cast<std::size_t>(i)]),
                      fmt(r.lpNorm<Eigen::Infinity>()),
                      fmt(vector_field(J.entries, s, r).lpNorm<Eigen::Infinity>())});
  }
  ctx.add_table(t);

  ctx.results = {{"n", n},
                 {"sigma", sigma},
                 {"count", set.count()},
                 {"box_radius", box},
                 {"starts_attempted", set.starts_attempted},
                 {"starts_converged", set.starts_converged}};
  return ctx.finish();
}

int run_mean_count(RunContext& ctx, double sigma, int n, int matrices, int starts) {
  const auto est = mean_count(sigma, n, matrices, starts, ctx.seed, ctx.effective_threads());
  ctx.task_seeds = est.seeds;

  DataTable t;
  t.name = "mean_count";
  t.header = {"sigma", "n", "realization", "count"};
  for (int i = 0; i < est.n_matrices; ++i)
    t.rows.push_back({fmt(sigma), std::to_string(n), std::to_string(i),
                      std::to_string(est.counts[static_cast<std::size_t>(i)])});
  ctx.add_table(t);

  ctx.results = {{"sigma", sigma},
                 {"n", n},
                 {"mean", est.mean},
                 {"stderr", est.stderr_},
                 {"matrices", est.n_matrices},
                 {"starts", est.n_starts}};
  return ctx.finish();
}

void append_complexity_row(DataTable& t, const ComplexityEstimate& e) {
  t.rows.push_back({fmt(e.sigma), std::to_string(e.n),
                    ComplexityEstimate::method_name(e.method), fmt(e.value), fmt(e.stderr_),
                    std::to_string(e.samples)});
}

int run_complexity(RunContext& ctx, double sigma, std::int64_t points) {
  DataTable t;
  t.name = "complexity";
  t.header = {"sigma", "n", "method", "value", "stderr", "samples"};

  ComplexityEstimate closed;
  closed.sigma = sigma;
  closed.value = c_closed_form(sigma);
  closed.method = ComplexityEstimate::Method::closed_form;
  append_complexity_row(t, closed);

  ctx.results = {{"sigma", sigma}, {"value", closed.value}, {"method", "closed_form"}};
  if (points > 0) {
    const std::uint64_t qseed = derive_seed(ctx.seed, 0);
    ctx.task_seeds = {qseed};
    const auto quad = c_quadrature(sigma, points, qseed);
    append_complexity_row(t, quad);
    ctx.results["quadrature"] = {{"value", quad.value},
                                 {"stderr", quad.stderr_},
                                 {"samples", quad.samples}};
  }
  ctx.add_table(t);
  return ctx.finish();
}

int run_kac_rice(RunContext& ctx, int n, double sigma, int matrices) {
  const auto est = kac_rice_mc(n, sigma, matrices, ctx.seed, ctx.effective_threads());
  for (int i = 0; i < matrices; ++i)
    ctx.task_seeds.push_back(derive_seed(ctx.seed, static_cast<std::uint64_t>(i)));

  DataTable t;
  t.name = "complexity";
  t.header = {"sigma", "n", "method", "value", "stderr", "samples"};
  append_complexity_row(t, est);
  ctx.add_table(t);

  ctx.results = {{"sigma", sigma},          {"n", n},
                 {"value", est.value},      {"stderr", est.stderr_},
                 {"samples", est.samples},  {"excluded_singular", est.excluded},
                 {"method", "kac_rice_mc"}, {"closed_form", c_closed_form(sigma)}};
  return ctx.finish();
}

DataTable lyapunov_table() {
  DataTable t;
  t.name = "lyapunov";
  t.header = {"sigma", "n", "realization", "lambda", "convention"};
  return t;
}

int run_lyapunov(RunContext& ctx, int n, double sigma, const BenettinParams& p) {
  const std::uint64_t mseed = derive_seed(ctx.seed, 0);
  ctx.task_seeds = {mseed};
  const auto J = sample_matrix(n, sigma, mseed);
  const Vec x0 = random_box_vector(derive_seed(mseed, 1), n, 1.0);
  auto est = max_lyapunov_benettin(J.entries, SigmoidSpec::base(), x0, p);
  est.sigma = sigma;

  DataTable t = lyapunov_table();
  t.rows.push_back({fmt(sigma), std::to_string(n), "0", fmt(est.lambda), "benettin"});
  t.rows.push_back(
      {fmt(sigma), std::to_string(n), "0", fmt(est.lambda_susceptibility), "susceptibility"});
  ctx.add_table(t);

  ctx.results = {{"sigma", sigma},
                 {"n", n},
                 {"lambda", est.lambda},
                 {"lambda_susceptibility", est.lambda_susceptibility},
                 {"params", benettin_json(p)}};
  return ctx.finish();
}

int run_lyapunov_curve(RunContext& ctx, const std::vector<double>& sigmas, int n,
                       int realizations, const BenettinParams& p) {
  const auto curve = lyapunov_curve(sigmas, n, realizations, p, ctx.seed,
                                    ctx.effective_threads());
  for (const auto& row : curve.rows)
    for (auto s : row.seeds) ctx.task_seeds.push_back(s);

  DataTable t = lyapunov_table();
  DataTable summary;
  summary.name = "lyapunov_summary";
  summary.header = {"sigma", "n", "mean", "stderr", "realizations"};
  json rows = json::array();
  for (const auto& row : curve.rows) {
    for (std::size_t r = 0; r < row.lambdas.size(); ++r)
      t.rows.push_back({fmt(row.sigma), std::to_string(n), std::to_string(r),
                        fmt(row.lambdas[r]), "benettin"});
    summary.rows.push_back({fmt(row.sigma), std::to_string(n), fmt(row.mean), fmt(row.stderr_),
                            std::to_string(row.lambdas.size())});
    rows.push_back({{"sigma", row.sigma}, {"mean", row.mean}, {"stderr", row.stderr_}});
  }
  ctx.add_table(t);
  ctx.add_table(summary);

  SvgSeries means;
  means.name = "mean lambda";
  for (const auto& row : curve.rows) means.points.emplace_back(row.sigma, row.mean);
  ctx.add_file("lyapunov_curve.svg",
               render_svg({means}, SvgAxes{"sigma", "lambda", "edge of chaos", false, false}));

  ctx.results = {{"n", n}, {"rows", rows}, {"params", benettin_json(p)}};
  return ctx.finish();
}

int run_fakir_slope(RunContext& ctx, const std::vector<int>& k_list, int landscapes,
                    const FakirRunParams& rp) {
  const auto ex = slope_experiment(k_list, landscapes, rp, ctx.seed, ctx.effective_threads());
  for (const auto& ks : ex.seeds)
    for (auto s : ks) ctx.task_seeds.push_back(s);

  DataTable t;
  t.name = "fakir_lyapunov";
  t.header = {"k", "landscape_seed", "lambda"};
  for (std::size_t ki = 0; ki < ex.k_list.size(); ++ki)
    for (std::size_t li = 0; li < ex.lambdas[ki].size(); ++li)
      t.rows.push_back({std::to_string(ex.k_list[ki]), std::to_string(ex.seeds[ki][li]),
                        fmt(ex.lambdas[ki][li])});
  ctx.add_table(t);

  DataTable summary;
  summary.name = "fakir_summary";
  summary.header = {"k", "lambda_mean", "lambda_stderr", "n_landscapes"};
  for (std::size_t ki = 0; ki < ex.k_list.size(); ++ki)
    summary.rows.push_back({std::to_string(ex.k_list[ki]), fmt(ex.mean[ki]),
                            fmt(ex.stderr_[ki]), std::to_string(landscapes)});
  ctx.add_table(summary);

  const json regression = {{"slope", ex.slope}, {"intercept", ex.intercept}, {"r2", ex.r2}};
  ctx.add_file("fakir_regression.json", regression.dump(2) + "\n");

  SvgSeries means;
  means.name = "mean lambda";
  for (std::size_t ki = 0; ki < ex.k_list.size(); ++ki)
    means.points.emplace_back(static_cast<double>(ex.k_list[ki]), ex.mean[ki]);
  ctx.add_file("fakir_slope.svg",
               render_svg({means}, SvgAxes{"k", "lambda", "fakir bed", true, false}));

  ctx.results = {{"k_list", ex.k_list},
                 {"landscapes", landscapes},
                 {"slope", ex.slope},
                 {"intercept", ex.intercept},
                 {"r2", ex.r2},
                 {"means", ex.mean}};
  return ctx.finish();
}

int run_edge_thickness(RunContext& ctx, int n, double target) {
  const double sigma = edge_thickness(n, target);
  DataTable t;
  t.name = "edge_thickness";
  t.header = {"n", "target_nats", "sigma"};
  t.rows.push_back({std::to_string(n), fmt(target), fmt(sigma)});
  ctx.add_table(t);
  ctx.results = {{"n", n}, {"target_nats", target}, {"sigma", sigma}};
  return ctx.finish();
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"numerical laboratory for equilibria and chaos in random neural networks"};
  app.require_subcommand(1);

  RunContext ctx;
  int n = 100;
  double sigma = 1.0;
  int matrices = 50;
  int starts = 200;
  double dt = 0.01;
  double t_end = 0.0;  // 0: subcommand default
  double transient = -1.0;
  double renorm_every = 1.0;
  double box = 0.0;
  double target = 1.0;
  std::int64_t points = 0;
  int store_every = 0;
  std::vector<double> sigma_list;
  std::vector<int> k_list = {5, 10, 20, 40, 80};
  int landscapes = 100;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", ctx.seed, "master seed; per-task seeds derive from it");
    cmd->add_option("--threads", ctx.threads, "worker threads (0: hardware)");
    cmd->add_option("--out", ctx.out_dir, "output directory");
    cmd->add_option("--format", ctx.format, "bulk data format")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  auto* sp = app.add_subcommand("spectrum", "eigenvalues of one sampled coupling matrix");
  sp->add_option("--n", n, "matrix dimension")->required()->check(CLI::PositiveNumber);
  sp->add_option("--sigma", sigma, "disorder")->required()->check(CLI::PositiveNumber);
  add_common(sp);

  auto* tr = app.add_subcommand("trajectory", "integrate the network from a random state");
  tr->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  tr->add_option("--sigma", sigma)->required()->check(CLI::PositiveNumber);
  tr->add_option("--dt", dt)->check(CLI::PositiveNumber);
  tr->add_option("--t-end", t_end)->check(CLI::PositiveNumber);
  tr->add_option("--store-every", store_every);
  add_common(tr);

  auto* eq = app.add_subcommand("equilibria", "multistart equilibrium search on one matrix");
  eq->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  eq->add_option("--sigma", sigma)->required()->check(CLI::PositiveNumber);
  eq->add_option("--starts", starts)->check(CLI::PositiveNumber);
  eq->add_option("--box", box, "search box radius (0: 3*sigma)");
  add_common(eq);

  auto* mc = app.add_subcommand("mean-count", "mean equilibrium count over matrix realizations");
  mc->add_option("--sigma", sigma)->required()->check(CLI::PositiveNumber);
  mc->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  mc->add_option("--matrices", matrices)->check(CLI::PositiveNumber);
  mc->add_option("--starts", starts)->check(CLI::PositiveNumber);
  add_common(mc);

  auto* cx = app.add_subcommand("complexity", "closed-form c(sigma), optionally Monte-Carlo");
  cx->add_option("--sigma", sigma)->required()->check(CLI::PositiveNumber);
  cx->add_option("--points", points, "quadrature points (0: closed form only)");
  add_common(cx);

  auto* kr = app.add_subcommand("kac-rice", "log-determinant Monte-Carlo estimate of c(sigma)");
  kr->add_option("--sigma", sigma)->required()->check(CLI::PositiveNumber);
  kr->add_option("--n", n)->check(CLI::PositiveNumber);
  kr->add_option("--matrices", matrices)->check(CLI::PositiveNumber);
  add_common(kr);

  auto* ly = app.add_subcommand("lyapunov", "maximal Lyapunov exponent of one realization");
  ly->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  ly->add_option("--sigma", sigma)->required()->check(CLI::PositiveNumber);
  ly->add_option("--dt", dt)->check(CLI::PositiveNumber);
  ly->add_option("--t-end", t_end, "total time including transient")->check(CLI::PositiveNumber);
  ly->add_option("--transient", transient)->check(CLI::NonNegativeNumber);
  ly->add_option("--renorm-every", renorm_every)->check(CLI::PositiveNumber);
  add_common(ly);

  auto* lc = app.add_subcommand("lyapunov-curve", "mean lambda over a sigma grid");
  lc->add_option("--sigma-list", sigma_list, "comma-separated sigmas")
      ->required()
      ->delimiter(',');
  lc->add_option("--n", n)->check(CLI::PositiveNumber);
  lc->add_option("--matrices", matrices, "realizations per sigma")->check(CLI::PositiveNumber);
  lc->add_option("--dt", dt)->check(CLI::PositiveNumber);
  lc->add_option("--t-end", t_end)->check(CLI::PositiveNumber);
  lc->add_option("--transient", transient)->check(CLI::NonNegativeNumber);
  lc->add_option("--renorm-every", renorm_every)->check(CLI::PositiveNumber);
  add_common(lc);

  auto* fs = app.add_subcommand("fakir-slope", "mean lambda against log hill count");
  fs->add_option("--k-list", k_list, "comma-separated hill counts")->delimiter(',');
  fs->add_option("--landscapes", landscapes)->check(CLI::PositiveNumber);
  fs->add_option("--dt", dt)->check(CLI::PositiveNumber);
  fs->add_option("--t-end", t_end)->check(CLI::PositiveNumber);
  fs->add_option("--transient", transient)->check(CLI::NonNegativeNumber);
  fs->add_option("--renorm-every", renorm_every)->check(CLI::PositiveNumber);
  add_common(fs);

  auto* et = app.add_subcommand("edge-thickness", "sigma at which n*(sigma-1)^2 hits a target");
  et->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  et->add_option("--target", target, "target nats")->check(CLI::PositiveNumber);
  add_common(et);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  CLI::App* cmd = app.get_subcommands().front();
  ctx.subcommand = cmd->get_name();
  ctx.config = {{"subcommand", ctx.subcommand},
                {"seed", ctx.seed},
                {"threads", ctx.effective_threads()},
                {"out", ctx.out_dir},
                {"format", ctx.format}};

  try {
    if (cmd == sp) {
      ctx.config["n"] = n;
      ctx.config["sigma"] = sigma;
      return run_spectrum(ctx, n, sigma);
    }
    if (cmd == tr) {
      if (t_end <= 0) t_end = 100.0;
      ctx.config["n"] = n;
      ctx.config["sigma"] = sigma;
      ctx.config["dt"] = dt;
      ctx.config["t_end"] = t_end;
      return run_trajectory(ctx, n, sigma, dt, t_end, store_every);
    }
    if (cmd == eq) {
      ctx.config["n"] = n;
      ctx.config["sigma"] = sigma;
      ctx.config["starts"] = starts;
      return run_equilibria(ctx, n, sigma, starts, box);
    }
    if (cmd == mc) {
      ctx.config["n"] = n;
      ctx.config["sigma"] = sigma;
      ctx.config["matrices"] = matrices;
      ctx.config["starts"] = starts;
      return run_mean_count(ctx, sigma, n, matrices, starts);
    }
    if (cmd == cx) {
      ctx.config["sigma"] = sigma;
      ctx.config["points"] = points;
      return run_complexity(ctx, sigma, points);
    }
    if (cmd == kr) {
      if (!kr->count("--n")) n = 500;
      ctx.config["n"] = n;
      ctx.config["sigma"] = sigma;
      ctx.config["matrices"] = matrices;
      return run_kac_rice(ctx, n, sigma, matrices);
    }
    if (cmd == ly || cmd == lc) {
      BenettinParams p;
      p.dt = dt;
      p.t_total = t_end > 0 ? t_end : 2000.0;
      p.transient = transient >= 0 ? transient : 200.0;
      p.renorm_every = renorm_every;
      ctx.config["dt"] = p.dt;
      ctx.config["t_end"] = p.t_total;
      ctx.config["transient"] = p.transient;
      ctx.config["renorm_every"] = p.renorm_every;
      ctx.config["n"] = n;
      if (cmd == ly) {
        ctx.config["sigma"] = sigma;
        return run_lyapunov(ctx, n, sigma, p);
      }
      ctx.config["sigma_list"] = sigma_list;
      ctx.config["matrices"] = matrices;
      return run_lyapunov_curve(ctx, sigma_list, n, matrices, p);
    }
    if (cmd == fs) {
      FakirRunParams rp;
      rp.dt = dt == 0.01 ? 1e-3 : dt;  // fakir default step is finer
      rp.t_total = t_end > 0 ? t_end : 1050.0;
      rp.transient = transient >= 0 ? transient : 50.0;
      rp.renorm_every = renorm_every;
      ctx.config["k_list"] = k_list;
      ctx.config["landscapes"] = landscapes;
      ctx.config["dt"] = rp.dt;
      ctx.config["t_end"] = rp.t_total;
      ctx.config["transient"] = rp.transient;
      return run_fakir_slope(ctx, k_list, landscapes, rp);
    }
    if (cmd == et) {
      ctx.config["n"] = n;
      ctx.config["target"] = target;
      return run_edge_thickness(ctx, n, target);
    }
    std::cerr << "unknown subcommand\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace randnet
