#include "cat/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "cat/io.hpp"
#include "cat/oracle.hpp"
#include "cat/sep_gaussian.hpp"

namespace cat {

std::string to_string(InstanceFamily f) {
  switch (f) {
    case InstanceFamily::PaninskiUniform: return "paninski";
    case InstanceFamily::NegSep: return "negsep";
    case InstanceFamily::HeavyHead: return "heavyhead";
    case InstanceFamily::Sobolev: return "sobolev";
    case InstanceFamily::Bump: return "bump";
  }
  return "?";
}

InstanceFamily family_from_string(const std::string& s) {
  if (s == "paninski") return InstanceFamily::PaninskiUniform;
  if (s == "negsep") return InstanceFamily::NegSep;
  if (s == "heavyhead") return InstanceFamily::HeavyHead;
  if (s == "sobolev") return InstanceFamily::Sobolev;
  if (s == "bump") return InstanceFamily::Bump;
  throw std::invalid_argument("unknown instance family: " + s);
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (k_grid.empty() || eps_grid.empty() || delta_grid.empty() || n_grid.empty())
    throw std::invalid_argument("config: grids must be nonempty");
  if (problem == Problem::LFHT && m_grid.empty())
    throw std::invalid_argument("config: lfht needs an m grid");
}

DiscreteInstance make_discrete_instance(InstanceFamily f, std::size_t k,
                                        double eps, std::uint64_t sign_seed) {
  Rng rng(derive_state(sign_seed, {0x516e5}));
  switch (f) {
    case InstanceFamily::PaninskiUniform: {
      std::vector<int> signs(k / 2);
      for (int& s : signs) s = rng.next_coin() ? 1 : -1;
      auto [q, p] = make_paninski_pair(k, eps, signs);
      return {std::move(p), std::move(q)};  // uniform is the null side
    }
    case InstanceFamily::NegSep: {
      auto [p, q] = make_negsep_pair(k);
      return {std::move(p), std::move(q)};
    }
    case InstanceFamily::HeavyHead: {
      // two head bins of mass 1/4 each under both pmfs; the tail carries the
      // whole eps separation as a paired perturbation of a light uniform tail
      if (k < 4 || (k - 2) % 2 != 0)
        throw std::invalid_argument("heavyhead: need even tail, k >= 4");
      std::size_t tail = k - 2;
      double tail_mass = 0.5;
      double base = tail_mass / static_cast<double>(tail);
      double bump = 2.0 * eps / static_cast<double>(tail);
      if (bump > base)
        throw std::invalid_argument("heavyhead: eps too large for the tail mass");
      std::vector<double> p(k), q(k);
      p[0] = p[1] = q[0] = q[1] = 0.25;
      for (std::size_t i = 2; i < k; ++i) q[i] = base;
      // one coin per pair keeps the tail mass exact
      for (std::size_t i = 2; i + 1 < k; i += 2) {
        bool up = rng.next_coin();
        p[i] = up ? base + bump : base - bump;
        p[i + 1] = up ? base - bump : base + bump;
      }
      return {DiscretePmf(std::move(p)), DiscretePmf(std::move(q))};
    }
    default:
      throw std::invalid_argument("make_discrete_instance: not a discrete family");
  }
}

namespace {

std::uint64_t double_bits(double v) {
  std::uint64_t bits;
  static_assert(sizeof bits == sizeof v);
  std::memcpy(&bits, &v, sizeof bits);
  return bits;
}

std::uint64_t cell_hash(const ExperimentConfig& cfg, const CellSpec& cell) {
  std::uint64_t h = mix64(0xce11);
  h = hash_combine(h, static_cast<std::uint64_t>(cfg.problem));
  h = hash_combine(h, static_cast<std::uint64_t>(cfg.dist_class));
  h = hash_combine(h, static_cast<std::uint64_t>(cfg.family));
  h = hash_combine(h, cell.k);
  h = hash_combine(h, double_bits(cell.eps));
  h = hash_combine(h, double_bits(cell.delta));
  h = hash_combine(h, cell.n);
  h = hash_combine(h, cell.m);
  return h;
}

struct TrialResult {
  bool err_null = false;
  bool err_alt = false;
  bool has_set = false;
  double sep_abs = 0.0;
  double tau = 0.0;
};

struct GaussInstance {
  GaussianMean theta_x;
  GaussianMean theta_y;
  std::size_t length = 1;
};

}  // namespace

// rational approximation for Phi^{-1} (Acklam), refined with a Newton step
double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("inverse_normal_cdf: p in (0,1) required");
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  double x;
  if (p < 0.02425) {
    double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 0.97575) {
    double q = p - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  double err = normal_cdf(x) - p;
  x -= err * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
  return x;
}

namespace {

GaussInstance make_gauss_instance(const ExperimentConfig& cfg, const CellSpec& cell,
                                  std::uint64_t sign_seed) {
  Rng rng(derive_state(sign_seed, {0x9a55}));
  double s = cfg.engine.smoothness;
  double sig_eps = std::min(cell.eps, 0.1);  // generator precondition
  std::size_t len =
      static_cast<std::size_t>(std::floor(std::pow(sig_eps, -1.0 / s)));
  if (len < 1) len = 1;
  std::vector<int> signs(len);
  for (int& v : signs) v = rng.next_coin() ? 1 : -1;
  // draw the raw shape, then rescale so TV(mu_x, mu_y) = 2 Phi(|theta|/2) - 1
  // equals the cell separation exactly
  GaussianMean raw = make_sobolev_signal(s, 1e6, sig_eps, signs, 1.0, 1.0);
  double norm = std::sqrt(raw.l2_norm_sq());
  double target = 2.0 * normal_quantile(0.5 * (1.0 + cell.eps));
  std::vector<double> coeffs = raw.coeffs();
  for (double& c : coeffs) c *= target / norm;
  double c_g = 0.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    c_g += std::pow(static_cast<double>(j + 1), 2.0 * s) * coeffs[j] * coeffs[j];
  c_g = std::max(1.0, 2.0 * c_g);
  GaussInstance inst{GaussianMean(coeffs, s, c_g),
                     GaussianMean(std::vector<double>{}, s, c_g), 1};
  std::uint32_t J = truncation_level(cell.eps, s, cfg.engine.level_const);
  inst.length = std::max<std::size_t>(J, coeffs.size());
  return inst;
}

TestConfig engine_config(const ExperimentConfig& cfg, const CellSpec& cell) {
  TestConfig e = cfg.engine;
  e.problem = cfg.problem;
  e.dist_class = cfg.dist_class;
  e.eps = cell.eps;
  e.delta = cell.delta;
  return e;
}

TrialResult run_discrete_trial(const ExperimentConfig& cfg, const CellSpec& cell,
                               const DiscreteInstance& inst,
                               std::uint64_t chash, std::uint32_t trial) {
  TestConfig ecfg = engine_config(cfg, cell);
  TrialResult res;
  auto sample = [&](const DiscretePmf& pmf, std::uint64_t count,
                    std::uint64_t phase) {
    Rng r(derive_state(cfg.base_seed, {chash, trial, phase}));
    return sample_symbols(pmf, count, r);
  };
  auto pipe_state = [&](std::uint64_t phase) {
    return derive_state(cfg.base_seed, {chash, trial, phase});
  };
  auto score = [&](const TestOutcome& out) {
    if (out.sep.discrete && !out.sep.discrete->members.empty()) {
      res.has_set = true;
      res.sep_abs =
          std::fabs(exact_sep(out.sep.discrete->members, inst.p, inst.q));
      res.tau = exact_tau(out.sep.discrete->members, inst.p, inst.q);
    } else if (out.sep.discrete) {
      res.has_set = true;  // empty set: sep 0, tau 0
    }
  };
  switch (cfg.problem) {
    case Problem::TS: {
      auto xn = sample(inst.q, 2 * cell.n, 10);
      auto yn = sample(inst.q, 2 * cell.n, 11);
      auto out0 = run_two_sample_test(xn, yn, cell.k, ecfg, pipe_state(12));
      res.err_null = out0.verdict == Verdict::RejectH0;
      auto xa = sample(inst.p, 2 * cell.n, 20);
      auto ya = sample(inst.q, 2 * cell.n, 21);
      auto out1 = run_two_sample_test(xa, ya, cell.k, ecfg, pipe_state(22));
      res.err_alt = out1.verdict == Verdict::AcceptH0;
      score(out1);
      break;
    }
    case Problem::GoF: {
      auto xn = sample(inst.q, 2 * cell.n, 10);
      auto out0 = run_gof_test(xn, inst.q, ecfg, pipe_state(12));
      res.err_null = out0.verdict == Verdict::RejectH0;
      auto xa = sample(inst.p, 2 * cell.n, 20);
      auto out1 = run_gof_test(xa, inst.q, ecfg, pipe_state(22));
      res.err_alt = out1.verdict == Verdict::AcceptH0;
      score(out1);
      break;
    }
    case Problem::LFHT: {
      auto x0 = sample(inst.p, 2 * cell.n, 10);
      auto y0 = sample(inst.q, 2 * cell.n, 11);
      auto z0 = sample(inst.p, 2 * cell.m, 13);
      auto out0 = run_lfht_test(x0, y0, z0, cell.k, ecfg, pipe_state(12));
      res.err_null = out0.verdict != Verdict::LabelX;
      auto x1 = sample(inst.p, 2 * cell.n, 20);
      auto y1 = sample(inst.q, 2 * cell.n, 21);
      auto z1 = sample(inst.q, 2 * cell.m, 23);
      auto out1 = run_lfht_test(x1, y1, z1, cell.k, ecfg, pipe_state(22));
      res.err_alt = out1.verdict != Verdict::LabelY;
      score(out1);
      break;
    }
  }
  return res;
}

TrialResult run_gauss_trial(const ExperimentConfig& cfg, const CellSpec& cell,
                            const GaussInstance& inst, std::uint64_t chash,
                            std::uint32_t trial) {
  TestConfig ecfg = engine_config(cfg, cell);
  TrialResult res;
  auto sample = [&](const GaussianMean& theta, std::uint64_t count,
                    std::uint64_t phase) {
    Rng r(derive_state(cfg.base_seed, {chash, trial, phase}));
    return sample_gaussian_sequence(theta, inst.length, count, r);
  };
  auto pipe_state = [&](std::uint64_t phase) {
    return derive_state(cfg.base_seed, {chash, trial, phase});
  };
  auto score = [&](const TestOutcome& out) {
    if (out.sep.halfspace) {
      res.has_set = true;
      double mx = halfspace_mass(inst.theta_x, *out.sep.halfspace);
      double my = halfspace_mass(inst.theta_y, *out.sep.halfspace);
      res.sep_abs = std::fabs(mx - my);
      res.tau = std::min(mx * (1.0 - mx), my * (1.0 - my));
    }
  };
  switch (cfg.problem) {
    case Problem::TS: {
      auto xn = sample(inst.theta_y, 2 * cell.n, 10);
      auto yn = sample(inst.theta_y, 2 * cell.n, 11);
      auto out0 = run_two_sample_test(xn, yn, ecfg, pipe_state(12));
      res.err_null = out0.verdict == Verdict::RejectH0;
      auto xa = sample(inst.theta_x, 2 * cell.n, 20);
      auto ya = sample(inst.theta_y, 2 * cell.n, 21);
      auto out1 = run_two_sample_test(xa, ya, ecfg, pipe_state(22));
      res.err_alt = out1.verdict == Verdict::AcceptH0;
      score(out1);
      break;
    }
    case Problem::GoF: {
      auto xn = sample(inst.theta_y, 2 * cell.n, 10);
      auto out0 = run_gof_test(xn, inst.theta_y, ecfg, pipe_state(12));
      res.err_null = out0.verdict == Verdict::RejectH0;
      auto xa = sample(inst.theta_x, 2 * cell.n, 20);
      auto out1 = run_gof_test(xa, inst.theta_y, ecfg, pipe_state(22));
      res.err_alt = out1.verdict == Verdict::AcceptH0;
      score(out1);
      break;
    }
    case Problem::LFHT: {
      auto x0 = sample(inst.theta_x, 2 * cell.n, 10);
      auto y0 = sample(inst.theta_y, 2 * cell.n, 11);
      auto z0 = sample(inst.theta_x, 2 * cell.m, 13);
      auto out0 = run_lfht_test(x0, y0, z0, ecfg, pipe_state(12));
      res.err_null = out0.verdict != Verdict::LabelX;
      auto x1 = sample(inst.theta_x, 2 * cell.n, 20);
      auto y1 = sample(inst.theta_y, 2 * cell.n, 21);
      auto z1 = sample(inst.theta_y, 2 * cell.m, 23);
      auto out1 = run_lfht_test(x1, y1, z1, ecfg, pipe_state(22));
      res.err_alt = out1.verdict != Verdict::LabelY;
      score(out1);
      break;
    }
  }
  return res;
}

TrialResult run_bump_trial(const ExperimentConfig& cfg, const CellSpec& cell,
                           const PerturbedUniformDensity& alt_density,
                           const DiscretePmf& binned_p, const DiscretePmf& binned_q,
                           std::uint64_t chash, std::uint32_t trial) {
  TestConfig ecfg = engine_config(cfg, cell);
  TrialResult res;
  auto sample_alt = [&](std::uint64_t count, std::uint64_t phase) {
    Rng r(derive_state(cfg.base_seed, {chash, trial, phase}));
    return alt_density.sample_many(count, r);
  };
  auto sample_null = [&](std::uint64_t count, std::uint64_t phase) {
    Rng r(derive_state(cfg.base_seed, {chash, trial, phase}));
    std::vector<double> xs(count);
    for (double& v : xs) v = r.next_double();
    return xs;
  };
  auto pipe_state = [&](std::uint64_t phase) {
    return derive_state(cfg.base_seed, {chash, trial, phase});
  };
  auto score = [&](const TestOutcome& out) {
    if (out.sep.discrete) {
      res.has_set = true;
      if (!out.sep.discrete->members.empty()) {
        res.sep_abs =
            std::fabs(exact_sep(out.sep.discrete->members, binned_p, binned_q));
        res.tau = exact_tau(out.sep.discrete->members, binned_p, binned_q);
      }
    }
  };
  switch (cfg.problem) {
    case Problem::TS: {
      auto xn = sample_null(2 * cell.n, 10);
      auto yn = sample_null(2 * cell.n, 11);
      auto out0 = run_two_sample_test_points(xn, xn.size(), yn, yn.size(), ecfg,
                                             pipe_state(12));
      res.err_null = out0.verdict == Verdict::RejectH0;
      auto xa = sample_alt(2 * cell.n, 20);
      auto ya = sample_null(2 * cell.n, 21);
      auto out1 = run_two_sample_test_points(xa, xa.size(), ya, ya.size(), ecfg,
                                             pipe_state(22));
      res.err_alt = out1.verdict == Verdict::AcceptH0;
      score(out1);
      break;
    }
    case Problem::GoF: {
      auto xn = sample_null(2 * cell.n, 10);
      auto out0 =
          run_gof_test_points(xn, xn.size(), binned_q, ecfg, pipe_state(12));
      res.err_null = out0.verdict == Verdict::RejectH0;
      auto xa = sample_alt(2 * cell.n, 20);
      auto out1 =
          run_gof_test_points(xa, xa.size(), binned_q, ecfg, pipe_state(22));
      res.err_alt = out1.verdict == Verdict::AcceptH0;
      score(out1);
      break;
    }
    case Problem::LFHT: {
      auto x0 = sample_alt(2 * cell.n, 10);
      auto y0 = sample_null(2 * cell.n, 11);
      auto z0 = sample_alt(2 * cell.m, 13);
      auto out0 = run_lfht_test_points(x0, x0.size(), y0, y0.size(), z0,
                                       z0.size(), ecfg, pipe_state(12));
      res.err_null = out0.verdict != Verdict::LabelX;
      auto x1 = sample_alt(2 * cell.n, 20);
      auto y1 = sample_null(2 * cell.n, 21);
      auto z1 = sample_null(2 * cell.m, 23);
      auto out1 = run_lfht_test_points(x1, x1.size(), y1, y1.size(), z1,
                                       z1.size(), ecfg, pipe_state(22));
      res.err_alt = out1.verdict != Verdict::LabelY;
      score(out1);
      break;
    }
  }
  return res;
}

}  // namespace

unsigned harness_threads() {
  if (const char* env = std::getenv("CAT_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

TrialReport run_cell(const ExperimentConfig& cfg, const CellSpec& cell) {
  auto t0 = std::chrono::steady_clock::now();
  std::uint64_t chash = cell_hash(cfg, cell);

  // instance construction is deterministic per cell
  std::optional<DiscreteInstance> dinst;
  std::optional<GaussInstance> ginst;
  std::optional<PerturbedUniformDensity> bump;
  std::optional<DiscretePmf> binned_p, binned_q;
  if (cfg.family == InstanceFamily::Sobolev) {
    ginst = make_gauss_instance(cfg, cell, hash_combine(cfg.base_seed, chash));
  } else if (cfg.family == InstanceFamily::Bump) {
    GridSpec grid = choose_resolution(cell.eps, cfg.engine.beta,
                                      cfg.engine.res_const, cfg.engine.dim);
    std::uint32_t bumps = std::max<std::uint32_t>(1, grid.r / 2);
    Rng srng(derive_state(hash_combine(cfg.base_seed, chash), {0xb0b}));
    std::vector<int> signs(bumps);
    for (int& s : signs) s = srng.next_coin() ? 1 : -1;
    bump.emplace(bumps, cell.eps, std::move(signs));
    binned_p = bump->binned(grid);
    binned_q = make_uniform(grid.total_cells);
  } else {
    dinst = make_discrete_instance(cfg.family, cell.k, cell.eps,
                                   hash_combine(cfg.base_seed, chash));
  }

  std::vector<TrialResult> results(cfg.trials);
  unsigned n_threads = std::min<unsigned>(harness_threads(), cfg.trials);
  std::atomic<std::uint32_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::uint32_t t = next.fetch_add(1);
      if (t >= cfg.trials) break;
      if (dinst) {
        results[t] = run_discrete_trial(cfg, cell, *dinst, chash, t);
      } else if (ginst) {
        results[t] = run_gauss_trial(cfg, cell, *ginst, chash, t);
      } else {
        results[t] =
            run_bump_trial(cfg, cell, *bump, *binned_p, *binned_q, chash, t);
      }
    }
  };
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // sequential aggregation keeps the output independent of scheduling
  TrialReport rep;
  rep.problem = cfg.problem;
  rep.dist_class = cfg.dist_class;
  rep.family = cfg.family;
  rep.cell = cell;
  rep.trials = cfg.trials;
  rep.seed = cfg.base_seed;
  std::uint64_t e1 = 0, e2 = 0, with_set = 0;
  double sep_sum = 0.0, sep_sq = 0.0, tau_sum = 0.0, tau_sq = 0.0;
  for (const TrialResult& r : results) {
    e1 += r.err_null ? 1 : 0;
    e2 += r.err_alt ? 1 : 0;
    if (r.has_set) {
      ++with_set;
      sep_sum += r.sep_abs;
      sep_sq += r.sep_abs * r.sep_abs;
      tau_sum += r.tau;
      tau_sq += r.tau * r.tau;
    }
  }
  double tn = static_cast<double>(cfg.trials);
  rep.type1 = static_cast<double>(e1) / tn;
  rep.type2 = static_cast<double>(e2) / tn;
  rep.type1_se = std::sqrt(rep.type1 * (1.0 - rep.type1) / tn);
  rep.type2_se = std::sqrt(rep.type2 * (1.0 - rep.type2) / tn);
  if (with_set > 0) {
    double wn = static_cast<double>(with_set);
    rep.mean_sep = sep_sum / wn;
    rep.mean_tau = tau_sum / wn;
    if (with_set > 1) {
      double var_sep = std::max(0.0, sep_sq / wn - rep.mean_sep * rep.mean_sep);
      double var_tau = std::max(0.0, tau_sq / wn - rep.mean_tau * rep.mean_tau);
      rep.mean_sep_se = std::sqrt(var_sep / wn);
      rep.mean_tau_se = std::sqrt(var_tau / wn);
    }
  }
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::vector<TrialReport> run_trials(const ExperimentConfig& cfg) {
  cfg.validate();
  if (!cfg.out_dir.empty()) {
    // fail on an unwritable output path before any compute
    std::filesystem::create_directories(cfg.out_dir);
    atomic_write_text(cfg.out_dir + "/results.csv", "");
  }
  std::vector<TrialReport> out;
  std::vector<std::uint64_t> m_grid =
      cfg.problem == Problem::LFHT ? cfg.m_grid : std::vector<std::uint64_t>{0};
  for (std::uint32_t k : cfg.k_grid)
    for (double eps : cfg.eps_grid)
      for (double delta : cfg.delta_grid)
        for (std::uint64_t n : cfg.n_grid)
          for (std::uint64_t m : m_grid)
            out.push_back(run_cell(cfg, CellSpec{k, eps, delta, n, m}));
  return out;
}

ComplexityResult estimate_sample_complexity(const ExperimentConfig& cfg,
                                            CellSpec cell, std::uint64_t n_min,
                                            std::uint64_t n_max) {
  if (n_min < 2 || n_max < n_min)
    throw std::invalid_argument("complexity search: need 2 <= n_min <= n_max");
  auto passes = [&](std::uint64_t n) {
    CellSpec c = cell;
    c.n = n;
    TrialReport r = run_cell(cfg, c);
    return r.type1 <= c.delta + 2.0 * r.type1_se &&
           r.type2 <= c.delta + 2.0 * r.type2_se;
  };
  ComplexityResult res;
  res.k = cell.k;
  res.eps = cell.eps;
  res.delta = cell.delta;
  std::uint64_t lo = 0, hi = 0;
  if (passes(n_min)) {
    res.n_star = res.n_lo = res.n_hi = n_min;
    return res;  // already passing at the lower search bound
  }
  lo = n_min;
  std::uint64_t n = n_min;
  for (;;) {
    if (n >= n_max) {
      res.censored = true;
      res.n_lo = lo;
      res.n_hi = n_max;
      return res;
    }
    n = std::min(n_max, n * 2);
    if (passes(n)) {
      hi = n;
      break;
    }
    lo = n;
  }
  while (static_cast<double>(hi) > 1.3 * static_cast<double>(lo)) {
    std::uint64_t mid = static_cast<std::uint64_t>(
        std::llround(std::sqrt(static_cast<double>(lo) * static_cast<double>(hi))));
    if (mid <= lo || mid >= hi) break;
    if (passes(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  res.n_star = hi;
  res.n_lo = lo;
  res.n_hi = hi;
  return res;
}

namespace {

std::string csv_row(const TrialReport& r) {
  std::ostringstream os;
  os << to_string(r.problem) << ',' << to_string(r.dist_class) << ','
     << r.cell.k << ',' << format_double(r.cell.eps) << ','
     << format_double(r.cell.delta) << ',' << r.cell.n << ',' << r.cell.m << ','
     << r.trials << ',' << format_double(r.type1) << ','
     << format_double(r.type1_se) << ',' << format_double(r.type2) << ','
     << format_double(r.type2_se) << ',' << format_double(r.mean_sep) << ','
     << format_double(r.mean_tau) << ',' << r.seed;
  return os.str();
}

}  // namespace

void emit_report(const std::vector<TrialReport>& reports,
                 const ExperimentConfig& cfg, const std::string& out_dir) {
  if (reports.empty())
    throw std::invalid_argument("emit_report: no cells to report");
  std::filesystem::create_directories(out_dir);
  std::ostringstream csv;
  csv << "problem,class,k,eps,delta,n,m,trials,type1,type1_se,type2,type2_se,"
         "mean_sep,mean_tau,seed\n";
  for (const TrialReport& r : reports) csv << csv_row(r) << '\n';
  atomic_write_text(out_dir + "/results.csv", csv.str());

  nlohmann::json meta;
  meta["problem"] = to_string(cfg.problem);
  meta["class"] = to_string(cfg.dist_class);
  meta["family"] = to_string(cfg.family);
  meta["trials"] = cfg.trials;
  meta["base_seed"] = cfg.base_seed;
  meta["threads"] = harness_threads();
  meta["constants"] = {
      {"threshold_const", cfg.engine.threshold_const},
      {"tau_const", cfg.engine.tau_const},
      {"c0", cfg.engine.c0},
      {"c1", cfg.engine.c1},
      {"level_const", cfg.engine.level_const},
      {"res_const", cfg.engine.res_const},
      {"smoothness", cfg.engine.smoothness},
      {"beta", cfg.engine.beta},
      {"dim", cfg.engine.dim},
      {"poissonize_frac", cfg.engine.poissonize_frac},
      {"construct_frac", cfg.engine.construct_frac},
  };
  if (cfg.engine.tau_bar) meta["constants"]["tau_bar"] = *cfg.engine.tau_bar;
  meta["grids"] = {{"k", cfg.k_grid},
                   {"eps", cfg.eps_grid},
                   {"delta", cfg.delta_grid},
                   {"n", cfg.n_grid},
                   {"m", cfg.m_grid}};
  double wall = 0.0;
  for (const TrialReport& r : reports) wall += r.wall_seconds;
  meta["wall_seconds_total"] = wall;
  atomic_write_text(out_dir + "/meta.json", meta.dump(2) + "\n");
}

void emit_curves(const std::vector<ComplexityResult>& results,
                 const std::string& path) {
  if (results.empty()) throw std::invalid_argument("emit_curves: no results");
  std::ostringstream csv;
  csv << "k,eps,delta,n_star,n_lo,n_hi,censored\n";
  for (const ComplexityResult& r : results) {
    csv << r.k << ',' << format_double(r.eps) << ',' << format_double(r.delta)
        << ',' << (r.censored ? 0 : r.n_star) << ',' << r.n_lo << ',' << r.n_hi
        << ',' << (r.censored ? 1 : 0) << '\n';
  }
  atomic_write_text(path, csv.str());
}

namespace {

template <class T>
std::vector<T> parse_list(const std::string& value, T (*conv)(const std::string&)) {
  std::vector<T> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(conv(item));
  }
  return out;
}

double to_d(const std::string& s) { return std::stod(s); }
std::uint64_t to_u64(const std::string& s) { return std::stoull(s); }
std::uint32_t to_u32(const std::string& s) {
  return static_cast<std::uint32_t>(std::stoul(s));
}

}  // namespace

void apply_config_kv(ExperimentConfig& cfg, const std::string& key,
                     const std::string& value) {
  if (key == "problem") cfg.problem = problem_from_string(value);
  else if (key == "class") cfg.dist_class = class_from_string(value);
  else if (key == "family") cfg.family = family_from_string(value);
  else if (key == "k") cfg.k_grid = parse_list<std::uint32_t>(value, to_u32);
  else if (key == "eps") cfg.eps_grid = parse_list<double>(value, to_d);
  else if (key == "delta") cfg.delta_grid = parse_list<double>(value, to_d);
  else if (key == "n") cfg.n_grid = parse_list<std::uint64_t>(value, to_u64);
  else if (key == "m") cfg.m_grid = parse_list<std::uint64_t>(value, to_u64);
  else if (key == "trials") cfg.trials = to_u32(value);
  else if (key == "seed") cfg.base_seed = to_u64(value);
  else if (key == "out") cfg.out_dir = value;
  else if (key == "threshold_const") cfg.engine.threshold_const = to_d(value);
  else if (key == "tau_bar") cfg.engine.tau_bar = to_d(value);
  else if (key == "tau_const") cfg.engine.tau_const = to_d(value);
  else if (key == "c0") cfg.engine.c0 = to_d(value);
  else if (key == "c1") cfg.engine.c1 = to_d(value);
  else if (key == "level_const") cfg.engine.level_const = to_d(value);
  else if (key == "res_const") cfg.engine.res_const = to_d(value);
  else if (key == "smoothness") cfg.engine.smoothness = to_d(value);
  else if (key == "beta") cfg.engine.beta = to_d(value);
  else if (key == "dim") cfg.engine.dim = to_u32(value);
  else if (key == "poissonize_frac") cfg.engine.poissonize_frac = to_d(value);
  else if (key == "construct_frac") cfg.engine.construct_frac = to_d(value);
  else throw std::invalid_argument("unknown config key: " + key);
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open config: " + path);
  ExperimentConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    apply_config_kv(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

}  // namespace cat
