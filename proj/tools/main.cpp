// Command-line surface: one-shot pipeline runs, separating-set construction,
// Monte Carlo experiment grids, empirical sample-complexity search, and the
// exact small-instance oracle. Exit codes: 0 ok, 1 invalid input, 2 runtime
// failure.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include "cat/engine.hpp"
#include "cat/harness.hpp"
#include "cat/io.hpp"
#include "cat/oracle.hpp"

namespace {

struct ConstantFlags {
  cat::TestConfig cfg;
  double tau_bar = -1.0;

  void attach(CLI::App* app) {
    app->add_option("--threshold-const", cfg.threshold_const,
                    "Bernstein threshold constant c");
    app->add_option("--tau-bar", tau_bar, "explicit size bound override");
    app->add_option("--tau-const", cfg.tau_const, "size bound constant for Db");
    app->add_option("--c0", cfg.c0, "bucketing scale constant");
    app->add_option("--c1", cfg.c1, "best-of-log-k acceptance constant");
    app->add_option("--level-const", cfg.level_const,
                    "Gaussian truncation constant");
    app->add_option("--res-const", cfg.res_const, "grid resolution constant");
    app->add_option("--smoothness", cfg.smoothness, "Gaussian smoothness s");
    app->add_option("--beta", cfg.beta, "Holder smoothness beta");
    app->add_option("--dim", cfg.dim, "Holder dimension");
    app->add_option("--poissonize-frac", cfg.poissonize_frac,
                    "Poissonized train rate fraction");
    app->add_option("--construct-frac", cfg.construct_frac,
                    "construction share of the train split");
  }

  cat::TestConfig resolve() const {
    cat::TestConfig c = cfg;
    if (tau_bar >= 0.0) c.tau_bar = tau_bar;
    return c;
  }
};

void print_outcome(const cat::TestOutcome& out, const cat::TestConfig& cfg,
                   std::uint64_t n, std::uint64_t m, std::uint64_t seed,
                   const std::string& out_path) {
  std::string row =
      cat::to_string(cfg.problem) + "," + cat::to_string(cfg.dist_class) + "," +
      cat::format_double(cfg.eps) + "," + cat::format_double(cfg.delta) + "," +
      std::to_string(n) + "," + std::to_string(m) + "," +
      cat::to_string(out.verdict) + "," + cat::format_double(out.statistic) +
      "," + cat::format_double(out.threshold) + "," + out.sep.tag + "," +
      std::to_string(seed);
  std::string header =
      "problem,class,eps,delta,n,m,verdict,statistic,threshold,sep_tag,seed";
  if (out_path.empty() || out_path == "-") {
    std::cout << header << "\n" << row << "\n";
  } else {
    cat::atomic_write_text(out_path, header + "\n" + row + "\n");
  }
}

int run_test_command(const std::string& problem_s, const std::string& class_s,
                     ConstantFlags& flags, double eps, double delta,
                     std::uint64_t k, std::uint64_t seed, const std::string& x_path,
                     const std::string& y_path, const std::string& z_path,
                     const std::string& null_pmf, const std::string& null_mean,
                     double size_bound, const std::string& null_cells,
                     const std::string& out_path) {
  cat::TestConfig cfg = flags.resolve();
  cfg.problem = cat::problem_from_string(problem_s);
  cfg.dist_class = cat::class_from_string(class_s);
  cfg.eps = eps;
  cfg.delta = delta;
  cat::RngState rng{seed, 0};

  cat::TestOutcome out;
  std::uint64_t n = 0, m = 0;
  if (cfg.dist_class == cat::DistClass::Gauss) {
    cat::Matrix x = cat::read_matrix_csv(x_path);
    n = x.rows / 2;
    switch (cfg.problem) {
      case cat::Problem::GoF: {
        std::vector<double> coeffs;
        if (!null_mean.empty()) coeffs = cat::read_doubles(null_mean);
        cat::GaussianMean theta0(coeffs, cfg.smoothness, size_bound);
        out = cat::run_gof_test(x, theta0, cfg, rng);
        break;
      }
      case cat::Problem::TS: {
        cat::Matrix y = cat::read_matrix_csv(y_path);
        out = cat::run_two_sample_test(x, y, cfg, rng);
        break;
      }
      case cat::Problem::LFHT: {
        cat::Matrix y = cat::read_matrix_csv(y_path);
        cat::Matrix z = cat::read_matrix_csv(z_path);
        m = z.rows / 2;
        out = cat::run_lfht_test(x, y, z, cfg, rng);
        break;
      }
    }
  } else if (cfg.dist_class == cat::DistClass::Holder) {
    std::size_t nx = 0, ny = 0, nz = 0;
    std::vector<double> x = cat::read_points_csv(x_path, cfg.dim, &nx);
    n = nx / 2;
    switch (cfg.problem) {
      case cat::Problem::GoF: {
        cat::GridSpec grid =
            cat::choose_resolution(cfg.eps, cfg.beta, cfg.res_const, cfg.dim);
        cat::DiscretePmf cells = null_cells.empty()
                                     ? cat::make_uniform(grid.total_cells)
                                     : cat::read_pmf(null_cells);
        out = cat::run_gof_test_points(x, nx, cells, cfg, rng);
        break;
      }
      case cat::Problem::TS: {
        std::vector<double> y = cat::read_points_csv(y_path, cfg.dim, &ny);
        out = cat::run_two_sample_test_points(x, nx, y, ny, cfg, rng);
        break;
      }
      case cat::Problem::LFHT: {
        std::vector<double> y = cat::read_points_csv(y_path, cfg.dim, &ny);
        std::vector<double> z = cat::read_points_csv(z_path, cfg.dim, &nz);
        m = nz / 2;
        out = cat::run_lfht_test_points(x, nx, y, ny, z, nz, cfg, rng);
        break;
      }
    }
  } else {
    std::vector<std::uint32_t> x = cat::read_symbols(x_path);
    n = x.size() / 2;
    switch (cfg.problem) {
      case cat::Problem::GoF: {
        cat::DiscretePmf p0 = cat::read_pmf(null_pmf);
        out = cat::run_gof_test(x, p0, cfg, rng);
        break;
      }
      case cat::Problem::TS: {
        std::vector<std::uint32_t> y = cat::read_symbols(y_path);
        out = cat::run_two_sample_test(x, y, k, cfg, rng);
        break;
      }
      case cat::Problem::LFHT: {
        std::vector<std::uint32_t> y = cat::read_symbols(y_path);
        std::vector<std::uint32_t> z = cat::read_symbols(z_path);
        m = z.size() / 2;
        out = cat::run_lfht_test(x, y, z, k, cfg, rng);
        break;
      }
    }
  }
  print_outcome(out, cfg, n, m, seed, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"classifier-accuracy tests for goodness-of-fit, two-sample and "
               "likelihood-free hypothesis testing"};
  app.require_subcommand(1);

  // ---- test ----
  auto* test = app.add_subcommand("test", "run one pipeline from sample files");
  std::string t_problem = "ts", t_class = "db";
  double t_eps = 0.1, t_delta = 0.05, t_size_bound = 1.0;
  std::uint64_t t_k = 2, t_seed = 1;
  std::string t_x, t_y, t_z, t_null_pmf, t_null_mean, t_null_cells, t_out;
  ConstantFlags t_flags;
  test->add_option("--problem", t_problem)->required();
  test->add_option("--class", t_class)->required();
  test->add_option("--eps", t_eps)->required();
  test->add_option("--delta", t_delta)->required();
  test->add_option("--k", t_k, "alphabet size (discrete classes)");
  test->add_option("--seed", t_seed);
  test->add_option("--x", t_x, "X sample file")->required();
  test->add_option("--y", t_y, "Y sample file (ts, lfht)");
  test->add_option("--z", t_z, "Z sample file (lfht)");
  test->add_option("--null-pmf", t_null_pmf, "known null pmf (gof, discrete)");
  test->add_option("--null-mean", t_null_mean, "known null mean (gof, gauss)");
  test->add_option("--size-bound", t_size_bound, "Sobolev size bound (gauss)");
  test->add_option("--null-cells", t_null_cells,
                   "known null cell pmf (gof, holder); uniform when omitted");
  test->add_option("--out", t_out, "output file; stdout when omitted");
  t_flags.attach(test);

  // ---- sep ----
  auto* sep = app.add_subcommand("sep", "construct and score a separating set");
  std::string s_method = "half", s_x, s_y, s_qhat0, s_gof_pmf, s_out, s_score_p,
              s_score_q;
  std::uint64_t s_k = 2, s_seed = 1;
  double s_eps = 0.1, s_delta = 0.05, s_m = 0.0, s_c0 = 0.1, s_c1 = 0.05;
  sep->add_option("--method", s_method, "half|greater|less|better2|bestlogk")
      ->required();
  sep->add_option("--k", s_k)->required();
  sep->add_option("--x", s_x, "X symbols")->required();
  sep->add_option("--y", s_y, "Y symbols (omit with --gof-pmf)");
  sep->add_option("--gof-pmf", s_gof_pmf, "known null pmf replacing the Y side");
  sep->add_option("--qhat0", s_qhat0, "reference pmf for bucketing");
  sep->add_option("--eps", s_eps);
  sep->add_option("--delta", s_delta);
  sep->add_option("--m", s_m, "holdout budget for the bucketing scale");
  sep->add_option("--c0", s_c0);
  sep->add_option("--c1", s_c1);
  sep->add_option("--seed", s_seed);
  sep->add_option("--out", s_out, "set file; stdout when omitted");
  sep->add_option("--score-p", s_score_p, "pmf for oracle sep/tau scoring");
  sep->add_option("--score-q", s_score_q, "pmf for oracle sep/tau scoring");

  // ---- mc ----
  auto* mc = app.add_subcommand("mc", "Monte Carlo trials over a config grid");
  std::string mc_config, mc_out;
  std::vector<std::string> mc_sets;
  mc->add_option("--config", mc_config, "key = value config file")->required();
  mc->add_option("--out", mc_out, "output directory (overrides config)");
  mc->add_option("--set", mc_sets, "extra key=value overrides")->take_all();

  // ---- complexity ----
  auto* cx = app.add_subcommand("complexity", "empirical sample-size search");
  std::string c_problem = "ts", c_class = "db", c_family = "paninski", c_out;
  std::vector<double> c_eps{0.2};
  double c_delta = 0.1;
  std::uint64_t c_k = 100, c_nmin = 16, c_nmax = 1 << 20, c_m = 0, c_seed = 1;
  std::uint32_t c_trials = 250;
  ConstantFlags c_flags;
  cx->add_option("--problem", c_problem);
  cx->add_option("--class", c_class);
  cx->add_option("--family", c_family);
  cx->add_option("--k", c_k)->required();
  cx->add_option("--eps", c_eps, "one or more separations")->required();
  cx->add_option("--delta", c_delta)->required();
  cx->add_option("--trials", c_trials);
  cx->add_option("--n-min", c_nmin);
  cx->add_option("--n-max", c_nmax);
  cx->add_option("--m", c_m, "z budget (lfht)");
  cx->add_option("--seed", c_seed);
  cx->add_option("--out", c_out, "curves.csv path")->required();
  c_flags.attach(cx);

  // ---- oracle ----
  auto* orc = app.add_subcommand("oracle", "exact small-instance computations");
  orc->require_subcommand(1);
  double o_mu = 0, o_lambda = 0, o_tol = 1e-13, o_n = 0, o_thr = 0, o_pa = 0,
         o_qb = 0;
  std::uint64_t o_nn = 10;
  std::string o_p, o_q, o_dir = "greater", o_set;

  auto* pc = orc->add_subcommand("poisson-compare", "P(X>Y) and P(X=Y)");
  pc->add_option("--mu", o_mu)->required();
  pc->add_option("--lambda", o_lambda)->required();
  pc->add_option("--tol", o_tol);

  auto* es = orc->add_subcommand("expected-sep", "exact expected separation");
  es->add_option("--p", o_p)->required();
  es->add_option("--q", o_q)->required();
  es->add_option("--n", o_n)->required();
  es->add_option("--dir", o_dir, "greater|less|half");
  es->add_option("--tol", o_tol);

  auto* l3 = orc->add_subcommand("lemma3-ratio", "stochastic order lower bound");
  l3->add_option("--mu", o_mu)->required();
  l3->add_option("--lambda", o_lambda)->required();
  l3->add_option("--tol", o_tol);

  auto* bc = orc->add_subcommand("balanced", "balanced classifier sweep");
  bc->add_option("--p", o_p)->required();
  bc->add_option("--q", o_q)->required();

  auto* ce = orc->add_subcommand("exact-cat-error", "binomial enumeration");
  ce->add_option("--p-mass", o_pa)->required();
  ce->add_option("--q-mass", o_qb)->required();
  ce->add_option("--n", o_nn)->required();
  ce->add_option("--threshold", o_thr)->required();

  auto* sc = orc->add_subcommand("score", "sep and tau of a set file");
  sc->add_option("--set", o_set)->required();
  sc->add_option("--p", o_p)->required();
  sc->add_option("--q", o_q)->required();

  auto* tv = orc->add_subcommand("tv", "total variation distance");
  tv->add_option("--p", o_p)->required();
  tv->add_option("--q", o_q)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*test) {
      return run_test_command(t_problem, t_class, t_flags, t_eps, t_delta, t_k,
                              t_seed, t_x, t_y, t_z, t_null_pmf, t_null_mean,
                              t_size_bound, t_null_cells, t_out);
    }

    if (*sep) {
      auto xs = cat::read_symbols(s_x);
      cat::CountVector cx = cat::counts_from_symbols(xs, s_k);
      cat::Rng coins(cat::derive_state(s_seed, {0xc01f}));
      cat::DiscreteSepSet set;
      bool gof = !s_gof_pmf.empty();
      std::optional<cat::DiscretePmf> p0;
      std::vector<double> expected;
      cat::CountVector cy;
      if (gof) {
        p0 = cat::read_pmf(s_gof_pmf);
        expected.resize(p0->size());
        for (std::size_t i = 0; i < p0->size(); ++i)
          expected[i] = static_cast<double>(cx.total) * (*p0)[i];
      } else {
        cy = cat::counts_from_symbols(cat::read_symbols(s_y), s_k);
      }
      if (s_method == "half") {
        set = gof ? cat::sep_set_half(cx, expected, coins)
                  : cat::sep_set_half(cx, cy, coins);
      } else if (s_method == "greater" || s_method == "less") {
        cat::SepDirection d = s_method == "greater" ? cat::SepDirection::Greater
                                                    : cat::SepDirection::Less;
        set = gof ? cat::sep_set_directional(cx, expected, d)
                  : cat::sep_set_directional(cx, cy, d);
      } else if (s_method == "better2") {
        // halve the inputs: first half builds, second half selects
        auto half = [&](const std::vector<std::uint32_t>& v, bool first) {
          std::span<const std::uint32_t> sp(v);
          return cat::counts_from_symbols(
              first ? sp.subspan(0, v.size() / 2) : sp.subspan(v.size() / 2), s_k);
        };
        cat::CountVector bx = half(xs, true), hx = half(xs, false);
        if (gof) {
          std::vector<double> e(p0->size());
          for (std::size_t i = 0; i < p0->size(); ++i)
            e[i] = static_cast<double>(bx.total) * (*p0)[i];
          auto gt = cat::sep_set_directional(bx, e, cat::SepDirection::Greater);
          auto lt = cat::sep_set_directional(bx, e, cat::SepDirection::Less);
          set = cat::select_better_of_two(gt, lt, hx, *p0);
        } else {
          auto ys = cat::read_symbols(s_y);
          cat::CountVector by = half(ys, true), hy = half(ys, false);
          auto gt = cat::sep_set_directional(bx, by, cat::SepDirection::Greater);
          auto lt = cat::sep_set_directional(bx, by, cat::SepDirection::Less);
          set = cat::select_better_of_two(gt, lt, hx, hy);
        }
      } else if (s_method == "bestlogk") {
        cat::DiscretePmf qhat0 = s_qhat0.empty() && gof
                                     ? *p0
                                     : cat::read_pmf(s_qhat0);
        double m_scale = gof && s_m <= 0.0
                             ? std::numeric_limits<double>::infinity()
                             : s_m;
        auto half = [&](const std::vector<std::uint32_t>& v, bool first) {
          std::span<const std::uint32_t> sp(v);
          return cat::counts_from_symbols(
              first ? sp.subspan(0, v.size() / 2) : sp.subspan(v.size() / 2), s_k);
        };
        cat::CountVector bx = half(xs, true), hx = half(xs, false);
        cat::BucketPartition part = cat::bucketize(
            qhat0, static_cast<double>(bx.total), m_scale, s_delta, s_c0);
        std::optional<cat::DiscreteSepSet> found;
        if (gof) {
          std::vector<double> e(p0->size());
          for (std::size_t i = 0; i < p0->size(); ++i)
            e[i] = static_cast<double>(bx.total) * (*p0)[i];
          found = cat::select_best_of_logk(part, bx, e, hx, *p0, s_eps, s_delta,
                                           s_c1);
        } else {
          auto ys = cat::read_symbols(s_y);
          cat::CountVector by = half(ys, true), hy = half(ys, false);
          found = cat::select_best_of_logk(part, bx, by, hx, hy, s_eps, s_delta,
                                           s_c1);
        }
        if (!found) {
          std::cout << "nonefound\n";
          return 0;
        }
        set = std::move(*found);
      } else {
        throw std::invalid_argument("unknown sep method: " + s_method);
      }
      if (s_out.empty()) {
        std::cout << "tag " << set.tag_string() << "\n";
        for (std::uint32_t v : set.members) std::cout << v << "\n";
      } else {
        cat::write_sep_set(set, s_out);
      }
      if (!s_score_p.empty() && !s_score_q.empty()) {
        cat::DiscretePmf p = cat::read_pmf(s_score_p);
        cat::DiscretePmf q = cat::read_pmf(s_score_q);
        std::cout << "sep " << cat::format_double(cat::exact_sep(set.members, p, q))
                  << "\n"
                  << "tau " << cat::format_double(cat::exact_tau(set.members, p, q))
                  << "\n";
      }
      return 0;
    }

    if (*mc) {
      cat::ExperimentConfig cfg = cat::parse_config_file(mc_config);
      for (const std::string& kv : mc_sets) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
          throw std::invalid_argument("--set expects key=value, got " + kv);
        cat::apply_config_kv(cfg, kv.substr(0, eq), kv.substr(eq + 1));
      }
      if (!mc_out.empty()) cfg.out_dir = mc_out;
      if (cfg.out_dir.empty())
        throw std::invalid_argument("mc: output directory required");
      auto reports = cat::run_trials(cfg);
      cat::emit_report(reports, cfg, cfg.out_dir);
      std::cout << "wrote " << cfg.out_dir << "/results.csv (" << reports.size()
                << " cells)\n";
      return 0;
    }

    if (*cx) {
      cat::ExperimentConfig cfg;
      cfg.problem = cat::problem_from_string(c_problem);
      cfg.dist_class = cat::class_from_string(c_class);
      cfg.family = cat::family_from_string(c_family);
      cfg.trials = c_trials;
      cfg.base_seed = c_seed;
      cfg.engine = c_flags.resolve();
      std::vector<cat::ComplexityResult> results;
      for (double eps : c_eps) {
        cat::CellSpec cell;
        cell.k = static_cast<std::uint32_t>(c_k);
        cell.eps = eps;
        cell.delta = c_delta;
        cell.m = c_m;
        results.push_back(
            cat::estimate_sample_complexity(cfg, cell, c_nmin, c_nmax));
      }
      cat::emit_curves(results, c_out);
      std::cout << "wrote " << c_out << "\n";
      return 0;
    }

    if (*pc) {
      auto r = cat::poisson_compare(o_mu, o_lambda, o_tol);
      std::cout << "p_gt " << cat::format_double(r.p_gt) << "\n"
                << "p_eq " << cat::format_double(r.p_eq) << "\n";
    } else if (*es) {
      cat::DiscretePmf p = cat::read_pmf(o_p), q = cat::read_pmf(o_q);
      double v;
      if (o_dir == "half") {
        v = cat::expected_sep_half(p, q, o_n, o_tol);
      } else {
        cat::Direction d =
            o_dir == "less" ? cat::Direction::Less : cat::Direction::Greater;
        v = cat::expected_sep_directional(p, q, o_n, d, o_tol);
      }
      std::cout << cat::format_double(v) << "\n";
    } else if (*l3) {
      std::cout << cat::format_double(cat::lemma_e_lower_ratio(o_mu, o_lambda, o_tol))
                << "\n";
    } else if (*bc) {
      cat::DiscretePmf p = cat::read_pmf(o_p), q = cat::read_pmf(o_q);
      cat::BalancedClassifier c = cat::balanced_classifier(p, q);
      double mp = c.label0_mass(p), mq = c.label0_mass(q);
      std::cout << "p_label0 " << cat::format_double(mp) << "\n"
                << "q_label0 " << cat::format_double(mq) << "\n"
                << "separation " << cat::format_double(mp - mq) << "\n"
                << "tv " << cat::format_double(cat::tv_distance(p, q)) << "\n"
                << "hard_size " << c.hard_set.size() << "\n"
                << "boundary_size " << c.boundary_set.size() << "\n"
                << "boundary_prob " << cat::format_double(c.boundary_prob) << "\n";
    } else if (*ce) {
      std::cout << cat::format_double(cat::exact_cat_error(o_pa, o_qb, o_nn, o_thr))
                << "\n";
    } else if (*sc) {
      cat::DiscreteSepSet set = cat::read_sep_set(o_set);
      cat::DiscretePmf p = cat::read_pmf(o_p), q = cat::read_pmf(o_q);
      std::cout << "sep " << cat::format_double(cat::exact_sep(set.members, p, q))
                << "\n"
                << "tau " << cat::format_double(cat::exact_tau(set.members, p, q))
                << "\n";
    } else if (*tv) {
      cat::DiscretePmf p = cat::read_pmf(o_p), q = cat::read_pmf(o_q);
      std::cout << cat::format_double(cat::tv_distance(p, q)) << "\n";
    }
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
