// Acceptance suite: one pass/fail line per criterion. Every tolerance is
// pinned here. Criteria can be run selectively by passing their numbers as
// command-line arguments. Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cat/binning.hpp"
#include "cat/counts.hpp"
#include "cat/engine.hpp"
#include "cat/harness.hpp"
#include "cat/oracle.hpp"
#include "cat/pmf.hpp"
#include "cat/rng.hpp"
#include "cat/sep_discrete.hpp"
#include "cat/sep_gaussian.hpp"

using namespace cat;

namespace {

struct Check {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
  template <class T>
  void note(const std::string& key, T value) {
    detail << ' ' << key << '=' << value;
  }
};

double slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= ys.size();
  double num = 0, den = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) * (xs[i] - mx);
  }
  return num / den;
}

double n_gof_bounded(double k, double eps, double delta) {
  double l = std::log(1.0 / delta);
  return std::sqrt(k * l) / (eps * eps) + l / (eps * eps);
}

DiscretePmf random_pmf(std::size_t k, Rng& rng) {
  std::vector<double> w(k);
  for (double& v : w) v = -std::log(1.0 - rng.next_double());
  double s = kahan_sum(w);
  for (double& v : w) v /= s;
  double s2 = kahan_sum(w);
  for (double& v : w) v /= s2;
  return DiscretePmf(std::move(w));
}

// ---------------------------------------------------------------- criterion 1
// negative expected separation of the strictly-greater set on the [3k] pair
Check criterion1() {
  Check c;
  const std::size_t k = 50;
  const double n = 30.0;
  auto [p, q] = make_negsep_pair(k);
  double oracle = expected_sep_directional(p, q, n, Direction::Greater, 1e-13);
  double closed =
      0.5 * (-poisson_compare(0.3, 0.6, 1e-14).p_gt + 1.0 - std::exp(-0.15));
  c.note("oracle", oracle);
  c.note("closed_form", closed);
  c.require(oracle < 0.0, "expected separation is negative");
  c.require(std::fabs(oracle - closed) <= 1e-10, "closed form match to 1e-10");

  const int trials = 100000;
  Rng rng(RngState{101, 1});
  double sum = 0, sq = 0;
  for (int t = 0; t < trials; ++t) {
    CountVector x = sample_poissonized(p, n, rng);
    CountVector y = sample_poissonized(q, n, rng);
    DiscreteSepSet s = sep_set_directional(x, y, SepDirection::Greater);
    double sep = exact_sep(s.members, p, q);
    sum += sep;
    sq += sep * sep;
  }
  double mean = sum / trials;
  double se = std::sqrt((sq / trials - mean * mean) / trials);
  c.note("mc_mean", mean);
  c.note("mc_se", se);
  c.require(std::fabs(mean - oracle) <= 4.0 * se, "monte carlo within 4 SE");
  return c;
}

// ---------------------------------------------------------------- criterion 2
// balanced classifier: balance, half-TV separation, tightness family
Check criterion2() {
  Check c;
  Rng rng(RngState{202, 1});
  double worst_balance = 0.0, worst_margin = 1e300;
  for (int rep = 0; rep < 200; ++rep) {
    std::size_t k = 2 + rng.next_below(49);
    DiscretePmf p = random_pmf(k, rng);
    DiscretePmf q = random_pmf(k, rng);
    BalancedClassifier bc = balanced_classifier(p, q);
    double mp = bc.label0_mass(p), mq = bc.label0_mass(q);
    worst_balance = std::max(worst_balance, std::fabs(mp + mq - 1.0));
    worst_margin = std::min(worst_margin, (mp - mq) - 0.5 * tv_distance(p, q));
  }
  c.note("worst_balance_gap", worst_balance);
  c.note("worst_sep_margin", worst_margin);
  c.require(worst_balance <= 1e-10, "balance within 1e-10");
  c.require(worst_margin >= -1e-12, "separation at least half the TV");

  // discretized tightness family at eps = 0.01, k = 1e4
  const std::size_t k = 10000;
  const double eps = 0.01;
  std::vector<double> pv(k, 1.0 / k), qv(k, 0.0);
  std::size_t m = static_cast<std::size_t>(k / (1.0 + eps));
  for (std::size_t i = 0; i < m; ++i) qv[i] = (1.0 + eps) / k;
  qv[m] = 1.0 - kahan_sum(std::span<const double>(qv.data(), m));
  DiscretePmf p(pv), q(qv);
  BalancedClassifier bc = balanced_classifier(p, q);
  double ratio = (bc.label0_mass(p) - bc.label0_mass(q)) / tv_distance(p, q);
  c.note("tightness_ratio", ratio);
  c.require(ratio >= 0.5 && ratio <= 0.52, "separation/TV in [0.5, 0.52]");
  return c;
}

// ---------------------------------------------------------------- criterion 3
// threshold calibration: exact enumeration plus monte carlo type-I
Check criterion3() {
  Check c;
  double worst = 0.0;
  for (int pi = 1; pi <= 19; ++pi) {
    double p = 0.05 * pi;
    for (std::uint64_t n = 5; n <= 40; ++n) {
      for (double delta : {0.2, 0.05}) {
        double thr =
            cat_threshold(p * (1.0 - p), static_cast<double>(n), delta, 8.0);
        double err = exact_cat_error(p, p, n, thr);
        worst = std::max(worst, err / delta);
        if (err > delta) {
          c.require(false, "exact error exceeds delta at p=" +
                               std::to_string(p) + " n=" + std::to_string(n));
        }
      }
    }
  }
  c.note("worst_exact_error_over_delta", worst);

  ExperimentConfig cfg;
  cfg.problem = Problem::TS;
  cfg.dist_class = DistClass::Db;
  cfg.family = InstanceFamily::PaninskiUniform;
  cfg.trials = 2000;
  cfg.base_seed = 303;
  CellSpec cell{100, 0.2, 0.05, 5000, 0};
  TrialReport r = run_cell(cfg, cell);
  c.note("mc_type1", r.type1);
  c.note("mc_type1_se", r.type1_se);
  c.require(r.type1 <= 0.05 + 3.0 * r.type1_se, "monte carlo type-I in budget");
  return c;
}

// ---------------------------------------------------------------- criterion 4
// bounded-class power scaling: n*(eps) slope -2 +- 0.4, n*(k) slope 0.5 +- 0.2
Check criterion4() {
  Check c;
  ExperimentConfig cfg;
  cfg.problem = Problem::TS;
  cfg.dist_class = DistClass::Db;
  cfg.family = InstanceFamily::PaninskiUniform;
  cfg.trials = 250;
  cfg.base_seed = 404;

  std::vector<double> log_eps, log_n_eps;
  for (double eps : {0.4, 0.2, 0.1}) {
    CellSpec cell{256, eps, 0.1, 0, 0};
    ComplexityResult r = estimate_sample_complexity(cfg, cell, 32, 1 << 18);
    c.require(!r.censored, "search closed at eps=" + std::to_string(eps));
    if (r.censored) return c;
    log_eps.push_back(std::log(eps));
    log_n_eps.push_back(std::log(static_cast<double>(r.n_star)));
    c.note("n_star_eps_" + std::to_string(eps), r.n_star);
  }
  double s_eps = slope(log_eps, log_n_eps);
  c.note("eps_slope", s_eps);
  c.require(s_eps >= -2.4 && s_eps <= -1.6, "eps slope within -2 +- 0.4");

  std::vector<double> log_k, log_n_k;
  for (std::uint32_t k : {64u, 256u, 1024u}) {
    CellSpec cell{k, 0.25, 0.1, 0, 0};
    ComplexityResult r = estimate_sample_complexity(cfg, cell, 32, 1 << 18);
    c.require(!r.censored, "search closed at k=" + std::to_string(k));
    if (r.censored) return c;
    log_k.push_back(std::log(static_cast<double>(k)));
    log_n_k.push_back(std::log(static_cast<double>(r.n_star)));
    c.note("n_star_k_" + std::to_string(k), r.n_star);
  }
  double s_k = slope(log_k, log_n_k);
  c.note("k_slope", s_k);
  c.require(s_k >= 0.3 && s_k <= 0.7, "k slope within 0.5 +- 0.2");
  return c;
}

// ---------------------------------------------------------------- criterion 5
// positivity and stability of the Poisson stochastic-order constant
Check criterion5() {
  Check c;
  auto grid_min = [](double tol) {
    double mn = 1e300;
    for (int li = 0; li <= 20; ++li) {
      for (int gi = 1; gi <= 100; ++gi) {
        double lambda = static_cast<double>(li);
        double gap = 0.1 * gi;
        mn = std::min(mn, lemma_e_lower_ratio(lambda + gap, lambda, tol));
      }
    }
    return mn;
  };
  double c_a = grid_min(1e-10);
  double c_b = grid_min(1e-13);
  c.note("fitted_c_tol_1e-10", c_a);
  c.note("fitted_c_tol_1e-13", c_b);
  c.require(c_a > 0.0, "minimum ratio positive");
  c.require(std::fabs(c_a - c_b) / c_b <= 0.05, "fitted c stable within 5%");
  return c;
}

// ---------------------------------------------------------------- criterion 6
// gaussian halfspace separation at scale, and exactness of the mass formula
Check criterion6() {
  Check c;
  const double s = 1.0, eps = 0.2, delta = 0.1;
  const double level_const = 4.0;
  const double c_prime = 0.4;  // fitted at calibration, recorded here
  double l = std::log(1.0 / delta);
  std::uint64_t n = static_cast<std::uint64_t>(
      std::ceil(5.0 * (std::sqrt(l) / std::pow(eps, 2.5) + l / (eps * eps))));
  std::uint32_t J = truncation_level(eps, s, level_const);
  c.note("n", n);
  c.note("J", J);

  // signal drawn at the generator scale, rescaled to TV separation eps
  std::vector<int> signs(10);
  for (std::size_t j = 0; j < signs.size(); ++j) signs[j] = j % 2 ? -1 : 1;
  GaussianMean raw = make_sobolev_signal(s, 16.0, 0.1, signs, 1.0, 1.0);
  double target = 2.0 * normal_quantile(0.5 * (1.0 + eps));
  std::vector<double> coeffs = raw.coeffs();
  double norm = std::sqrt(raw.l2_norm_sq());
  for (double& v : coeffs) v *= target / norm;
  GaussianMean theta_x(coeffs, s, 16.0);
  GaussianMean theta_y({}, s, 16.0);
  std::size_t L = std::max<std::size_t>(J, theta_x.length());

  double bound = c_prime *
                 std::min(std::sqrt(static_cast<double>(n) * std::pow(eps, 1.0 / s)),
                          1.0 / eps) *
                 eps * eps;
  c.note("event_bound", bound);
  const int trials = 500;
  int hold = 0;
  Rng rng(RngState{606, 1});
  double mean_sep = 0.0;
  for (int t = 0; t < trials; ++t) {
    Matrix x = sample_gaussian_sequence(theta_x, L, n, rng);
    Matrix y = sample_gaussian_sequence(theta_y, L, n, rng);
    std::vector<double> mx(J, 0.0), my(J, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::uint32_t j = 0; j < J; ++j) {
        mx[j] += x.at(r, j);
        my[j] += y.at(r, j);
      }
    }
    for (std::uint32_t j = 0; j < J; ++j) {
      mx[j] /= static_cast<double>(n);
      my[j] /= static_cast<double>(n);
    }
    GaussianHalfspace hs = gaussian_sep_set(mx, my, J);
    double sep = halfspace_mass(theta_x, hs) - halfspace_mass(theta_y, hs);
    mean_sep += sep;
    hold += sep >= bound ? 1 : 0;
  }
  double hold_rate = static_cast<double>(hold) / trials;
  c.note("mean_sep", mean_sep / trials);
  c.note("hold_rate", hold_rate);
  c.require(hold_rate >= 0.90, "separation event holds in at least 90%");

  // exact mass against one-million-draw simulation on 20 random halfspaces
  Rng mc(RngState{606, 2});
  double worst_z = 0.0;
  for (int conf = 0; conf < 20; ++conf) {
    std::uint32_t Jc = 1 + static_cast<std::uint32_t>(mc.next_below(8));
    std::vector<double> tx(Jc), ty(Jc), theta(Jc);
    for (std::uint32_t j = 0; j < Jc; ++j) {
      tx[j] = mc.next_normal();
      ty[j] = mc.next_normal();
      theta[j] = 0.7 * mc.next_normal();
    }
    GaussianHalfspace hs = gaussian_sep_set(tx, ty, Jc);
    double sob = 0.0;
    for (std::uint32_t j = 0; j < Jc; ++j)
      sob += std::pow(j + 1.0, 2.0) * theta[j] * theta[j];
    GaussianMean tm(theta, 1.0, sob + 1.0);
    double exact = halfspace_mass(tm, hs);
    const int draws = 1000000;
    int inside = 0;
    std::vector<double> z(Jc);
    for (int d = 0; d < draws; ++d) {
      for (std::uint32_t j = 0; j < Jc; ++j) z[j] = theta[j] + mc.next_normal();
      inside += hs.contains(z) ? 1 : 0;
    }
    double freq = static_cast<double>(inside) / draws;
    double se = std::sqrt(std::max(exact * (1.0 - exact), 1e-12) / draws);
    worst_z = std::max(worst_z, std::fabs(freq - exact) / se);
  }
  c.note("worst_mass_z_score", worst_z);
  c.require(worst_z <= 4.0, "halfspace mass within 4 SE of simulation");
  return c;
}

// ---------------------------------------------------------------- criterion 7
// the better-of-two set is small: tau <= C n/k, against tau ~ 1/4 for S_1/2
Check criterion7() {
  Check c;
  const std::size_t k = 256;
  const double n = 64.0;         // n = k/4
  const double tau_const = 0.8;  // fitted at calibration, recorded here
  std::vector<int> signs(k / 2);
  Rng srng(RngState{707, 1});
  for (int& s : signs) s = srng.next_coin() ? 1 : -1;
  auto [q, p] = make_paninski_pair(k, 0.25, signs);

  const int trials = 2000;
  Rng rng(RngState{707, 2});
  int ok = 0;
  double half_tau_sum = 0.0, worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    CountVector x = sample_poissonized(p, n, rng);
    CountVector y = sample_poissonized(q, n, rng);
    CountVector hx = sample_poissonized(p, n, rng);
    CountVector hy = sample_poissonized(q, n, rng);
    DiscreteSepSet gt = sep_set_directional(x, y, SepDirection::Greater);
    DiscreteSepSet lt = sep_set_directional(x, y, SepDirection::Less);
    const DiscreteSepSet& s = select_better_of_two(gt, lt, hx, hy);
    double tau = exact_tau(s.members, p, q);
    worst = std::max(worst, tau);
    if (tau <= tau_const * n / static_cast<double>(k)) ++ok;
    half_tau_sum += exact_tau(sep_set_half(x, y, rng).members, p, q);
  }
  double rate = static_cast<double>(ok) / trials;
  double half_tau = half_tau_sum / trials;
  c.note("tau_bound_rate", rate);
  c.note("max_tau", worst);
  c.note("mean_half_tau", half_tau);
  c.require(rate >= 0.95, "tau bound holds in at least 95%");
  c.require(half_tau >= 0.20, "tie-broken tau near one quarter");
  return c;
}

// ---------------------------------------------------------------- criterion 8
// best-of-log-k on a heavy head plus light tail instance
Check criterion8() {
  Check c;
  const std::size_t k = 10000;
  const double m = 1e5, eps = 0.25, delta = 0.1, c0 = 0.1, c1 = 0.05;
  const double tau_const = 1.0;  // bucket bound multiplier, recorded
  DiscreteInstance inst =
      make_discrete_instance(InstanceFamily::HeavyHead, k, eps, 808);
  double l = std::log(1.0 / delta);
  double t_scale = std::min(static_cast<double>(k), c0 * m / l);
  // budget with ell = 1, consistent with t/n in (1, 2]
  double n = std::ceil(n_gof_bounded(static_cast<double>(k), eps, delta));
  c.note("n", n);
  c.note("t", t_scale);
  c.require(t_scale > n, "bucketing scale above the budget");

  const int trials = 500;
  Rng rng(RngState{808, 2});
  int found = 0, tau_ok = 0;
  for (int trial = 0; trial < trials; ++trial) {
    CountVector ref =
        sample_multinomial(inst.q, static_cast<std::uint64_t>(m / 2), rng);
    std::vector<double> qhat(k);
    for (std::size_t i = 0; i < k; ++i)
      qhat[i] = static_cast<double>(ref.counts[i]) / ref.total;
    double s2 = kahan_sum(qhat);
    for (double& v : qhat) v /= s2;
    BucketPartition part = bucketize(DiscretePmf(qhat), n, m, delta, c0);
    CountVector x = sample_poissonized(inst.p, n, rng);
    CountVector y = sample_poissonized(inst.q, n, rng);
    CountVector hx = sample_poissonized(inst.p, n, rng);
    CountVector hy = sample_poissonized(inst.q, n, rng);
    auto s = select_best_of_logk(part, x, y, hx, hy, eps, delta, c1);
    if (s) {
      ++found;
      double tau = exact_tau(s->members, inst.p, inst.q);
      double bound = tau_const * n * std::exp2(s->bucket) / part.t;
      if (tau <= bound) ++tau_ok;
    }
  }
  double rate = static_cast<double>(found) / trials;
  c.note("found_rate", rate);
  c.note("tau_ok", tau_ok);
  c.note("found", found);
  c.require(rate >= 0.80, "selector returns a passing set in at least 80%");
  c.require(tau_ok == found, "every returned set meets the bucket tau bound");
  return c;
}

// ---------------------------------------------------------------- criterion 9
// likelihood-free testing error regions over an (n, m) grid
Check criterion9() {
  Check c;
  const double eps = 0.25, delta = 0.1;
  const std::uint32_t k = 256;
  double ng = n_gof_bounded(k, eps, delta);
  std::uint64_t n0 = static_cast<std::uint64_t>(std::ceil(5.0 * ng));
  std::uint64_t m_min = static_cast<std::uint64_t>(
      std::ceil(5.0 * std::log(1.0 / delta) / (eps * eps)));
  double nm_min = 25.0 * ng * ng;
  c.note("n_gof", ng);
  c.note("n0", n0);
  c.note("m_min", m_min);

  ExperimentConfig cfg;
  cfg.problem = Problem::LFHT;
  cfg.dist_class = DistClass::Db;
  cfg.family = InstanceFamily::PaninskiUniform;
  cfg.trials = 1200;
  cfg.base_seed = 909;

  // the region corner, two interior points, and the small-m frontier edge
  std::vector<CellSpec> region{
      {k, eps, delta, n0, n0},
      {k, eps, delta, 3 * n0, n0},
      {k, eps, delta, 3 * n0, 3 * n0},
      {k, eps, delta,
       static_cast<std::uint64_t>(std::ceil(nm_min / static_cast<double>(m_min))),
       m_min},
  };
  for (const CellSpec& cell : region) {
    TrialReport r = run_cell(cfg, cell);
    double err = std::max(r.type1, r.type2);
    c.note("err_n" + std::to_string(cell.n) + "_m" + std::to_string(cell.m),
           err);
    c.require(err <= delta, "error within delta inside the region at n=" +
                                std::to_string(cell.n) +
                                " m=" + std::to_string(cell.m));
  }

  cfg.trials = 600;
  CellSpec below{k, eps, delta, n0 / 10, std::max<std::uint64_t>(n0 / 10, 2)};
  TrialReport rb = run_cell(cfg, below);
  double err_below = std::max(rb.type1, rb.type2);
  c.note("err_below", err_below);
  c.require(err_below > delta, "error exceeds delta below the frontier");
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  struct Entry {
    int id;
    const char* name;
    std::function<Check()> fn;
  };
  std::vector<Entry> entries{
      {1, "negative-separation counterexample", criterion1},
      {2, "balanced classifier bound and tightness", criterion2},
      {3, "threshold calibration", criterion3},
      {4, "bounded-class power scaling", criterion4},
      {5, "poisson order constant", criterion5},
      {6, "gaussian halfspace separation", criterion6},
      {7, "imbalance of the better-of-two set", criterion7},
      {8, "best-of-log-k selector", criterion8},
      {9, "likelihood-free regions", criterion9},
  };
  int failures = 0;
  for (const Entry& e : entries) {
    if (!only.empty() && !only.count(e.id)) continue;
    auto t0 = std::chrono::steady_clock::now();
    Check c = e.fn();
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("[%s] criterion %d: %s (%.1fs)%s\n", c.pass ? "PASS" : "FAIL",
                e.id, e.name, secs, c.detail.str().c_str());
    std::fflush(stdout);
    failures += c.pass ? 0 : 1;
  }
  return failures;
}
