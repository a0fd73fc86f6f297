#include "cat/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cat {

std::string to_string(Problem p) {
  switch (p) {
    case Problem::GoF: return "gof";
    case Problem::TS: return "ts";
    case Problem::LFHT: return "lfht";
  }
  return "?";
}

std::string to_string(DistClass c) {
  switch (c) {
    case DistClass::Db: return "db";
    case DistClass::D: return "d";
    case DistClass::Holder: return "holder";
    case DistClass::Gauss: return "gauss";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::AcceptH0: return "accept";
    case Verdict::RejectH0: return "reject";
    case Verdict::LabelX: return "label_x";
    case Verdict::LabelY: return "label_y";
  }
  return "?";
}

Problem problem_from_string(const std::string& s) {
  if (s == "gof") return Problem::GoF;
  if (s == "ts") return Problem::TS;
  if (s == "lfht") return Problem::LFHT;
  throw std::invalid_argument("unknown problem: " + s);
}

DistClass class_from_string(const std::string& s) {
  if (s == "db") return DistClass::Db;
  if (s == "d") return DistClass::D;
  if (s == "holder") return DistClass::Holder;
  if (s == "gauss") return DistClass::Gauss;
  throw std::invalid_argument("unknown class: " + s);
}

void TestConfig::validate() const {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("config: eps must lie in (0,1)");
  if (!(delta > 0.0 && delta < 0.5))
    throw std::invalid_argument("config: delta must lie in (0, 1/2)");
  if (!(threshold_const > 0.0))
    throw std::invalid_argument("config: threshold constant must be > 0");
  if (tau_bar && !(*tau_bar >= 0.0 && *tau_bar <= 0.25))
    throw std::invalid_argument("config: tau_bar must lie in [0, 1/4]");
  if (!(poissonize_frac > 0.0 && poissonize_frac <= 1.0))
    throw std::invalid_argument("config: poissonize_frac must lie in (0,1]");
  if (!(construct_frac > 0.0 && construct_frac < 1.0))
    throw std::invalid_argument("config: construct_frac must lie in (0,1)");
}

double cat_threshold(double tau_bar, double n, double delta, double c) {
  if (!(tau_bar >= 0.0 && tau_bar <= 0.25))
    throw std::invalid_argument("cat_threshold: tau_bar must lie in [0, 1/4]");
  if (!(n >= 1.0)) throw std::invalid_argument("cat_threshold: n must be >= 1");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("cat_threshold: delta must lie in (0,1)");
  double l = std::log(1.0 / delta);
  return std::sqrt(c * tau_bar * l / n) + c * l / n;
}

double cat_statistic(const DiscreteSepSet& s, std::span<const std::uint32_t> a,
                     std::span<const std::uint32_t> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("cat_statistic: empty dataset");
  std::uint64_t ca = 0, cb = 0;
  for (std::uint32_t v : a) ca += s.contains(v) ? 1 : 0;
  for (std::uint32_t v : b) cb += s.contains(v) ? 1 : 0;
  return static_cast<double>(ca) / static_cast<double>(a.size()) -
         static_cast<double>(cb) / static_cast<double>(b.size());
}

double cat_statistic(const DiscreteSepSet& s, std::span<const std::uint32_t> a,
                     double exact_b_mass) {
  if (a.empty()) throw std::invalid_argument("cat_statistic: empty dataset");
  std::uint64_t ca = 0;
  for (std::uint32_t v : a) ca += s.contains(v) ? 1 : 0;
  return static_cast<double>(ca) / static_cast<double>(a.size()) - exact_b_mass;
}

double cat_statistic(const GaussianHalfspace& s, const Matrix& a, const Matrix& b) {
  if (a.rows == 0 || b.rows == 0)
    throw std::invalid_argument("cat_statistic: empty dataset");
  std::uint64_t ca = 0, cb = 0;
  for (std::size_t r = 0; r < a.rows; ++r) ca += s.contains(a.row(r)) ? 1 : 0;
  for (std::size_t r = 0; r < b.rows; ++r) cb += s.contains(b.row(r)) ? 1 : 0;
  return static_cast<double>(ca) / static_cast<double>(a.rows) -
         static_cast<double>(cb) / static_cast<double>(b.rows);
}

double cat_statistic(const GaussianHalfspace& s, const Matrix& a,
                     double exact_b_mass) {
  if (a.rows == 0) throw std::invalid_argument("cat_statistic: empty dataset");
  std::uint64_t ca = 0;
  for (std::size_t r = 0; r < a.rows; ++r) ca += s.contains(a.row(r)) ? 1 : 0;
  return static_cast<double>(ca) / static_cast<double>(a.rows) - exact_b_mass;
}

namespace {

std::uint64_t fnv1a(std::span<const std::uint32_t> data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::uint32_t v : data) {
    for (int shift = 0; shift < 32; shift += 8) {
      h ^= (v >> shift) & 0xffu;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

constexpr std::uint64_t kTagSide = 0x51de;
constexpr std::uint64_t kTagCoins = 0xc01f;

struct TrainSplit {
  CountVector construct;
  CountVector holdout;
  double construct_rate = 0.0;
};

// Poissonize an iid training sample (N ~ Poi(frac*n), capped at n, first N
// draws kept) and thin the kept draws into independent construction and
// holdout count vectors.
TrainSplit poissonize_split(std::span<const std::uint32_t> symbols, std::size_t k,
                            const TestConfig& cfg, Rng& rng) {
  double rate = cfg.poissonize_frac * static_cast<double>(symbols.size());
  std::uint64_t n_keep =
      std::min<std::uint64_t>(rng.next_poisson(rate), symbols.size());
  TrainSplit out;
  out.construct.counts.assign(k, 0);
  out.holdout.counts.assign(k, 0);
  out.construct.poissonized = true;
  out.holdout.poissonized = true;
  for (std::uint64_t i = 0; i < n_keep; ++i) {
    std::uint32_t s = symbols[i];
    if (s >= k) throw std::invalid_argument("pipeline: symbol out of range");
    if (rng.next_double() < cfg.construct_frac) {
      ++out.construct.counts[s];
      ++out.construct.total;
    } else {
      ++out.holdout.counts[s];
      ++out.holdout.total;
    }
  }
  out.construct_rate = rate * cfg.construct_frac;
  return out;
}

CountVector poissonize_all(std::span<const std::uint32_t> symbols, std::size_t k,
                           double frac, Rng& rng) {
  double rate = frac * static_cast<double>(symbols.size());
  std::uint64_t n_keep =
      std::min<std::uint64_t>(rng.next_poisson(rate), symbols.size());
  return counts_from_symbols(symbols.subspan(0, n_keep), k);
}

double tau_bar_bounded(const TestConfig& cfg, double n, double k) {
  if (cfg.tau_bar) return *cfg.tau_bar;
  return std::min(0.25, cfg.tau_const * n / k);
}

double tau_bar_bucket(const TestConfig& cfg, double n_build, int bucket, double t) {
  if (cfg.tau_bar) return *cfg.tau_bar;
  return std::min(0.25, cfg.tau_const * n_build *
                            std::exp2(static_cast<double>(bucket)) / t);
}

Verdict threshold_verdict(double statistic, double threshold) {
  return std::fabs(statistic) > threshold ? Verdict::RejectH0 : Verdict::AcceptH0;
}

std::vector<double> expected_counts(const DiscretePmf& p0, double rate) {
  std::vector<double> e(p0.size());
  for (std::size_t i = 0; i < p0.size(); ++i) e[i] = rate * p0[i];
  return e;
}

DiscretePmf empirical_pmf(const CountVector& c) {
  std::vector<double> probs(c.size());
  if (c.total == 0)
    throw std::invalid_argument("empirical_pmf: no draws");
  for (std::size_t i = 0; i < c.size(); ++i)
    probs[i] = static_cast<double>(c.counts[i]) / static_cast<double>(c.total);
  double total = kahan_sum(probs);
  for (double& p : probs) p /= total;
  return DiscretePmf(std::move(probs));
}

// two-sample set construction for the bounded class: strictly-greater and
// strictly-less candidates over the whole alphabet, holdout picks one
struct TrainedSet {
  DiscreteSepSet set;
  double tau_bar = 0.25;
};

TrainedSet train_db_two_sample(std::span<const std::uint32_t> x_tr,
                               std::span<const std::uint32_t> y_tr, std::size_t k,
                               const TestConfig& cfg, RngState rng, double n_test) {
  Rng rng_x(derive_state(rng.seed, {rng.stream, kTagSide, fnv1a(x_tr)}));
  Rng rng_y(derive_state(rng.seed, {rng.stream, kTagSide, fnv1a(y_tr)}));
  TrainSplit sx = poissonize_split(x_tr, k, cfg, rng_x);
  TrainSplit sy = poissonize_split(y_tr, k, cfg, rng_y);
  DiscreteSepSet gt = sep_set_directional(sx.construct, sy.construct,
                                          SepDirection::Greater);
  DiscreteSepSet lt =
      sep_set_directional(sx.construct, sy.construct, SepDirection::Less);
  TrainedSet out;
  out.set = select_better_of_two(gt, lt, sx.holdout, sy.holdout);
  out.tau_bar = tau_bar_bounded(cfg, n_test, static_cast<double>(k));
  return out;
}

TrainedSet train_half_two_sample(std::span<const std::uint32_t> x_tr,
                                 std::span<const std::uint32_t> y_tr,
                                 std::size_t k, const TestConfig& cfg,
                                 RngState rng) {
  std::uint64_t hx = fnv1a(x_tr), hy = fnv1a(y_tr);
  Rng rng_x(derive_state(rng.seed, {rng.stream, kTagSide, hx}));
  Rng rng_y(derive_state(rng.seed, {rng.stream, kTagSide, hy}));
  CountVector cx = poissonize_all(x_tr, k, cfg.poissonize_frac, rng_x);
  CountVector cy = poissonize_all(y_tr, k, cfg.poissonize_frac, rng_y);
  Rng coins(derive_state(rng.seed, {rng.stream, kTagCoins, hx ^ hy}));
  TrainedSet out;
  out.set = sep_set_half(cx, cy, coins);
  out.tau_bar = cfg.tau_bar ? *cfg.tau_bar : 0.25;
  return out;
}

// best-of-log-k construction given a reference pmf for the bucketing;
// returns nothing when no candidate passes the selector
std::optional<TrainedSet> train_bucketed_two_sample(
    std::span<const std::uint32_t> x_tr, std::span<const std::uint32_t> y_tr,
    std::size_t k, const DiscretePmf& qhat0, double m_for_scale,
    const TestConfig& cfg, RngState rng, bool* applicable) {
  Rng rng_x(derive_state(rng.seed, {rng.stream, kTagSide, fnv1a(x_tr)}));
  Rng rng_y(derive_state(rng.seed, {rng.stream, kTagSide, fnv1a(y_tr)}));
  TrainSplit sx = poissonize_split(x_tr, k, cfg, rng_x);
  TrainSplit sy = poissonize_split(y_tr, k, cfg, rng_y);
  double n_build = sx.construct_rate;
  double t = std::min(static_cast<double>(k),
                      cfg.c0 * m_for_scale / std::log(1.0 / cfg.delta));
  if (!(t > n_build)) {
    *applicable = false;
    return std::nullopt;
  }
  *applicable = true;
  BucketPartition part = bucketize(qhat0, n_build, m_for_scale, cfg.delta, cfg.c0);
  std::optional<DiscreteSepSet> s =
      select_best_of_logk(part, sx.construct, sy.construct, sx.holdout,
                          sy.holdout, cfg.eps, cfg.delta, cfg.c1);
  if (!s) return std::nullopt;
  TrainedSet out;
  out.tau_bar = tau_bar_bucket(cfg, n_build, s->bucket, part.t);
  out.set = std::move(*s);
  return out;
}

}  // namespace

TestOutcome run_two_sample_test(std::span<const std::uint32_t> x,
                                std::span<const std::uint32_t> y, std::size_t k,
                                const TestConfig& cfg, RngState rng) {
  cfg.validate();
  if (x.size() < 2 || y.size() < 2)
    throw std::invalid_argument("run_two_sample_test: sample too small to split");
  std::size_t nx = x.size() / 2, ny = y.size() / 2;
  auto x_tr = x.subspan(0, nx), x_te = x.subspan(nx);
  auto y_tr = y.subspan(0, ny), y_te = y.subspan(ny);
  double n_test = static_cast<double>(std::min(x_te.size(), y_te.size()));

  TrainedSet trained =
      cfg.dist_class == DistClass::Db
          ? train_db_two_sample(x_tr, y_tr, k, cfg, rng, n_test)
          : train_half_two_sample(x_tr, y_tr, k, cfg, rng);

  TestOutcome out;
  out.statistic = cat_statistic(trained.set, x_te, y_te);
  out.threshold = cat_threshold(trained.tau_bar, n_test, cfg.delta,
                                cfg.threshold_const);
  out.verdict = threshold_verdict(out.statistic, out.threshold);
  out.sep.tag = trained.set.tag_string();
  out.sep.discrete = std::move(trained.set);
  return out;
}

TestOutcome run_gof_test(std::span<const std::uint32_t> x, const DiscretePmf& p0,
                         const TestConfig& cfg, RngState rng) {
  cfg.validate();
  if (x.size() < 2)
    throw std::invalid_argument("run_gof_test: sample too small to split");
  std::size_t k = p0.size();
  std::size_t nx = x.size() / 2;
  auto x_tr = x.subspan(0, nx), x_te = x.subspan(nx);
  double n_test = static_cast<double>(x_te.size());

  Rng rng_x(derive_state(rng.seed, {rng.stream, kTagSide, fnv1a(x_tr)}));
  TestOutcome out;

  if (cfg.dist_class == DistClass::D) {
    // known null: the bucketing reference is q itself and the holdout scale
    // is unbounded (m = infinity), so t = k; fall back to the tie-broken set
    // when t <= construction rate
    TrainSplit sx = poissonize_split(x_tr, k, cfg, rng_x);
    double n_build = sx.construct_rate;
    double t = static_cast<double>(k);
    if (t > n_build) {
      BucketPartition part = bucketize(
          p0, n_build, std::numeric_limits<double>::infinity(), cfg.delta, cfg.c0);
      std::vector<double> e = expected_counts(p0, n_build);
      std::optional<DiscreteSepSet> s = select_best_of_logk(
          part, sx.construct, e, sx.holdout, p0, cfg.eps, cfg.delta, cfg.c1);
      if (!s) {
        out.verdict = Verdict::AcceptH0;
        out.statistic = 0.0;
        out.threshold = cat_threshold(0.25, n_test, cfg.delta, cfg.threshold_const);
        out.sep.tag = "nonefound";
        return out;
      }
      double tau = tau_bar_bucket(cfg, n_build, s->bucket, part.t);
      out.statistic = cat_statistic(*s, x_te, p0.mass(s->members));
      out.threshold = cat_threshold(tau, n_test, cfg.delta, cfg.threshold_const);
      out.verdict = threshold_verdict(out.statistic, out.threshold);
      out.sep.tag = s->tag_string();
      out.sep.discrete = std::move(*s);
      return out;
    }
    // t <= n: tie-broken set against exact expectations
    CountVector cx = poissonize_all(x_tr, k, cfg.poissonize_frac, rng_x);
    std::vector<double> e =
        expected_counts(p0, cfg.poissonize_frac * static_cast<double>(x_tr.size()));
    Rng coins(derive_state(rng.seed, {rng.stream, kTagCoins, fnv1a(x_tr)}));
    DiscreteSepSet s = sep_set_half(cx, e, coins);
    out.statistic = cat_statistic(s, x_te, p0.mass(s.members));
    out.threshold = cat_threshold(cfg.tau_bar ? *cfg.tau_bar : 0.25, n_test,
                                  cfg.delta, cfg.threshold_const);
    out.verdict = threshold_verdict(out.statistic, out.threshold);
    out.sep.tag = s.tag_string();
    out.sep.discrete = std::move(s);
    return out;
  }

  // bounded class: better-of-two against exact expectations
  TrainSplit sx = poissonize_split(x_tr, k, cfg, rng_x);
  std::vector<double> e = expected_counts(p0, sx.construct_rate);
  DiscreteSepSet gt =
      sep_set_directional(sx.construct, e, SepDirection::Greater);
  DiscreteSepSet lt = sep_set_directional(sx.construct, e, SepDirection::Less);
  DiscreteSepSet s = select_better_of_two(gt, lt, sx.holdout, p0);
  double tau = tau_bar_bounded(cfg, n_test, static_cast<double>(k));
  out.statistic = cat_statistic(s, x_te, p0.mass(s.members));
  out.threshold = cat_threshold(tau, n_test, cfg.delta, cfg.threshold_const);
  out.verdict = threshold_verdict(out.statistic, out.threshold);
  out.sep.tag = s.tag_string();
  out.sep.discrete = std::move(s);
  return out;
}

TestOutcome run_lfht_test(std::span<const std::uint32_t> x,
                          std::span<const std::uint32_t> y,
                          std::span<const std::uint32_t> z, std::size_t k,
                          const TestConfig& cfg, RngState rng) {
  cfg.validate();
  if (x.size() < 2 || y.size() < 2 || z.size() < 2)
    throw std::invalid_argument("run_lfht_test: sample too small to split");
  std::size_t nx = x.size() / 2, ny = y.size() / 2, mz = z.size() / 2;
  auto x_tr = x.subspan(0, nx), x_te = x.subspan(nx);
  auto y_tr = y.subspan(0, ny), y_te = y.subspan(ny);
  auto z_tr = z.subspan(0, mz), z_te = z.subspan(mz);

  TrainedSet trained;
  if (cfg.dist_class == DistClass::Db) {
    trained = train_db_two_sample(x_tr, y_tr, k, cfg, rng,
                                  static_cast<double>(std::min(x_te.size(),
                                                               z_te.size())));
  } else {
    // general discrete class: the bucketed construction applies when the
    // z budget dominates; the reference pmf comes from half of the z train
    // side, the remaining z train draws stay unused
    bool applicable = false;
    std::optional<TrainedSet> bucketed;
    if (z_tr.size() / 2 >= 1 && z_tr.size() > x_tr.size()) {
      CountVector qhat_counts =
          counts_from_symbols(z_tr.subspan(0, z_tr.size() / 2), k);
      if (qhat_counts.total > 0) {
        DiscretePmf qhat0 = empirical_pmf(qhat_counts);
        bucketed = train_bucketed_two_sample(
            x_tr, y_tr, k, qhat0, static_cast<double>(mz), cfg, rng, &applicable);
      }
    }
    if (applicable) {
      if (!bucketed) {
        // no candidate passed the selector: accept H0, i.e. label Z as X-like
        TestOutcome out;
        out.verdict = Verdict::LabelX;
        out.statistic = 0.0;
        out.threshold = 0.0;
        out.sep.tag = "nonefound";
        return out;
      }
      trained = std::move(*bucketed);
    } else {
      trained = train_half_two_sample(x_tr, y_tr, k, cfg, rng);
    }
  }

  double u = cat_statistic(trained.set, z_te, x_te);
  double v = cat_statistic(trained.set, z_te, y_te);
  TestOutcome out;
  out.statistic = std::fabs(u) - std::fabs(v);
  out.threshold = 0.0;
  out.verdict = out.statistic <= 0.0 ? Verdict::LabelX : Verdict::LabelY;
  out.sep.tag = trained.set.tag_string();
  out.sep.discrete = std::move(trained.set);
  return out;
}

namespace {

std::vector<double> column_means(const Matrix& m, std::size_t from_row,
                                 std::size_t to_row, std::uint32_t J) {
  std::vector<double> mu(J, 0.0);
  std::size_t n = to_row - from_row;
  for (std::size_t r = from_row; r < to_row; ++r) {
    for (std::uint32_t j = 0; j < J; ++j) mu[j] += m.at(r, j);
  }
  for (double& v : mu) v /= static_cast<double>(n);
  return mu;
}

Matrix matrix_rows(const Matrix& m, std::size_t from_row, std::size_t to_row) {
  Matrix out(to_row - from_row, m.cols);
  std::copy(m.data.begin() + from_row * m.cols, m.data.begin() + to_row * m.cols,
            out.data.begin());
  return out;
}

}  // namespace

TestOutcome run_two_sample_test(const Matrix& x, const Matrix& y,
                                const TestConfig& cfg, RngState rng) {
  (void)rng;  // the Gaussian pipeline is deterministic given its inputs
  cfg.validate();
  if (x.rows < 2 || y.rows < 2)
    throw std::invalid_argument("run_two_sample_test: sample too small to split");
  std::uint32_t J = truncation_level(cfg.eps, cfg.smoothness, cfg.level_const);
  if (x.cols < J || y.cols < J)
    throw std::invalid_argument("run_two_sample_test: observations shorter than J");
  std::size_t nx = x.rows / 2, ny = y.rows / 2;
  auto mx = column_means(x, 0, nx, J);
  auto my = column_means(y, 0, ny, J);
  GaussianHalfspace hs = gaussian_sep_set(mx, my, J);
  Matrix x_te = matrix_rows(x, nx, x.rows);
  Matrix y_te = matrix_rows(y, ny, y.rows);
  TestOutcome out;
  out.statistic = cat_statistic(hs, x_te, y_te);
  double tau = cfg.tau_bar ? *cfg.tau_bar : 0.25;
  out.threshold =
      cat_threshold(tau, static_cast<double>(std::min(x_te.rows, y_te.rows)),
                    cfg.delta, cfg.threshold_const);
  out.verdict = threshold_verdict(out.statistic, out.threshold);
  out.sep.tag = hs.degenerate ? "halfspace:degenerate" : "halfspace";
  out.sep.halfspace = std::move(hs);
  return out;
}

TestOutcome run_gof_test(const Matrix& x, const GaussianMean& theta0,
                         const TestConfig& cfg, RngState rng) {
  (void)rng;
  cfg.validate();
  if (x.rows < 2)
    throw std::invalid_argument("run_gof_test: sample too small to split");
  std::uint32_t J = truncation_level(cfg.eps, cfg.smoothness, cfg.level_const);
  if (x.cols < J)
    throw std::invalid_argument("run_gof_test: observations shorter than J");
  std::size_t nx = x.rows / 2;
  auto mx = column_means(x, 0, nx, J);
  std::vector<double> m0(J, 0.0);
  for (std::uint32_t j = 0; j < J && j < theta0.length(); ++j)
    m0[j] = theta0.coeffs()[j];
  GaussianHalfspace hs = gaussian_sep_set(mx, m0, J);
  Matrix x_te = matrix_rows(x, nx, x.rows);
  TestOutcome out;
  out.statistic = cat_statistic(hs, x_te, halfspace_mass(theta0, hs));
  double tau = cfg.tau_bar ? *cfg.tau_bar : 0.25;
  out.threshold = cat_threshold(tau, static_cast<double>(x_te.rows), cfg.delta,
                                cfg.threshold_const);
  out.verdict = threshold_verdict(out.statistic, out.threshold);
  out.sep.tag = hs.degenerate ? "halfspace:degenerate" : "halfspace";
  out.sep.halfspace = std::move(hs);
  return out;
}

TestOutcome run_lfht_test(const Matrix& x, const Matrix& y, const Matrix& z,
                          const TestConfig& cfg, RngState rng) {
  (void)rng;
  cfg.validate();
  if (x.rows < 2 || y.rows < 2 || z.rows < 2)
    throw std::invalid_argument("run_lfht_test: sample too small to split");
  std::uint32_t J = truncation_level(cfg.eps, cfg.smoothness, cfg.level_const);
  if (x.cols < J || y.cols < J || z.cols < J)
    throw std::invalid_argument("run_lfht_test: observations shorter than J");
  std::size_t nx = x.rows / 2, ny = y.rows / 2, mz = z.rows / 2;
  auto mx = column_means(x, 0, nx, J);
  auto my = column_means(y, 0, ny, J);
  GaussianHalfspace hs = gaussian_sep_set(mx, my, J);
  Matrix x_te = matrix_rows(x, nx, x.rows);
  Matrix y_te = matrix_rows(y, ny, y.rows);
  Matrix z_te = matrix_rows(z, mz, z.rows);
  double u = cat_statistic(hs, z_te, x_te);
  double v = cat_statistic(hs, z_te, y_te);
  TestOutcome out;
  out.statistic = std::fabs(u) - std::fabs(v);
  out.threshold = 0.0;
  out.verdict = out.statistic <= 0.0 ? Verdict::LabelX : Verdict::LabelY;
  out.sep.tag = hs.degenerate ? "halfspace:degenerate" : "halfspace";
  out.sep.halfspace = std::move(hs);
  return out;
}

namespace {

TestConfig binned_config(const TestConfig& cfg) {
  TestConfig c = cfg;
  c.dist_class = DistClass::Db;  // binned Holder densities are O(1/k)-bounded
  return c;
}

}  // namespace

TestOutcome run_two_sample_test_points(std::span<const double> x, std::size_t nx,
                                       std::span<const double> y, std::size_t ny,
                                       const TestConfig& cfg, RngState rng) {
  cfg.validate();
  GridSpec grid = choose_resolution(cfg.eps, cfg.beta, cfg.res_const, cfg.dim);
  auto cx = grid_cells(x, nx, grid);
  auto cy = grid_cells(y, ny, grid);
  return run_two_sample_test(cx, cy, grid.total_cells, binned_config(cfg), rng);
}

TestOutcome run_gof_test_points(std::span<const double> x, std::size_t nx,
                                const DiscretePmf& null_cells,
                                const TestConfig& cfg, RngState rng) {
  cfg.validate();
  GridSpec grid = choose_resolution(cfg.eps, cfg.beta, cfg.res_const, cfg.dim);
  if (null_cells.size() != grid.total_cells)
    throw std::invalid_argument(
        "run_gof_test_points: null cell pmf does not match the grid");
  auto cx = grid_cells(x, nx, grid);
  return run_gof_test(cx, null_cells, binned_config(cfg), rng);
}

TestOutcome run_lfht_test_points(std::span<const double> x, std::size_t nx,
                                 std::span<const double> y, std::size_t ny,
                                 std::span<const double> z, std::size_t nz,
                                 const TestConfig& cfg, RngState rng) {
  cfg.validate();
  GridSpec grid = choose_resolution(cfg.eps, cfg.beta, cfg.res_const, cfg.dim);
  auto cx = grid_cells(x, nx, grid);
  auto cy = grid_cells(y, ny, grid);
  auto cz = grid_cells(z, nz, grid);
  return run_lfht_test(cx, cy, cz, grid.total_cells, binned_config(cfg), rng);
}

}  // namespace cat
