#include "cat/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace cat {

namespace {

// Loader's saddle-point evaluation: keeps the pmf relatively accurate at
// rates up to 1e6, where the direct k log(rate) - rate - lgamma(k+1) form
// loses ~6 digits to cancellation.

// log(n!) - log(sqrt(2 pi n) (n/e)^n)
double stirlerr(double n) {
  constexpr double s0 = 1.0 / 12, s1 = 1.0 / 360, s2 = 1.0 / 1260,
                   s3 = 1.0 / 1680, s4 = 1.0 / 1188;
  if (n <= 15.0) {
    return std::lgamma(n + 1.0) - (n + 0.5) * std::log(n) + n -
           0.5 * std::log(2.0 * M_PI);
  }
  double nn = n * n;
  if (n > 500.0) return (s0 - s1 / nn) / n;
  if (n > 80.0) return (s0 - (s1 - s2 / nn) / nn) / n;
  if (n > 35.0) return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n;
  return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

// x log(x/np) + np - x, evaluated by series when x is near np
double bd0(double x, double np) {
  if (std::fabs(x - np) < 0.1 * (x + np)) {
    double v = (x - np) / (x + np);
    double s = (x - np) * v;
    double ej = 2.0 * x * v;
    double v2 = v * v;
    for (int j = 1;; ++j) {
      ej *= v2;
      double s1 = s + ej / (2 * j + 1);
      if (s1 == s) return s1;
      s = s1;
    }
  }
  return x * std::log(x / np) + np - x;
}

}  // namespace

double poisson_log_pmf(double rate, std::uint64_t k) {
  if (rate == 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (k == 0) return -rate;
  double kd = static_cast<double>(k);
  return -stirlerr(kd) - bd0(kd, rate) - 0.5 * std::log(2.0 * M_PI * kd);
}

namespace {

// pmf values of Poisson(rate) on a window [lo, hi] chosen so that the mass
// outside is < tol on each side. Uses the Chernoff bounds
// P(Poi-l >= x) <= exp(-x^2/(2(l+x))), P(Poi-l <= -x) <= exp(-x^2/(2l)).
struct PoissonWindow {
  std::uint64_t lo = 0;
  std::vector<double> pmf;  // pmf[i] = P(Poi = lo + i)
  std::vector<double> cdf;  // cdf[i] = P(Poi <= lo + i), clipped to window
};

PoissonWindow poisson_window(double rate, double tol) {
  PoissonWindow w;
  if (rate == 0.0) {
    w.pmf = {1.0};
    w.cdf = {1.0};
    return w;
  }
  double sd = std::sqrt(rate);
  double down = 12.0 * sd + 30.0;
  while (down < rate && std::exp(-down * down / (2.0 * rate)) >= tol) down += 16.0;
  double up = 12.0 * sd + 30.0;
  while (std::exp(-up * up / (2.0 * (rate + up))) >= tol) up += 16.0;
  w.lo = static_cast<std::uint64_t>(std::max(0.0, std::floor(rate - down)));
  std::uint64_t hi = static_cast<std::uint64_t>(std::ceil(rate + up));
  w.pmf.resize(hi - w.lo + 1);
  w.cdf.resize(w.pmf.size());
  double run = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < w.pmf.size(); ++i) {
    w.pmf[i] = std::exp(poisson_log_pmf(rate, w.lo + i));
    double y = w.pmf[i] - comp;
    double t = run + y;
    comp = (t - run) - y;
    run = t;
    w.cdf[i] = run;
  }
  return w;
}

}  // namespace

PoissonOrder poisson_compare(double mu, double lambda, double tol) {
  if (!(mu >= 0.0) || !(lambda >= 0.0))
    throw std::invalid_argument("poisson_compare: rates must be >= 0");
  if (!(tol > 0.0)) throw std::invalid_argument("poisson_compare: tol must be > 0");
  PoissonWindow wx = poisson_window(mu, tol);
  PoissonWindow wy = poisson_window(lambda, tol);
  std::uint64_t y_hi = wy.lo + wy.pmf.size() - 1;

  auto cdf_y = [&](std::int64_t j) -> double {  // P(Y <= j)
    if (j < static_cast<std::int64_t>(wy.lo)) return 0.0;
    if (j > static_cast<std::int64_t>(y_hi)) return 1.0;
    return wy.cdf[static_cast<std::size_t>(j - static_cast<std::int64_t>(wy.lo))];
  };

  double p_gt = 0.0, gt_comp = 0.0;
  double p_eq = 0.0, eq_comp = 0.0;
  for (std::size_t i = 0; i < wx.pmf.size(); ++i) {
    std::uint64_t k = wx.lo + i;
    double term = wx.pmf[i] * cdf_y(static_cast<std::int64_t>(k) - 1);
    double y = term - gt_comp;
    double t = p_gt + y;
    gt_comp = (t - p_gt) - y;
    p_gt = t;
    if (k >= wy.lo && k <= y_hi) {
      double e = wx.pmf[i] * wy.pmf[k - wy.lo];
      double y2 = e - eq_comp;
      double t2 = p_eq + y2;
      eq_comp = (t2 - p_eq) - y2;
      p_eq = t2;
    }
  }
  return {p_gt, p_eq};
}

namespace {

// group identical (p_i, q_i) pairs so structured instances cost O(distinct)
std::map<std::pair<double, double>, double> pair_multiplicities(
    const DiscretePmf& p, const DiscretePmf& q) {
  if (p.size() != q.size())
    throw std::invalid_argument("expected_sep: alphabet size mismatch");
  std::map<std::pair<double, double>, double> groups;
  for (std::size_t i = 0; i < p.size(); ++i) groups[{p[i], q[i]}] += 1.0;
  return groups;
}

}  // namespace

double expected_sep_directional(const DiscretePmf& p, const DiscretePmf& q,
                                double n, Direction dir, double tol) {
  if (!(n >= 0.0)) throw std::invalid_argument("expected_sep: n must be >= 0");
  double sum = 0.0, comp = 0.0;
  for (const auto& [pq, mult] : pair_multiplicities(p, q)) {
    auto [pi, qi] = pq;
    if (pi == qi) continue;  // zero weight regardless of the order probability
    double prob = dir == Direction::Greater
                      ? poisson_compare(n * pi, n * qi, tol).p_gt
                      : poisson_compare(n * qi, n * pi, tol).p_gt;
    double term = mult * (pi - qi) * prob;
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double expected_sep_half(const DiscretePmf& p, const DiscretePmf& q, double n,
                         double tol) {
  if (!(n >= 0.0)) throw std::invalid_argument("expected_sep: n must be >= 0");
  double sum = 0.0, comp = 0.0;
  for (const auto& [pq, mult] : pair_multiplicities(p, q)) {
    auto [pi, qi] = pq;
    if (pi == qi) continue;
    PoissonOrder o = poisson_compare(n * pi, n * qi, tol);
    double term = mult * (pi - qi) * (o.p_gt + 0.5 * o.p_eq);
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double lemma_e_lower_ratio(double mu, double lambda, double tol) {
  if (!(mu >= lambda) || !(lambda >= 0.0))
    throw std::invalid_argument("lemma_e_lower_ratio: need mu >= lambda >= 0");
  if (mu == lambda)
    throw std::invalid_argument("lemma_e_lower_ratio: mu = lambda gives 0/0");
  PoissonOrder o = poisson_compare(mu, lambda, tol);
  double lhs = o.p_gt + 0.5 * o.p_eq - 0.5;
  double rhs = std::min((mu - lambda) / std::sqrt(lambda + 1.0), 1.0);
  return lhs / rhs;
}

double BalancedClassifier::label0_mass(const DiscretePmf& p) const {
  return p.mass(hard_set) + boundary_prob * p.mass(boundary_set);
}

namespace {

BalancedClassifier sweep_classifier(const DiscretePmf& p, const DiscretePmf& q) {
  // assumes (p+q)-mass of {p_i >= q_i} is >= 1; sweeps
  // E_t = {i : (p_i-q_i)/(p_i+q_i) >= t} over realized ratio values
  std::size_t k = p.size();
  std::vector<double> ratio(k, -2.0);
  for (std::size_t i = 0; i < k; ++i) {
    double s = p[i] + q[i];
    if (s > 0.0) ratio[i] = (p[i] - q[i]) / s;
  }
  std::vector<double> values;
  for (double r : ratio)
    if (r >= 0.0 && r <= 1.0) values.push_back(r);
  std::sort(values.begin(), values.end(), std::greater<>());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  auto et_mass = [&](double t) {
    double m = 0.0;
    for (std::size_t i = 0; i < k; ++i)
      if (ratio[i] >= t && ratio[i] >= -1.0) m += p[i] + q[i];
    return m;
  };

  double t_star = 0.0;
  for (double v : values) {
    if (et_mass(v) >= 1.0) {
      t_star = v;
      break;  // values are descending; the first admissible one is the max
    }
  }

  BalancedClassifier c;
  double hard_mass = 0.0, boundary_mass = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (p[i] + q[i] == 0.0) continue;
    if (ratio[i] > t_star) {
      c.hard_set.push_back(static_cast<std::uint32_t>(i));
      hard_mass += p[i] + q[i];
    } else if (ratio[i] == t_star) {
      c.boundary_set.push_back(static_cast<std::uint32_t>(i));
      boundary_mass += p[i] + q[i];
    }
  }
  if (boundary_mass > 0.0) {
    c.boundary_prob = std::clamp((1.0 - hard_mass) / boundary_mass, 0.0, 1.0);
  }
  return c;
}

BalancedClassifier complement_classifier(const BalancedClassifier& c,
                                         std::size_t k) {
  BalancedClassifier out;
  std::vector<bool> taken(k, false);
  for (std::uint32_t i : c.hard_set) taken[i] = true;
  for (std::uint32_t i : c.boundary_set) taken[i] = true;
  for (std::uint32_t i = 0; i < k; ++i)
    if (!taken[i]) out.hard_set.push_back(i);
  out.boundary_set = c.boundary_set;
  out.boundary_prob = 1.0 - c.boundary_prob;
  return out;
}

}  // namespace

BalancedClassifier balanced_classifier(const DiscretePmf& p, const DiscretePmf& q) {
  if (p.size() != q.size())
    throw std::invalid_argument("balanced_classifier: alphabet size mismatch");
  std::size_t k = p.size();
  if (tv_distance(p, q) == 0.0) {
    BalancedClassifier c;
    for (std::uint32_t i = 0; i < k; ++i) c.boundary_set.push_back(i);
    c.boundary_prob = 0.5;
    return c;
  }
  // (p+q)({p >= q}) = mass of E_0 including ties; at least one of the two
  // orientations has E_0 mass >= 1, which the sweep requires
  double e_mass = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    if (p[i] >= q[i]) e_mass += p[i] + q[i];
  if (e_mass >= 1.0) return sweep_classifier(p, q);
  // otherwise sweep with the roles swapped and complement the labels
  return complement_classifier(sweep_classifier(q, p), k);
}

double exact_cat_error(double p_mass, double q_mass, std::uint64_t n,
                       double threshold) {
  if (n == 0 || n > 40)
    throw std::invalid_argument("exact_cat_error: enumeration budget is 1 <= n <= 40");
  if (!(p_mass >= 0.0 && p_mass <= 1.0 && q_mass >= 0.0 && q_mass <= 1.0))
    throw std::invalid_argument("exact_cat_error: masses must lie in [0,1]");
  auto binom = [n](double prob) {
    std::vector<double> pmf(n + 1);
    for (std::uint64_t a = 0; a <= n; ++a) {
      double la = std::lgamma(static_cast<double>(n) + 1.0) -
                  std::lgamma(static_cast<double>(a) + 1.0) -
                  std::lgamma(static_cast<double>(n - a) + 1.0);
      double lp = prob > 0.0 ? static_cast<double>(a) * std::log(prob) : (a == 0 ? 0.0 : -1e300);
      double lq = prob < 1.0 ? static_cast<double>(n - a) * std::log1p(-prob)
                             : (a == n ? 0.0 : -1e300);
      pmf[a] = std::exp(la + lp + lq);
    }
    return pmf;
  };
  std::vector<double> pa = binom(p_mass), pb = binom(q_mass);
  double err = 0.0;
  double nd = static_cast<double>(n);
  for (std::uint64_t a = 0; a <= n; ++a) {
    for (std::uint64_t b = 0; b <= n; ++b) {
      double diff = std::fabs(static_cast<double>(a) - static_cast<double>(b)) / nd;
      if (diff > threshold) err += pa[a] * pb[b];
    }
  }
  return err;
}

double exact_sep(std::span<const std::uint32_t> members, const DiscretePmf& p,
                 const DiscretePmf& q) {
  if (p.size() != q.size())
    throw std::invalid_argument("exact_sep: alphabet size mismatch");
  return p.mass(members) - q.mass(members);
}

double exact_tau(std::span<const std::uint32_t> members, const DiscretePmf& p,
                 const DiscretePmf& q) {
  if (p.size() != q.size())
    throw std::invalid_argument("exact_tau: alphabet size mismatch");
  double ps = p.mass(members);
  double qs = q.mass(members);
  return std::min(ps * (1.0 - ps), qs * (1.0 - qs));
}

}  // namespace cat
