#include "cat/pmf.hpp"

#include <cmath>
#include <stdexcept>

namespace cat {

double kahan_sum(std::span<const double> xs) {
  double sum = 0.0, comp = 0.0;
  for (double x : xs) {
    double y = x - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

DiscretePmf::DiscretePmf(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("pmf: alphabet size must be >= 1");
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (!(probs_[i] >= 0.0)) {
      throw std::invalid_argument("pmf: negative entry at bin " + std::to_string(i));
    }
  }
  double total = kahan_sum(probs_);
  if (std::fabs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("pmf: entries sum to " + std::to_string(total) +
                                ", expected 1 within 1e-12");
  }
}

double DiscretePmf::mass(std::span<const std::uint32_t> bins) const {
  double sum = 0.0, comp = 0.0;
  for (std::uint32_t b : bins) {
    if (b >= probs_.size()) throw std::invalid_argument("pmf mass: bin out of range");
    double y = probs_[b] - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double DiscretePmf::max_prob() const {
  double m = 0.0;
  for (double p : probs_) m = std::max(m, p);
  return m;
}

DiscretePmf make_uniform(std::size_t k) {
  if (k == 0) throw std::invalid_argument("make_uniform: k must be >= 1");
  return DiscretePmf(std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

std::pair<DiscretePmf, DiscretePmf> make_paninski_pair(
    std::size_t k, double eps, std::span<const int> signs) {
  if (k == 0 || k % 2 != 0)
    throw std::invalid_argument("make_paninski_pair: k must be even and positive");
  if (!(eps > 0.0) || eps > 0.5)
    throw std::invalid_argument("make_paninski_pair: eps must lie in (0, 1/2]");
  if (signs.size() != k / 2)
    throw std::invalid_argument("make_paninski_pair: need k/2 signs");
  std::vector<double> q(k);
  double base = 1.0 / static_cast<double>(k);
  for (std::size_t i = 0; i < k; ++i) {
    double s = signs[i / 2] >= 0 ? 1.0 : -1.0;
    double parity = (i % 2 == 0) ? -1.0 : 1.0;  // bins of a pair get opposite bumps
    q[i] = (1.0 + 2.0 * eps * s * parity) * base;
  }
  return {make_uniform(k), DiscretePmf(std::move(q))};
}

std::pair<DiscretePmf, DiscretePmf> make_negsep_pair(std::size_t k) {
  if (k == 0) throw std::invalid_argument("make_negsep_pair: k must be >= 1");
  std::vector<double> p(3 * k), q(3 * k, 0.0);
  double kk = static_cast<double>(k);
  for (std::size_t i = 0; i < 3 * k; ++i) {
    p[i] = (i < k) ? 1.0 / (2.0 * kk) : 1.0 / (4.0 * kk);
    if (i < k) q[i] = 1.0 / kk;
  }
  return {DiscretePmf(std::move(p)), DiscretePmf(std::move(q))};
}

double tv_distance(const DiscretePmf& p, const DiscretePmf& q) {
  if (p.size() != q.size())
    throw std::invalid_argument("tv_distance: alphabet size mismatch");
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double y = std::fabs(p[i] - q[i]) - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return 0.5 * sum;
}

bool bounded_by(const DiscretePmf& p, double c_db) {
  return p.max_prob() <= c_db / static_cast<double>(p.size());
}

}  // namespace cat
