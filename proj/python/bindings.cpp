// Python bindings for the core operations: distribution models and samplers,
// separating-set constructions, the classifier-accuracy pipelines, and the
// exact small-instance oracle.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "cat/binning.hpp"
#include "cat/counts.hpp"
#include "cat/engine.hpp"
#include "cat/gaussian_mean.hpp"
#include "cat/harness.hpp"
#include "cat/oracle.hpp"
#include "cat/pmf.hpp"
#include "cat/rng.hpp"
#include "cat/sep_discrete.hpp"
#include "cat/sep_gaussian.hpp"

namespace py = pybind11;
using namespace cat;

namespace {

TestConfig make_config(const std::string& problem, const std::string& dist_class,
                       double eps, double delta, const py::kwargs& kw) {
  TestConfig cfg;
  cfg.problem = problem_from_string(problem);
  cfg.dist_class = class_from_string(dist_class);
  cfg.eps = eps;
  cfg.delta = delta;
  for (auto item : kw) {
    std::string key = py::cast<std::string>(item.first);
    double v = py::cast<double>(item.second);
    if (key == "threshold_const") cfg.threshold_const = v;
    else if (key == "tau_bar") cfg.tau_bar = v;
    else if (key == "tau_const") cfg.tau_const = v;
    else if (key == "c0") cfg.c0 = v;
    else if (key == "c1") cfg.c1 = v;
    else if (key == "level_const") cfg.level_const = v;
    else if (key == "res_const") cfg.res_const = v;
    else if (key == "smoothness") cfg.smoothness = v;
    else if (key == "beta") cfg.beta = v;
    else if (key == "dim") cfg.dim = static_cast<std::uint32_t>(v);
    else if (key == "poissonize_frac") cfg.poissonize_frac = v;
    else if (key == "construct_frac") cfg.construct_frac = v;
    else throw std::invalid_argument("unknown config key: " + key);
  }
  return cfg;
}

py::dict outcome_dict(const TestOutcome& out) {
  py::dict d;
  d["verdict"] = to_string(out.verdict);
  d["statistic"] = out.statistic;
  d["threshold"] = out.threshold;
  d["sep_tag"] = out.sep.tag;
  if (out.sep.discrete) d["sep_set"] = out.sep.discrete->members;
  if (out.sep.halfspace) {
    py::dict hs;
    hs["weights"] = out.sep.halfspace->weights;
    hs["offset"] = out.sep.halfspace->offset;
    hs["truncation"] = out.sep.halfspace->truncation;
    hs["degenerate"] = out.sep.halfspace->degenerate;
    d["halfspace"] = hs;
  }
  return d;
}

Matrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw std::invalid_argument("matrix: no rows");
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols)
      throw std::invalid_argument("matrix: ragged rows");
    for (std::size_t c = 0; c < m.cols; ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "classifier-accuracy testing: distribution models, separating "
            "sets, pipelines, and the exact oracle";

  py::register_exception<std::invalid_argument>(m, "InvalidArgument",
                                                PyExc_ValueError);

  py::class_<DiscretePmf>(m, "DiscretePmf")
      .def(py::init<std::vector<double>>())
      .def("__len__", &DiscretePmf::size)
      .def("__getitem__",
           [](const DiscretePmf& p, std::size_t i) {
             if (i >= p.size()) throw py::index_error();
             return p[i];
           })
      .def_property_readonly("probs", &DiscretePmf::probs)
      .def("mass", [](const DiscretePmf& p, const std::vector<std::uint32_t>& b) {
        return p.mass(b);
      });

  m.def("make_uniform", &make_uniform, py::arg("k"));
  m.def(
      "make_paninski_pair",
      [](std::size_t k, double eps, const std::vector<int>& signs) {
        return make_paninski_pair(k, eps, signs);
      },
      py::arg("k"), py::arg("eps"), py::arg("signs"));
  m.def("make_negsep_pair", &make_negsep_pair, py::arg("k"));
  m.def("tv_distance", &tv_distance, py::arg("p"), py::arg("q"));
  m.def("bounded_by", &bounded_by, py::arg("p"), py::arg("c_db"));

  py::class_<GaussianMean>(m, "GaussianMean")
      .def(py::init<std::vector<double>, double, double>(), py::arg("coeffs"),
           py::arg("smoothness"), py::arg("size_bound"))
      .def_property_readonly("coeffs", &GaussianMean::coeffs)
      .def_property_readonly("smoothness", &GaussianMean::smoothness)
      .def_property_readonly("size_bound", &GaussianMean::size_bound)
      .def("sobolev_norm_sq", &GaussianMean::sobolev_norm_sq)
      .def("l2_norm_sq", &GaussianMean::l2_norm_sq);

  m.def(
      "make_sobolev_signal",
      [](double s, double c_g, double eps, const std::vector<int>& signs,
         double c1, double c2) {
        return make_sobolev_signal(s, c_g, eps, signs, c1, c2);
      },
      py::arg("s"), py::arg("c_g"), py::arg("eps"), py::arg("signs"),
      py::arg("c1"), py::arg("c2"));

  // sampling; every function takes an explicit (seed, stream) pair
  m.def(
      "sample_poissonized",
      [](const DiscretePmf& p, double n, std::uint64_t seed,
         std::uint64_t stream) {
        Rng rng(RngState{seed, stream});
        return sample_poissonized(p, n, rng).counts;
      },
      py::arg("p"), py::arg("n"), py::arg("seed"), py::arg("stream") = 0);
  m.def(
      "sample_multinomial",
      [](const DiscretePmf& p, std::uint64_t n, std::uint64_t seed,
         std::uint64_t stream) {
        Rng rng(RngState{seed, stream});
        return sample_multinomial(p, n, rng).counts;
      },
      py::arg("p"), py::arg("n"), py::arg("seed"), py::arg("stream") = 0);
  m.def(
      "sample_symbols",
      [](const DiscretePmf& p, std::uint64_t n, std::uint64_t seed,
         std::uint64_t stream) {
        Rng rng(RngState{seed, stream});
        return sample_symbols(p, n, rng);
      },
      py::arg("p"), py::arg("n"), py::arg("seed"), py::arg("stream") = 0);
  m.def(
      "sample_gaussian_sequence",
      [](const GaussianMean& theta, std::size_t L, std::size_t n,
         std::uint64_t seed, std::uint64_t stream) {
        Rng rng(RngState{seed, stream});
        Matrix mat = sample_gaussian_sequence(theta, L, n, rng);
        std::vector<std::vector<double>> rows(mat.rows);
        for (std::size_t r = 0; r < mat.rows; ++r)
          rows[r].assign(mat.row(r).begin(), mat.row(r).end());
        return rows;
      },
      py::arg("theta"), py::arg("L"), py::arg("n"), py::arg("seed"),
      py::arg("stream") = 0);

  // separating sets over counts
  py::class_<DiscreteSepSet>(m, "DiscreteSepSet")
      .def_readonly("members", &DiscreteSepSet::members)
      .def("contains", &DiscreteSepSet::contains)
      .def_property_readonly("tag", &DiscreteSepSet::tag_string);

  auto counts_of = [](const std::vector<std::uint64_t>& c) {
    CountVector v;
    v.counts = c;
    for (std::uint64_t x : c) v.total += x;
    return v;
  };
  m.def(
      "sep_set_half",
      [counts_of](const std::vector<std::uint64_t>& x,
                  const std::vector<std::uint64_t>& y, std::uint64_t seed,
                  std::uint64_t stream) {
        Rng rng(RngState{seed, stream});
        return sep_set_half(counts_of(x), counts_of(y), rng);
      },
      py::arg("x"), py::arg("y"), py::arg("seed"), py::arg("stream") = 0);
  m.def(
      "sep_set_directional",
      [counts_of](const std::vector<std::uint64_t>& x,
                  const std::vector<std::uint64_t>& y, const std::string& dir) {
        return sep_set_directional(counts_of(x), counts_of(y),
                                   dir == "less" ? SepDirection::Less
                                                 : SepDirection::Greater);
      },
      py::arg("x"), py::arg("y"), py::arg("direction") = "greater");
  m.def(
      "select_better_of_two",
      [counts_of](const DiscreteSepSet& a, const DiscreteSepSet& b,
                  const std::vector<std::uint64_t>& hx,
                  const std::vector<std::uint64_t>& hy) {
        return select_better_of_two(a, b, counts_of(hx), counts_of(hy));
      },
      py::arg("a"), py::arg("b"), py::arg("holdout_x"), py::arg("holdout_y"));

  // gaussian halfspaces
  py::class_<GaussianHalfspace>(m, "GaussianHalfspace")
      .def_readonly("weights", &GaussianHalfspace::weights)
      .def_readonly("offset", &GaussianHalfspace::offset)
      .def_readonly("truncation", &GaussianHalfspace::truncation)
      .def_readonly("degenerate", &GaussianHalfspace::degenerate)
      .def("contains", [](const GaussianHalfspace& hs,
                          const std::vector<double>& z) { return hs.contains(z); });
  m.def("truncation_level", &truncation_level, py::arg("eps"), py::arg("s"),
        py::arg("c"));
  m.def(
      "gaussian_sep_set",
      [](const std::vector<double>& tx, const std::vector<double>& ty,
         std::uint32_t J) { return gaussian_sep_set(tx, ty, J); },
      py::arg("theta_hat_x"), py::arg("theta_hat_y"), py::arg("J"));
  m.def("halfspace_mass",
        py::overload_cast<const GaussianMean&, const GaussianHalfspace&>(
            &halfspace_mass),
        py::arg("theta"), py::arg("halfspace"));
  m.def("normal_cdf", &normal_cdf);

  // engine
  m.def("cat_threshold", &cat_threshold, py::arg("tau_bar"), py::arg("n"),
        py::arg("delta"), py::arg("c"));
  m.def(
      "cat_statistic",
      [](const DiscreteSepSet& s, const std::vector<std::uint32_t>& a,
         const std::vector<std::uint32_t>& b) { return cat_statistic(s, a, b); },
      py::arg("sep_set"), py::arg("a"), py::arg("b"));
  m.def(
      "run_two_sample_test",
      [](const std::vector<std::uint32_t>& x, const std::vector<std::uint32_t>& y,
         std::size_t k, const std::string& problem_class, double eps,
         double delta, std::uint64_t seed, const py::kwargs& kw) {
        TestConfig cfg = make_config("ts", problem_class, eps, delta, kw);
        return outcome_dict(run_two_sample_test(x, y, k, cfg, RngState{seed, 0}));
      },
      py::arg("x"), py::arg("y"), py::arg("k"), py::arg("dist_class"),
      py::arg("eps"), py::arg("delta"), py::arg("seed") = 1);
  m.def(
      "run_gof_test",
      [](const std::vector<std::uint32_t>& x, const DiscretePmf& p0,
         const std::string& problem_class, double eps, double delta,
         std::uint64_t seed, const py::kwargs& kw) {
        TestConfig cfg = make_config("gof", problem_class, eps, delta, kw);
        return outcome_dict(run_gof_test(x, p0, cfg, RngState{seed, 0}));
      },
      py::arg("x"), py::arg("p0"), py::arg("dist_class"), py::arg("eps"),
      py::arg("delta"), py::arg("seed") = 1);
  m.def(
      "run_lfht_test",
      [](const std::vector<std::uint32_t>& x, const std::vector<std::uint32_t>& y,
         const std::vector<std::uint32_t>& z, std::size_t k,
         const std::string& problem_class, double eps, double delta,
         std::uint64_t seed, const py::kwargs& kw) {
        TestConfig cfg = make_config("lfht", problem_class, eps, delta, kw);
        return outcome_dict(run_lfht_test(x, y, z, k, cfg, RngState{seed, 0}));
      },
      py::arg("x"), py::arg("y"), py::arg("z"), py::arg("k"),
      py::arg("dist_class"), py::arg("eps"), py::arg("delta"),
      py::arg("seed") = 1);
  m.def(
      "run_gof_test_gauss",
      [](const std::vector<std::vector<double>>& x, const GaussianMean& theta0,
         double eps, double delta, std::uint64_t seed, const py::kwargs& kw) {
        TestConfig cfg = make_config("gof", "gauss", eps, delta, kw);
        return outcome_dict(
            run_gof_test(matrix_from_rows(x), theta0, cfg, RngState{seed, 0}));
      },
      py::arg("x"), py::arg("theta0"), py::arg("eps"), py::arg("delta"),
      py::arg("seed") = 1);
  m.def(
      "run_two_sample_test_gauss",
      [](const std::vector<std::vector<double>>& x,
         const std::vector<std::vector<double>>& y, double eps, double delta,
         std::uint64_t seed, const py::kwargs& kw) {
        TestConfig cfg = make_config("ts", "gauss", eps, delta, kw);
        return outcome_dict(run_two_sample_test(matrix_from_rows(x),
                                                matrix_from_rows(y), cfg,
                                                RngState{seed, 0}));
      },
      py::arg("x"), py::arg("y"), py::arg("eps"), py::arg("delta"),
      py::arg("seed") = 1);

  // binning
  py::class_<GridSpec>(m, "GridSpec")
      .def_readonly("r", &GridSpec::r)
      .def_readonly("d", &GridSpec::d)
      .def_readonly("total_cells", &GridSpec::total_cells);
  m.def("choose_resolution", &choose_resolution, py::arg("eps"), py::arg("beta"),
        py::arg("c"), py::arg("d"));
  m.def(
      "grid_bin",
      [](const std::vector<double>& flat, std::size_t n_points,
         const GridSpec& g) { return grid_bin(flat, n_points, g).counts; },
      py::arg("points"), py::arg("n_points"), py::arg("grid"));

  // oracle
  m.def(
      "poisson_compare",
      [](double mu, double lambda, double tol) {
        PoissonOrder o = poisson_compare(mu, lambda, tol);
        return py::make_tuple(o.p_gt, o.p_eq);
      },
      py::arg("mu"), py::arg("lambda_"), py::arg("tol") = 1e-13);
  m.def(
      "expected_sep_directional",
      [](const DiscretePmf& p, const DiscretePmf& q, double n,
         const std::string& dir, double tol) {
        return expected_sep_directional(
            p, q, n, dir == "less" ? Direction::Less : Direction::Greater, tol);
      },
      py::arg("p"), py::arg("q"), py::arg("n"), py::arg("direction") = "greater",
      py::arg("tol") = 1e-13);
  m.def("expected_sep_half", &expected_sep_half, py::arg("p"), py::arg("q"),
        py::arg("n"), py::arg("tol") = 1e-13);
  m.def("lemma_e_lower_ratio", &lemma_e_lower_ratio, py::arg("mu"),
        py::arg("lambda_"), py::arg("tol") = 1e-13);
  py::class_<BalancedClassifier>(m, "BalancedClassifier")
      .def_readonly("hard_set", &BalancedClassifier::hard_set)
      .def_readonly("boundary_set", &BalancedClassifier::boundary_set)
      .def_readonly("boundary_prob", &BalancedClassifier::boundary_prob)
      .def("label0_mass", &BalancedClassifier::label0_mass);
  m.def("balanced_classifier", &balanced_classifier, py::arg("p"), py::arg("q"));
  m.def("exact_cat_error", &exact_cat_error, py::arg("p_mass"), py::arg("q_mass"),
        py::arg("n"), py::arg("threshold"));
  m.def(
      "exact_sep",
      [](const std::vector<std::uint32_t>& s, const DiscretePmf& p,
         const DiscretePmf& q) { return exact_sep(s, p, q); },
      py::arg("members"), py::arg("p"), py::arg("q"));
  m.def(
      "exact_tau",
      [](const std::vector<std::uint32_t>& s, const DiscretePmf& p,
         const DiscretePmf& q) { return exact_tau(s, p, q); },
      py::arg("members"), py::arg("p"), py::arg("q"));
}
