#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "jsrec/asymptotics.hpp"
#include "jsrec/bench.hpp"
#include "jsrec/error.hpp"
#include "jsrec/mmv.hpp"
#include "jsrec/recovery.hpp"

namespace py = pybind11;
using namespace jsrec;

namespace {

RecoveryOptions options(std::optional<double> rank_tol, std::optional<int> spark) {
  RecoveryOptions o;
  o.rank_tol = rank_tol;
  o.spark = spark;
  return o;
}

py::dict partial_dict(const PartialSupport& p) {
  py::dict d;
  d["indices"] = p.indices;
  d["scores"] = p.scores;
  return d;
}

std::map<int, double> score_map(const std::vector<IndexScore>& scores) {
  std::map<int, double> out;
  for (const auto& s : scores) out[s.index] = s.score;
  return out;
}

NoiseCalibration parse_calibration(const std::string& s) {
  if (s == "measurement") return NoiseCalibration::measurement;
  if (s == "signal") return NoiseCalibration::signal;
  throw precondition_error("calibration must be 'measurement' or 'signal'");
}

}  // namespace

PYBIND11_MODULE(_jsrec, m) {
  m.doc() = "Joint sparse recovery: instance generation, recovery algorithms and asymptotic bounds";

  py::register_exception<precondition_error>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<recovery_error>(m, "RecoveryError", PyExc_RuntimeError);

  m.def(
      "generate_instance",
      [](int m_, int n, int k, int r, std::optional<double> snr_db, const std::string& ensemble, std::uint64_t seed,
         const std::string& calibration) {
        InstanceSpec spec{m_, n, k, r, snr_db, parse_ensemble(ensemble), seed, parse_calibration(calibration)};
        const NoisyInstance inst = generate_instance(spec);
        py::dict d;
        d["A"] = inst.A.entries;
        d["X"] = inst.X.entries;
        d["Y"] = inst.Y;
        d["support"] = inst.S.indices();
        d["noise_std"] = inst.noise_std;
        return d;
      },
      py::arg("m") = 40, py::arg("n") = 100, py::arg("k") = 5, py::arg("r") = 9, py::arg("snr_db") = 40.0,
      py::arg("ensemble") = "zeromean", py::arg("seed") = 1, py::arg("calibration") = "measurement",
      "Seeded random MMV instance; snr_db=None gives noiseless measurements.");

  m.def(
      "canonicalize",
      [](const Matrix& Y, std::optional<double> rank_tol, std::optional<int> max_rank) {
        const CanonicalProblem c = rank_tol ? canonicalize(Y, *rank_tol, max_rank)
                                            : canonicalize(Y, default_rank_tol(int(Y.rows()), int(Y.cols())), max_rank);
        py::dict d;
        d["B"] = c.B;
        d["r_eff"] = c.r_eff;
        d["transform"] = c.transform;
        d["basis"] = c.basis;
        d["singular_values"] = c.singular_values;
        return d;
      },
      py::arg("Y"), py::arg("rank_tol") = py::none(), py::arg("max_rank") = py::none());

  m.def("spark", &spark_bruteforce, py::arg("A"), "Exact spark by exhaustive rank tests (small matrices only).");

  m.def(
      "recover",
      [](const std::string& algorithm, const Matrix& A, const Matrix& Y, int k, std::optional<double> rank_tol,
         std::optional<int> spark) {
        const SupportEstimate est = run_algorithm(parse_algorithm(algorithm), A, Y, k, options(rank_tol, spark));
        py::dict d;
        d["support"] = est.support.indices();
        d["partial"] = partial_dict(est.partial);
        d["criterion_values"] = est.criterion_values;
        d["fit_values"] = est.fit_values;
        return d;
      },
      py::arg("algorithm"), py::arg("A"), py::arg("Y"), py::arg("k"), py::arg("rank_tol") = py::none(),
      py::arg("spark") = py::none(),
      "Run a recovery algorithm by tag: music, somp, ssomp, thresh2, cs_music, sa_music, cs_music_optimized "
      "(hybrids accept a '+<step1>' suffix).");

  m.def(
      "somp", [](const Matrix& A, const Matrix& Y, int steps) { return partial_dict(somp(A, Y, steps)); },
      py::arg("A"), py::arg("Y"), py::arg("steps"));
  m.def(
      "subspace_somp",
      [](const Matrix& A, const Matrix& Y, int steps, bool shrink) {
        return partial_dict(
            subspace_somp(A, Y, steps, {}, shrink ? CollapsePolicy::shrink : CollapsePolicy::raise));
      },
      py::arg("A"), py::arg("Y"), py::arg("steps"), py::arg("shrink") = false);
  m.def(
      "two_thresholding",
      [](const Matrix& A, const Matrix& Y, int count) { return partial_dict(two_thresholding(A, Y, count)); },
      py::arg("A"), py::arg("Y"), py::arg("count"));

  m.def(
      "generalized_music_stats",
      [](const Matrix& A, const Matrix& B, const std::vector<int>& partial) {
        return score_map(generalized_music_stats(A, B, PartialSupport{partial, {}}));
      },
      py::arg("A"), py::arg("B"), py::arg("partial"), "eta(j) for every j outside the partial support.");
  m.def(
      "subspace_fit_stats",
      [](const Matrix& A, const Matrix& B, const std::vector<int>& candidates) {
        return score_map(subspace_fit_stats(A, B, candidates));
      },
      py::arg("A"), py::arg("B"), py::arg("candidates"), "zeta(j) for every candidate j.");

  // -------------------------------------------------------------------------
  namespace as = jsrec::asymptotics;

  m.def("mp_density", &as::mp_density, py::arg("x"), py::arg("gamma"));
  m.def(
      "mp_cdf", [](double x, double gamma) { return as::MpMeasure(gamma).cdf(x); }, py::arg("x"), py::arg("gamma"));
  m.def("t1_of_alpha", &as::t1_of_alpha, py::arg("alpha"));
  m.def("big_F", &as::big_F, py::arg("alpha"));
  m.def(
      "somp_sample_bound",
      [](int k, int n, int r, double delta, const std::string& regime, std::optional<double> alpha) {
        as::SompRegime reg;
        if (regime == "fixed") reg = as::SompRegime::fixed_r;
        else if (regime == "proportional") reg = as::SompRegime::proportional_r;
        else throw precondition_error("regime must be 'fixed' or 'proportional'");
        return as::somp_sample_bound(k, n, r, delta, reg, alpha);
      },
      py::arg("k"), py::arg("n"), py::arg("r"), py::arg("delta") = 0.0, py::arg("regime") = "fixed",
      py::arg("alpha") = py::none());
  m.def("binary_entropy", &as::binary_entropy, py::arg("p"));
  m.def("entropy_pair", &as::entropy_pair, py::arg("epsilon"), py::arg("alpha"));
  m.def(
      "ml_sufficient",
      [](double epsilon, double rho, double alpha, int r, double snr) {
        as::BoundInputs in;
        in.epsilon = epsilon;
        in.rho = rho;
        in.alpha = alpha;
        in.r = r;
        in.snr = snr;
        const as::MlSufficientResult res = as::ml_sufficient(in);
        py::dict d;
        d["snr_ok"] = res.snr_ok;
        d["rho_threshold"] = res.rho_threshold;
        d["satisfied"] = res.satisfied;
        d["maximizer"] = res.maximizer;
        d["note"] = res.note;
        return d;
      },
      py::arg("epsilon") = 0.1, py::arg("rho") = 0.4, py::arg("alpha") = 0.2, py::arg("r") = 1, py::arg("snr") = 10.0,
      "Sufficient sampling ratio for ML support recovery with a flat signal profile.");
  m.def(
      "ml_necessary_rho",
      [](double epsilon, double alpha, std::vector<double> kappa, double sigma_w, double mi_rate) {
        as::BoundInputs in;
        in.epsilon = epsilon;
        in.alpha = alpha;
        in.r = static_cast<int>(kappa.size());
        in.kappa = std::move(kappa);
        in.sigma_w = sigma_w;
        return as::ml_necessary_rho(in, mi_rate);
      },
      py::arg("epsilon"), py::arg("alpha"), py::arg("kappa"), py::arg("sigma_w") = 1.0, py::arg("mi_rate") = 0.0);
  m.def(
      "chi_tail_bounds",
      [](int r, double eps) {
        const as::ChiTailBounds b = as::chi_tail_bounds(r, eps);
        return py::make_tuple(b.upper, b.lower);
      },
      py::arg("r"), py::arg("eps"), "(upper, lower) tail bounds for chi-squared with r degrees of freedom.");

  // -------------------------------------------------------------------------
  m.def(
      "run_experiment",
      [](const std::string& preset, std::optional<int> trials, std::optional<int> k_min, std::optional<int> k_max,
         std::optional<std::vector<std::string>> algorithms, std::optional<std::uint64_t> seed, int threads) {
        bench::ExperimentSpec spec = bench::preset(preset);
        if (trials) spec.trials = *trials;
        if (k_min) spec.k_min = *k_min;
        if (k_max) spec.k_max = *k_max;
        if (seed) spec.base_seed = *seed;
        if (algorithms) {
          spec.algorithms.clear();
          for (const auto& a : *algorithms) spec.algorithms.push_back(parse_algorithm(a));
        }
        spec.threads = threads;
        bench::RecoveryCurve curve;
        {
          py::gil_scoped_release release;
          curve = bench::run_experiment(spec);
        }
        py::list rows;
        for (const auto& p : curve.points) {
          py::dict d;
          d["algorithm"] = p.algorithm;
          d["k"] = p.k;
          d["trials"] = p.trials;
          d["successes"] = p.successes;
          d["rate"] = p.rate;
          d["ci95"] = p.ci95;
          rows.append(d);
        }
        std::ostringstream csv;
        bench::write_csv(csv, curve);
        return py::make_tuple(rows, csv.str());
      },
      py::arg("preset") = "fig1a", py::arg("trials") = py::none(), py::arg("k_min") = py::none(),
      py::arg("k_max") = py::none(), py::arg("algorithms") = py::none(), py::arg("seed") = py::none(),
      py::arg("threads") = 0, "Paired Monte Carlo recovery curves; returns (rows, csv_text).");
}
