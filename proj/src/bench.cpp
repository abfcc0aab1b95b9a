#include "jsrec/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include "jsrec/error.hpp"
#include "jsrec/mmv.hpp"
#include "jsrec/seed.hpp"
#include "parallel.hpp"

namespace jsrec::bench {

using detail::require;

ExperimentSpec preset(std::string_view name) {
  ExperimentSpec spec;
  spec.algorithms = {parse_algorithm("cs_music_optimized"), parse_algorithm("cs_music"), parse_algorithm("sa_music"),
                     parse_algorithm("somp")};
  if (name == "fig1a") {
    spec.ensemble = Ensemble::zero_mean;
  } else if (name == "fig1b") {
    spec.ensemble = Ensemble::unit_mean;
  } else {
    detail::fail_precondition("unknown preset '" + std::string(name) + "' (expected fig1a or fig1b)");
  }
  return spec;
}

void validate(const ExperimentSpec& spec) {
  require(spec.m > 1 && spec.m < spec.n, "experiment needs 1 < m < n");
  require(spec.r >= 1, "experiment needs r >= 1");
  require(spec.k_min >= 1 && spec.k_max <= spec.m - 1 && spec.k_min <= spec.k_max,
          "k range must be a nonempty subrange of [1, m-1]");
  require(spec.trials >= 1, "trials must be at least 1");
  require(!spec.algorithms.empty(), "no algorithms selected");
  require(!spec.snr_db || std::isfinite(*spec.snr_db), "snr_db must be finite");
  require(spec.threads >= 0, "threads must be nonnegative");
}

double CurvePoint::std_error() const {
  return trials > 0 ? std::sqrt(rate * (1.0 - rate) / trials) : 0.0;
}

const CurvePoint& RecoveryCurve::at(const std::string& algorithm, int k) const {
  for (const auto& p : points)
    if (p.algorithm == algorithm && p.k == k) return p;
  throw precondition_error("no curve point for " + algorithm + " at k=" + std::to_string(k));
}

std::uint64_t instance_seed(std::uint64_t base_seed, int k, int trial) {
  return derive_seed(base_seed, {static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(trial)});
}

int worker_count(int requested) {
  int workers = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  if (const char* env = std::getenv("JSREC_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) workers = std::min(workers, cap);
  }
  return workers;
}

RecoveryCurve run_experiment(const ExperimentSpec& spec) {
  validate(spec);
  const int n_k = spec.k_max - spec.k_min + 1;
  const int n_alg = static_cast<int>(spec.algorithms.size());
  const std::size_t items = static_cast<std::size_t>(n_k) * static_cast<std::size_t>(spec.trials);

  // 0 = failure, 1 = success, 2 = error; one slot per (item, algorithm).
  std::vector<unsigned char> outcome(items * static_cast<std::size_t>(n_alg), 0);
  std::vector<std::string> first_error(items * static_cast<std::size_t>(n_alg));

  detail::parallel_for(items, worker_count(spec.threads), [&](std::size_t item) {
    const int k = spec.k_min + static_cast<int>(item / static_cast<std::size_t>(spec.trials));
    const int t = static_cast<int>(item % static_cast<std::size_t>(spec.trials));
    InstanceSpec is;
    is.m = spec.m;
    is.n = spec.n;
    is.k = k;
    is.r = spec.r;
    is.snr_db = spec.snr_db;
    is.ensemble = spec.ensemble;
    is.seed = instance_seed(spec.base_seed, k, t);
    is.calibration = spec.calibration;
    const NoisyInstance inst = generate_instance(is);
    for (int a = 0; a < n_alg; ++a) {
      const std::size_t slot = item * static_cast<std::size_t>(n_alg) + static_cast<std::size_t>(a);
      try {
        const SupportEstimate est = run_algorithm(spec.algorithms[static_cast<std::size_t>(a)], inst.A.entries, inst.Y, k);
        outcome[slot] = est.support == inst.S ? 1 : 0;
      } catch (const std::exception& e) {
        outcome[slot] = 2;
        first_error[slot] = e.what();
      }
    }
  });

  RecoveryCurve curve;
  curve.spec = spec;
  constexpr std::size_t kMaxLogged = 20;
  for (int a = 0; a < n_alg; ++a) {
    const std::string name = spec.algorithms[static_cast<std::size_t>(a)].name();
    for (int ki = 0; ki < n_k; ++ki) {
      CurvePoint p;
      p.algorithm = name;
      p.k = spec.k_min + ki;
      p.trials = spec.trials;
      for (int t = 0; t < spec.trials; ++t) {
        const std::size_t item = static_cast<std::size_t>(ki) * static_cast<std::size_t>(spec.trials) + static_cast<std::size_t>(t);
        const std::size_t slot = item * static_cast<std::size_t>(n_alg) + static_cast<std::size_t>(a);
        if (outcome[slot] == 1) ++p.successes;
        if (outcome[slot] == 2) {
          ++p.errors;
          if (curve.error_log.size() < kMaxLogged)
            curve.error_log.push_back(name + " k=" + std::to_string(p.k) + " trial=" + std::to_string(t) + ": " +
                                      first_error[slot]);
        }
      }
      p.rate = static_cast<double>(p.successes) / p.trials;
      p.ci95 = 1.96 * p.std_error();
      curve.points.push_back(std::move(p));
    }
  }
  return curve;
}

void write_csv(std::ostream& os, const RecoveryCurve& curve) {
  const ExperimentSpec& s = curve.spec;
  char buf[64];
  os << "# jsrec bench: exact support recovery rates (paired trials)\n";
  os << "# m=" << s.m << "\n# n=" << s.n << "\n# r=" << s.r << "\n# k_min=" << s.k_min << "\n# k_max=" << s.k_max
     << '\n';
  if (s.snr_db) {
    std::snprintf(buf, sizeof buf, "%g", *s.snr_db);
    os << "# snr_db=" << buf << '\n';
  } else {
    os << "# snr_db=none\n";
  }
  os << "# noise_calibration=" << (s.calibration == NoiseCalibration::measurement ? "measurement" : "signal") << '\n';
  os << "# ensemble=" << ensemble_name(s.ensemble) << "\n# trials=" << s.trials << "\n# base_seed=" << s.base_seed
     << '\n';
  os << "# algorithms=";
  for (std::size_t i = 0; i < s.algorithms.size(); ++i) os << (i ? ";" : "") << s.algorithms[i].name();
  os << '\n';
  os << "# ci95=1.96*sqrt(rate*(1-rate)/trials)\n";
  int total_errors = 0;
  for (const auto& p : curve.points) total_errors += p.errors;
  os << "# algorithm_errors=" << total_errors << '\n';
  os << "algorithm,k,trials,successes,rate,ci95\n";
  for (const auto& p : curve.points) {
    std::snprintf(buf, sizeof buf, "%.6f,%.6f", p.rate, p.ci95);
    os << p.algorithm << ',' << p.k << ',' << p.trials << ',' << p.successes << ',' << buf << '\n';
  }
}

void write_gnuplot(const std::filesystem::path& dir, const RecoveryCurve& curve) {
  std::filesystem::create_directories(dir);
  for (const auto& algo : curve.spec.algorithms) {
    const std::string name = algo.name();
    std::ofstream os(dir / (name + ".dat"));
    if (!os) throw std::runtime_error("cannot write gnuplot data for " + name);
    os << "# k rate\n";
    char buf[32];
    for (const auto& p : curve.points) {
      if (p.algorithm != name) continue;
      std::snprintf(buf, sizeof buf, "%.6f", p.rate);
      os << p.k << ' ' << buf << '\n';
    }
  }
}

}  // namespace jsrec::bench
