#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jsrec/recovery.hpp"
#include "jsrec/types.hpp"

namespace jsrec::bench {

struct ExperimentSpec {
  int m = 40;
  int n = 100;
  int r = 9;
  int k_min = 1;
  int k_max = 20;
  std::optional<double> snr_db = 40.0;
  Ensemble ensemble = Ensemble::zero_mean;
  int trials = 500;
  std::vector<Algorithm> algorithms;
  std::uint64_t base_seed = 2012;
  NoiseCalibration calibration = NoiseCalibration::measurement;
  /// Worker threads; 0 = hardware concurrency. JSREC_THREADS caps either way.
  int threads = 0;
};

/// fig1a: zero-mean Gaussian sensing matrices; fig1b: unit-mean (poor RIP).
/// Both use m=40, n=100, r=9, k=1..20, 40 dB and the four compared algorithms.
ExperimentSpec preset(std::string_view name);

/// Throws precondition_error when the spec is unusable.
void validate(const ExperimentSpec& spec);

struct CurvePoint {
  std::string algorithm;
  int k = 0;
  int trials = 0;
  int successes = 0;
  int errors = 0;  // trials where the algorithm threw; counted as failures
  double rate = 0.0;
  double ci95 = 0.0;  // 1.96 * binomial standard error

  double std_error() const;
};

struct RecoveryCurve {
  ExperimentSpec spec;
  std::vector<CurvePoint> points;  // algorithm-major, k ascending
  std::vector<std::string> error_log;  // first few algorithm errors, for diagnostics

  const CurvePoint& at(const std::string& algorithm, int k) const;
};

/// Paired Monte Carlo: every algorithm sees the same instance for each
/// (k, trial), generated from derive_seed(base_seed, {k, trial}). Success is
/// exact equality of the estimated and true supports. Results do not depend
/// on the number of threads or on scheduling.
RecoveryCurve run_experiment(const ExperimentSpec& spec);

/// Seed of the (k, trial) instance.
std::uint64_t instance_seed(std::uint64_t base_seed, int k, int trial);

/// CSV with header `algorithm,k,trials,successes,rate,ci95`, preceded by the
/// spec as '#' comment lines.
void write_csv(std::ostream& os, const RecoveryCurve& curve);

/// One two-column `k rate` file per algorithm, named <algorithm>.dat.
void write_gnuplot(const std::filesystem::path& dir, const RecoveryCurve& curve);

/// Effective worker count for a request (0 = auto), after the JSREC_THREADS cap.
int worker_count(int requested);

// ---------------------------------------------------------------------------
// Empirical checks of the random-matrix and chi-squared facts behind the
// sample-count analysis.

struct RatioStats {
  double ratio_mean;
  double ratio_sd;
};

/// Statistics over `trials` of max_{i<=n_vars} Z_i / (2 ln n_vars), Z_i ~ chi^2(r_dof).
RatioStats empirical_chi_max(int n_vars, int r_dof, int trials, std::uint64_t seed = 7);

/// Sup-distance between the pooled empirical CDF of the squared singular
/// values of `trials` m x k N(0, 1/m) matrices and the Marchenko-Pastur CDF
/// with gamma = sqrt(k/m).
double empirical_mp(int m, int k, int trials, std::uint64_t seed = 11);

struct LowerSingularSum {
  double empirical_mean;  // mean over trials of (sum of r smallest sigma^2) / k
  double limit;           // quadrature value of the large-system limit
  double bound;           // (r/m)(1/gamma - 1)^2 + alpha gamma F(alpha)
  int r;
};

LowerSingularSum empirical_lower_singular_sum(int m, int k, double r_frac, int trials, std::uint64_t seed = 13);

/// Fraction of `draws` chi^2(r_dof) samples above `upper` and below `lower`.
struct TailFrequencies {
  double above;
  double below;
};
TailFrequencies empirical_chi_tails(int r_dof, double lower, double upper, long draws, std::uint64_t seed = 17);

}  // namespace jsrec::bench
