#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "jsrec/asymptotics.hpp"
#include "jsrec/bench.hpp"
#include "jsrec/error.hpp"
#include "jsrec/mmv.hpp"
#include "jsrec/seed.hpp"
#include "parallel.hpp"

namespace jsrec::bench {

using detail::require;

namespace {

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

// Ascending eigenvalues of A^T A, i.e. squared singular values of A.
Vector squared_singular_values(const Matrix& A) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(A.transpose() * A, Eigen::EigenvaluesOnly);
  return eig.eigenvalues();
}

}  // namespace

RatioStats empirical_chi_max(int n_vars, int r_dof, int trials, std::uint64_t seed) {
  require(n_vars >= 1000, "empirical_chi_max: n_vars must be at least 1000");
  require(r_dof >= 1, "empirical_chi_max: r must be positive");
  require(trials >= 1, "empirical_chi_max: trials must be positive");
  std::vector<double> ratios(static_cast<std::size_t>(trials));
  const double scale = 2.0 * std::log(static_cast<double>(n_vars));
  detail::parallel_for(ratios.size(), worker_count(0), [&](std::size_t t) {
    std::mt19937_64 rng(derive_seed(seed, {static_cast<std::uint64_t>(t)}));
    double best = 0.0;
    if (r_dof == 1) {
      std::normal_distribution<double> normal;
      for (int i = 0; i < n_vars; ++i) {
        const double z = normal(rng);
        best = std::max(best, z * z);
      }
    } else {
      std::chi_squared_distribution<double> chi(r_dof);
      for (int i = 0; i < n_vars; ++i) best = std::max(best, chi(rng));
    }
    ratios[t] = best / scale;
  });
  const double mean = mean_of(ratios);
  return {mean, sd_of(ratios, mean)};
}

double empirical_mp(int m, int k, int trials, std::uint64_t seed) {
  require(m >= 200, "empirical_mp: m must be at least 200");
  require(k >= 1 && k <= m, "empirical_mp: need 1 <= k <= m");
  require(trials >= 1, "empirical_mp: trials must be positive");
  std::vector<Vector> per_trial(static_cast<std::size_t>(trials));
  detail::parallel_for(per_trial.size(), worker_count(0), [&](std::size_t t) {
    const Matrix A = random_sensing_matrix(m, k, Ensemble::zero_mean, derive_seed(seed, {static_cast<std::uint64_t>(t)}));
    per_trial[t] = squared_singular_values(A);
  });
  std::vector<double> pooled;
  pooled.reserve(static_cast<std::size_t>(trials) * static_cast<std::size_t>(k));
  for (const auto& v : per_trial) pooled.insert(pooled.end(), v.data(), v.data() + v.size());
  std::sort(pooled.begin(), pooled.end());

  const asymptotics::MpMeasure mp(std::sqrt(static_cast<double>(k) / m));
  const double total = static_cast<double>(pooled.size());
  std::vector<double> dev(pooled.size());
  detail::parallel_for(pooled.size(), worker_count(0), [&](std::size_t i) {
    const double f = mp.cdf(pooled[i]);
    dev[i] = std::max(static_cast<double>(i + 1) / total - f, f - static_cast<double>(i) / total);
  });
  return *std::max_element(dev.begin(), dev.end());
}

LowerSingularSum empirical_lower_singular_sum(int m, int k, double r_frac, int trials, std::uint64_t seed) {
  require(k >= 1 && k <= m, "empirical_lower_singular_sum: need 1 <= k <= m");
  require(r_frac > 0.0 && r_frac <= 1.0, "empirical_lower_singular_sum: r_frac must lie in (0, 1]");
  require(trials >= 1, "empirical_lower_singular_sum: trials must be positive");
  const int r = static_cast<int>(std::floor(r_frac * k + 1e-9));
  require(r >= 1, "empirical_lower_singular_sum: floor(r_frac * k) must be at least 1");
  std::vector<double> sums(static_cast<std::size_t>(trials));
  detail::parallel_for(sums.size(), worker_count(0), [&](std::size_t t) {
    const Matrix A = random_sensing_matrix(m, k, Ensemble::zero_mean, derive_seed(seed, {static_cast<std::uint64_t>(t)}));
    const Vector ev = squared_singular_values(A);
    sums[t] = ev.head(r).sum() / k;
  });
  const double gamma = std::sqrt(static_cast<double>(k) / m);
  const double alpha = static_cast<double>(r) / k;
  return {mean_of(sums), asymptotics::lower_singular_sum_limit(gamma, alpha),
          asymptotics::lower_singular_sum_bound(gamma, alpha), r};
}

TailFrequencies empirical_chi_tails(int r_dof, double lower, double upper, long draws, std::uint64_t seed) {
  require(r_dof >= 1, "empirical_chi_tails: r must be positive");
  require(draws >= 1, "empirical_chi_tails: draws must be positive");
  constexpr long kChunk = 1 << 16;
  const long chunks = (draws + kChunk - 1) / kChunk;
  std::vector<long> above(static_cast<std::size_t>(chunks)), below(static_cast<std::size_t>(chunks));
  detail::parallel_for(static_cast<std::size_t>(chunks), worker_count(0), [&](std::size_t c) {
    std::mt19937_64 rng(derive_seed(seed, {static_cast<std::uint64_t>(c)}));
    std::chi_squared_distribution<double> chi(r_dof);
    const long count = std::min(kChunk, draws - static_cast<long>(c) * kChunk);
    long a = 0, b = 0;
    for (long i = 0; i < count; ++i) {
      const double z = chi(rng);
      a += z > upper;
      b += z < lower;
    }
    above[c] = a;
    below[c] = b;
  });
  long a = 0, b = 0;
  for (std::size_t c = 0; c < above.size(); ++c) {
    a += above[c];
    b += below[c];
  }
  return {static_cast<double>(a) / draws, static_cast<double>(b) / draws};
}

}  // namespace jsrec::bench
