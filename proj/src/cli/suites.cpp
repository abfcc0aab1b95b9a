#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "jsrec/asymptotics.hpp"
#include "jsrec/bench.hpp"
#include "jsrec/cli.hpp"
#include "jsrec/error.hpp"
#include "jsrec/mmv.hpp"
#include "jsrec/recovery.hpp"
#include "jsrec/seed.hpp"

namespace jsrec::cli {

namespace {

namespace as = jsrec::asymptotics;

std::string printf_str(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

NoisyInstance noiseless_instance(int m, int n, int k, int r, std::uint64_t seed) {
  InstanceSpec spec;
  spec.m = m;
  spec.n = n;
  spec.k = k;
  spec.r = r;
  spec.snr_db.reset();
  spec.seed = seed;
  return generate_instance(spec);
}

int scaled(const SuiteConfig& c, int full, int quick) { return c.quick ? std::min(full, quick) : full; }

// Generalized MUSIC separates S \ I from the complement of S when I is a
// correct partial support of size k - r.
CheckResult gmusic(const SuiteConfig& c) {
  const int seeds = scaled(c, c.seeds, 20);
  int passed = 0;
  double worst_in = 0.0, worst_out = std::numeric_limits<double>::infinity();
  for (int s = 0; s < seeds; ++s) {
    const int k = 4 + s % 5;
    const int r = 2 + (s / 5) % (k - 2);
    const std::uint64_t seed = derive_seed(c.seed, {2, static_cast<std::uint64_t>(s)});
    const NoisyInstance inst = noiseless_instance(20, 40, k, r, seed);
    std::mt19937_64 rng(derive_seed(seed, {1}));
    std::vector<int> known = inst.S.indices();
    std::shuffle(known.begin(), known.end(), rng);
    known.resize(static_cast<std::size_t>(k - r));
    PartialSupport partial{known, {}};
    const auto eta = generalized_music_stats(inst.A.entries, inst.Y, partial);
    double max_in = 0.0, min_out = std::numeric_limits<double>::infinity();
    std::vector<double> all;
    for (const auto& [j, v] : eta) {
      all.push_back(v);
      if (inst.S.contains(j)) max_in = std::max(max_in, v);
      else min_out = std::min(min_out, v);
    }
    std::nth_element(all.begin(), all.begin() + static_cast<long>(all.size() / 2), all.end());
    const double median = all[all.size() / 2];
    if (max_in < 1e-10 && min_out > 1e3 * max_in && min_out > 1e-6 * median) ++passed;
    worst_in = std::max(worst_in, max_in);
    worst_out = std::min(worst_out, min_out);
  }
  return {"gmusic", passed == seeds,
          printf_str("%d/%d instances; max eta on S\\I %.2e, min eta off S %.2e", passed, seeds, worst_in, worst_out)};
}

// Subspace fitting ranks the true members of a k-candidate set first when at
// least k - r + 1 candidates are correct.
CheckResult subfit(const SuiteConfig& c) {
  const int seeds = scaled(c, c.seeds, 20);
  constexpr int m = 20, n = 40, k = 6, r = 3;
  int passed = 0;
  double worst_in = 0.0, worst_out = std::numeric_limits<double>::infinity();
  for (int s = 0; s < seeds; ++s) {
    const std::uint64_t seed = derive_seed(c.seed, {4, static_cast<std::uint64_t>(s)});
    const NoisyInstance inst = noiseless_instance(m, n, k, r, seed);
    std::mt19937_64 rng(derive_seed(seed, {1}));
    std::vector<int> good = inst.S.indices(), bad;
    for (int j = 0; j < n; ++j)
      if (!inst.S.contains(j)) bad.push_back(j);
    std::shuffle(good.begin(), good.end(), rng);
    std::shuffle(bad.begin(), bad.end(), rng);
    std::vector<int> cand(good.begin(), good.begin() + (k - r + 1));
    cand.insert(cand.end(), bad.begin(), bad.begin() + (r - 1));
    const auto zeta = subspace_fit_stats(inst.A.entries, inst.Y, cand);
    double max_in = 0.0, min_out = std::numeric_limits<double>::infinity();
    for (const auto& [j, v] : zeta) {
      if (inst.S.contains(j)) max_in = std::max(max_in, v);
      else min_out = std::min(min_out, v);
    }
    if (max_in < 1e-10 && max_in < min_out) ++passed;
    worst_in = std::max(worst_in, max_in);
    worst_out = std::min(worst_out, min_out);
  }
  return {"subfit", passed == seeds,
          printf_str("%d/%d instances; max zeta on correct %.2e, min zeta on incorrect %.2e", passed, seeds, worst_in,
                     worst_out)};
}

// MUSIC with r = k recovers every support below m.
CheckResult music_ceiling(const SuiteConfig& c) {
  const int trials = scaled(c, c.seeds, 5);
  constexpr int m = 40, n = 100;
  int failures = 0, first_bad_k = 0;
  for (int k = 1; k < m; ++k) {
    for (int t = 0; t < trials; ++t) {
      const NoisyInstance inst = noiseless_instance(m, n, k, k, derive_seed(c.seed, {3, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(t)}));
      const SupportEstimate est = music(inst.A.entries, inst.Y, k);
      if (!(est.support == inst.S)) {
        if (failures++ == 0) first_bad_k = k;
      }
    }
  }
  return {"music", failures == 0,
          failures == 0 ? printf_str("exact recovery for k=1..39, %d trials each", trials)
                        : printf_str("%d failures, first at k=%d", failures, first_bad_k)};
}

CheckResult mp_fit(int m, int k) {
  const double dev = bench::empirical_mp(m, k, 20);
  const double tol = k == m ? 0.03 : 0.02;
  return {printf_str("mp(m=%d,k=%d)", m, k), dev < tol, printf_str("sup CDF deviation %.4f (tolerance %.2f)", dev, tol)};
}

std::vector<CheckResult> mp_suite(const SuiteConfig& c) {
  std::vector<CheckResult> out{mp_fit(c.mp_m, c.mp_k)};
  if (c.mp_m != c.mp_k) out.push_back(mp_fit(500, 500));
  return out;
}

// Spread of max/(2 ln n) around its limit 1: |mean - 1| + 2 sd.
double chimax_band(const bench::RatioStats& s) { return std::abs(s.ratio_mean - 1.0) + 2.0 * s.ratio_sd; }

std::vector<CheckResult> chimax_suite(const SuiteConfig& c) {
  const int n_small = c.quick ? 10000 : 100000;
  const int n_large = c.quick ? 100000 : 1000000;
  const int trials = c.quick ? 50 : 200;
  const auto small = bench::empirical_chi_max(n_small, 1, trials, derive_seed(c.seed, {5, 1}));
  const auto large = bench::empirical_chi_max(n_large, 1, trials, derive_seed(c.seed, {5, 2}));
  const auto r4 = bench::empirical_chi_max(10000, 4, c.quick ? 50 : 200, derive_seed(c.seed, {5, 3}));
  return {
      {"chimax", small.ratio_mean >= 0.85 && small.ratio_mean <= 1.15,
       printf_str("n=%d r=1: mean %.4f sd %.4f", n_small, small.ratio_mean, small.ratio_sd)},
      {"chimax-band", chimax_band(large) < chimax_band(small),
       printf_str("band |mean-1|+2sd: n=%d %.4f, n=%d %.4f", n_small, chimax_band(small), n_large, chimax_band(large))},
      {"chimax-r4", r4.ratio_mean > 1.0 && r4.ratio_mean < 1.6, printf_str("n=10000 r=4: mean %.4f", r4.ratio_mean)},
  };
}

std::vector<CheckResult> chitail_suite(const SuiteConfig& c) {
  const long draws = c.quick ? 100000 : 1000000;
  const auto freq = bench::empirical_chi_tails(100, 50.0, 150.0, draws, derive_seed(c.seed, {6}));
  const auto b = as::chi_tail_bounds(100, 0.5);
  return {
      {"chitail-upper", freq.above <= b.upper,
       printf_str("P{chi2(100) > 150} = %.3e <= %.3e over %ld draws", freq.above, b.upper, draws)},
      {"chitail-lower", freq.below <= b.lower,
       printf_str("P{chi2(100) < 50} = %.3e <= %.3e over %ld draws", freq.below, b.lower, draws)},
  };
}

std::vector<CheckResult> moments_suite(const SuiteConfig&) {
  std::vector<CheckResult> out;
  double worst_gap = std::numeric_limits<double>::infinity();
  for (double g : {0.3, 0.6, 0.9})
    for (double a : {0.2, 0.5, 0.8}) {
      const auto mm = as::matched_mass_moments(g, a);
      worst_gap = std::min(worst_gap, mm.lhs - mm.rhs);
    }
  out.push_back({"moments-matched", worst_gap >= -1e-10, printf_str("min lhs - rhs over the grid %.3e", worst_gap)});

  double worst_dom = std::numeric_limits<double>::infinity();
  const as::MpMeasure one(1.0);
  for (double g : {0.3, 0.6, 0.9}) {
    const as::ShiftedMpMeasure shifted(g);
    for (int i = 0; i <= 200; ++i) {
      const double t = 4.0 * i / 200.0;
      worst_dom = std::min(worst_dom, one.cdf(t) - shifted.cdf(t));
    }
  }
  out.push_back({"moments-dominance", worst_dom >= -1e-10,
                 printf_str("min CDF(lambda_1) - CDF(lambda_0,gamma) on [0,4] %.3e", worst_dom)});

  double prev = 0.0;
  bool monotone = true;
  for (int i = 1; i <= 1000; ++i) {
    const double f = as::big_F(i / 1000.0);
    if (f <= prev) monotone = false;
    prev = f;
  }
  out.push_back({"F-monotone", monotone && std::abs(prev - 1.0) < 1e-8,
                 printf_str("F increasing on 1000 points, F(1) = %.12f", prev)});

  double worst_mass = 0.0;
  for (double g : {0.1, 0.3, 0.5, 0.9, 1.0}) {
    const double edge = (1.0 + g) * (1.0 + g);
    worst_mass = std::max(worst_mass, std::abs(as::MpMeasure(g).cdf(edge * (1.0 - 1e-13)) - 1.0));
  }
  out.push_back({"mp-mass", worst_mass < 1e-8, printf_str("max |total mass - 1| %.2e", worst_mass)});
  return out;
}

std::vector<CheckResult> entropy_suite(const SuiteConfig&) {
  double worst = 0.0;
  for (double e : {0.05, 0.1, 0.3}) {
    worst = std::max(worst, std::abs(as::entropy_pair(e, 1.0 - e) - as::binary_entropy(e)));
    worst = std::max(worst, std::abs(as::entropy_pair(e, 0.0)));
  }
  as::BoundInputs in;
  in.r = 1000000;
  const auto res = as::ml_sufficient(in);
  return {
      {"entropy-identities", worst < 1e-12, printf_str("max identity error %.2e", worst)},
      {"ml-large-r", std::abs(res.rho_threshold - in.epsilon) < 1e-4,
       printf_str("r=1e6: rho_threshold - epsilon = %.3e", res.rho_threshold - in.epsilon)},
  };
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"gmusic", "subfit", "music", "mp", "chimax",
                                              "chitail",  "moments",     "entropy"};
  return names;
}

std::vector<CheckResult> run_suite(std::string_view name, const SuiteConfig& config) {
  if (name == "all") {
    std::vector<CheckResult> all;
    for (const auto& n : suite_names()) {
      auto part = run_suite(n, config);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  if (name == "gmusic") return {gmusic(config)};
  if (name == "subfit") return {subfit(config)};
  if (name == "music") return {music_ceiling(config)};
  if (name == "mp") return mp_suite(config);
  if (name == "chimax") return chimax_suite(config);
  if (name == "chitail") return chitail_suite(config);
  if (name == "moments") return moments_suite(config);
  if (name == "entropy") return entropy_suite(config);
  throw precondition_error("unknown suite '" + std::string(name) + "'");
}

}  // namespace jsrec::cli
