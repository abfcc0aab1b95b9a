#include "jsrec/mmv.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <tuple>

#include "jsrec/error.hpp"
#include "jsrec/linalg.hpp"

namespace jsrec {

using detail::require;

// ---------------------------------------------------------------------------
// SupportSet / Ensemble

SupportSet::SupportSet(std::vector<int> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  require(std::adjacent_find(indices_.begin(), indices_.end()) == indices_.end(),
          "support set contains duplicate indices");
  require(indices_.empty() || indices_.front() >= 0, "support indices must be nonnegative");
}

SupportSet::SupportSet(std::vector<int> indices, int n) : SupportSet(std::move(indices)) {
  require(indices_.empty() || indices_.back() < n, "support index out of range");
}

bool SupportSet::contains(int j) const {
  return std::binary_search(indices_.begin(), indices_.end(), j);
}

std::string SupportSet::to_string_one_based() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < indices_.size(); ++i) os << (i ? ", " : "") << indices_[i] + 1;
  os << '}';
  return os.str();
}

std::string_view ensemble_name(Ensemble e) {
  switch (e) {
    case Ensemble::zero_mean: return "zeromean";
    case Ensemble::unit_mean: return "unitmean";
    case Ensemble::user_supplied: return "user";
  }
  return "user";
}

Ensemble parse_ensemble(std::string_view name) {
  if (name == "zeromean" || name == "zero_mean") return Ensemble::zero_mean;
  if (name == "unitmean" || name == "unit_mean") return Ensemble::unit_mean;
  if (name == "user" || name == "user_supplied") return Ensemble::user_supplied;
  detail::fail_precondition("unknown ensemble '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Instance generation

namespace {

Matrix draw_sensing(std::mt19937_64& rng, int m, int n, Ensemble ensemble) {
  require(ensemble != Ensemble::user_supplied, "cannot generate a user_supplied sensing matrix");
  const double mean = ensemble == Ensemble::unit_mean ? 1.0 : 0.0;
  std::normal_distribution<double> normal(mean, 1.0);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  Matrix A(m, n);
  for (Eigen::Index j = 0; j < A.cols(); ++j)
    for (Eigen::Index i = 0; i < A.rows(); ++i) A(i, j) = scale * normal(rng);
  return A;
}

}  // namespace

Matrix random_sensing_matrix(int m, int n, Ensemble ensemble, std::uint64_t seed) {
  require(m > 0 && n > 0, "matrix dimensions must be positive");
  std::mt19937_64 rng(seed);
  return draw_sensing(rng, m, n, ensemble);
}

NoisyInstance generate_instance(const InstanceSpec& spec) {
  const auto [m, n, k, r] = std::tuple{spec.m, spec.n, spec.k, spec.r};
  require(0 < k && k < m && m < n, "generate_instance requires 0 < k < m < n");
  require(r >= 1, "generate_instance requires r >= 1");
  if (spec.snr_db) require(std::isfinite(*spec.snr_db), "snr_db must be finite");

  std::mt19937_64 rng(spec.seed);
  NoisyInstance inst;
  inst.seed = spec.seed;
  inst.A.entries = draw_sensing(rng, m, n, spec.ensemble);
  inst.A.ensemble = spec.ensemble;

  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  // Partial Fisher-Yates: the first k slots are a uniform k-subset.
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<int> pick(i, n - 1);
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(pick(rng))]);
  }
  inst.S = SupportSet(std::vector<int>(perm.begin(), perm.begin() + k), n);

  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix X = Matrix::Zero(n, r);
  for (int j : inst.S)
    for (int c = 0; c < r; ++c) X(j, c) = normal(rng);
  inst.X = JointSparseSignal{X, inst.S};

  Matrix AX = inst.A.entries * X;
  inst.Y = AX;
  if (spec.snr_db) {
    const double snr = std::pow(10.0, *spec.snr_db / 10.0);
    double energy = 0.0;
    double dof = 0.0;
    if (spec.calibration == NoiseCalibration::measurement) {
      energy = AX.squaredNorm();
      dof = static_cast<double>(m) * r;
    } else {
      energy = X.squaredNorm();
      dof = static_cast<double>(n) * r;
    }
    require(energy > 0.0, "snr_db given for a zero-energy signal");
    inst.noise_std = std::sqrt(energy / (dof * snr));
    for (Eigen::Index c = 0; c < inst.Y.cols(); ++c)
      for (Eigen::Index i = 0; i < inst.Y.rows(); ++i) inst.Y(i, c) += inst.noise_std * normal(rng);
  }
  return inst;
}

// ---------------------------------------------------------------------------
// Canonical form

double default_rank_tol(int m, int r) { return linalg::default_rank_tol(m, r); }

CanonicalProblem canonicalize(const Matrix& Y, double rank_tol, std::optional<int> max_rank) {
  require(Y.size() > 0, "canonicalize: empty measurement matrix");
  require(Y.allFinite(), "canonicalize: measurement matrix has non-finite entries");
  require(rank_tol > 0.0 && rank_tol < 1.0, "canonicalize: rank_tol must lie in (0, 1)");
  require(!max_rank || *max_rank >= 1, "canonicalize: max_rank must be positive");

  Eigen::JacobiSVD<Matrix> svd(Y, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) throw precondition_error("zero measurement");

  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > rank_tol * s(0)) ++rank;
  if (max_rank) rank = std::min<Eigen::Index>(rank, *max_rank);

  CanonicalProblem out;
  out.r_eff = static_cast<int>(rank);
  out.basis = svd.matrixU().leftCols(rank);
  out.transform = svd.matrixV().leftCols(rank);
  out.B = out.basis * s.head(rank).asDiagonal();
  out.singular_values = s;
  out.rank_tol = rank_tol;
  return out;
}

CanonicalProblem canonicalize(const Matrix& Y) {
  return canonicalize(Y, default_rank_tol(static_cast<int>(Y.rows()), static_cast<int>(Y.cols())));
}

// ---------------------------------------------------------------------------
// Small exact oracles and helpers

int spark_bruteforce(const Matrix& A) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  require(n >= 1, "spark_bruteforce: matrix has no columns");
  require(n <= 20, "spark_bruteforce: n > 20 refused (exponential search)");

  const int max_size = std::min(m, n);
  std::vector<int> combo;
  for (int s = 1; s <= max_size; ++s) {
    combo.resize(static_cast<std::size_t>(s));
    std::iota(combo.begin(), combo.end(), 0);
    const double tol = linalg::default_rank_tol(m, s);
    while (true) {
      Matrix sub = linalg::select_columns(A, combo);
      if (linalg::numerical_rank(sub, tol) < s) return s;
      // Next combination in lexicographic order.
      int i = s - 1;
      while (i >= 0 && combo[static_cast<std::size_t>(i)] == n - s + i) --i;
      if (i < 0) break;
      ++combo[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < s; ++j) combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  // Any m + 1 columns in R^m are dependent.
  return n > m ? m + 1 : n + 1;
}

double l0_uniqueness_bound(int spark_A, int rank_B) {
  require(spark_A >= 1 && rank_B >= 1, "l0_uniqueness_bound: need spark >= 1 and rank >= 1");
  return (static_cast<double>(spark_A) + rank_B - 1.0) / 2.0;
}

int support_distance(const SupportSet& S, const SupportSet& S_hat) {
  require(S.size() == S_hat.size(), "support_distance: sets must have equal size");
  int missing = 0;
  for (int j : S)
    if (!S_hat.contains(j)) ++missing;
  return missing;
}

double snr_of(const Matrix& X, double noise_std, int n, int r) {
  require(n > 0 && r > 0, "snr_of: n and r must be positive");
  require(noise_std >= 0.0, "snr_of: noise_std must be nonnegative");
  if (noise_std == 0.0) throw precondition_error("infinite SNR");
  return X.squaredNorm() / (static_cast<double>(r) * n * noise_std * noise_std);
}

SupportSet row_support(const Matrix& X) {
  std::vector<int> rows;
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    if ((X.row(i).array() != 0.0).any()) rows.push_back(static_cast<int>(i));
  return SupportSet(std::move(rows));
}

}  // namespace jsrec
