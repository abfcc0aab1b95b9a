#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace jsrec {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Sorted, duplicate-free set of 0-based row/column indices.
class SupportSet {
 public:
  SupportSet() = default;
  /// Sorts the input; throws precondition_error on duplicates.
  explicit SupportSet(std::vector<int> indices);
  /// As above, additionally checking every index is < n.
  SupportSet(std::vector<int> indices, int n);

  const std::vector<int>& indices() const { return indices_; }
  int size() const { return static_cast<int>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  bool contains(int j) const;

  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  /// Human-facing form, 1-based: "{3, 17, 42}".
  std::string to_string_one_based() const;

  friend bool operator==(const SupportSet&, const SupportSet&) = default;

 private:
  std::vector<int> indices_;
};

enum class Ensemble { zero_mean, unit_mean, user_supplied };

std::string_view ensemble_name(Ensemble e);
/// Accepts "zeromean"/"zero_mean", "unitmean"/"unit_mean", "user".
Ensemble parse_ensemble(std::string_view name);

struct SensingMatrix {
  Matrix entries;  // m x n
  Ensemble ensemble = Ensemble::user_supplied;

  int rows() const { return static_cast<int>(entries.rows()); }
  int cols() const { return static_cast<int>(entries.cols()); }
};

struct JointSparseSignal {
  Matrix entries;  // n x r, nonzero exactly on `support` rows
  SupportSet support;
};

/// How the noise level of a generated instance is tied to the requested SNR.
enum class NoiseCalibration {
  /// sigma_w^2 = ||A X||_F^2 / (m r SNR): the realized measurement SNR is exact.
  measurement,
  /// sigma_w^2 = ||X||_F^2 / (n r SNR): SNR(X) = ||X||_F^2 / (r n sigma_w^2) is exact.
  signal,
};

struct NoisyInstance {
  SensingMatrix A;
  JointSparseSignal X;
  SupportSet S;
  double noise_std = 0.0;
  Matrix Y;  // m x r
  std::uint64_t seed = 0;
};

struct CanonicalProblem {
  Matrix B;          // m x r_eff, B = Y * transform
  int r_eff = 0;
  Matrix transform;  // r x r_eff, orthonormal columns (kept right singular vectors)
  Matrix basis;      // m x r_eff orthonormal basis of span(B)
  Vector singular_values;  // all singular values of Y, nonincreasing
  double rank_tol = 0.0;
};

struct PartialSupport {
  std::vector<int> indices;  // selection order
  std::vector<double> scores;  // criterion value at the time each index was picked
};

struct IndexScore {
  int index;
  double score;
};

struct SupportEstimate {
  SupportSet support;
  PartialSupport partial;
  /// eta(j) (generalized MUSIC / MUSIC) for every scored index.
  std::map<int, double> criterion_values;
  /// zeta(j) over the candidate set, only for the optimized pipeline.
  std::map<int, double> fit_values;
};

}  // namespace jsrec
