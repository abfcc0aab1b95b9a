#pragma once

#include <cstdint>
#include <optional>

#include "jsrec/types.hpp"

namespace jsrec {

struct InstanceSpec {
  int m = 40;
  int n = 100;
  int k = 5;
  int r = 9;
  std::optional<double> snr_db = 40.0;  // nullopt: noiseless
  Ensemble ensemble = Ensemble::zero_mean;
  std::uint64_t seed = 1;
  NoiseCalibration calibration = NoiseCalibration::measurement;
};

/// Draws a random sensing matrix, a uniformly random size-k support, standard
/// Gaussian nonzero rows and (optionally) white Gaussian noise. The result is
/// a pure function of the spec: identical specs give bit-identical instances.
///
/// Draw order from a single mt19937_64 seeded with `seed`: A column-major,
/// then the support, then X's nonzero rows, then the noise.
NoisyInstance generate_instance(const InstanceSpec& spec);

/// Random m x n matrix of the given ensemble with entries N(0,1)/sqrt(m)
/// (zero_mean) or N(1,1)/sqrt(m) (unit_mean).
Matrix random_sensing_matrix(int m, int n, Ensemble ensemble, std::uint64_t seed);

/// Default relative rank tolerance, 1e-10 * max(m, r).
double default_rank_tol(int m, int r);

/// Rank-reduces Y through its SVD. `max_rank` further caps r_eff (used when
/// the sparsity k is known to be smaller than the number of noisy snapshots).
/// Throws precondition_error("zero measurement") for an all-zero Y.
CanonicalProblem canonicalize(const Matrix& Y, double rank_tol, std::optional<int> max_rank = std::nullopt);
CanonicalProblem canonicalize(const Matrix& Y);

/// Smallest number of linearly dependent columns, by exhaustive search.
/// Refuses n > 20.
int spark_bruteforce(const Matrix& A);

/// (spark + rank - 1) / 2; a k-sparse solution is unique iff k is strictly below this.
double l0_uniqueness_bound(int spark_A, int rank_B);

/// |S \ S_hat| for equal-size sets.
int support_distance(const SupportSet& S, const SupportSet& S_hat);

/// ||X||_F^2 / (r n sigma_w^2).
double snr_of(const Matrix& X, double noise_std, int n, int r);

/// Row indices of X whose rows are not identically zero.
SupportSet row_support(const Matrix& X);

}  // namespace jsrec
