#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jsrec/types.hpp"

namespace jsrec {

struct RecoveryOptions {
  /// Relative rank tolerance for canonicalization and for every projected
  /// block; defaults to 1e-10 * max(dimensions).
  std::optional<double> rank_tol;
  /// spark(A) for the candidate-set size of the subspace fitting step.
  /// Unset means the columns of A are assumed to be in general position
  /// (spark = m + 1).
  std::optional<int> spark;
};

// ---------------------------------------------------------------------------
// Subspace criteria

/// Orthonormal basis Q of the orthogonal complement of span(B).
struct NoiseSubspaceBasis {
  Matrix Q;  // m x (m - r_eff)
};

/// Requires B to have full column rank r_eff < m.
NoiseSubspaceBasis noise_subspace(const Matrix& B, int r_eff, const RecoveryOptions& opts = {});

/// Classical MUSIC for the full-rank regime rank(B) = k: returns the k
/// indices with the smallest ||Q^T a_j||^2. If B has more than k significant
/// directions only the leading k are used.
SupportEstimate music(const Matrix& A, const Matrix& B, int k, const RecoveryOptions& opts = {});

/// eta(j) = a_j^T (P_Q - P_{P_Q A_I}) a_j for every j outside `partial`.
/// Throws recovery_error("left-RIP violated") when P_Q A_I loses rank.
std::vector<IndexScore> generalized_music_stats(const Matrix& A, const Matrix& B, const PartialSupport& partial,
                                                const RecoveryOptions& opts = {});

/// zeta(j) = ||P^perp_{[B A_{I \ j}]} a_j||^2 for every j in I.
std::vector<IndexScore> subspace_fit_stats(const Matrix& A, const Matrix& B, std::span<const int> candidates,
                                           const RecoveryOptions& opts = {});

// ---------------------------------------------------------------------------
// Greedy step-1 solvers. Returned indices are in selection order; `scores`
// hold the winning criterion value at each step.

/// Simultaneous OMP: repeatedly pick argmax_j ||a_j^T P^perp_{A_I} Y||^2.
PartialSupport somp(const Matrix& A, const Matrix& Y, int steps);

enum class CollapsePolicy {
  /// Throw recovery_error("snapshot collapse") if P^perp_{A_I} B loses rank.
  raise,
  /// Keep going on whatever rank survives. Used when a pipeline asks for more
  /// steps than k - r (noiseless data collapse once k - r + 1 true atoms are in).
  shrink,
};

/// Subspace S-OMP: rho(t, j) = ||a_j^T P_{R(P^perp_{A_I} B)}||^2.
PartialSupport subspace_somp(const Matrix& A, const Matrix& Y, int steps, const RecoveryOptions& opts = {},
                             CollapsePolicy policy = CollapsePolicy::raise);

/// One-shot correlation thresholding: the `count` largest ||a_j^T Y||_2.
PartialSupport two_thresholding(const Matrix& A, const Matrix& Y, int count);

enum class Step1 { somp, subspace_somp, two_thresholding };

/// Stable tags: "somp", "ssomp", "thresh2".
std::string_view step1_name(Step1 s);
Step1 parse_step1(std::string_view tag);

/// Pluggable first stage: (A, measurements, number of indices) -> indices.
using Step1Solver = std::function<PartialSupport(const Matrix& A, const Matrix& Y, int steps)>;
Step1Solver make_step1(Step1 s, const RecoveryOptions& opts = {});

// ---------------------------------------------------------------------------
// Composed pipelines. Each canonicalizes Y with the rank capped at k, so a
// noisy Y with more snapshots than k is reduced to its k-dimensional signal
// subspace. When the effective rank equals k they all reduce to MUSIC.

/// Step 1 picks k - r indices, generalized MUSIC picks the remaining r.
SupportEstimate cs_music(const Matrix& A, const Matrix& Y, int k, const Step1Solver& step1,
                         const RecoveryOptions& opts = {});

/// Step 1 picks k indices; the subspace fitting criterion keeps the k - r
/// best of them; generalized MUSIC picks the remaining r.
SupportEstimate cs_music_optimized(const Matrix& A, const Matrix& Y, int k, const Step1Solver& step1,
                                   const RecoveryOptions& opts = {});

/// Subspace-augmented MUSIC baseline: step 1 picks k - r indices, the rest are
/// the r smallest column-normalized residuals ||P^perp_{[B A_I]} a_j||^2 / ||a_j||^2.
SupportEstimate sa_music(const Matrix& A, const Matrix& Y, int k, const Step1Solver& step1,
                         const RecoveryOptions& opts = {});

// ---------------------------------------------------------------------------
// Algorithm tags used by the benchmark and the CLI.

enum class Method { music, somp, subspace_somp, two_thresholding, cs_music, sa_music, cs_music_optimized };

struct Algorithm {
  Method method = Method::cs_music_optimized;
  Step1 step1 = Step1::somp;  // only meaningful for the hybrid pipelines

  /// "cs_music", or "cs_music+ssomp" when step 1 is not S-OMP.
  std::string name() const;
  friend bool operator==(const Algorithm&, const Algorithm&) = default;
};

/// Parses "music", "somp", "ssomp", "thresh2", "cs_music", "sa_music",
/// "cs_music_optimized", each hybrid optionally suffixed "+<step1 tag>".
Algorithm parse_algorithm(std::string_view tag);

/// Runs one algorithm for sparsity k and returns its support estimate.
SupportEstimate run_algorithm(const Algorithm& algo, const Matrix& A, const Matrix& Y, int k,
                              const RecoveryOptions& opts = {});

/// Indices of the `count` smallest scores; ties go to the smaller index.
std::vector<int> smallest_by_score(std::vector<IndexScore> scores, int count);

}  // namespace jsrec
