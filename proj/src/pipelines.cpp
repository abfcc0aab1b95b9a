#include <algorithm>
#include <string>

#include "jsrec/error.hpp"
#include "jsrec/linalg.hpp"
#include "jsrec/mmv.hpp"
#include "jsrec/recovery.hpp"
#include "recovery_internal.hpp"

namespace jsrec {

using detail::require;

namespace {

struct Prepared {
  CanonicalProblem canon;
  double tol;
};

Prepared prepare(const Matrix& A, const Matrix& Y, int k, const RecoveryOptions& opts, const char* who) {
  const int m = static_cast<int>(A.rows());
  require(Y.rows() == A.rows(), std::string(who) + ": A and Y row counts differ");
  require(k >= 1 && k < m, std::string(who) + ": need 1 <= k < m");
  require(k <= A.cols(), std::string(who) + ": k exceeds the number of columns");
  const double tol = detail::resolve_tol(opts, m, Y.cols());
  return {canonicalize(Y, tol, k), tol};
}

SupportEstimate music_on_basis(const Matrix& A, const Matrix& U, int k) {
  auto scores = detail::music_scores(A, U);
  SupportEstimate est;
  for (const auto& s : scores) est.criterion_values[s.index] = s.score;
  est.support = SupportSet(smallest_by_score(std::move(scores), k));
  return est;
}

PartialSupport run_step1(const Step1Solver& step1, const Matrix& A, const Matrix& B, int steps) {
  if (!step1) throw precondition_error("no step-1 solver supplied");
  PartialSupport p = step1(A, B, steps);
  if (static_cast<int>(p.indices.size()) != steps)
    throw recovery_error("step-1 solver returned " + std::to_string(p.indices.size()) + " indices, expected " +
                         std::to_string(steps));
  detail::check_indices(p.indices, static_cast<int>(A.cols()), "step-1 solver");
  return p;
}

// Completes a partial support with the r smallest generalized MUSIC values.
SupportEstimate complete_with_gmusic(const Matrix& A, const Matrix& U, PartialSupport partial, int r, double tol) {
  auto eta = detail::gmusic_scores(A, U, partial.indices, tol);
  SupportEstimate est;
  for (const auto& s : eta) est.criterion_values[s.index] = s.score;
  std::vector<int> support = smallest_by_score(std::move(eta), r);
  support.insert(support.end(), partial.indices.begin(), partial.indices.end());
  est.support = SupportSet(std::move(support));
  est.partial = std::move(partial);
  return est;
}

}  // namespace

SupportEstimate cs_music(const Matrix& A, const Matrix& Y, int k, const Step1Solver& step1,
                         const RecoveryOptions& opts) {
  const auto [canon, tol] = prepare(A, Y, k, opts, "cs_music");
  const int r = canon.r_eff;
  if (r == k) return music_on_basis(A, canon.basis, k);
  PartialSupport partial = run_step1(step1, A, canon.B, k - r);
  return complete_with_gmusic(A, canon.basis, std::move(partial), r, tol);
}

SupportEstimate cs_music_optimized(const Matrix& A, const Matrix& Y, int k, const Step1Solver& step1,
                                   const RecoveryOptions& opts) {
  const auto [canon, tol] = prepare(A, Y, k, opts, "cs_music_optimized");
  const int m = static_cast<int>(A.rows());
  const int r = canon.r_eff;
  if (r == k) return music_on_basis(A, canon.basis, k);

  const PartialSupport candidates = run_step1(step1, A, canon.B, k);
  const int spark = opts.spark.value_or(m + 1);
  require(spark >= 2, "cs_music_optimized: spark must be at least 2");
  // Candidate set size min{k, spark - r}; step 1's earliest picks are kept.
  const int size = std::clamp(spark - r, 1, k);
  const std::vector<int> kept(candidates.indices.begin(), candidates.indices.begin() + size);
  if (size < k - r + 1)
    throw recovery_error("subspace fitting needs at least k - r + 1 candidates; spark(A) too small");

  auto zeta = detail::fit_scores(A, canon.basis, kept, tol);
  std::map<int, double> fit_values;
  for (const auto& s : zeta) fit_values[s.index] = s.score;

  PartialSupport partial;
  partial.indices = smallest_by_score(std::move(zeta), k - r);
  for (int j : partial.indices) partial.scores.push_back(fit_values.at(j));

  SupportEstimate est = complete_with_gmusic(A, canon.basis, std::move(partial), r, tol);
  est.fit_values = std::move(fit_values);
  return est;
}

SupportEstimate sa_music(const Matrix& A, const Matrix& Y, int k, const Step1Solver& step1,
                         const RecoveryOptions& opts) {
  const auto [canon, tol] = prepare(A, Y, k, opts, "sa_music");
  const int n = static_cast<int>(A.cols());
  const int r = canon.r_eff;
  if (r == k) return music_on_basis(A, canon.basis, k);

  PartialSupport partial = run_step1(step1, A, canon.B, k - r);
  const Matrix W =
      linalg::orthonormal_basis(linalg::hstack(canon.basis, linalg::select_columns(A, partial.indices)), tol);
  const Vector res = linalg::residual_sq_norms(W, A);
  const Vector col_norms = A.colwise().squaredNorm().transpose();

  std::vector<bool> in_partial(static_cast<std::size_t>(n), false);
  for (int i : partial.indices) in_partial[static_cast<std::size_t>(i)] = true;
  std::vector<IndexScore> scores;
  for (int j = 0; j < n; ++j) {
    if (in_partial[static_cast<std::size_t>(j)]) continue;
    scores.push_back({j, col_norms(j) > 0.0 ? res(j) / col_norms(j) : 1.0});
  }

  SupportEstimate est;
  for (const auto& s : scores) est.criterion_values[s.index] = s.score;
  std::vector<int> support = smallest_by_score(std::move(scores), r);
  support.insert(support.end(), partial.indices.begin(), partial.indices.end());
  est.support = SupportSet(std::move(support));
  est.partial = std::move(partial);
  return est;
}

// ---------------------------------------------------------------------------

namespace {

std::string_view method_name(Method m) {
  switch (m) {
    case Method::music: return "music";
    case Method::somp: return "somp";
    case Method::subspace_somp: return "ssomp";
    case Method::two_thresholding: return "thresh2";
    case Method::cs_music: return "cs_music";
    case Method::sa_music: return "sa_music";
    case Method::cs_music_optimized: return "cs_music_optimized";
  }
  return "?";
}

bool is_hybrid(Method m) {
  return m == Method::cs_music || m == Method::sa_music || m == Method::cs_music_optimized;
}

}  // namespace

std::string Algorithm::name() const {
  std::string out(method_name(method));
  if (is_hybrid(method) && step1 != Step1::somp) out += "+" + std::string(step1_name(step1));
  return out;
}

Algorithm parse_algorithm(std::string_view tag) {
  const auto plus = tag.find('+');
  const std::string_view head = tag.substr(0, plus);
  Algorithm algo;
  if (head == "music") algo.method = Method::music;
  else if (head == "somp") algo.method = Method::somp;
  else if (head == "ssomp") algo.method = Method::subspace_somp;
  else if (head == "thresh2") algo.method = Method::two_thresholding;
  else if (head == "cs_music") algo.method = Method::cs_music;
  else if (head == "sa_music") algo.method = Method::sa_music;
  else if (head == "cs_music_optimized") algo.method = Method::cs_music_optimized;
  else detail::fail_precondition("unknown algorithm '" + std::string(tag) + "'");

  if (plus != std::string_view::npos) {
    require(is_hybrid(algo.method), "only hybrid pipelines take a '+step1' suffix: '" + std::string(tag) + "'");
    algo.step1 = parse_step1(tag.substr(plus + 1));
  }
  return algo;
}

SupportEstimate run_algorithm(const Algorithm& algo, const Matrix& A, const Matrix& Y, int k,
                              const RecoveryOptions& opts) {
  auto greedy_estimate = [](PartialSupport p) {
    SupportEstimate est;
    est.support = SupportSet(p.indices);
    est.partial = std::move(p);
    return est;
  };
  switch (algo.method) {
    case Method::music: return music(A, Y, k, opts);
    case Method::somp: return greedy_estimate(somp(A, Y, k));
    case Method::subspace_somp: return greedy_estimate(subspace_somp(A, Y, k, opts, CollapsePolicy::shrink));
    case Method::two_thresholding: return greedy_estimate(two_thresholding(A, Y, k));
    case Method::cs_music: return cs_music(A, Y, k, make_step1(algo.step1, opts), opts);
    case Method::sa_music: return sa_music(A, Y, k, make_step1(algo.step1, opts), opts);
    case Method::cs_music_optimized: return cs_music_optimized(A, Y, k, make_step1(algo.step1, opts), opts);
  }
  throw precondition_error("unknown algorithm");
}

}  // namespace jsrec
