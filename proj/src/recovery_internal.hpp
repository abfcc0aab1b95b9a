#pragma once

#include <span>
#include <vector>

#include "jsrec/recovery.hpp"

namespace jsrec::detail {

double resolve_tol(const RecoveryOptions& opts, Eigen::Index rows, Eigen::Index cols);

/// Validates a list of column indices of an n-column matrix: in range, distinct.
void check_indices(std::span<const int> idx, int n, const char* who);

/// ||P^perp_U a_j||^2 for every column (U orthonormal signal basis).
std::vector<IndexScore> music_scores(const Matrix& A, const Matrix& U);

/// Generalized MUSIC on an orthonormal signal basis U.
std::vector<IndexScore> gmusic_scores(const Matrix& A, const Matrix& U, std::span<const int> partial, double tol);

/// Subspace fitting on an orthonormal signal basis U.
std::vector<IndexScore> fit_scores(const Matrix& A, const Matrix& U, std::span<const int> candidates, double tol);

}  // namespace jsrec::detail
