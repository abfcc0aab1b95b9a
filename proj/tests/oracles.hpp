#pragma once

// Independent reference computations used as test oracles. They are written
// the slow, literal way (pseudo-inverses, exhaustive search, dense grids) and
// share no code with the library beyond the Matrix type.

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "jsrec/types.hpp"

namespace oracle {

using jsrec::Matrix;
using jsrec::Vector;

inline Matrix pinv(const Matrix& M) { return M.completeOrthogonalDecomposition().pseudoInverse(); }

/// Orthogonal projector onto range(M), as M M^+.
inline Matrix range_projector(const Matrix& M) {
  if (M.cols() == 0) return Matrix::Zero(M.rows(), M.rows());
  return M * pinv(M);
}

inline Matrix columns(const Matrix& A, const std::vector<int>& idx) {
  Matrix out(A.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = A.col(idx[i]);
  return out;
}

inline Matrix hcat(const Matrix& L, const Matrix& R) {
  Matrix out(L.rows(), L.cols() + R.cols());
  out << L, R;
  return out;
}

/// a_j^T [P_Q - P_{P_Q A_I}] a_j with P_Q = I - B B^+.
inline double eta_literal(const Matrix& A, const Matrix& B, const std::vector<int>& I, int j) {
  const Eigen::Index m = A.rows();
  const Matrix PQ = Matrix::Identity(m, m) - range_projector(B);
  const Matrix PG = range_projector(PQ * columns(A, I));
  const Vector a = A.col(j);
  return a.dot((PQ - PG) * a);
}

/// ||(I - P_{[B A_{I \ j}]}) a_j||^2.
inline double zeta_literal(const Matrix& A, const Matrix& B, const std::vector<int>& I, int j) {
  std::vector<int> rest;
  for (int i : I)
    if (i != j) rest.push_back(i);
  const Matrix M = hcat(B, columns(A, rest));
  const Vector a = A.col(j);
  return (a - range_projector(M) * a).squaredNorm();
}

/// Lexicographic next k-combination of {0..n-1}; false when exhausted.
inline bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  int i = k - 1;
  while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
  if (i < 0) return false;
  ++c[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

/// The k-subset T minimizing ||(I - P_{A_T}) Y||_F^2, by exhaustive search.
inline std::vector<int> best_subset_least_squares(const Matrix& A, const Matrix& Y, int k) {
  const int n = static_cast<int>(A.cols());
  std::vector<int> c(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
  std::vector<int> best;
  double best_res = std::numeric_limits<double>::infinity();
  do {
    const Matrix AT = columns(A, c);
    const double res = (Y - range_projector(AT) * Y).squaredNorm();
    if (res < best_res) {
      best_res = res;
      best = c;
    }
  } while (next_combination(c, n));
  return best;
}

/// Smallest linearly dependent column subset size, via rank of every subset.
inline int spark_by_rank(const Matrix& A) {
  const int n = static_cast<int>(A.cols());
  for (int s = 1; s <= n; ++s) {
    std::vector<int> c(static_cast<std::size_t>(s));
    for (int i = 0; i < s; ++i) c[static_cast<std::size_t>(i)] = i;
    do {
      Eigen::FullPivLU<Matrix> lu(columns(A, c));
      lu.setThreshold(1e-10);
      if (lu.rank() < s) return s;
    } while (next_combination(c, n));
  }
  return n + 1;
}

// ---------------------------------------------------------------------------
// Quarter-circle law (gamma = 1) tabulated on a uniform grid in u = sqrt(x),
// where d lambda_1 = sqrt(4 - u^2) / pi du on [0, 2]. Trapezoid rule with
// `points` nodes.

struct QuarterCircleTable {
  std::vector<double> u, mass, moment;  // cumulative lambda_1 and integral of x d lambda_1

  explicit QuarterCircleTable(int points = 1000000) {
    u.resize(static_cast<std::size_t>(points));
    mass.resize(u.size());
    moment.resize(u.size());
    const double h = 2.0 / (points - 1);
    auto dens = [](double v) { return std::sqrt(std::max(0.0, 4.0 - v * v)) / std::numbers::pi; };
    u[0] = 0.0;
    for (std::size_t i = 1; i < u.size(); ++i) {
      const double a = h * static_cast<double>(i - 1), b = h * static_cast<double>(i);
      u[i] = b;
      mass[i] = mass[i - 1] + 0.5 * h * (dens(a) + dens(b));
      moment[i] = moment[i - 1] + 0.5 * h * (a * a * dens(a) + b * b * dens(b));
    }
  }

  /// CDF of lambda_1 at x in [0, 4], by linear interpolation.
  double cdf(double x) const { return interp(mass, std::sqrt(x)); }
  double first_moment(double x) const { return interp(moment, std::sqrt(x)); }

  /// u with cumulative mass alpha.
  double u_at_mass(double alpha) const {
    std::size_t lo = 0, hi = mass.size() - 1;
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      (mass[mid] < alpha ? lo : hi) = mid;
    }
    const double t = (alpha - mass[lo]) / (mass[hi] - mass[lo]);
    return u[lo] + t * (u[hi] - u[lo]);
  }

 private:
  double interp(const std::vector<double>& table, double v) const {
    const double h = u[1] - u[0];
    const double pos = v / h;
    const std::size_t i = std::min(static_cast<std::size_t>(pos), u.size() - 2);
    const double t = pos - static_cast<double>(i);
    return table[i] + t * (table[i + 1] - table[i]);
  }
};

// ---------------------------------------------------------------------------
// Entropy and the sufficient-condition objective, written out directly.

inline double h(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log(p) - (1.0 - p) * std::log(1.0 - p);
}

inline double h_pair(double eps, double alpha) { return eps * h(alpha) + (1.0 - eps) * h(alpha / (1.0 / eps - 1.0)); }

/// max over a `points`-node grid on [alpha, 1 - eps] of 2 h(eps, u) / (ln g + 1/g - 1), g = snr u.
inline double brute_max_flat(double eps, double alpha, double snr, int points) {
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < points; ++i) {
    const double u = alpha + (1.0 - eps - alpha) * i / (points - 1);
    const double g = snr * u;
    best = std::max(best, 2.0 * h_pair(eps, u) / (std::log(g) + 1.0 / g - 1.0));
  }
  return best;
}

}  // namespace oracle
