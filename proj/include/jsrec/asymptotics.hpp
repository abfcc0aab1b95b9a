#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "jsrec/types.hpp"

// Closed-form and quadrature evaluators for the large-system sample counts and
// the information-theoretic recovery conditions. All logarithms are natural,
// so entropies are in nats.
namespace jsrec::asymptotics {

// ---------------------------------------------------------------------------
// Marchenko-Pastur law of the squared singular values of an m x k matrix with
// i.i.d. N(0, 1/m) entries, gamma = sqrt(k/m) in (0, 1]:
//
//   d lambda_gamma(x) = sqrt(((1+gamma)^2 - x)(x - (1-gamma)^2)) / (2 pi gamma^2 x) dx
//
// on [(1-gamma)^2, (1+gamma)^2]. Integrals are computed by adaptive
// Gauss-Kronrod quadrature after the substitution
// x = lo + (hi - lo) sin^2(theta), which removes both square-root endpoint
// singularities (and the 1/x pole at gamma = 1).

class MpMeasure {
 public:
  explicit MpMeasure(double gamma);

  double gamma() const { return gamma_; }
  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }

  double density(double x) const;
  /// lambda_gamma([lo, x]).
  double cdf(double x) const;
  /// Integral of s d lambda_gamma(s) over [lo, x].
  double first_moment(double x) const;
  /// Smallest x with cdf(x) = mass, mass in [0, 1].
  double quantile(double mass) const;

 private:
  double theta_of(double x) const;
  double integrate(double theta_hi, bool weight_by_x) const;
  double theta_quantile(double mass) const;

  double gamma_;
  double lo_;
  double hi_;
};

double mp_density(double x, double gamma);

/// t_1(alpha): the root of lambda_1([0, 4 t^2]) = alpha, t in [0, 1].
/// alpha = 0 returns 0.
double t1_of_alpha(double alpha);

/// t_gamma(alpha): lambda_gamma([(1-gamma)^2, (1-gamma+2 gamma t)^2]) = alpha.
double t_gamma_of_alpha(double alpha, double gamma);

/// F(alpha) = (1/alpha) * integral_0^{4 t_1(alpha)^2} x d lambda_1(x).
double big_F(double alpha);

/// Limit of (sum of the r smallest squared singular values of A_S) / k for
/// r / k -> alpha: the first moment of the lowest alpha-mass of lambda_gamma.
double lower_singular_sum_limit(double gamma, double alpha);

/// Closed-form lower bound on the same limit:
/// alpha (1-gamma)^2 + alpha gamma F(alpha) = (r/m)(1/gamma - 1)^2 + alpha gamma F(alpha).
double lower_singular_sum_bound(double gamma, double alpha);

/// The measure lambda_gamma pulled back by x = (1-gamma)^2 + gamma s, on s in [0, 4]:
///   d lambda_{0,gamma}(s) = sqrt((4-s) s) / (2 pi (gamma s + (1-gamma)^2)) ds.
class ShiftedMpMeasure {
 public:
  explicit ShiftedMpMeasure(double gamma) : base_(gamma) {}
  double density(double s) const;
  double cdf(double s) const;
  /// Integral of [(1-gamma)^2 + gamma s] d lambda_{0,gamma}(s) over [0, s].
  double weighted_moment(double s) const;
  double quantile(double mass) const;

 private:
  double to_x(double s) const;
  MpMeasure base_;
};

/// Both sides of the matched-mass moment comparison for the shifted measure:
/// lhs = integral_0^{u} [(1-gamma)^2 + gamma x] d lambda_{0,gamma}, with u the
/// alpha-quantile of lambda_{0,gamma}; rhs = the same integrand against
/// lambda_1 up to 4 t_1(alpha)^2. The comparison lhs >= rhs is what the
/// sample-count bound relies on.
struct MomentComparison {
  double lhs;
  double rhs;
};
MomentComparison matched_mass_moments(double gamma, double alpha);

// ---------------------------------------------------------------------------
// Sample-count thresholds for subspace S-OMP.

enum class SompRegime { fixed_r, proportional_r };

/// Right-hand side of the measurement-count condition:
///   fixed_r:         k (1+delta) 2 ln(n-k) / r
///   proportional_r:  k (1+delta)^2 [2 - F(alpha)]^2, alpha defaulting to r/k.
/// delta = 0 evaluates the delta -> 0 limit.
double somp_sample_bound(int k, int n, int r, double delta, SompRegime regime,
                         std::optional<double> alpha = std::nullopt);

// ---------------------------------------------------------------------------
// Information-theoretic conditions.

/// h(p) = -p ln p - (1-p) ln(1-p), h(0) = h(1) = 0.
double binary_entropy(double p);

/// h(eps, alpha) = eps h(alpha) + (1-eps) h(alpha / (1/eps - 1)), alpha in [0, 1-eps].
double entropy_pair(double epsilon, double alpha);

/// g(alpha, X) = (1 / (alpha ||X||_F^2)) * sum of the floor(alpha k) smallest
/// squared nonzero-row norms. Returns 0 when floor(alpha k) = 0.
double g_lower(double alpha, const Matrix& X);

/// alpha -> g(alpha, class). Callers pass either an analytic profile or one
/// sampled from a realization via empirical_profile.
using GProfile = std::function<double(double)>;
GProfile flat_profile();
GProfile empirical_profile(const Matrix& X);

struct BoundInputs {
  double epsilon = 0.1;  // k/n
  double rho = 0.4;      // m/n
  double alpha = 0.2;    // fractional distortion
  int r = 1;             // snapshots
  double snr = 10.0;     // linear, not dB
  GProfile g_profile = flat_profile();
  std::vector<double> kappa;  // eigenvalue bounds of X^T X, nonincreasing
  double sigma_w = 1.0;
};

struct MlSufficientResult {
  bool snr_ok = false;
  /// +infinity when gamma(u) <= 1 somewhere on [alpha, 1-eps].
  double rho_threshold = 0.0;
  bool satisfied = false;
  double maximizer = 0.0;  // arg max over u
  std::string note;
};

/// SNR gate SNR > 1/(alpha g(alpha)) and sampling threshold
///   eps + (1/r) max_{u in [alpha, 1-eps]} 2 h(eps,u) / (ln gamma(u) + 1/gamma(u) - 1),
/// gamma(u) = SNR u g(u). The maximum is located on a 10^4-point grid and
/// refined with Brent's method.
MlSufficientResult ml_sufficient(const BoundInputs& in);

/// Inner objective of ml_sufficient at u (exposed for brute-force checks).
double ml_sufficient_objective(const BoundInputs& in, double u);

/// (h(eps) - h(eps, alpha) + I/n) / sum_l (1/2) ln(1 + kappa_l / sigma_w^2).
double ml_necessary_rho(const BoundInputs& in, double mutual_info_rate);

// ---------------------------------------------------------------------------

struct ChiTailBounds {
  double upper;  // bound on P{Z > (1+eps) r}
  double lower;  // bound on P{Z < (1-eps) r}
};

/// Chernoff-type tail bounds for Z ~ chi^2(r): exp(-r eps^2 / 4) and
/// exp(-(r/2)(-ln(1-eps) - eps)).
ChiTailBounds chi_tail_bounds(int r_dof, double eps);

}  // namespace jsrec::asymptotics
