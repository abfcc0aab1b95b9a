#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include <boost/math/tools/minima.hpp>

#include "jsrec/asymptotics.hpp"
#include "jsrec/error.hpp"

namespace jsrec::asymptotics {

using detail::require;

namespace {

constexpr double kDomainSlack = 1e-12;

void check_epsilon(double epsilon) { require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)"); }

void check_distortion(double epsilon, double alpha) {
  require(alpha >= 0.0, "alpha must be nonnegative");
  require(alpha <= 1.0 - epsilon + kDomainSlack, "alpha must not exceed 1 - epsilon");
}

int floor_count(double alpha, int k) {
  return static_cast<int>(std::floor(alpha * k + 1e-9));
}

}  // namespace

double somp_sample_bound(int k, int n, int r, double delta, SompRegime regime, std::optional<double> alpha) {
  require(k >= 1 && k < n, "somp_sample_bound: need 1 <= k < n");
  require(r >= 1, "somp_sample_bound: r must be positive");
  require(delta >= 0.0, "somp_sample_bound: delta must be nonnegative");
  if (regime == SompRegime::fixed_r)
    return k * (1.0 + delta) * 2.0 * std::log(static_cast<double>(n - k)) / r;
  const double a = alpha.value_or(static_cast<double>(r) / k);
  require(a > 0.0 && a <= 1.0, "somp_sample_bound: alpha must lie in (0, 1]");
  const double gap = 2.0 - big_F(a);
  return k * (1.0 + delta) * (1.0 + delta) * gap * gap;
}

double binary_entropy(double p) {
  require(p >= 0.0 && p <= 1.0, "binary_entropy: p must lie in [0, 1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log(p) - (1.0 - p) * std::log1p(-p);
}

double entropy_pair(double epsilon, double alpha) {
  check_epsilon(epsilon);
  check_distortion(epsilon, alpha);
  alpha = std::min(alpha, 1.0 - epsilon);
  const double inner = std::min(1.0, alpha / (1.0 / epsilon - 1.0));
  return epsilon * binary_entropy(alpha) + (1.0 - epsilon) * binary_entropy(inner);
}

double g_lower(double alpha, const Matrix& X) {
  return empirical_profile(X)(alpha);
}

GProfile flat_profile() {
  return [](double) { return 1.0; };
}

GProfile empirical_profile(const Matrix& X) {
  auto norms = std::make_shared<std::vector<double>>();
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    const double v = X.row(i).squaredNorm();
    if (v > 0.0) norms->push_back(v);
  }
  require(!norms->empty(), "g profile: X has no nonzero rows");
  std::sort(norms->begin(), norms->end());
  double total = 0.0;
  for (double v : *norms) total += v;
  return [norms, total](double alpha) {
    require(alpha > 0.0 && alpha <= 1.0, "g profile: alpha must lie in (0, 1]");
    const int k = static_cast<int>(norms->size());
    const int terms = std::min(k, floor_count(alpha, k));
    double partial = 0.0;
    for (int i = 0; i < terms; ++i) partial += (*norms)[static_cast<std::size_t>(i)];
    return partial / (alpha * total);
  };
}

double ml_sufficient_objective(const BoundInputs& in, double u) {
  const double g = in.snr * u * in.g_profile(u);
  return 2.0 * entropy_pair(in.epsilon, u) / (std::log(g) + 1.0 / g - 1.0);
}

MlSufficientResult ml_sufficient(const BoundInputs& in) {
  check_epsilon(in.epsilon);
  require(in.alpha > 0.0, "alpha must be positive");
  check_distortion(in.epsilon, in.alpha);
  require(in.r >= 1, "r must be positive");
  require(in.snr > 0.0 && std::isfinite(in.snr), "snr must be positive and finite");
  require(static_cast<bool>(in.g_profile), "g profile is missing");

  MlSufficientResult out;
  const double lo = in.alpha;
  const double hi = std::max(lo, 1.0 - in.epsilon);
  out.snr_ok = in.snr > 1.0 / (in.alpha * in.g_profile(in.alpha));

  constexpr int kGrid = 10000;
  double best_u = lo;
  double best = -std::numeric_limits<double>::infinity();
  bool degenerate = false;
  for (int i = 0; i < kGrid; ++i) {
    const double u = hi > lo ? lo + (hi - lo) * i / (kGrid - 1) : lo;
    if (in.snr * u * in.g_profile(u) <= 1.0) {
      degenerate = true;
      break;
    }
    const double v = ml_sufficient_objective(in, u);
    if (v > best) {
      best = v;
      best_u = u;
    }
  }
  if (degenerate) {
    out.rho_threshold = std::numeric_limits<double>::infinity();
    out.satisfied = false;
    out.note = "SNR insufficient for bound evaluation";
    return out;
  }

  if (hi > lo) {
    const double step = (hi - lo) / (kGrid - 1);
    const double a = std::max(lo, best_u - step);
    const double b = std::min(hi, best_u + step);
    auto neg = [&](double u) { return -ml_sufficient_objective(in, u); };
    const auto [u_star, f_star] =
        boost::math::tools::brent_find_minima(neg, a, b, std::numeric_limits<double>::digits / 2);
    if (-f_star > best) {
      best = -f_star;
      best_u = u_star;
    }
  }
  out.maximizer = best_u;
  out.rho_threshold = in.epsilon + best / in.r;
  out.satisfied = out.snr_ok && in.rho > out.rho_threshold;
  return out;
}

double ml_necessary_rho(const BoundInputs& in, double mutual_info_rate) {
  check_epsilon(in.epsilon);
  check_distortion(in.epsilon, in.alpha);
  require(in.r >= 1, "r must be positive");
  require(static_cast<int>(in.kappa.size()) == in.r, "kappa must list exactly r eigenvalue bounds");
  require(in.sigma_w > 0.0, "sigma_w must be positive");
  require(mutual_info_rate >= 0.0, "mutual information rate must be nonnegative");
  double capacity = 0.0;
  for (double kappa : in.kappa) {
    require(kappa >= 0.0, "kappa values must be nonnegative");
    capacity += 0.5 * std::log1p(kappa / (in.sigma_w * in.sigma_w));
  }
  if (capacity == 0.0) throw precondition_error("zero-signal class: all kappa are zero");
  const double bits = binary_entropy(in.epsilon) - entropy_pair(in.epsilon, in.alpha) + mutual_info_rate;
  return bits / capacity;
}

ChiTailBounds chi_tail_bounds(int r_dof, double eps) {
  require(r_dof >= 1, "chi_tail_bounds: r must be positive");
  require(eps > 0.0 && eps < 1.0, "chi_tail_bounds: eps must lie in (0, 1)");
  const double r = r_dof;
  return {std::exp(-r * eps * eps / 4.0), std::exp(-(r / 2.0) * (-std::log1p(-eps) - eps))};
}

}  // namespace jsrec::asymptotics
