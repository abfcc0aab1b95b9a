#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "jsrec/asymptotics.hpp"
#include "jsrec/error.hpp"

namespace jsrec::asymptotics {

using detail::require;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;

template <class F>
double gk_integrate(F f, double a, double b) {
  if (b <= a) return 0.0;
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 12, 1e-12, &err);
}

// Inverts a monotone mass function on [0, pi/2] in the angle variable.
template <class Mass>
double invert_angle(Mass mass_at, double target) {
  if (target <= 0.0) return 0.0;
  if (target >= 1.0) return kHalfPi;
  auto f = [&](double th) { return mass_at(th) - target; };
  boost::uintmax_t max_iter = 200;
  const auto [lo, hi] = boost::math::tools::toms748_solve(f, 0.0, kHalfPi, -target, 1.0 - target,
                                                          boost::math::tools::eps_tolerance<double>(50), max_iter);
  return 0.5 * (lo + hi);
}

}  // namespace

// ---------------------------------------------------------------------------
// MpMeasure

MpMeasure::MpMeasure(double gamma) : gamma_(gamma) {
  require(gamma > 0.0 && gamma <= 1.0, "Marchenko-Pastur gamma must lie in (0, 1]");
  lo_ = (1.0 - gamma) * (1.0 - gamma);
  hi_ = (1.0 + gamma) * (1.0 + gamma);
}

double MpMeasure::density(double x) const {
  if (x <= lo_ || x >= hi_ || x <= 0.0) return 0.0;
  return std::sqrt((hi_ - x) * (x - lo_)) / (2.0 * kPi * gamma_ * gamma_ * x);
}

double MpMeasure::theta_of(double x) const {
  if (x <= lo_) return 0.0;
  if (x >= hi_) return kHalfPi;
  return std::asin(std::sqrt((x - lo_) / (hi_ - lo_)));
}

// With x = lo + (hi - lo) sin^2(theta) and hi - lo = 4 gamma,
//   d lambda_gamma = 16 sin^2 cos^2 / (pi x) d theta.
double MpMeasure::integrate(double theta_hi, bool weight_by_x) const {
  const double width = hi_ - lo_;
  if (weight_by_x) {
    return gk_integrate(
        [](double th) {
          const double s = std::sin(th), c = std::cos(th);
          return 16.0 * s * s * c * c / kPi;
        },
        0.0, theta_hi);
  }
  return gk_integrate(
      [&](double th) {
        const double s = std::sin(th), c = std::cos(th);
        const double s2 = s * s;
        return 16.0 * s2 * c * c / (kPi * (lo_ + width * s2));
      },
      0.0, theta_hi);
}

double MpMeasure::cdf(double x) const { return x >= hi_ ? 1.0 : integrate(theta_of(x), false); }

double MpMeasure::first_moment(double x) const { return integrate(theta_of(x), true); }

double MpMeasure::theta_quantile(double mass) const {
  return invert_angle([&](double th) { return integrate(th, false); }, mass);
}

double MpMeasure::quantile(double mass) const {
  require(mass >= 0.0 && mass <= 1.0, "quantile mass must lie in [0, 1]");
  const double s = std::sin(theta_quantile(mass));
  return lo_ + (hi_ - lo_) * s * s;
}

double mp_density(double x, double gamma) { return MpMeasure(gamma).density(x); }

// ---------------------------------------------------------------------------

double t1_of_alpha(double alpha) {
  require(alpha >= 0.0 && alpha <= 1.0, "t1_of_alpha: alpha must lie in [0, 1]");
  if (alpha == 0.0) return 0.0;
  return 0.5 * std::sqrt(MpMeasure(1.0).quantile(alpha));
}

double t_gamma_of_alpha(double alpha, double gamma) {
  require(alpha >= 0.0 && alpha <= 1.0, "t_gamma_of_alpha: alpha must lie in [0, 1]");
  const MpMeasure mp(gamma);
  const double q = mp.quantile(alpha);
  return (std::sqrt(q) - (1.0 - gamma)) / (2.0 * gamma);
}

double big_F(double alpha) {
  require(alpha > 0.0 && alpha <= 1.0, "big_F: alpha must lie in (0, 1]");
  const double t1 = t1_of_alpha(alpha);
  return MpMeasure(1.0).first_moment(4.0 * t1 * t1) / alpha;
}

double lower_singular_sum_limit(double gamma, double alpha) {
  require(alpha >= 0.0 && alpha <= 1.0, "lower_singular_sum_limit: alpha must lie in [0, 1]");
  const MpMeasure mp(gamma);
  return mp.first_moment(mp.quantile(alpha));
}

double lower_singular_sum_bound(double gamma, double alpha) {
  require(gamma > 0.0 && gamma <= 1.0, "lower_singular_sum_bound: gamma must lie in (0, 1]");
  return alpha * (1.0 - gamma) * (1.0 - gamma) + alpha * gamma * big_F(alpha);
}

// ---------------------------------------------------------------------------
// ShiftedMpMeasure, integrated in its own angle s = 4 sin^2(phi):
//   d lambda_{0,gamma} = 16 sin^2 cos^2 / (pi (4 gamma sin^2 + (1-gamma)^2)) d phi.

namespace {

double shifted_integral(double gamma, double phi_hi, bool weighted) {
  const double c0 = (1.0 - gamma) * (1.0 - gamma);
  return gk_integrate(
      [=](double ph) {
        const double s = std::sin(ph), c = std::cos(ph);
        const double s2 = s * s;
        const double shift = 4.0 * gamma * s2 + c0;  // (1-gamma)^2 + gamma * (4 sin^2)
        const double dens = 16.0 * s2 * c * c / (kPi * shift);
        return weighted ? dens * shift : dens;
      },
      0.0, phi_hi);
}

double phi_of(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 4.0) return kHalfPi;
  return std::asin(std::sqrt(s / 4.0));
}

}  // namespace

double ShiftedMpMeasure::to_x(double s) const {
  const double g = base_.gamma();
  return (1.0 - g) * (1.0 - g) + g * s;
}

double ShiftedMpMeasure::density(double s) const {
  if (s <= 0.0 || s >= 4.0) return 0.0;
  return std::sqrt((4.0 - s) * s) / (2.0 * kPi * to_x(s));
}

double ShiftedMpMeasure::cdf(double s) const { return s >= 4.0 ? 1.0 : shifted_integral(base_.gamma(), phi_of(s), false); }

double ShiftedMpMeasure::weighted_moment(double s) const {
  return shifted_integral(base_.gamma(), phi_of(s), true);
}

double ShiftedMpMeasure::quantile(double mass) const {
  require(mass >= 0.0 && mass <= 1.0, "quantile mass must lie in [0, 1]");
  const double g = base_.gamma();
  const double phi = invert_angle([&](double ph) { return shifted_integral(g, ph, false); }, mass);
  const double s = std::sin(phi);
  return 4.0 * s * s;
}

MomentComparison matched_mass_moments(double gamma, double alpha) {
  require(alpha >= 0.0 && alpha <= 1.0, "matched_mass_moments: alpha must lie in [0, 1]");
  const ShiftedMpMeasure shifted(gamma);
  const MpMeasure one(1.0);
  const double c0 = (1.0 - gamma) * (1.0 - gamma);
  const double t1 = t1_of_alpha(alpha);
  const double upper = 4.0 * t1 * t1;
  MomentComparison out;
  out.lhs = shifted.weighted_moment(shifted.quantile(alpha));
  out.rhs = c0 * one.cdf(upper) + gamma * one.first_moment(upper);
  return out;
}

}  // namespace jsrec::asymptotics
