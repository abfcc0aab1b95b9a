#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "jsrec/asymptotics.hpp"
#include "jsrec/error.hpp"
#include "oracles.hpp"

using namespace jsrec;
using namespace jsrec::asymptotics;

namespace {

const oracle::QuarterCircleTable& table() {
  static const oracle::QuarterCircleTable t(1000000);
  return t;
}

// Midpoint rule in theta for x = lo + (hi - lo) sin^2 theta applied to the
// library density. The transformed integrand is smooth, so this converges fast.
double mass_by_midpoint(double gamma, double x_hi, bool weight_by_x, int points = 20000) {
  const double lo = (1 - gamma) * (1 - gamma), hi = (1 + gamma) * (1 + gamma);
  const double th_hi = x_hi >= hi ? std::numbers::pi / 2 : std::asin(std::sqrt((x_hi - lo) / (hi - lo)));
  const double h = th_hi / points;
  double sum = 0.0;
  for (int i = 0; i < points; ++i) {
    const double th = (i + 0.5) * h;
    const double x = lo + (hi - lo) * std::sin(th) * std::sin(th);
    const double dx = (hi - lo) * 2.0 * std::sin(th) * std::cos(th);
    sum += mp_density(x, gamma) * dx * (weight_by_x ? x : 1.0);
  }
  return sum * h;
}

}  // namespace

TEST_CASE("mp_density: support, gamma = 1 form, normalization") {
  CHECK(mp_density(0.1, 0.5) == 0.0);  // below (1 - 0.5)^2 = 0.25
  CHECK(mp_density(2.3, 0.5) == 0.0);  // above 2.25
  for (double x : {0.1, 0.7, 1.9, 3.5})
    CHECK(mp_density(x, 1.0) == doctest::Approx(std::sqrt((4 - x) * x) / (2 * std::numbers::pi * x)).epsilon(1e-14));
  CHECK(mass_by_midpoint(0.5, 10.0, false) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("MpMeasure: total mass is one for every gamma") {
  for (double g : {0.1, 0.3, 0.5, 0.9, 1.0}) {
    const MpMeasure mp(g);
    CHECK(std::abs(mp.cdf(mp.support_hi() * (1 - 1e-14)) - 1.0) < 1e-8);
    CHECK(std::abs(mass_by_midpoint(g, 10.0, false) - 1.0) < 1e-8);
    // E[x] = 1 for the squared singular values of an N(0, 1/m) matrix.
    CHECK(mp.first_moment(mp.support_hi()) == doctest::Approx(1.0).epsilon(1e-10));
  }
  CHECK_THROWS_AS(MpMeasure(0.0), precondition_error);
  CHECK_THROWS_AS(MpMeasure(1.5), precondition_error);
}

TEST_CASE("MpMeasure: cdf and first moment against independent quadrature") {
  for (double g : {0.2, 0.6, 0.95, 1.0}) {
    const MpMeasure mp(g);
    for (double f : {0.1, 0.35, 0.6, 0.85}) {
      const double x = mp.support_lo() + f * (mp.support_hi() - mp.support_lo());
      CHECK(mp.cdf(x) == doctest::Approx(mass_by_midpoint(g, x, false)).epsilon(1e-9));
      CHECK(mp.first_moment(x) == doctest::Approx(mass_by_midpoint(g, x, true)).epsilon(1e-9));
    }
  }
  for (double x : {0.3, 1.0, 2.0, 3.2}) {
    CHECK(MpMeasure(1.0).cdf(x) == doctest::Approx(table().cdf(x)).epsilon(1e-7));
    CHECK(MpMeasure(1.0).first_moment(x) == doctest::Approx(table().first_moment(x)).epsilon(1e-7));
  }
}

TEST_CASE("MpMeasure: quantile inverts cdf") {
  for (double g : {0.25, 0.7, 1.0}) {
    const MpMeasure mp(g);
    for (int i = 1; i < 20; ++i) {
      const double a = i / 20.0;
      CHECK(mp.cdf(mp.quantile(a)) == doctest::Approx(a).epsilon(1e-10));
    }
    CHECK(mp.quantile(0.0) == doctest::Approx(mp.support_lo()));
    CHECK(mp.quantile(1.0) == doctest::Approx(mp.support_hi()));
  }
}

TEST_CASE("t1_of_alpha") {
  CHECK(t1_of_alpha(1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(t1_of_alpha(0.0) == 0.0);
  CHECK(t1_of_alpha(1e-6) < 1e-3);
  const double u = table().u_at_mass(0.5);
  CHECK(std::abs(t1_of_alpha(0.5) - u / 2.0) < 1e-6);
  // Closed form: lambda_1([0, 4 t^2]) = (2/pi)(asin t + t sqrt(1 - t^2)).
  for (double a : {0.1, 0.3, 0.7, 0.9}) {
    const double t = t1_of_alpha(a);
    CHECK((2 / std::numbers::pi) * (std::asin(t) + t * std::sqrt(1 - t * t)) == doctest::Approx(a).epsilon(1e-10));
  }
  for (double a : {0.2, 0.5, 0.8}) CHECK(t_gamma_of_alpha(a, 1.0) == doctest::Approx(t1_of_alpha(a)).epsilon(1e-10));
}

TEST_CASE("big_F: endpoints, oracle value, monotonicity") {
  CHECK(std::abs(big_F(1.0) - 1.0) < 1e-8);
  CHECK(big_F(1e-4) < 1e-2);
  const double u = table().u_at_mass(0.5);
  // F(0.5) = (1/0.5) * integral_0^u v^2 sqrt(4 - v^2)/pi dv, tabulated independently.
  CHECK(std::abs(big_F(0.5) - table().first_moment(u * u) / 0.5) < 1e-6);
  double prev = 0.0;
  for (int i = 1; i <= 1000; ++i) {
    const double f = big_F(i / 1000.0);
    CHECK(f > prev);
    prev = f;
  }
  CHECK_THROWS_AS(big_F(0.0), precondition_error);
}

TEST_CASE("lower singular sum: limit, bound and the matched-mass comparison") {
  for (double g : {0.3, 0.6, 0.9}) {
    for (double a : {0.2, 0.5, 0.8}) {
      const MomentComparison mm = matched_mass_moments(g, a);
      CHECK(mm.lhs >= mm.rhs - 1e-10);
      // lhs is the first moment of the lowest a-mass of lambda_gamma; rhs is the closed-form bound.
      CHECK(mm.lhs == doctest::Approx(lower_singular_sum_limit(g, a)).epsilon(1e-8));
      CHECK(mm.rhs == doctest::Approx(lower_singular_sum_bound(g, a)).epsilon(1e-8));
      const double q = MpMeasure(g).quantile(a);
      CHECK(lower_singular_sum_limit(g, a) == doctest::Approx(mass_by_midpoint(g, q, true)).epsilon(1e-8));
    }
  }
  CHECK(lower_singular_sum_limit(0.5, 1.0) == doctest::Approx(1.0).epsilon(1e-10));
  // (r/m)(1/gamma - 1)^2 form of the first term.
  const double g = 0.5, a = 0.4, r = 40, m = 400;  // k = gamma^2 m = 100, alpha = r / k
  CHECK(lower_singular_sum_bound(g, a) ==
        doctest::Approx(r / m * (1 / g - 1) * (1 / g - 1) + a * g * big_F(a)).epsilon(1e-12));
}

TEST_CASE("shifted measure: pullback identities and CDF dominance") {
  for (double g : {0.3, 0.6, 0.9}) {
    const ShiftedMpMeasure sh(g);
    const MpMeasure mp(g), one(1.0);
    CHECK(std::abs(sh.cdf(4.0 * (1 - 1e-14)) - 1.0) < 1e-8);
    for (int i = 0; i <= 200; ++i) {
      const double s = 4.0 * i / 200.0;
      CHECK(sh.cdf(s) == doctest::Approx(mp.cdf((1 - g) * (1 - g) + g * s)).epsilon(1e-9));
      CHECK(one.cdf(s) >= sh.cdf(s) - 1e-10);
    }
    for (double a : {0.25, 0.5, 0.75}) CHECK(sh.cdf(sh.quantile(a)) == doctest::Approx(a).epsilon(1e-9));
    for (double s : {0.5, 2.0, 3.5})
      CHECK(sh.density(s) == doctest::Approx(std::sqrt((4 - s) * s) / (2 * std::numbers::pi * (g * s + (1 - g) * (1 - g)))));
  }
}

// ---------------------------------------------------------------------------

TEST_CASE("somp_sample_bound") {
  CHECK(somp_sample_bound(10, 100, 1, 0.0, SompRegime::fixed_r) == doctest::Approx(2 * 10 * std::log(90.0)).epsilon(1e-14));
  CHECK(somp_sample_bound(10, 100, 1, 0.0, SompRegime::fixed_r) == doctest::Approx(89.996).epsilon(1e-5));
  CHECK(somp_sample_bound(10, 100, 1, 0.5, SompRegime::fixed_r) ==
        doctest::Approx(1.5 * 2 * 10 * std::log(90.0)).epsilon(1e-14));
  CHECK(std::abs(somp_sample_bound(25, 100, 25, 0.0, SompRegime::proportional_r) - 25.0) < 1e-8);
  CHECK(somp_sample_bound(25, 100, 1, 0.0, SompRegime::proportional_r, 1e-4) == doctest::Approx(100.0).epsilon(0.01));
  CHECK(somp_sample_bound(20, 100, 10, 0.0, SompRegime::proportional_r) ==
        doctest::Approx(20 * (2 - big_F(0.5)) * (2 - big_F(0.5))));
  CHECK_THROWS_AS(somp_sample_bound(100, 100, 1, 0.1, SompRegime::fixed_r), precondition_error);
  CHECK_THROWS_AS(somp_sample_bound(10, 100, 1, -0.1, SompRegime::fixed_r), precondition_error);
}

TEST_CASE("entropy functions") {
  CHECK(binary_entropy(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  for (double e : {0.05, 0.1, 0.2, 0.3}) {
    CHECK(entropy_pair(e, 0.0) == 0.0);
    CHECK(std::abs(entropy_pair(e, 1 - e) - binary_entropy(e)) < 1e-12);
    for (double a : {0.01, 0.2, 0.5})
      if (a <= 1 - e) CHECK(entropy_pair(e, a) == doctest::Approx(oracle::h_pair(e, a)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(entropy_pair(0.2, 0.81), precondition_error);
  CHECK_THROWS_AS(binary_entropy(1.1), precondition_error);
}

TEST_CASE("entropy_pair is concave in alpha and peaks at alpha = 1 - eps") {
  for (double e : {0.05, 0.2, 0.4}) {
    constexpr int kPoints = 400;
    const double step = (1 - e) / kPoints;
    int argmax = 0;
    double best = -1;
    for (int i = 0; i <= kPoints; ++i) {
      const double v = entropy_pair(e, i * step);
      if (v > best) {
        best = v;
        argmax = i;
      }
      if (i >= 1 && i < kPoints)
        CHECK(entropy_pair(e, (i - 1) * step) - 2 * v + entropy_pair(e, (i + 1) * step) <= 1e-12);
    }
    // d/dalpha = eps (h'(alpha) + h'(alpha eps / (1 - eps))) vanishes at alpha = 1 - eps.
    CHECK(argmax == kPoints);
    CHECK(best == doctest::Approx(binary_entropy(e)).epsilon(1e-12));
  }
}

TEST_CASE("g_lower") {
  Matrix flat = Matrix::Zero(10, 2);
  for (int i = 0; i < 4; ++i) flat.row(i).setConstant(3.0);
  CHECK(g_lower(0.5, flat) == doctest::Approx(1.0));
  CHECK(g_lower(1.0, flat) == doctest::Approx(1.0));
  Matrix X = Matrix::Zero(6, 1);
  X(0, 0) = std::sqrt(4.0);
  X(2, 0) = std::sqrt(1.0);
  X(3, 0) = std::sqrt(3.0);
  X(5, 0) = std::sqrt(2.0);
  CHECK(g_lower(0.5, X) == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(g_lower(1.0, X) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(g_lower(0.2, X) == 0.0);  // floor(0.8) = 0 terms
  CHECK_THROWS_AS(g_lower(0.5, Matrix::Zero(3, 3)), precondition_error);
}

// ---------------------------------------------------------------------------

TEST_CASE("ml_sufficient: inner maximum against a brute-force grid") {
  BoundInputs in;
  in.epsilon = 0.1;
  in.alpha = 0.2;
  in.r = 4;
  in.snr = 10;
  const MlSufficientResult res = ml_sufficient(in);
  CHECK(res.snr_ok);
  CHECK(res.note.empty());
  const double brute = oracle::brute_max_flat(0.1, 0.2, 10.0, 1000000);
  CHECK(std::abs((res.rho_threshold - in.epsilon) * in.r - brute) < 1e-6);
  CHECK(ml_sufficient_objective(in, res.maximizer) == doctest::Approx(brute).epsilon(1e-6));
  in.rho = res.rho_threshold + 0.01;
  CHECK(ml_sufficient(in).satisfied);
  in.rho = res.rho_threshold - 0.01;
  CHECK_FALSE(ml_sufficient(in).satisfied);
}

TEST_CASE("ml_sufficient: interior maximizers are refined") {
  BoundInputs in;
  in.epsilon = 0.3;
  in.alpha = 0.05;
  in.r = 2;
  in.snr = 200;
  const MlSufficientResult res = ml_sufficient(in);
  CHECK(std::abs((res.rho_threshold - in.epsilon) * in.r - oracle::brute_max_flat(0.3, 0.05, 200.0, 1000000)) < 1e-6);
}

TEST_CASE("ml_sufficient: limits, gate and degenerate SNR") {
  BoundInputs in;
  in.r = 1000000;
  CHECK(std::abs(ml_sufficient(in).rho_threshold - in.epsilon) < 1e-4);

  BoundInputs low;
  low.snr = 4.0;  // 1 / (alpha g(alpha)) = 5 for alpha = 0.2, flat g
  MlSufficientResult res = ml_sufficient(low);
  CHECK_FALSE(res.snr_ok);
  CHECK_FALSE(res.satisfied);
  CHECK(std::isinf(res.rho_threshold));
  CHECK(res.note == "SNR insufficient for bound evaluation");

  BoundInputs bad;
  bad.epsilon = 0.2;
  bad.alpha = 1.1;
  CHECK_THROWS_AS(ml_sufficient(bad), precondition_error);
}

TEST_CASE("ml_sufficient: threshold is nonincreasing in snr and r") {
  double prev = std::numeric_limits<double>::infinity();
  for (double snr : {6.0, 8.0, 12.0, 20.0, 50.0, 100.0, 1000.0}) {
    BoundInputs in;
    in.snr = snr;
    in.r = 3;
    const double t = ml_sufficient(in).rho_threshold;
    CHECK(t <= prev + 1e-12);
    prev = t;
  }
  prev = std::numeric_limits<double>::infinity();
  for (int r : {1, 2, 4, 8, 16, 64}) {
    BoundInputs in;
    in.r = r;
    const double t = ml_sufficient(in).rho_threshold;
    CHECK(t <= prev + 1e-12);
    prev = t;
  }
}

TEST_CASE("ml_sufficient: empirical g profile from a realization") {
  Matrix X = Matrix::Zero(50, 2);
  for (int i = 0; i < 10; ++i) X.row(i).setConstant(1.0 + 0.1 * i);
  BoundInputs in;
  in.g_profile = empirical_profile(X);
  in.alpha = 0.3;
  in.epsilon = 0.2;
  in.snr = 50;
  const MlSufficientResult res = ml_sufficient(in);
  CHECK(res.snr_ok);
  CHECK(std::isfinite(res.rho_threshold));
  CHECK(in.g_profile(0.3) == doctest::Approx(g_lower(0.3, X)));
}

TEST_CASE("ml_necessary_rho") {
  BoundInputs in;
  in.epsilon = 0.1;
  in.alpha = 0.05;
  in.r = 2;
  in.kappa = {4.0, 1.0};
  in.sigma_w = 1.0;
  const double expected = (oracle::h(0.1) - oracle::h_pair(0.1, 0.05)) / (0.5 * std::log(5.0) + 0.5 * std::log(2.0));
  CHECK(std::abs(ml_necessary_rho(in, 0.0) - expected) < 1e-10);

  BoundInputs full = in;
  full.alpha = 0.9;
  const double denom = 0.5 * std::log(5.0) + 0.5 * std::log(2.0);
  CHECK(ml_necessary_rho(full, 0.3) == doctest::Approx(0.3 / denom).epsilon(1e-12));

  BoundInputs doubled = in;
  doubled.kappa = {8.0, 2.0};
  CHECK(ml_necessary_rho(doubled, 0.0) < ml_necessary_rho(in, 0.0));

  BoundInputs zero = in;
  zero.kappa = {0.0, 0.0};
  CHECK_THROWS_WITH_AS(ml_necessary_rho(zero, 0.0), doctest::Contains("zero-signal class"), precondition_error);
  BoundInputs wrong = in;
  wrong.kappa = {1.0};
  CHECK_THROWS_AS(ml_necessary_rho(wrong, 0.0), precondition_error);
}

TEST_CASE("chi_tail_bounds") {
  const ChiTailBounds b = chi_tail_bounds(100, 0.5);
  CHECK(b.upper == doctest::Approx(std::exp(-6.25)).epsilon(1e-14));
  CHECK(b.lower == doctest::Approx(std::exp(-50 * (-std::log(0.5) - 0.5))).epsilon(1e-14));
  const ChiTailBounds tiny = chi_tail_bounds(10, 1e-6);
  CHECK(tiny.upper == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(tiny.lower == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(chi_tail_bounds(10, 1.0), precondition_error);
  CHECK_THROWS_AS(chi_tail_bounds(0, 0.5), precondition_error);
}
