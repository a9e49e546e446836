#include <gtest/gtest.h>

#include "sv/integral_oracles.hpp"
#include "sv/special_fns.hpp"

using sv::IntegralFamily;
using sv::IntegralParams;
using sv::OracleMethod;
using sv::Rational;
using sv::SamplingPlan;

namespace {

SamplingPlan quad() {
  SamplingPlan p;
  p.method = OracleMethod::Quadrature;
  return p;
}

SamplingPlan mc(std::uint64_t samples, std::uint64_t seed = 1) {
  SamplingPlan p;
  p.method = OracleMethod::MonteCarlo;
  p.samples = samples;
  p.seed = seed;
  return p;
}

}  // namespace

TEST(ClosedForms, Examples) {
  EXPECT_EQ(sv::st_closed_form({IntegralFamily::Jp, 2, 1, 1, 0, 0, 1}), Rational(1, 96));
  EXPECT_EQ(sv::st_closed_form({IntegralFamily::Jp, 1, 1, 0, 0, 0, 1}), Rational(1, 12));
  EXPECT_EQ(sv::st_closed_form({IntegralFamily::Ix, 1, 1, 0, Rational(1, 2), 0, 1}), Rational(1, 24));
  // B(1/2; 2, 2) = 1/12, over 4 * 5
  EXPECT_EQ(sv::st_closed_form({IntegralFamily::Ix, 2, 2, 0, Rational(1, 2), 0, 1}), Rational(1, 240));
  EXPECT_EQ(sv::st_closed_form({IntegralFamily::IPrime, 2, 1, 0, Rational(1, 2), 0, 1}), Rational(1, 128));
  for (long n = 1; n <= 4; ++n)
    for (long q = 1; q <= 4; ++q) {
      Rational j0 = sv::st_closed_form({IntegralFamily::Jp, n, q, 0, 0, 0, 1});
      EXPECT_EQ(sv::st_closed_form({IntegralFamily::Ix, n, q, 0, 0, 0, 1}), j0);
      EXPECT_EQ(sv::st_closed_form({IntegralFamily::IPrime, n, q, 0, 0, 0, 1}), j0);
      for (long k = 0; k < 4; ++k) {
        Rational x(k, 4);
        EXPECT_EQ(sv::st_closed_form({IntegralFamily::IPrime, n, q, 0, x, 0, 1}) / j0,
                  sv::pow(Rational(1) - x, n + q - 1));
      }
    }
  EXPECT_EQ(sv::cusp_closed_form(1, Rational(7)).to_string(), "2*pi");
  EXPECT_EQ(sv::cusp_closed_form(2, 1).to_string(), "pi");  // times eps^2 = 1/100: pi/100
  EXPECT_EQ(sv::cusp_closed_form(3, 0).to_string(), "pi");
}

TEST(ClosedForms, CorrelationTelescopes) {
  for (long n = 1; n <= 4; ++n)
    for (long q = 2; q <= 4; ++q)
      for (long i = 0; i < 4; ++i)
        for (long j = 0; j < 4; ++j) {
          Rational x(i, 4), x1(j, 4);
          Rational x2 = x + x1 * (Rational(1) - x);
          EXPECT_EQ(Rational(1) - x2, (Rational(1) - x) * (Rational(1) - x1));
          Rational corr = sv::st_closed_form({IntegralFamily::Corr, n, q, 0, x, x1, 1});
          Rational ip = sv::st_closed_form({IntegralFamily::IPrime, n, q, 0, x1, 0, 1});
          EXPECT_EQ(corr / ip, sv::pow(Rational(1) - x, n + q - 2));
        }
}

TEST(Quadrature, JpBothPaths) {
  for (long n = 1; n <= 4; ++n)
    for (long q = 1; q <= 4; ++q)
      for (Rational p : {Rational(0), Rational(1, 2), Rational(1), Rational(2)}) {
        auto c = sv::J_p_integral(n, q, p, quad());
        EXPECT_TRUE(c.passed) << n << " " << q << " " << sv::to_string(p) << " rel " << c.relative_error;
        ASSERT_TRUE(c.polar);
        EXPECT_NEAR(*c.polar, c.closed_form, 1e-10 * c.closed_form);
        EXPECT_NEAR(c.numeric, c.closed_form, 1e-10 * c.closed_form);
      }
}

TEST(Quadrature, IxAndIPrimeBothPaths) {
  for (long n = 1; n <= 4; ++n)
    for (long q = 1; q <= 4; ++q)
      for (long k = 0; k < 4; ++k) {
        Rational x(k, 4);
        auto ix = sv::I_x_integral(n, q, x, quad());
        EXPECT_TRUE(ix.passed) << "ix " << n << " " << q << " " << sv::to_string(x) << " rel " << ix.relative_error;
        auto ip = sv::I_prime_integral(n, q, x, quad());
        EXPECT_TRUE(ip.passed) << "iprime " << n << " " << q << " " << sv::to_string(x) << " rel " << ip.relative_error;
      }
}

TEST(Quadrature, IxMatchesIncompleteBetaQuadrature) {
  // the (s, t) integral against the one-dimensional incomplete Beta by quadrature
  for (long n = 1; n <= 4; ++n)
    for (long q = 1; q <= 4; ++q)
      for (double x : {0.1, 0.3, 0.6, 0.9}) {
        IntegralParams ip{IntegralFamily::Ix, n, q, 0, Rational(0), 0, 1};
        // x enters as an exact rational; use the double nearest to it on both sides
        ip.x = Rational(static_cast<long>(std::lround(x * 10)), 10);
        double v = sv::st_quadrature_cartesian(ip).value;
        double beta = sv::incomplete_beta(1 - x, static_cast<double>(n), static_cast<double>(q));
        EXPECT_NEAR(v, beta / (4.0 * static_cast<double>(n + q + 1)), 1e-11 * beta);
      }
}

TEST(Quadrature, CorrelationRatioIndependentOfX1) {
  for (long n = 1; n <= 3; ++n)
    for (long q = 2; q <= 4; ++q)
      for (long i = 0; i < 4; ++i) {
        Rational x(i, 4);
        double first = 0;
        for (long j = 0; j < 4; ++j) {
          Rational x1(j, 4);
          auto r = sv::correlation_ratio_numeric(n, q, x, x1);
          double predicted = sv::to_double(r.predicted);
          EXPECT_NEAR(r.numeric, predicted, 1e-9 * predicted);
          if (j == 0) first = r.numeric;
          EXPECT_NEAR(r.numeric, first, 1e-9 * first);
          auto c = sv::correlation_integral(n, q, x, x1, quad());
          EXPECT_TRUE(c.passed) << n << " " << q << " " << sv::to_string(x) << " " << sv::to_string(x1);
        }
      }
  // n = 2, q = 2, x = 1/2: ratio 1/4 for every x1
  for (long j = 0; j < 3; ++j)
    EXPECT_NEAR(sv::correlation_ratio_numeric(2, 2, Rational(1, 2), Rational(j, 4)).numeric, 0.25, 1e-10);
}

TEST(MonteCarlo, StFamiliesWithinThreeSigma) {
  auto plan = mc(400'000, 11);
  int checked = 0;
  for (auto fam : {IntegralFamily::Jp, IntegralFamily::Ix, IntegralFamily::IPrime, IntegralFamily::Corr}) {
    for (long n : {1, 3})
      for (long q : {2, 3}) {
        IntegralParams ip{fam, n, q, Rational(1, 2), Rational(1, 4), Rational(1, 4), 1};
        auto c = sv::st_integral(ip, plan);
        ASSERT_TRUE(c.mc);
        EXPECT_GT(c.mc->std_error, 0);
        // 4 sigma here: sixteen draws at 3 sigma would fail by chance too often
        EXPECT_LT(std::abs(*c.z_score), 4.0) << sv::to_string(fam) << " n=" << n << " q=" << q;
        ++checked;
      }
  }
  EXPECT_EQ(checked, 16);
}

TEST(MonteCarlo, CorrelationExamplePerX1) {
  auto plan = mc(1'000'000, 5);
  for (long j = 0; j < 3; ++j) {
    Rational x1(j, 4);
    auto corr = sv::correlation_integral(2, 2, Rational(1, 2), x1, plan);
    auto ip = sv::st_integral({IntegralFamily::IPrime, 2, 2, 0, x1, 0, 1}, plan);
    ASSERT_TRUE(corr.z_score && ip.z_score);
    EXPECT_LT(std::abs(*corr.z_score), 4.0);
    double ratio = corr.numeric / ip.numeric;
    double se = ratio * std::hypot(corr.mc->std_error / corr.numeric, ip.mc->std_error / ip.numeric);
    EXPECT_NEAR(ratio, 0.25, 4 * se);
  }
}

TEST(MonteCarlo, CuspExamples) {
  auto plan = mc(1'000'000, 3);
  auto a = sv::cusp_integral(1, Rational(3), 1.0, plan);
  EXPECT_NEAR(a.closed_form, 2 * M_PI, 1e-12);
  EXPECT_TRUE(a.passed) << a.numeric << " vs " << a.closed_form;
  auto b = sv::cusp_integral(2, 1, 0.1, plan);
  EXPECT_NEAR(b.closed_form, M_PI / 100, 1e-14);
  EXPECT_TRUE(b.passed) << b.numeric << " vs " << b.closed_form;
  auto c = sv::cusp_integral(3, 0, 1.0, plan);
  EXPECT_NEAR(c.closed_form, M_PI, 1e-12);
  EXPECT_TRUE(c.passed) << c.numeric << " vs " << c.closed_form;
  EXPECT_EQ(c.closed_form_exact, "pi*eps^2");
  EXPECT_THROW(sv::cusp_integral(2, 0, 1.0, quad()), sv::SamplingPlanInvalid);
  EXPECT_THROW(sv::cusp_integral(2, 0, -1.0, plan), sv::DomainError);
}

TEST(MonteCarlo, DeterministicGivenSeed) {
  auto plan = mc(50'000, 42);
  auto a = sv::cusp_monte_carlo(3, Rational(1, 2), 0.5, plan);
  auto b = sv::cusp_monte_carlo(3, Rational(1, 2), 0.5, plan);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.std_error, b.std_error);
  auto c = sv::cusp_monte_carlo(3, Rational(1, 2), 0.5, mc(50'000, 43));
  EXPECT_NE(a.value, c.value);
  IntegralParams ip{IntegralFamily::Corr, 2, 3, 0, Rational(1, 4), Rational(1, 2), 1};
  EXPECT_EQ(sv::st_monte_carlo(ip, plan).value, sv::st_monte_carlo(ip, plan).value);
}

TEST(MonteCarlo, StandardErrorScalesAsInverseRootN) {
  IntegralParams ip{IntegralFamily::Ix, 2, 2, 0, Rational(1, 4), 0, 1};
  auto small = sv::st_monte_carlo(ip, mc(20'000, 9));
  auto large = sv::st_monte_carlo(ip, mc(2'000'000, 9));
  double ratio = large.std_error / small.std_error;
  EXPECT_GT(ratio, 0.05);
  EXPECT_LT(ratio, 0.2);
  auto cs = sv::cusp_monte_carlo(2, 1, 1.0, mc(20'000, 9));
  auto cl = sv::cusp_monte_carlo(2, 1, 1.0, mc(2'000'000, 9));
  EXPECT_GT(cl.std_error / cs.std_error, 0.05);
  EXPECT_LT(cl.std_error / cs.std_error, 0.2);
}

TEST(MonteCarlo, PlanValidation) {
  SamplingPlan bad = mc(10);
  EXPECT_THROW(sv::cusp_monte_carlo(2, 0, 1.0, bad), sv::SamplingPlanInvalid);
  bad = mc(1000);
  bad.strata = 0;
  EXPECT_THROW(sv::st_monte_carlo({IntegralFamily::Jp, 1, 1, 0, 0, 0, 1}, bad), sv::SamplingPlanInvalid);
}

TEST(Params, DomainChecks) {
  EXPECT_THROW(sv::st_closed_form({IntegralFamily::Corr, 2, 1, 0, 0, 0, 1}), sv::DomainError);
  EXPECT_THROW(sv::st_closed_form({IntegralFamily::Ix, 2, 1, 0, 1, 0, 1}), sv::DomainError);
  EXPECT_THROW(sv::st_closed_form({IntegralFamily::Jp, 0, 1, 0, 0, 0, 1}), sv::DomainError);
  EXPECT_THROW(sv::st_closed_form({IntegralFamily::Jp, 1, 1, -1, 0, 0, 1}), sv::DomainError);
  EXPECT_EQ(sv::parse_integral_family("iprime"), IntegralFamily::IPrime);
  EXPECT_THROW(sv::parse_integral_family("foo"), sv::ParseError);
}

TEST(Rng, CounterBasedStreams) {
  sv::CounterRng a(7, 3), b(7, 3), c(7, 4);
  std::vector<std::uint64_t> va, vb;
  for (int i = 0; i < 100; ++i) {
    va.push_back(a.next_u64());
    vb.push_back(b.next_u64());
    EXPECT_NE(va.back(), c.next_u64());
  }
  EXPECT_EQ(va, vb);
  EXPECT_EQ(sv::CounterRng(7, 3).at(41), va[41]);
  // uniform01 mean and range
  sv::CounterRng u(1, 0);
  double sum = 0;
  for (int i = 0; i < 100000; ++i) {
    double v = u.uniform01();
    ASSERT_GE(v, 0.0);
    ASSERT_LT(v, 1.0);
    sum += v;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.005);
}
