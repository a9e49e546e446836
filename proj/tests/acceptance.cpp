// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "chain_generator.hpp"
#include "sv/configurations.hpp"
#include "sv/integral_oracles.hpp"
#include "sv/special_fns.hpp"
#include "sv/strata.hpp"
#include "sv/sv_ratios.hpp"
#include "sv/torus_count.hpp"

using sv::Rational;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Verdict torus_constant() {
  Verdict v;
  auto t0 = std::chrono::steady_clock::now();
  auto rows = sv::convergence_table({2000});
  const double secs = seconds_since(t0);
  const double dev = std::abs(rows[0].deviation);
  for (std::int64_t L = 1; L <= 50; ++L)
    if (sv::count_primitive(static_cast<double>(L)).count != sv::count_primitive_brute(L))
      v.fail("count mismatch at L=" + std::to_string(L));
  if (!(dev < 5e-3)) v.fail("deviation " + sv::format_real(dev));
  if (!(secs < 5)) v.fail("took " + sv::format_real(secs) + " s");
  if (v.ok)
    v.detail = "L=2000 count " + std::to_string(rows[0].lattice.count) + " |density-6/pi^2|=" + sv::format_real(dev) +
               " in " + sv::format_real(secs) + " s; brute force agrees for L<=50";
  return v;
}

Verdict integral_oracles() {
  Verdict v;
  auto t0 = std::chrono::steady_clock::now();
  const std::vector<Rational> ps{0, Rational(1, 2), 1, 2};
  const std::vector<Rational> xs{0, Rational(1, 4), Rational(1, 2), Rational(3, 4)};
  sv::SamplingPlan quad;
  quad.method = sv::OracleMethod::Quadrature;
  sv::SamplingPlan mc;
  mc.method = sv::OracleMethod::MonteCarlo;
  mc.samples = 1'000'000;
  mc.seed = 0;
  int checked = 0;
  double worst_rel = 0, worst_z = 0;
  auto record = [&](const sv::OracleComparison& c, const std::string& label) {
    ++checked;
    if (c.mc) {
      worst_z = std::max(worst_z, std::abs(c.z_score.value_or(0)));
    } else {
      worst_rel = std::max(worst_rel, c.relative_error);
      if (c.polar) worst_rel = std::max(worst_rel, std::abs(*c.polar - c.closed_form) / std::abs(c.closed_form));
    }
    if (!c.passed) v.fail(label + " numeric " + sv::format_real(c.numeric) + " vs " + c.closed_form_exact);
  };
  for (long n = 1; n <= 4; ++n)
    for (long q = 1; q <= 4; ++q) {
      const std::string nq = " n=" + std::to_string(n) + " q=" + std::to_string(q);
      for (const auto& p : ps) record(sv::J_p_integral(n, q, p, quad), "jp" + nq + " p=" + sv::to_string(p));
      for (const auto& x : xs) {
        record(sv::I_x_integral(n, q, x, quad), "ix" + nq + " x=" + sv::to_string(x));
        record(sv::I_prime_integral(n, q, x, quad), "iprime" + nq + " x=" + sv::to_string(x));
        if (q < 2) continue;
        for (const auto& x1 : xs)
          record(sv::correlation_integral(n, q, x, x1, quad),
                 "corr" + nq + " x=" + sv::to_string(x) + " x1=" + sv::to_string(x1));
      }
    }
  for (long q = 1; q <= 4; ++q)
    for (const auto& p : ps)
      for (double eps : {1.0, 0.1})
        record(sv::cusp_integral(q, p, eps, mc),
               "cusp q=" + std::to_string(q) + " p=" + sv::to_string(p) + " eps=" + sv::format_real(eps));
  const double secs = seconds_since(t0);
  if (!(secs < 120)) v.fail("took " + sv::format_real(secs) + " s");
  if (v.ok)
    v.detail = std::to_string(checked) + " comparisons; worst quadrature rel err " + sv::format_real(worst_rel) +
               ", worst cusp |z| " + sv::format_real(worst_z) + "; " + sv::format_real(secs) + " s";
  return v;
}

Verdict identity_suites() {
  Verdict v;
  auto t0 = std::chrono::steady_clock::now();
  std::vector<sv::IdentityReport> reps{sv::verify_combi1(30, 30), sv::verify_combi2(20, 20),
                                       sv::verify_combi4(12, 12, sv::unit_grid(9))};
  const double secs = seconds_since(t0);
  std::string counts;
  for (const auto& r : reps) {
    if (!r.passed()) v.fail(r.name + ": " + std::to_string(r.failures.size()) + " failures");
    if (r.checked == 0) v.fail(r.name + " checked nothing");
    counts += (counts.empty() ? "" : ", ") + r.name + " " + std::to_string(r.checked);
  }
  if (!(secs < 10)) v.fail("took " + sv::format_real(secs) + " s");
  if (v.ok) v.detail = counts + " checks, zero failures; " + sv::format_real(secs) + " s";
  return v;
}

Verdict ratio_consistency() {
  Verdict v;
  int checked = 0;
  auto expect = [&](bool cond, const std::string& what) {
    ++checked;
    if (!cond) v.fail(what);
  };
  std::vector<Rational> xs;
  for (long k = 0; k < 20; ++k) xs.emplace_back(k, 20);
  const std::vector<Rational> ps{0, Rational(1, 2), 1, 2, Rational(7, 3), 5};
  for (long d = 3; d <= 40; ++d) expect(sv::mean_area_p(d, 1) == Rational(1, d - 1), "mean area d=" + std::to_string(d));
  for (long n = 1; n <= 20; ++n)
    for (const auto& x : xs)
      expect(sv::region_tail(n, 1, x) == sv::first_cyl_tail(n + 2, x), "region_tail n=" + std::to_string(n));
  for (long d = 4; d <= 30; ++d)
    for (const auto& x : xs)
      expect(sv::correlation_ratio(d, x) == sv::first_cyl_tail(d, x) / (Rational(1) - x),
             "correlation d=" + std::to_string(d));
  for (long n = 1; n <= 20; ++n)
    for (const auto& p : ps)
      expect(sv::area_p_conf_ratio(n, 1, p) == sv::mean_area_p(n + 2, p), "area_p_conf n=" + std::to_string(n));
  for (long d = 3; d <= 30; ++d)
    for (long p = 0; p <= 12; ++p)
      expect(sv::mean_area_p(d, p) == Rational(1) / Rational(sv::binomial(p + d - 2, p)),
             "integer p d=" + std::to_string(d) + " p=" + std::to_string(p));
  if (v.ok) v.detail = std::to_string(checked) + " exact equalities";
  return v;
}

Verdict extremal() {
  Verdict v;
  for (int g = 2; g <= 12; ++g) {
    auto r = sv::extremal_mean_area(g);
    if (r.best.orders() != std::vector<int>(g - 1, 2)) v.fail("g=" + std::to_string(g) + " best " + r.best.to_string());
    if (r.value != Rational(1, 3)) v.fail("g=" + std::to_string(g) + " value " + sv::to_string(r.value));
    sv::Stratum ones = sv::Stratum::from_orders(std::vector<int>(2 * g - 2, 1));
    if (sv::max_mean_area_conf(ones) != Rational(1, 4)) v.fail("H(1,...,1) at g=" + std::to_string(g));
    // q = 1: two type II blocks around one pair-of-holes surface of genus g-1
    sv::SurfacePiece hole{g - 2, g - 1, {}};
    sv::Block b{sv::BlockKind::TypeII, {}, {hole}, std::nullopt};
    auto a = sv::analyze(sv::Configuration({b, b}));
    if (a.alpha != sv::Stratum::from_orders({g - 1, g - 1}) || a.q != 1 || a.mean_area_conf != Rational(1, 2 * g))
      v.fail("(g-1,g-1) chain at g=" + std::to_string(g));
  }
  if (v.ok) v.detail = "g=2..12: (2,...,2) with 1/3; H(1,...,1) gives 1/4; H(g-1,g-1), q=1 gives 1/(2g)";
  return v;
}

Verdict configuration_bookkeeping() {
  Verdict v;
  sv::CounterRng rng(6, 0);
  int accepted = 0;
  while (accepted < 1000) {
    auto chain = sv::testing::random_chain(rng, 8);
    if (!chain) continue;
    ++accepted;
    auto a = sv::analyze(chain->config);
    if (a.alpha.genus() > 8) v.fail("genus above 8");
    if (a.n != a.alpha.dim_complex() - a.q - 1) v.fail("n identity fails for " + a.alpha.to_string());
    if (a.q != chain->expected_q) v.fail("cylinder count for " + a.alpha.to_string());
  }
  for (int g = 2; g <= 12; ++g) {
    sv::Stratum twos = sv::Stratum::from_orders(std::vector<int>(g - 1, 2));
    auto w = sv::all_type_one_witness(twos);
    auto a = sv::analyze(w);
    if (a.alpha != twos || a.q != g - 1) v.fail("all-TypeI witness q at g=" + std::to_string(g));
    if (sv::spin_parity(w) != sv::Parity::Odd) v.fail("all-TypeI witness parity at g=" + std::to_string(g));
  }
  if (v.ok) v.detail = "1000 random chains satisfy n = dim - q - 1; all-TypeI witness q = g-1, odd, g=2..12";
  return v;
}

Verdict classification() {
  using L = sv::ComponentLabel;
  Verdict v;
  auto check = [&](const char* s, std::set<L> want) {
    if (sv::classify_components(sv::parse_stratum(s)) != want) v.fail(std::string(s) + " mismatch");
  };
  check("H(6)", {L::Hyperelliptic, L::EvenSpin, L::OddSpin});
  check("H(3,3)", {L::Hyperelliptic, L::NonHyperelliptic});
  check("H(2,2,2)", {L::EvenSpin, L::OddSpin});
  if (v.ok) v.detail = "H(6): hyp, even, odd; H(3,3): hyp, nonhyp; H(2,2,2): even, odd";
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"1 torus constant", torus_constant},
      {"2 integral oracles", integral_oracles},
      {"3 identity suites", identity_suites},
      {"4 ratio cross-consistency", ratio_consistency},
      {"5 extremal strata", extremal},
      {"6 configuration bookkeeping", configuration_bookkeeping},
      {"7 classification", classification},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    failures += !v.ok;
    std::printf("%s %s: %s\n", v.ok ? "PASS" : "FAIL", name.c_str(), v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
