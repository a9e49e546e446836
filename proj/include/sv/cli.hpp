#pragma once

// Command line front end. run() never calls exit() and writes only to the
// given streams (or the --output file), so it can be driven from tests.
//
// Exit codes: 0 success, 1 a verification failed, 2 usage or input error.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "sv/configurations.hpp"
#include "sv/errors.hpp"
#include "sv/integral_oracles.hpp"
#include "sv/json_io.hpp"
#include "sv/rational.hpp"
#include "sv/special_fns.hpp"
#include "sv/strata.hpp"
#include "sv/sv_ratios.hpp"
#include "sv/torus_count.hpp"

namespace sv::cli {

enum class Format { Table, Json, Csv };

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public Error {
 public:
  using Error::Error;
};

/// Parses "a:b:step" into the exact points a, a+step, ... <= b.
inline std::vector<Rational> parse_grid(const std::string& spec) {
  auto first = spec.find(':');
  auto second = first == std::string::npos ? std::string::npos : spec.find(':', first + 1);
  if (second == std::string::npos || spec.find(':', second + 1) != std::string::npos)
    throw ParseError("grid must look like start:stop:step, got '" + spec + "'");
  Rational a = parse_rational(spec.substr(0, first));
  Rational b = parse_rational(spec.substr(first + 1, second - first - 1));
  Rational step = parse_rational(spec.substr(second + 1));
  if (step <= 0) throw ParseError("grid step must be positive");
  if (b < a) throw ParseError("grid stop must not be below start");
  Rational count = floor_of((b - a) / step);
  if (count > 1'000'000) throw ParseError("grid has more than a million points");
  std::vector<Rational> pts;
  for (long k = 0; k <= count.convert_to<long>(); ++k) pts.push_back(a + step * k);
  return pts;
}

inline std::uint64_t parse_seed(const std::string& text) {
  if (!detail::all_digits(text) || text.size() > 20) throw ParseError("seed must be a non-negative integer");
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    throw ParseError("seed out of range");
  }
}

namespace detail {

inline std::string orders_tuple(const Stratum& s) {
  std::string r = "(";
  for (std::size_t i = 0; i < s.orders().size(); ++i) r += (i ? "," : "") + std::to_string(s.orders()[i]);
  return r + ")";
}

inline std::string join_labels(const std::set<ComponentLabel>& labels, const char* sep) {
  std::string r;
  for (auto l : labels) r += (r.empty() ? "" : sep) + std::string(to_string(l));
  return r;
}

struct Output {
  std::string text;
  int code = kExitOk;
};

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline Output do_classify(const std::string& stratum, Format fmt) {
  Stratum s = parse_stratum(stratum);
  auto labels = classify_components(s);
  if (fmt == Format::Json) {
    Json comps = Json::array();
    for (auto l : labels) comps.push_back(to_string(l));
    return {dump(Json{{"stratum", to_json(s)}, {"components", comps}})};
  }
  if (fmt == Format::Csv) return {"stratum,genus,dim,components\n\"" + s.to_string() + "\"," + std::to_string(s.genus()) +
                                  "," + std::to_string(s.dim_complex()) + "," + join_labels(labels, ";") + "\n"};
  return {s.to_string() + " genus " + std::to_string(s.genus()) + " dim " + std::to_string(s.dim_complex()) +
          " components: " + join_labels(labels, ", ") + "\n"};
}

inline Output do_qmax(const std::string& stratum, Format fmt) {
  Stratum s = parse_stratum(stratum);
  int q = q_max(s);
  Rational mean = max_mean_area_conf(s);
  if (fmt == Format::Json)
    return {dump(Json{{"stratum", to_json(s)}, {"q_max", q}, {"max_mean_area_conf", to_string(mean)}})};
  if (fmt == Format::Csv)
    return {"stratum,q_max,max_mean_area_conf\n\"" + s.to_string() + "\"," + std::to_string(q) + "," +
            to_string(mean) + "\n"};
  return {std::to_string(q) + "\n"};
}

inline Output do_extremal(int genus, Format fmt) {
  ExtremalResult r = extremal_mean_area(genus);
  if (fmt == Format::Json)
    return {dump(Json{{"genus", genus}, {"partition", r.best.orders()}, {"value", to_string(r.value)},
                      {"value_numeric", to_double(r.value)}})};
  if (fmt == Format::Csv)
    return {"genus,partition,value\n" + std::to_string(genus) + ",\"" + orders_tuple(r.best) + "\"," +
            to_string(r.value) + "\n"};
  return {orders_tuple(r.best) + " " + to_string(r.value) + "\n"};
}

inline Output do_config_analyze(const std::string& path, Format fmt) {
  Configuration c = configuration_from_file(path);
  ConfigurationAnalysis a = analyze(c);
  Parity parity = spin_parity(c);
  if (fmt == Format::Json) {
    Json j = to_json(a);
    j["spin_parity"] = to_string(parity);
    j["canonical"] = to_json(c.canonical());
    return {dump(j)};
  }
  if (fmt == Format::Csv)
    return {"alpha,alpha_prime,q,n,mean_area_conf,spin_parity\n\"" + a.alpha.to_string() + "\",\"" +
            a.alpha_prime.to_string() + "\"," + std::to_string(a.q) + "," + std::to_string(a.n) + "," +
            to_string(a.mean_area_conf) + "," + std::string(to_string(parity)) + "\n"};
  std::ostringstream os;
  os << "alpha: " << a.alpha.to_string() << "\n"
     << "alpha': " << a.alpha_prime.to_string() << "\n"
     << "q: " << a.q << "\n"
     << "n: " << a.n << "\n"
     << "dim: " << a.alpha.dim_complex() << "\n"
     << "mean area of periodic region: " << to_string(a.mean_area_conf) << "\n"
     << "spin parity: " << to_string(parity) << "\n";
  return {os.str()};
}

inline Output do_feasibility(const std::string& stratum, const std::string& component, Format fmt) {
  Stratum s = parse_stratum(stratum);
  ComponentLabel label = parse_component_label(component);
  FeasibilityResult r = simple_complement_feasibility(s, label);
  if (fmt == Format::Json) {
    Json j{{"stratum", to_json(s)}, {"component", to_string(label)}, {"verdict", to_string(r.verdict)}};
    j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
    if (r.witness) j["witness_spin_parity"] = to_string(spin_parity(*r.witness));
    return {dump(j)};
  }
  if (fmt == Format::Csv)
    return {"stratum,component,verdict\n\"" + s.to_string() + "\"," + std::string(to_string(label)) + "," +
            std::string(to_string(r.verdict)) + "\n"};
  std::string text = s.to_string() + " " + std::string(to_string(label)) + ": " + std::string(to_string(r.verdict)) + "\n";
  if (r.witness) text += "witness: " + to_json(*r.witness).dump() + "\n";
  return {text};
}

struct RatioRow {
  std::string name;
  std::string exact;
  double numeric;
};

inline Output do_ratios(long n, long q, std::optional<long> d_opt, const std::string& p_text,
                        const std::string& x_text, Format fmt) {
  Rational p = parse_rational(p_text), x = parse_rational(x_text);
  long d = d_opt.value_or(n + q + 1);
  std::vector<RatioRow> rows;
  auto add = [&](std::string name, const Rational& v) { rows.push_back({std::move(name), to_string(v), to_double(v)}); };
  auto add_sv = [&](std::string name, const SymbolicSvConstant& c) {
    rows.push_back({std::move(name), c.to_string(), to_double(c.rational_coefficient)});
  };
  add_sv("c_area^p", svc_area_p(n, q, p));
  add_sv("c_cyl", svc_cyl(n, q));
  add_sv("c_area", svc_area(n, q));
  add_sv("c_conf", svc_conf(n, q));
  add_sv("c_area^p_conf", svc_area_p_conf(n, q, p));
  add("mean_area_p", mean_area_p(d, p));
  add("area_p_conf_ratio", area_p_conf_ratio(n, q, p));
  add("first_cyl_tail", first_cyl_tail(d, x));
  add("region_tail", region_tail(n, q, x));
  add("region_tail_asymptote", region_tail_asymptote(n, q));
  if (d >= 4) add("correlation_ratio", correlation_ratio(d, x));
  if (fmt == Format::Json) {
    Json j{{"n", n}, {"q", q}, {"d", d}, {"p", to_string(p)}, {"x", to_string(x)}};
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back(Json{{"name", r.name}, {"exact", r.exact}, {"numeric", r.numeric}});
    j["ratios"] = arr;
    return {dump(j)};
  }
  std::ostringstream os;
  if (fmt == Format::Csv) {
    os << "name,exact,numeric\n";
    for (const auto& r : rows) os << r.name << ",\"" << r.exact << "\"," << format_real(r.numeric) << "\n";
    return {os.str()};
  }
  os << "n=" << n << " q=" << q << " d=" << d << " p=" << to_string(p) << " x=" << to_string(x) << "\n";
  std::size_t w = 0, we = 0;
  for (const auto& r : rows) {
    w = std::max(w, r.name.size());
    we = std::max(we, r.exact.size());
  }
  for (const auto& r : rows)
    os << r.name << std::string(w - r.name.size() + 2, ' ') << r.exact << std::string(we - r.exact.size() + 2, ' ')
       << format_real(r.numeric) << "\n";
  return {os.str()};
}

inline Output do_distribution(long n, long q, const std::string& grid, Format fmt) {
  auto pts = parse_grid(grid);
  for (const auto& x : pts)
    if (x < 0 || x > 1) throw DomainError("distribution grid must stay inside [0, 1]");
  if (fmt == Format::Json) {
    Json arr = Json::array();
    for (const auto& x : pts) {
      Rational v = region_tail(n, q, x);
      arr.push_back(Json{{"x", to_string(x)}, {"region_tail", to_string(v)}, {"region_tail_numeric", to_double(v)}});
    }
    return {dump(Json{{"n", n}, {"q", q}, {"points", arr}})};
  }
  std::string out = "x,region_tail\n";
  for (const auto& x : pts) out += format_real(to_double(x)) + "," + format_real(to_double(region_tail(n, q, x))) + "\n";
  return {out};
}

inline Output do_verify_identities(long a_max, long b_max, long n_max, long q_max, long beta_max, long grid,
                                   Format fmt) {
  if (grid < 1) throw DomainError("--grid needs at least one point");
  std::vector<IdentityReport> reps{verify_combi1(a_max, b_max), verify_combi2(n_max, q_max),
                                   verify_combi4(beta_max, beta_max, unit_grid(grid))};
  bool ok = true;
  for (const auto& r : reps) ok = ok && r.passed();
  const int code = ok ? kExitOk : kExitVerificationFailed;
  if (fmt == Format::Json) {
    Json arr = Json::array();
    for (const auto& r : reps)
      arr.push_back(Json{{"name", r.name}, {"checked", r.checked}, {"failures", r.failures}, {"passed", r.passed()}});
    return {dump(Json{{"identities", arr}, {"passed", ok}}), code};
  }
  std::ostringstream os;
  if (fmt == Format::Csv) {
    os << "name,checked,failures,result\n";
    for (const auto& r : reps)
      os << r.name << "," << r.checked << "," << r.failures.size() << "," << (r.passed() ? "PASS" : "FAIL") << "\n";
    return {os.str(), code};
  }
  for (const auto& r : reps) {
    os << r.name << ": " << r.checked << " checked, " << r.failures.size() << " failures  "
       << (r.passed() ? "PASS" : "FAIL") << "\n";
    for (std::size_t i = 0; i < r.failures.size() && i < 10; ++i) os << "  " << r.failures[i] << "\n";
  }
  return {os.str(), code};
}

inline Output do_verify_integrals(const IntegralParams& ip, const SamplingPlan& plan) {
  OracleComparison c = evaluate_oracle(ip, plan);
  return {dump(to_json(c)), c.passed ? kExitOk : kExitVerificationFailed};
}

inline Output do_torus_count(const std::vector<double>& radii, const std::string& out_fmt) {
  auto rows = convergence_table(radii);
  if (out_fmt == "json") {
    Json arr = Json::array();
    for (const auto& r : rows)
      arr.push_back(Json{{"L", r.lattice.radius}, {"count", r.lattice.count}, {"density", r.lattice.density},
                         {"deviation", r.deviation}});
    auto tc = torus_constant();
    return {dump(Json{{"rows", arr}, {"limit", tc.value.to_string()}, {"limit_numeric", tc.value.value()}})};
  }
  return {convergence_csv(rows)};
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Siegel-Veech constants, configurations and numeric checks", "svtool"};
  app.require_subcommand(1);

  std::string format = "table";
  std::string output;
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--output", output, "Write output to this file instead of stdout");

  std::string stratum, component, config_path, grid = "0:1:1/100", p_text = "0", x_text = "0", x1_text = "0";
  std::string family, method = "auto", radii_out, seed_text;
  int genus = 0;
  long n = 1, q = 1, d = 0;
  long a_max = 30, b_max = 30, n_max = 20, q_max_bound = 20, beta_max = 12, grid_points = 9;
  double eps = 1.0;
  std::uint64_t samples = 1'000'000;
  std::vector<double> radii;

  auto* classify = app.add_subcommand("classify", "Connected components of a stratum");
  classify->add_option("--stratum", stratum, "Stratum, e.g. \"H(2,2,2)\" or \"2,2,2\"")->required();

  auto* qmax = app.add_subcommand("qmax", "Upper bound on the number of cylinders in a configuration");
  qmax->add_option("--stratum", stratum)->required();

  auto* extremal = app.add_subcommand("extremal", "Stratum of genus g maximizing the mean area of the periodic region");
  extremal->add_option("--genus", genus)->required()->check(CLI::Range(2, 40));

  auto* config = app.add_subcommand("config-analyze", "Validate and analyze a configuration given as JSON");
  config->add_option("--config", config_path, "Configuration JSON file")->required();

  auto* feas = app.add_subcommand("feasibility", "Configurations with tori and cylinders only");
  feas->add_option("--stratum", stratum)->required();
  feas->add_option("--component", component, "hyp | even | odd | nonhyp | connected")->required();

  auto* ratios = app.add_subcommand("ratios", "Table of Siegel-Veech constants and ratios");
  ratios->add_option("--n", n)->required()->check(CLI::Range(1L, 1000L));
  ratios->add_option("--q", q)->required()->check(CLI::Range(1L, 1000L));
  auto* d_opt = ratios->add_option("--d", d, "Complex dimension of the stratum (default n+q+1)")->check(CLI::Range(3L, 2000L));
  ratios->add_option("--p", p_text, "Rational exponent p >= 0")->capture_default_str();
  ratios->add_option("--x", x_text, "Rational x in [0,1)")->capture_default_str();

  auto* dist = app.add_subcommand("distribution", "CSV of the periodic-region area tail on a grid");
  dist->add_option("--n", n)->required()->check(CLI::Range(1L, 1000L));
  dist->add_option("--q", q)->required()->check(CLI::Range(1L, 1000L));
  dist->add_option("--grid", grid, "start:stop:step")->capture_default_str();

  auto* vid = app.add_subcommand("verify-identities", "Exhaustive checks of the binomial identities");
  vid->add_option("--a-max", a_max)->capture_default_str()->check(CLI::Range(1L, 200L));
  vid->add_option("--b-max", b_max)->capture_default_str()->check(CLI::Range(0L, 200L));
  vid->add_option("--n-max", n_max)->capture_default_str()->check(CLI::Range(1L, 200L));
  vid->add_option("--q-max", q_max_bound)->capture_default_str()->check(CLI::Range(0L, 200L));
  vid->add_option("--beta-max", beta_max, "n, q bound for the incomplete Beta expansion")
      ->capture_default_str()
      ->check(CLI::Range(1L, 100L));
  vid->add_option("--grid", grid_points, "Number of grid points k/grid in [0,1)")
      ->capture_default_str()
      ->check(CLI::Range(1L, 1000L));

  auto* vint = app.add_subcommand("verify-integrals", "Numeric integral against its closed form (JSON)");
  vint->add_option("--family", family, "cusp | jp | ix | iprime | corr")
      ->required()
      ->check(CLI::IsMember({"cusp", "jp", "ix", "iprime", "corr"}));
  vint->add_option("--n", n)->capture_default_str()->check(CLI::Range(1L, 50L));
  vint->add_option("--q", q)->capture_default_str()->check(CLI::Range(1L, 50L));
  vint->add_option("--p", p_text)->capture_default_str();
  vint->add_option("--x", x_text)->capture_default_str();
  vint->add_option("--x1", x1_text)->capture_default_str();
  vint->add_option("--eps", eps)->capture_default_str();
  vint->add_option("--samples", samples)->capture_default_str();
  vint->add_option("--seed", seed_text, "Default 0, or SV_SEED");
  vint->add_option("--method", method, "auto | quad | mc")
      ->capture_default_str()
      ->check(CLI::IsMember({"auto", "quad", "mc"}));

  auto* torus = app.add_subcommand("torus-count", "Primitive lattice points in disks of the given radii");
  torus->add_option("--radii", radii, "Comma separated ascending radii")->required()->delimiter(',');
  torus->add_option("--out", radii_out, "csv | json (default follows --format)")->check(CLI::IsMember({"csv", "json"}));

  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "svtool: usage error: " << msg << "\n";
    return kExitUsage;
  }

  const Format fmt = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Table;

  try {
    detail::Output result;
    if (*classify) {
      result = detail::do_classify(stratum, fmt);
    } else if (*qmax) {
      result = detail::do_qmax(stratum, fmt);
    } else if (*extremal) {
      result = detail::do_extremal(genus, fmt);
    } else if (*config) {
      result = detail::do_config_analyze(config_path, fmt);
    } else if (*feas) {
      result = detail::do_feasibility(stratum, component, fmt);
    } else if (*ratios) {
      result = detail::do_ratios(n, q, d_opt->count() ? std::optional<long>(d) : std::nullopt, p_text, x_text, fmt);
    } else if (*dist) {
      result = detail::do_distribution(n, q, grid, fmt);
    } else if (*vid) {
      result = detail::do_verify_identities(a_max, b_max, n_max, q_max_bound, beta_max, grid_points, fmt);
    } else if (*vint) {
      SamplingPlan plan;
      if (!seed_text.empty())
        plan.seed = parse_seed(seed_text);
      else if (const char* env = std::getenv("SV_SEED"); env && *env)
        plan.seed = parse_seed(env);
      plan.samples = samples;
      IntegralParams ip{parse_integral_family(family), n, q, parse_rational(p_text), parse_rational(x_text),
                        parse_rational(x1_text), eps};
      if (method == "auto")
        plan.method = ip.family == IntegralFamily::Cusp ? OracleMethod::MonteCarlo : OracleMethod::Quadrature;
      else
        plan.method = parse_oracle_method(method);
      result = detail::do_verify_integrals(ip, plan);
    } else if (*torus) {
      std::string of = radii_out.empty() ? (fmt == Format::Json ? "json" : "csv") : radii_out;
      result = detail::do_torus_count(radii, of);
    }

    if (output.empty()) {
      out << result.text;
    } else {
      std::ofstream f(output, std::ios::binary);
      if (!f) throw UsageError("cannot write '" + output + "'");
      f << result.text;
    }
    return result.code;
  } catch (const Error& e) {
    err << "svtool: error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace sv::cli
