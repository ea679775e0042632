#pragma once

// Command-line front end.  run() parses argv, dispatches to one subcommand and
// maps errors to exit codes: 0 success, 1 bad input, 2 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "heisenspec/butterfly.hpp"
#include "heisenspec/charpoly.hpp"
#include "heisenspec/eigensolver.hpp"
#include "heisenspec/errors.hpp"
#include "heisenspec/group.hpp"
#include "heisenspec/representations.hpp"
#include "heisenspec/spectral_measure.hpp"
#include "heisenspec/verify.hpp"

namespace heisenspec::cli {

inline constexpr const char* kSchema = "heisenspec/1";
inline constexpr const char* kEnvN0 = "HEISENSPEC_N0_THRESHOLD";
inline constexpr const char* kEnvDeskGuard = "HEISENSPEC_DESK_GUARD_N";

using Json = nlohmann::json;  // std::map objects: keys come out sorted

// %.17g, with -0 printed as 0.
inline std::string fmt17(double v) {
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double clean(double v) { return v == 0.0 ? 0.0 : v; }

struct RunConfig {
  std::optional<std::string> out;
  int n0_threshold = kDefaultLemmaThreshold;
  int desk_guard = kDefaultDeskGuard;
};

inline std::optional<int> env_int(const char* name) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  const std::string s(raw);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw PreconditionError(std::string(name) + " must be an integer, got '" + s + "'");
  return v;
}

inline void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (!cfg.out) {
    out << text;
    return;
  }
  std::ofstream f(*cfg.out, std::ios::binary | std::ios::trunc);
  if (!f) throw PreconditionError("cannot open output file '" + *cfg.out + "'");
  f << text;
  if (!f) throw PreconditionError("cannot write output file '" + *cfg.out + "'");
}

inline std::string dump(Json j) {
  j["schema"] = kSchema;
  return j.dump(2) + "\n";
}

inline Json irreps_json(int n) {
  const auto t = irrep_table(n);
  Json one = Json::array();
  for (const auto& e : t.one_dim) one.push_back({e.rep.alpha, e.rep.beta, clean(e.laplace)});
  return {{"n", n},
          {"one_dim", one},
          {"multi_dim", t.multi_dim},
          {"dimension_square_sum", t.dimension_square_sum()}};
}

struct MaxEigResult {
  double lambda;
  std::string method;
};

// Power iteration first; nearly degenerate tops fall back to QL.
inline MaxEigResult max_eigenvalue_with_fallback(const HarperMatrix& h) {
  try {
    return {max_eigenvalue(h), "power"};
  } catch (const NumericalError&) {
    return {top_eigenvalue(h), "ql"};
  }
}

inline Json maxeig_json(int n, std::optional<int> q, bool all_q) {
  require(n >= 3, "--n must be >= 3, got " + std::to_string(n));
  require(!(q && all_q), "--q and --all-q are mutually exclusive");
  Json j{{"n", n}};
  if (all_q) {
    double best = -1e300;
    int arg = 0;
    for (int k = 1; k <= n / 2; ++k) {
      const double lam = top_eigenvalue(HarperMatrix(n, k));
      if (lam > best) best = lam, arg = k;
    }
    j["lambda"] = best;
    j["argmax_q"] = arg;
    j["method"] = "ql";
    j["q"] = "all";
    j["gap_times_n"] = (4.0 - best) * n;
    return j;
  }
  const int qq = q.value_or(1);
  require(qq >= 1 && qq <= n - 1, "--q must lie in 1..n-1, got " + std::to_string(qq));
  const auto r = max_eigenvalue_with_fallback(HarperMatrix(n, qq));
  j["lambda"] = r.lambda;
  j["method"] = r.method;
  j["q"] = qq;
  j["gap_times_n"] = (4.0 - r.lambda) * n;
  return j;
}

inline std::string bounds_csv(const std::string& lemma, int nmin, int nmax, const RunConfig& cfg, std::ostream& err) {
  require(lemma == "2.2" || lemma == "2.3", "--lemma must be 2.2 or 2.3, got '" + lemma + "'");
  require(nmin <= nmax, "--nmin must not exceed --nmax");
  require(nmin >= cfg.n0_threshold, "--nmin must be >= the n0 threshold " + std::to_string(cfg.n0_threshold) +
                                        ", got " + std::to_string(nmin));
  std::string csv = "n,lambda_or_mu,bound_low,bound_high,pass\n";
  for (int n = nmin; n <= nmax; ++n) {
    if (!is_prime(n)) continue;
    if (lemma == "2.2") {
      const auto r = check_lemma_2_2(n, cfg.n0_threshold);
      csv += std::to_string(n) + "," + fmt17(r.lambda) + "," + fmt17(r.lower_bound) + "," + fmt17(r.upper_bound) +
             "," + (r.lower_ok && r.upper_ok ? "true" : "false") + "\n";
    } else {
      const auto r = check_lemma_2_3(n, cfg.n0_threshold);
      csv += std::to_string(n) + "," + fmt17(r.mu) + ",," + fmt17(r.bound) + "," + (r.ok ? "true" : "false") + "\n";
      err << "n = " << n << ": argmax_q = " << r.argmax_q << "\n";
    }
  }
  return csv;
}

inline Json charpoly_json(int n, int q, bool expand, std::optional<double> at) {
  require(!(expand && at), "--expand and --eval are mutually exclusive");
  require(q >= 1 && q <= n - 1, "--q must lie in 1..n-1, got " + std::to_string(q));
  Json j{{"n", n}, {"q", q}};
  if (at) {
    j["x"] = *at;
    j["value"] = clean(charpoly_eval(n, q, *at));
    j["matching_value"] = clean(matching_poly_eval(n, q, *at));
    return j;
  }
  Json coeffs = Json::array(), matching = Json::array();
  for (double c : charpoly_coeffs(n, q)) coeffs.push_back(clean(c));
  for (double c : matching_poly_coeffs(n, q)) matching.push_back(clean(c));
  j["coefficients"] = coeffs;  // ascending powers of x
  j["matching_coefficients"] = matching;
  return j;
}

inline std::string bands_csv(const std::vector<Band>& bands) {
  std::string csv = "n,q,band_index,lower,upper\n";
  for (const Band& b : bands)
    csv += std::to_string(b.n) + "," + std::to_string(b.q) + "," + std::to_string(b.index) + "," + fmt17(b.lower) +
           "," + fmt17(b.upper) + "\n";
  return csv;
}

inline std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw PreconditionError("--edges expects comma-separated numbers, got '" + item + "'");
    }
  }
  require(!out.empty(), "--edges must list at least one value");
  return out;
}

inline Json report_json(const EdgeMassReport& r) {
  return {{"n", r.n},
          {"alpha", r.alpha},
          {"t", r.t},
          {"N", r.N},
          {"c0", r.c0},
          {"mu_edge", r.mu_edge},
          {"mu_wide", r.mu_wide},
          {"norm_finite", r.norm_finite},
          {"norm_infinite", r.norm_infinite},
          {"lhs", r.lhs},
          {"rhs", r.rhs},
          {"upper_ok", r.upper_ok},
          {"equality_ok", r.equality_ok},
          {"lower_ok", r.lower_ok},
          {"chain_ok", r.chain_ok},
          {"counting_bound", r.counting_bound},
          {"counting_ok", r.counting_ok},
          {"c1_estimate", r.c1_estimate}};
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral toolkit for the Laplace operator on the discrete Heisenberg group"};
  app.name("heisenspec");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::optional<int> n0_flag, guard_flag;
  app.add_option("--n0-threshold", n0_flag, "smallest n admitted by the eigenvalue envelope checks");
  app.add_option("--desk-guard", guard_flag, "largest modulus N for spectral measures");

  const auto add_out = [&](CLI::App* sub) { sub->add_option("--out", cfg.out, "write output to PATH"); };

  int n = 0, q = 1, k = 0, nmin = 0, nmax = 0, max_den = 0, grid = 1001, width = 800, height = 600;
  std::optional<int> q_opt;
  std::optional<std::int64_t> modulus;
  std::optional<double> eval_at;
  std::optional<std::string> svg_path;
  std::string lemma, edges, level = "quick", format = "json";
  double alpha = 0.5, tamper = 0.0;
  bool all_q = false, expand = false;

  auto* irreps = app.add_subcommand("irreps", "irreducible representations of H_P and the Laplace values");
  irreps->add_option("--n", n, "prime P")->required();
  add_out(irreps);

  auto* maxeig = app.add_subcommand("maxeig", "largest eigenvalue of the Harper matrix");
  maxeig->add_option("--n", n, "dimension")->required();
  maxeig->add_option("--q", q_opt, "representation index");
  maxeig->add_flag("--all-q", all_q, "maximize over every q");
  add_out(maxeig);

  auto* bounds_cmd = app.add_subcommand("bounds", "eigenvalue envelopes over a range of primes");
  bounds_cmd->add_option("--lemma", lemma, "2.2 (q = 1 envelope) or 2.3 (all-q bound)")->required();
  bounds_cmd->add_option("--nmin", nmin)->required();
  bounds_cmd->add_option("--nmax", nmax)->required();
  add_out(bounds_cmd);

  auto* charpoly = app.add_subcommand("charpoly", "characteristic polynomial of the Harper matrix");
  charpoly->add_option("--n", n)->required();
  charpoly->add_option("--q", q)->required();
  charpoly->add_flag("--expand", expand, "expanded coefficients (default)");
  charpoly->add_option("--eval", eval_at, "evaluate at X");
  add_out(charpoly);

  auto* butterfly = app.add_subcommand("butterfly", "band edges for every flux q/n");
  butterfly->add_option("--max-denominator", max_den)->required();
  butterfly->add_option("--svg", svg_path, "also write an SVG plot");
  butterfly->add_option("--width", width);
  butterfly->add_option("--height", height);
  add_out(butterfly);

  auto* moments = app.add_subcommand("moments", "exact return moments of the simple random walk");
  moments->add_option("--k", k)->required();
  moments->add_option("--modulus", modulus, "walk on H_N instead of H");
  moments->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  add_out(moments);

  auto* measure = app.add_subcommand("measure", "edge masses of the finite spectral measure");
  measure->add_option("--modulus", n, "prime N")->required();
  measure->add_option("--edges", edges, "comma-separated widths t")->required();
  add_out(measure);

  auto* chebfilter = app.add_subcommand("chebfilter", "tabulate the Chebyshev edge filter");
  chebfilter->add_option("--n", n)->required();
  chebfilter->add_option("--alpha", alpha)->required();
  chebfilter->add_option("--grid", grid, "number of points on [-1, 1]");
  add_out(chebfilter);

  auto* theorem = app.add_subcommand("theorem43", "edge-mass inequality chain at t = 1/n^2");
  theorem->add_option("--n", n)->required();
  theorem->add_option("--alpha", alpha)->required();
  add_out(theorem);

  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  verify->add_option("--level", level)->check(CLI::IsMember({"quick", "full"}));
  verify->add_option("--inject-eigenvalue-error", tamper, "perturb one eigenvalue (suite self-test)");
  add_out(verify);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    cfg.n0_threshold = n0_flag ? *n0_flag : env_int(kEnvN0).value_or(kDefaultLemmaThreshold);
    cfg.desk_guard = guard_flag ? *guard_flag : env_int(kEnvDeskGuard).value_or(kDefaultDeskGuard);
    require(cfg.n0_threshold >= 3, "n0 threshold must be >= 3");
    require(cfg.desk_guard >= 3, "desk guard must be >= 3");

    if (irreps->parsed()) {
      emit(cfg, dump(irreps_json(n)), out);
    } else if (maxeig->parsed()) {
      emit(cfg, dump(maxeig_json(n, q_opt, all_q)), out);
    } else if (bounds_cmd->parsed()) {
      emit(cfg, bounds_csv(lemma, nmin, nmax, cfg, err), out);
    } else if (charpoly->parsed()) {
      emit(cfg, dump(charpoly_json(n, q, expand, eval_at)), out);
    } else if (butterfly->parsed()) {
      const auto b = butterfly_sweep(max_den);
      // Validate the SVG before writing anything.
      std::optional<std::string> svg;
      if (svg_path) svg = render_svg(b, width, height);
      emit(cfg, bands_csv(b), out);
      if (svg) emit(RunConfig{svg_path, cfg.n0_threshold, cfg.desk_guard}, *svg, out);
    } else if (moments->parsed()) {
      require(k >= 0, "--k must be non-negative, got " + std::to_string(k));
      require(modulus || k <= kMaxInfiniteSteps,
              "--k = " + std::to_string(k) + " exceeds the cap of " + std::to_string(kMaxInfiniteSteps) +
                  " for the infinite group");
      const auto m = return_moments(k, modulus);
      if (format == "csv") {
        std::string csv = "k,value\n";
        for (std::size_t i = 0; i < m.size(); ++i) csv += std::to_string(i) + "," + rational_string(m[i]) + "\n";
        emit(cfg, csv, out);
      } else {
        Json j{{"k", k}, {"value", rational_string(m.back())}};
        j["modulus"] = modulus ? Json(*modulus) : Json(nullptr);
        emit(cfg, dump(j), out);
      }
    } else if (measure->parsed()) {
      const auto ts = parse_list(edges);
      for (double t : ts) require(t > 0.0 && t <= 1.0, "edge widths must satisfy 0 < t <= 1, got " + fmt17(t));
      const auto m = finite_measure(n, cfg.desk_guard);
      std::string csv = "t,mu\n";
      for (double t : ts) csv += fmt17(t) + "," + fmt17(measure_of_edge_set(m, t)) + "\n";
      emit(cfg, csv, out);
    } else if (chebfilter->parsed()) {
      require(grid >= 2, "--grid must be >= 2, got " + std::to_string(grid));
      const auto f = cheb_filter(n, alpha);
      std::string csv = "x,P(x)\n";
      for (double x : uniform_grid(-1.0, 1.0, grid)) csv += fmt17(x) + "," + fmt17(f(x)) + "\n";
      emit(cfg, csv, out);
    } else if (theorem->parsed()) {
      emit(cfg, dump(report_json(theorem_4_3_report(n, alpha, cfg.desk_guard))), out);
    } else if (verify->parsed()) {
      VerifyOptions opts;
      opts.full = level == "full";
      opts.eigenvalue_perturbation = tamper;
      opts.n0_threshold = cfg.n0_threshold;
      opts.desk_guard = cfg.desk_guard;
      const auto results = run_verify(opts);
      std::string text;
      for (const auto& r : results)
        text += std::string(status_label(r.status)) + "  " + r.name + (r.detail.empty() ? "" : "  (" + r.detail + ")") +
                "\n";
      const bool ok = verify_passed(results);
      text += ok ? "verify: ok\n" : "verify: FAILED\n";
      emit(cfg, text, out);
      return ok ? 0 : 2;
    }
    return 0;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 2;
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace heisenspec::cli
