#pragma once

// Command-line front end. `run` parses argv, evaluates one subcommand and
// writes a table as CSV or JSON. Exit codes: 0 success, 2 bad arguments,
// 3 numerical or I/O failure. Diagnostics go to `err`, data to `out`.
//
// Needs CLI11 and nlohmann/json on the include path.

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "critstat/bose.hpp"
#include "critstat/burgers.hpp"
#include "critstat/counting.hpp"
#include "critstat/errors.hpp"
#include "critstat/specfun.hpp"
#include "critstat/thermo.hpp"
#include "critstat/version.hpp"

namespace critstat::cli {

// Empty cells print as nothing in CSV and as null in JSON.
using Cell = std::variant<std::monostate, double, long long, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  nlohmann::json meta = nlohmann::json::object();  // merged into the JSON meta block
};

/// 17 significant digits, locale independent.
inline std::string format_double(double v) {
  if (!std::isfinite(v)) throw NumericalError("refusing to emit a non-finite value");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline std::string csv_field(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& s) const {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
      }
      return q + "\"";
    }
  };
  return std::visit(Visitor{}, c);
}

inline void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
    os << '\n';
  }
}

inline nlohmann::json json_value(const Cell& c) {
  struct Visitor {
    nlohmann::json operator()(std::monostate) const { return nullptr; }
    nlohmann::json operator()(double v) const {
      if (!std::isfinite(v)) throw NumericalError("refusing to emit a non-finite value");
      return v;
    }
    nlohmann::json operator()(long long v) const { return v; }
    nlohmann::json operator()(bool v) const { return v; }
    nlohmann::json operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, c);
}

inline nlohmann::json to_json(const Table& t, const std::string& subcommand, const nlohmann::json& parameters) {
  nlohmann::json meta = t.meta;
  meta["subcommand"] = subcommand;
  meta["parameters"] = parameters;
  meta["version"] = kVersion;
  nlohmann::json data = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = json_value(row[i]);
    data.push_back(std::move(obj));
  }
  return {{"meta", std::move(meta)}, {"data", std::move(data)}};
}

inline std::string count_string(const PartitionCount& c) { return c.str(); }

namespace detail {

struct GasOptions {
  double z_c = 0.29;
  double lambda = 2.0;
  std::string reference_form = "solvable";
  bool any_lambda = false;

  void attach(CLI::App* app) {
    app->add_option("--Zc", z_c, "critical compressibility Z_c in (0, 1); 0.29 fits argon and methane");
    app->add_option("--Lambda", lambda, "calibration constant Lambda, expected in (1.6, 3)");
    app->add_option("--reference-form", reference_form,
                    "orientation of Lambda in the reference-activity relation: solvable or printed")
        ->check(CLI::IsMember({"solvable", "printed"}));
    app->add_flag("--any-lambda", any_lambda, "accept Lambda outside (1.6, 3)");
  }

  GasSpec make() const {
    const auto form = reference_form == "printed" ? ReferenceActivityForm::kAsPrinted
                                                  : ReferenceActivityForm::kSolvable;
    return any_lambda ? GasSpec::uncalibrated(z_c, lambda, form) : GasSpec::from_Zc(z_c, lambda, form);
  }
};

struct ProfileOptions {
  std::string family = "cubic";
  double c = 1.0;
  double x0 = -2.0;
  double x1 = 0.0;
  double x2 = 0.5;
  double height = 1.0;
  std::vector<double> samples;

  void attach(CLI::App* app) {
    app->add_option("--profile", family,
                    "initial profile: cubic (x^3 - c x), two-ramp (triangular hump), constant (c) or sampled")
        ->check(CLI::IsMember({"cubic", "two-ramp", "constant", "sampled"}));
    app->add_option("--c", c, "cubic coefficient or constant value");
    app->add_option("--x0", x0, "two-ramp: start of the rising edge");
    app->add_option("--x1", x1, "two-ramp: position of the peak");
    app->add_option("--x2", x2, "two-ramp: end of the falling edge");
    app->add_option("--height", height, "two-ramp: peak value");
    app->add_option("--samples", samples, "sampled: flattened pairs x1 p1 x2 p2 ...");
  }

  InitialProfile make() const {
    if (family == "two-ramp") return InitialProfile::two_ramp(x0, x1, x2, height);
    if (family == "constant") return InitialProfile::constant(c);
    if (family == "sampled") {
      if (samples.size() % 2 != 0) throw ArgumentError("--samples needs an even number of values");
      std::vector<double> xs;
      std::vector<double> ps;
      for (std::size_t i = 0; i < samples.size(); i += 2) {
        xs.push_back(samples[i]);
        ps.push_back(samples[i + 1]);
      }
      return InitialProfile::sampled(std::move(xs), std::move(ps));
    }
    return InitialProfile::cubic(c);
  }
};

inline std::vector<double> grid(double from, double to, int points) {
  if (points < 1) throw ArgumentError("--points must be >= 1");
  return critstat::detail::linspace(from, to, static_cast<std::size_t>(points));
}

inline Cell optional_cell(const std::optional<double>& v) {
  if (v) return *v;
  return std::monostate{};
}

struct Command {
  CLI::App* app;
  std::vector<std::string> required;  // long option names checked after config merging
  std::function<Table(unsigned threads)> run;
};

// key = value lines; '#' starts a comment.
inline std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot read config file " + path);
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ArgumentError(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    while (!key.empty() && key.front() == '-') key.erase(key.begin());
    out.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return out;
}

inline nlohmann::json parameter_record(const CLI::App* sub) {
  nlohmann::json params = nlohmann::json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_name(false, true);
    if (name.empty() || name == "--help" || name == "-h,--help") continue;
    const std::string key = opt->get_single_name();
    if (key == "help") continue;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      std::string joined;
      for (std::size_t i = 0; i < res.size(); ++i) joined += (i ? " " : "") + res[i];
      params[key] = joined;
    } else {
      params[key] = opt->get_default_str();
    }
  }
  return params;
}

}  // namespace detail

/// Runs one command line. args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partition statistics, polylog thermodynamics and vanishing-viscosity Burgers tools", "critstat"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  std::string format = "csv";
  std::string out_path;
  std::string config_path;
  unsigned threads = 1;
  app.add_option("--format", format, "output format: csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_path, "write output to this file instead of standard output");
  app.add_option("--config", config_path, "file of key = value lines; command-line flags take precedence");
  app.add_option("--threads", threads, "worker threads for grid sweeps (output does not depend on it)")
      ->check(CLI::Range(1u, 256u));

  std::map<std::string, detail::Command> commands;
  auto add = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    commands[name].app = sub;
    return sub;
  };

  // partitions
  {
    auto p = std::make_shared<std::tuple<long long, long long, bool, bool>>(0, 0, false, false);
    auto* sub = add("partitions",
                    "partitions of M into N parts: p(M, N) = p(M-1, N-1) + p(M-N, N) in exact integers. "
                    "Without --N or --table reports the maximising part count N_c, its ties, the "
                    "Hartley entropy log2 p(M, N_c) and p(M)");
    sub->add_option("--M", std::get<0>(*p), "total M >= 1");
    sub->add_option("--N", std::get<1>(*p), "number of parts");
    sub->add_flag("--table", std::get<2>(*p), "print p(M, N) for every N = 1..M");
    sub->add_flag("--at-most", std::get<3>(*p), "with --N: count partitions into at most N parts");
    commands["partitions"].required = {"--M"};
    commands["partitions"].run = [p, sub](unsigned) {
      const auto [m, n, table, at_most] = *p;
      Table t;
      if (table) {
        const auto tab = partition_table(m);
        t.columns = {"N", "count"};
        for (long long k = 1; k <= m; ++k) t.rows.push_back({k, count_string(tab.exact(k))});
      } else if (sub->count("--N") > 0) {
        t.columns = {"M", "N", at_most ? "count_at_most" : "count"};
        t.rows.push_back({m, n, count_string(at_most ? count_at_most(m, n) : count_exact(m, n))});
      } else {
        const auto tab = partition_table(m);
        const auto crit = find_critical(tab);
        std::string ties;
        for (std::size_t i = 0; i < crit.ties.size(); ++i) ties += (i ? ";" : "") + std::to_string(crit.ties[i]);
        t.columns = {"M", "Nc", "count", "ties", "hartley_entropy", "unrestricted"};
        t.rows.push_back({m, static_cast<long long>(crit.parts), count_string(crit.count), ties,
                          hartley_entropy(crit.count), count_string(tab.unrestricted())});
      }
      return t;
    };
  }

  // erdos
  {
    auto ms = std::make_shared<std::vector<long long>>(std::vector<long long>{100, 1000});
    auto* sub = add("erdos",
                    "critical part count N_c against N_hat = sqrt(M) ln M / beta + alpha sqrt(M), "
                    "beta = pi sqrt(2/3), alpha = -(2/beta) ln(beta/2)");
    sub->add_option("--M", *ms, "one or more totals M >= 2");
    commands["erdos"].run = [ms](unsigned threads) {
      Table t;
      t.columns = {"M", "Nc", "N_hat", "relative_error", "scaled_gap", "beta", "alpha"};
      auto rows = critstat::detail::parallel_map(ms->size(), threads, [&](std::size_t i) {
        const long long m = (*ms)[i];
        const auto est = erdos_estimate(m);
        const auto nc = static_cast<double>(find_critical(m).parts);
        return std::vector<Cell>{m, static_cast<long long>(nc), est.parts, std::abs(nc - est.parts) / est.parts,
                                 std::abs(nc - est.parts) / std::sqrt(static_cast<double>(m)), est.beta, est.alpha};
      });
      t.rows = std::move(rows);
      return t;
    };
  }

  // compositions
  {
    auto p = std::make_shared<std::pair<long long, long long>>(0, 0);
    auto* sub = add("compositions", "ordered decompositions of M into N positive parts: binomial(M-1, N-1)");
    sub->add_option("--M", p->first, "total M >= 1");
    sub->add_option("--N", p->second, "number of parts 1 <= N <= M");
    commands["compositions"].required = {"--M", "--N"};
    commands["compositions"].run = [p](unsigned) {
      Table t;
      t.columns = {"M", "N", "count"};
      t.rows.push_back({p->first, p->second, count_string(count_compositions(p->first, p->second))});
      return t;
    };
  }

  // petersburg
  {
    auto p = std::make_shared<std::pair<long long, double>>(20, 1.0);
    auto* sub = add("petersburg",
                    "stake l e^k on step k until the first win at step m: net gain and its ratio to "
                    "e^m l, which tends to (e-2)/(e-1)");
    sub->add_option("--m", p->first, "winning step m in 1..700");
    sub->add_option("--stake", p->second, "base stake l > 0");
    commands["petersburg"].run = [p](unsigned) {
      const auto r = petersburg_net(p->second, p->first);
      Table t;
      t.columns = {"m", "stake", "net", "ratio"};
      t.rows.push_back({p->first, p->second, r.net, r.ratio});
      return t;
    };
  }

  // isotherm
  {
    struct P {
      detail::GasOptions gas;
      double t = 1.0;
      double mu_max = 0.0;
      double mu_min = -2.0;
      int points = 50;
    };
    auto p = std::make_shared<P>();
    auto* sub = add("isotherm",
                    "gas isotherm: M = T^{2+gc} Li_{2+gc}(a), N = T^{1+gc} Li_{1+gc}(a), Z = M/(N T), "
                    "a = exp(mu/T), on a decreasing mu grid");
    p->gas.attach(sub);
    sub->add_option("--T", p->t, "reduced temperature");
    sub->add_option("--mu-max", p->mu_max, "first (largest) chemical potential, <= 0");
    sub->add_option("--mu-min", p->mu_min, "last (smallest) chemical potential");
    sub->add_option("--points", p->points, "grid size");
    commands["isotherm"].run = [p](unsigned threads) {
      const auto spec = p->gas.make();
      const auto mus = detail::grid(p->mu_max, p->mu_min, p->points);
      const auto curve = gas_isotherm(spec, p->t, mus, threads);
      Table t;
      t.columns = {"mu", "T", "M", "N", "Z"};
      for (const auto& pt : curve.points) t.rows.push_back({pt.mu, pt.T, pt.M, pt.N, pt.Z});
      t.meta["gamma_c"] = spec.gamma_c();
      t.meta["activity_convention"] = GasSpec::activity_convention();
      return t;
    };
  }

  // liquid
  {
    struct P {
      detail::GasOptions gas;
      double t_min = 0.5;
      double t_max = 1.0;
      int points = 6;
    };
    auto p = std::make_shared<P>();
    auto* sub = add("liquid",
                    "liquid isochor anchors: N = T^{gc+1} zeta(gc+1), M = T^{gc+2} zeta(gc+2), mu = 0, for T <= 1");
    p->gas.attach(sub);
    sub->add_option("--t-min", p->t_min, "lowest temperature");
    sub->add_option("--t-max", p->t_max, "highest temperature, <= 1");
    sub->add_option("--points", p->points, "grid size");
    commands["liquid"].run = [p](unsigned) {
      const auto spec = p->gas.make();
      Table t;
      t.columns = {"mu", "T", "M", "N", "Z"};
      for (double temp : detail::grid(p->t_min, p->t_max, p->points)) {
        const auto pt = liquid_isochor(spec, temp);
        t.rows.push_back({pt.mu, pt.T, pt.M, pt.N, pt.Z});
      }
      t.meta["gamma_c"] = spec.gamma_c();
      return t;
    };
  }

  // spinodal
  {
    struct P {
      detail::GasOptions gas;
      double t_min = 0.1;
      double t_max = 1.0;
      int points = 20;
    };
    auto p = std::make_shared<P>();
    auto* sub = add("spinodal",
                    "negative-gamma spinodal: gamma(T) solves (Lambda^{g-gc} c(g))^{1/(1+g)} = T^{gc} zeta(gc+1); "
                    "N = A(gamma) T, M = T^{gc+2} zeta(gc+2), mu_tilde = -T (ln N)^{-1/4}. "
                    "Temperatures below T_0 are skipped and reported on stderr");
    p->gas.attach(sub);
    sub->add_option("--t-min", p->t_min, "lowest temperature");
    sub->add_option("--t-max", p->t_max, "highest temperature, <= 1");
    sub->add_option("--points", p->points, "grid size");
    commands["spinodal"].run = [p, &err](unsigned threads) {
      const auto spec = p->gas.make();
      const auto ts = detail::grid(p->t_min, p->t_max, p->points);
      const auto curve = spinodal_curve(spec, ts, threads);
      for (double s : curve.skipped) err << "skipped T = " << format_double(s) << ": below T_0\n";
      Table t;
      t.columns = {"T", "gamma", "gamma_metastable", "N", "M", "mu_tilde", "flagged"};
      for (const auto& pt : curve.points) {
        t.rows.push_back({pt.T, pt.gamma, detail::optional_cell(pt.gamma_metastable), pt.N, pt.M, pt.mu_tilde,
                          pt.flagged});
      }
      t.meta["t0"] = t0_min(spec);
      t.meta["mu_tilde_constant"] = 1.0;
      nlohmann::json skipped = nlohmann::json::array();
      for (double s : curve.skipped) skipped.push_back(s);
      t.meta["skipped"] = skipped;
      return t;
    };
  }

  // spinodal-corrected
  {
    struct P {
      detail::GasOptions gas;
      double t = 0.9;
      double q = 1.0;
    };
    auto p = std::make_shared<P>();
    auto* sub = add("spinodal-corrected",
                    "spinodal with wall reflection: target T^{gc} |Li_{2+gc}(e^{-xi}) - zeta(2+gc)| / xi, "
                    "xi = q (1/T - 1), and the roots of A(gamma) = target (empty when the target is below min A)");
    p->gas.attach(sub);
    sub->add_option("--T", p->t, "temperature, <= 1");
    sub->add_option("--q", p->q, "wall coefficient q >= 0");
    commands["spinodal-corrected"].run = [p](unsigned) {
      const auto spec = p->gas.make();
      const double target = spinodal_corrected(spec, p->t, p->q);
      std::optional<GammaRoots> roots;
      try {
        roots = spinodal_corrected_roots(spec, p->t, p->q);
      } catch (const NoRootError&) {
      }
      Table t;
      t.columns = {"T", "q", "xi", "target", "min_A", "gamma", "gamma_metastable"};
      t.rows.push_back({p->t, p->q, p->q * (1.0 / p->t - 1.0), target, spinodal_minimum(spec).A,
                        roots ? Cell(roots->least) : Cell(std::monostate{}),
                        roots ? detail::optional_cell(roots->metastable) : Cell(std::monostate{})});
      return t;
    };
  }

  // phase-match
  {
    struct P {
      detail::GasOptions gas;
      double t = 0.9;
    };
    auto p = std::make_shared<P>();
    auto* sub = add("phase-match",
                    "gas-liquid matching: T^{gc} Li_{2+gc}(a_g) = Lambda^{-|g|-gc} T^{-|g|} Li_{2-|g|}(a_g) with "
                    "g = gamma(T); a_l = a_g a_0 where Li_{2+g0}(a_0) = zeta(2+g0) Lambda^{g0-gc}");
    p->gas.attach(sub);
    sub->add_option("--T", p->t, "temperature in (T_0, 1]");
    commands["phase-match"].run = [p](unsigned) {
      const auto spec = p->gas.make();
      const auto m = phase_match(spec, p->t);
      Table t;
      t.columns = {"T", "gamma", "a_g", "a_l", "a_0", "mu_star", "M_match", "residual"};
      t.rows.push_back({p->t, m.gamma, m.a_g, m.a_l, m.a_0, m.mu_star, m.M_match, m.M_match - m.rhs});
      return t;
    };
  }

  // mixture
  {
    auto p = std::make_shared<std::tuple<double, double, double>>(0.5, 0.2, 0.4);
    auto* sub = add("mixture",
                    "mixture exponent: (g+2) zeta(g+2)/zeta(g+1) = alpha (g1-term) + (1-alpha) (g2-term)");
    sub->add_option("--alpha", std::get<0>(*p), "fraction of the first component in [0, 1]");
    sub->add_option("--gamma1", std::get<1>(*p), "first exponent > 0");
    sub->add_option("--gamma2", std::get<2>(*p), "second exponent > 0");
    commands["mixture"].run = [p](unsigned) {
      const auto [alpha, g1, g2] = *p;
      Table t;
      t.columns = {"alpha", "gamma1", "gamma2", "gamma"};
      t.rows.push_back({alpha, g1, g2, mixture_gamma(alpha, g1, g2)});
      return t;
    };
  }

  // logadd
  {
    auto p = std::make_shared<std::tuple<double, double, double>>(std::exp(2.0), std::exp(1.0), 10.0);
    auto* sub = add("logadd", "logarithmic-scale addition (1/ln n) ln(n^{ln A} + n^{ln B}); tends to max(ln A, ln B)");
    sub->add_option("--A", std::get<0>(*p), "first value > 0");
    sub->add_option("--B", std::get<1>(*p), "second value > 0");
    sub->add_option("--n", std::get<2>(*p), "base n > 1");
    commands["logadd"].run = [p](unsigned) {
      const auto [a, b, n] = *p;
      Table t;
      t.columns = {"A", "B", "n", "result"};
      t.rows.push_back({a, b, n, log_scale_add(a, b, n)});
      return t;
    };
  }

  // dimension
  {
    auto p = std::make_shared<std::pair<double, double>>(100.0, 10.0);
    auto* sub = add("dimension", "dimension estimate D = ln M / ln n");
    sub->add_option("--M", p->first, "M >= 1");
    sub->add_option("--n", p->second, "n > 1");
    commands["dimension"].run = [p](unsigned) {
      Table t;
      t.columns = {"M", "n", "D"};
      t.rows.push_back({p->first, p->second, dimension_estimate(p->first, p->second)});
      return t;
    };
  }

  // bose-solve
  {
    struct P {
      double n = 0.0;
      double e = 0.0;
      double dimension = 3.0;
      long long levels = 100000;
      std::vector<double> energies;
      std::vector<double> degeneracies;
    };
    auto p = std::make_shared<P>();
    auto* sub = add("bose-solve",
                    "find multipliers (a, b) with sum G/(e^{a+b eps}-1) = N and sum G eps/(e^{a+b eps}-1) = E; "
                    "T = 1/b, mu = -a/b. Levels are explicit (--energies) or eps_i = i^{D/2}");
    sub->add_option("--N", p->n, "particle total N > 0");
    sub->add_option("--E", p->e, "energy total E > 0");
    sub->add_option("--dimension", p->dimension, "D of the basis series eps_i = i^{D/2}");
    sub->add_option("--levels", p->levels, "truncation of the basis series");
    sub->add_option("--energies", p->energies, "explicit level energies (increasing)");
    sub->add_option("--degeneracies", p->degeneracies, "degeneracies for --energies (default 1)");
    commands["bose-solve"].required = {"--N", "--E"};
    commands["bose-solve"].run = [p](unsigned) {
      std::optional<LevelSpectrum> spectrum;
      if (!p->energies.empty()) {
        if (!p->degeneracies.empty() && p->degeneracies.size() != p->energies.size()) {
          throw ArgumentError("--degeneracies must match --energies in length");
        }
        std::vector<Level> levels;
        for (std::size_t i = 0; i < p->energies.size(); ++i) {
          levels.push_back({p->energies[i], p->degeneracies.empty() ? 1.0 : p->degeneracies[i]});
        }
        spectrum = LevelSpectrum::explicit_levels(std::move(levels));
      } else {
        if (p->levels < 1) throw ArgumentError("--levels must be >= 1");
        spectrum = LevelSpectrum::basis_series(p->dimension, static_cast<std::size_t>(p->levels));
      }
      const auto m = solve_multipliers(*spectrum, {p->n, p->e});
      const auto check = macro_from_multipliers(*spectrum, m);
      Table t;
      t.columns = {"a", "b", "T", "mu", "N", "E", "levels_used"};
      t.rows.push_back({m.a, m.b, 1.0 / m.b, -m.a / m.b, check.N, check.E, static_cast<long long>(check.levels_used)});
      return t;
    };
  }

  // courant
  {
    struct P {
      double lambda = 100.0;
      double volume = 1.0;
      double mass = 1.0;
      int dimension = 3;
      double hbar = 1.0;
    };
    auto p = std::make_shared<P>();
    auto* sub = add("courant",
                    "Weyl count of states below lambda: V m^{D/2} lambda^{D/2} / (Gamma(D/2+1) (2 pi)^{D/2} hbar^D)");
    sub->add_option("--lambda", p->lambda, "energy threshold >= 0");
    sub->add_option("--volume", p->volume, "volume V > 0");
    sub->add_option("--mass", p->mass, "mass m > 0");
    sub->add_option("--dimension", p->dimension, "dimension D >= 1");
    sub->add_option("--hbar", p->hbar, "Planck constant hbar > 0");
    commands["courant"].run = [p](unsigned) {
      Table t;
      t.columns = {"lambda", "volume", "mass", "dimension", "hbar", "count"};
      t.rows.push_back({p->lambda, p->volume, p->mass, static_cast<long long>(p->dimension), p->hbar,
                        courant_density(p->lambda, p->volume, p->mass, p->dimension, p->hbar)});
      return t;
    };
  }

  // parastat-check
  {
    auto p = std::make_shared<std::tuple<double, double, double>>(-0.5, 0.1, 10.0);
    auto* sub = add("parastat-check",
                    "capped-occupation identity: int [1/(e^{bx}-1) - k/(e^{kbx}-1)] x^g dx against "
                    "c(g) b^{-1-g} (k^{-g} - 1), plus the lattice sum and its Euler-Maclaurin remainder");
    sub->add_option("--gamma", std::get<0>(*p), "exponent in (-1, 0)");
    sub->add_option("--b", std::get<1>(*p), "inverse temperature b > 0");
    sub->add_option("--k", std::get<2>(*p), "occupancy cap k >= 1");
    commands["parastat-check"].run = [p](unsigned) {
      const auto [g, b, k] = *p;
      const auto id = parastat_identity_check(g, b, k);
      const auto em = euler_maclaurin_remainder(g, b, k);
      Table t;
      t.columns = {"gamma", "b", "k", "lhs", "rhs", "relative_gap", "lattice_sum", "remainder"};
      const double gap = id.rhs == 0.0 ? std::abs(id.lhs) : std::abs(id.lhs / id.rhs - 1.0);
      t.rows.push_back({g, b, k, id.lhs, id.rhs, gap, em.sum, em.remainder});
      return t;
    };
  }

  // nazaikinsky
  {
    auto gamma = std::make_shared<double>(-0.5);
    auto bs = std::make_shared<std::vector<double>>(std::vector<double>{1.0, 0.1, 0.01});
    auto* sub = add("nazaikinsky", "sum_j j^g F(b j) against the bound b^{-g-1} c(g), F(x) = 1/x - 1/(e^x - 1)");
    sub->add_option("--gamma", *gamma, "exponent in (-1, 0)");
    sub->add_option("--b", *bs, "one or more b > 0");
    commands["nazaikinsky"].run = [gamma, bs](unsigned threads) {
      Table t;
      t.columns = {"gamma", "b", "sum", "bound", "holds"};
      t.rows = critstat::detail::parallel_map(bs->size(), threads, [&](std::size_t i) {
        const auto r = nazaikinsky_bound(*gamma, (*bs)[i]);
        return std::vector<Cell>{*gamma, (*bs)[i], r.sum, r.bound, r.sum <= r.bound};
      });
      return t;
    };
  }

  // burgers-eval
  {
    struct P {
      detail::ProfileOptions profile;
      double t = 0.5;
      double eps = 0.01;
      double x_min = -1.0;
      double x_max = 1.0;
      int points = 21;
    };
    auto p = std::make_shared<P>();
    auto* sub = add("burgers-eval",
                    "viscous solution v = -eps d/dx ln u of the Cole-Hopf integral next to the minimum-action "
                    "solution over characteristics xi + t p0(xi) = x");
    p->profile.attach(sub);
    sub->add_option("--t", p->t, "time t > 0");
    sub->add_option("--eps", p->eps, "viscosity eps > 0");
    sub->add_option("--x-min", p->x_min, "first x");
    sub->add_option("--x-max", p->x_max, "last x");
    sub->add_option("--points", p->points, "grid size");
    commands["burgers-eval"].run = [p](unsigned threads) {
      const auto profile = p->profile.make();
      const auto xs = detail::grid(p->x_min, p->x_max, p->points);
      Table t;
      t.columns = {"x", "t", "eps", "log_u", "v_viscous", "v_generalized", "branches"};
      t.rows = critstat::detail::parallel_map(xs.size(), threads, [&](std::size_t i) {
        const double x = xs[i];
        return std::vector<Cell>{x,
                                 p->t,
                                 p->eps,
                                 heat_solution_log(x, p->t, p->eps, profile),
                                 viscous_solution(x, p->t, p->eps, profile),
                                 generalized_solution(x, p->t, profile),
                                 static_cast<long long>(branch_solve(x, p->t, profile).branches.size())};
      });
      return t;
    };
  }

  // shock
  {
    struct P {
      detail::ProfileOptions profile;
      std::vector<double> ts{1.5, 2.0, 3.0};
    };
    auto p = std::make_shared<P>();
    auto* sub = add("shock",
                    "shock where the outer branch actions coincide, the equal areas it cuts from the "
                    "multivalued wave, and the shock speed against (p_left + p_right)/2");
    p->profile.attach(sub);
    sub->add_option("--t", p->ts, "one or more times past the fold");
    commands["shock"].run = [p](unsigned threads) {
      const auto profile = p->profile.make();
      Table t;
      t.columns = {"t", "x_shock", "left_area", "right_area", "shock_speed", "mean_state"};
      t.rows = critstat::detail::parallel_map(p->ts.size(), threads, [&](std::size_t i) {
        const double time = p->ts[i];
        const auto lobes = equal_area_lobes(time, profile);
        const auto rh = rankine_hugoniot(time, profile);
        return std::vector<Cell>{time, lobes.x_shock, lobes.left, lobes.right, rh.measured, rh.predicted};
      });
      return t;
    };
  }

  // scaling
  {
    struct P {
      double eps_max = 1e-2;
      double eps_min = 1e-6;
      int points = 17;
      bool fit = false;
    };
    auto p = std::make_shared<P>();
    auto* sub = add("scaling",
                    "fold-point velocity v(0, eps) = int xi e^{-xi^4/(4 eps)} / int e^{-xi^4/(4 eps)} over "
                    "xi >= 0, closed form 4^{1/4} (sqrt(pi)/4) / Gamma(5/4) eps^{1/4}");
    sub->add_option("--eps-max", p->eps_max, "largest viscosity");
    sub->add_option("--eps-min", p->eps_min, "smallest viscosity");
    sub->add_option("--points", p->points, "log-spaced grid size");
    sub->add_flag("--fit", p->fit, "print the log-log fit (prefactor, exponent) instead of the samples");
    commands["scaling"].run = [p](unsigned threads) {
      if (p->points < 2) throw ArgumentError("--points must be >= 2");
      if (!(p->eps_min > 0.0 && p->eps_max > p->eps_min)) throw ArgumentError("need 0 < eps-min < eps-max");
      const auto eps = critstat::detail::logspace(p->eps_max, p->eps_min, static_cast<std::size_t>(p->points));
      Table t;
      if (p->fit) {
        const auto fit = critical_scaling(eps);
        t.columns = {"prefactor", "exponent", "closed_form_prefactor"};
        t.rows.push_back({fit.prefactor, fit.exponent, critical_prefactor()});
        return t;
      }
      t.columns = {"eps", "v", "closed_form"};
      t.rows = critstat::detail::parallel_map(eps.size(), threads, [&](std::size_t i) {
        return std::vector<Cell>{eps[i], critical_velocity(eps[i]), critical_prefactor() * std::pow(eps[i], 0.25)};
      });
      return t;
    };
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);

    const CLI::App* chosen = nullptr;
    std::string name;
    for (auto& [n, cmd] : commands) {
      if (cmd.app->parsed()) {
        chosen = cmd.app;
        name = n;
      }
    }
    auto& cmd = commands.at(name);

    if (!config_path.empty()) {
      for (const auto& [key, value] : detail::read_config(config_path)) {
        CLI::Option* opt = cmd.app->get_option_no_throw("--" + key);
        if (opt == nullptr) opt = app.get_option_no_throw("--" + key);
        if (opt == nullptr || key == "config") throw ArgumentError("unknown config key '" + key + "'");
        if (opt->count() > 0) continue;  // the command line wins
        std::istringstream words(value);
        std::string w;
        while (words >> w) opt->add_result(w);
        opt->run_callback();
      }
    }
    for (const auto& req : cmd.required) {
      if (chosen->count(req) == 0) throw ArgumentError(name + " requires " + req);
    }

    Table table = cmd.run(threads);

    std::ostringstream buffer;
    if (format == "json") {
      auto params = detail::parameter_record(chosen);
      params["format"] = format;
      buffer << to_json(table, name, params).dump(2) << '\n';
    } else {
      write_csv(table, buffer);
    }
    if (out_path.empty()) {
      out << buffer.str();
      out.flush();
      if (!out) throw std::ios_base::failure("write to standard output failed");
    } else {
      std::ofstream file(out_path, std::ios::binary);
      if (!file) throw std::ios_base::failure("cannot open " + out_path);
      file << buffer.str();
      file.close();
      if (!file) throw std::ios_base::failure("write to " + out_path + " failed");
    }
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::ios_base::failure& e) {
    err << "i/o failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace critstat::cli
