#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wsm/bounds.hpp"
#include "wsm/errors.hpp"
#include "wsm/graph.hpp"
#include "wsm/moments.hpp"
#include "wsm/simulate.hpp"
#include "wsm/stationary.hpp"

namespace wsm::cli {

using nlohmann::ordered_json;

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

// Absent values print as an empty CSV field and a JSON null.
std::string csv_field(std::optional<double> v) { return v ? format_number(*v) : std::string(); }

ordered_json json_value(std::optional<double> v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

// NaN marks an absent value in the stationary reports.
std::optional<double> present(double v) {
  return std::isnan(v) ? std::nullopt : std::optional<double>(v);
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) os << ',';
    os << fields[i];
  }
  os << '\n';
}

ordered_json json_header(const std::string& command) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

Format resolve_format(const RunConfig& cfg, Format fallback) { return cfg.format.value_or(fallback); }

std::string bool_text(bool b) { return b ? "true" : "false"; }

// ---- bounds ----

void cmd_bounds(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
  if (cfg.alpha.has_value() == cfg.c.has_value()) {
    throw UsageError("bounds: give exactly one of --alpha and --c");
  }
  if (cfg.alpha && cfg.y) throw UsageError("bounds: --y applies to --c only");
  if (cfg.c && cfg.x) throw UsageError("bounds: --x applies to --alpha only");
  const BoundsReport r = cfg.alpha ? bounds_for_alpha(*cfg.alpha, cfg.x.value_or(kDefaultX), cfg.force)
                                   : bounds_for_degree(*cfg.c, cfg.y.value_or(kDefaultY), cfg.force);
  if (r.below_threshold) err << "warning: parameter at or below its threshold, forced\n";

  const std::vector<std::pair<std::string, std::optional<double>>> fields = {
      {"alpha", r.alpha},
      {"c", r.c},
      {"x", cfg.alpha ? std::optional<double>(r.x) : std::nullopt},
      {"y", cfg.c ? std::optional<double>(r.y) : std::nullopt},
      {"c_upper_exact", r.c_upper_exact},
      {"c_upper_simple", r.c_upper_simple},
      {"c_lower", r.c_lower},
      {"alpha_upper", r.alpha_upper},
      {"alpha_lower", r.alpha_lower},
      {"alpha_first_moment", r.alpha_first_moment},
      {"w_value", r.w_value},
      {"w_expansion_value", r.w_expansion_value},
  };

  if (resolve_format(cfg, Format::Json) == Format::Json) {
    ordered_json j = json_header("bounds");
    for (const auto& [key, value] : fields) j[key] = json_value(value);
    j["expansion_terms"] = r.expansion_terms;
    j["below_threshold"] = r.below_threshold;
    os << j.dump(2) << '\n';
    return;
  }
  std::vector<std::string> header;
  std::vector<std::string> row;
  for (const auto& [key, value] : fields) {
    header.push_back(key);
    row.push_back(csv_field(value));
  }
  for (std::size_t i = 0; i < static_cast<std::size_t>(kExpansionTerms); ++i) {
    header.push_back("expansion_term_" + std::to_string(i + 1));
    row.push_back(i < r.expansion_terms.size() ? format_number(r.expansion_terms[i]) : std::string());
  }
  header.emplace_back("below_threshold");
  row.push_back(bool_text(r.below_threshold));
  write_csv_row(os, header);
  write_csv_row(os, row);
}

// ---- phi-scan ----

void cmd_phi_scan(const RunConfig& cfg, std::ostream& os, std::ostream&) {
  if (!cfg.alpha || !cfg.c) throw UsageError("phi-scan: --alpha and --c are required");
  if (cfg.points < 1) throw UsageError("phi-scan: --points must be at least 1");
  const auto profile = overlap_profile(Params::tuned(*cfg.alpha, *cfg.c), cfg.points);

  if (resolve_format(cfg, Format::Csv) == Format::Json) {
    ordered_json j = json_header("phi-scan");
    j["alpha"] = *cfg.alpha;
    j["c"] = *cfg.c;
    j["mu"] = mu_star(*cfg.alpha);
    j["alpha_squared_row"] = profile.alpha_squared_row;
    j["argmax_zeta"] = profile.zeta(profile.argmax);
    j["phi_max"] = profile.phi_max;
    j["zeta"] = std::vector<double>(profile.zeta.begin(), profile.zeta.end());
    j["phi"] = std::vector<double>(profile.phi.begin(), profile.phi.end());
    j["psi"] = std::vector<double>(profile.psi.begin(), profile.psi.end());
    os << j.dump(2) << '\n';
    return;
  }
  os << "zeta,phi,psi\n";
  for (Eigen::Index i = 0; i < profile.zeta.size(); ++i) {
    write_csv_row(os, {format_number(profile.zeta(i)), format_number(profile.phi(i)), format_number(profile.psi(i))});
  }
}

// ---- certify ----

struct CertifyRow {
  double alpha = 0.0;
  std::optional<double> c;
  std::optional<StationaryReport> report;
  std::optional<MaxCertificate> cert;
  std::string error;
};

void cmd_certify(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
  if (cfg.alpha_grid.empty()) throw UsageError("certify: --alpha-grid is required");
  const std::vector<double> alphas = expand(parse_grid_spec(cfg.alpha_grid));
  std::optional<LemmaMode> mode;
  if (cfg.c_mode == "lemma2") {
    mode = LemmaMode::Lemma2;
  } else if (cfg.c_mode == "lemma3") {
    mode = LemmaMode::Lemma3;
  } else if (cfg.c_mode == "lemma4") {
    mode = LemmaMode::Lemma4;
  } else if (cfg.c_mode != "explicit") {
    throw UsageError("certify: --c-mode must be lemma2, lemma3, lemma4 or explicit");
  }
  if (!mode && !cfg.c) throw UsageError("certify: --c-mode explicit needs --c");
  if (mode && cfg.c) throw UsageError("certify: --c applies to --c-mode explicit only");
  const double x = cfg.x.value_or(kDefaultX);
  if (cfg.grid_points < 2) throw UsageError("certify: --grid-points must be at least 2");

  CertifyOptions opts;
  opts.grid_points = cfg.grid_points;
  opts.margin = cfg.margin;

  std::vector<CertifyRow> rows;
  std::size_t failed = 0;
  for (double a : alphas) {
    CertifyRow row;
    row.alpha = a;
    try {
      row.c = mode ? lemma_degree(*mode, a, x) : *cfg.c;
      const Params p = Params::tuned(a, *row.c);
      row.report = stationary_report(p);
      row.cert = certify_global_max(p, opts);
    } catch (const std::exception& e) {
      row.error = e.what();
      ++failed;
      err << "certify: alpha=" << format_number(a) << ": " << e.what() << '\n';
    }
    rows.push_back(std::move(row));
  }

  auto report_field = [](const CertifyRow& row, double StationaryReport::*field) {
    return row.report ? present((*row.report).*field) : std::nullopt;
  };
  const std::vector<std::pair<std::string, double StationaryReport::*>> report_fields = {
      {"zeta1", &StationaryReport::zeta1},
      {"zeta2", &StationaryReport::zeta2},
      {"zeta3", &StationaryReport::zeta3},
      {"delta2", &StationaryReport::delta2},
      {"delta3", &StationaryReport::delta3},
      {"psi_zeta3", &StationaryReport::psi_at_zeta3},
      {"lemma2_ratio", &StationaryReport::lemma2_ratio},
      {"lemma3_ratio", &StationaryReport::lemma3_ratio},
  };

  if (resolve_format(cfg, Format::Csv) == Format::Json) {
    ordered_json j = json_header("certify");
    j["c_mode"] = cfg.c_mode;
    j["x"] = mode == LemmaMode::Lemma4 ? ordered_json(x) : ordered_json(nullptr);
    j["grid_points"] = cfg.grid_points;
    j["margin"] = cfg.margin;
    ordered_json list = ordered_json::array();
    for (const CertifyRow& row : rows) {
      ordered_json r;
      r["alpha"] = row.alpha;
      r["c"] = json_value(row.c);
      r["status"] = row.report ? ordered_json(to_string(row.report->status)) : ordered_json(nullptr);
      for (const auto& [key, field] : report_fields) r[key] = json_value(report_field(row, field));
      if (row.cert) {
        r["phi_max"] = row.cert->phi_max;
        r["argmax_zeta"] = row.cert->argmax_zeta;
        r["second_peak_value"] = std::isinf(row.cert->second_peak_value) ? ordered_json(nullptr)
                                                                         : ordered_json(row.cert->second_peak_value);
        r["verdict"] = to_string(row.cert->verdict);
      } else {
        r["phi_max"] = nullptr;
        r["argmax_zeta"] = nullptr;
        r["second_peak_value"] = nullptr;
        r["verdict"] = nullptr;
      }
      r["error"] = row.error.empty() ? ordered_json(nullptr) : ordered_json(row.error);
      list.push_back(std::move(r));
    }
    j["rows"] = std::move(list);
    os << j.dump(2) << '\n';
  } else {
    std::vector<std::string> header = {"alpha", "c", "status"};
    for (const auto& f : report_fields) header.push_back(f.first);
    for (const char* h : {"phi_max", "argmax_zeta", "second_peak_value", "verdict", "error"}) header.emplace_back(h);
    write_csv_row(os, header);
    for (const CertifyRow& row : rows) {
      std::vector<std::string> fields = {format_number(row.alpha), csv_field(row.c),
                                         row.report ? to_string(row.report->status) : std::string()};
      for (const auto& f : report_fields) fields.push_back(csv_field(report_field(row, f.second)));
      if (row.cert) {
        fields.push_back(format_number(row.cert->phi_max));
        fields.push_back(format_number(row.cert->argmax_zeta));
        fields.push_back(std::isinf(row.cert->second_peak_value) ? std::string()
                                                                 : format_number(row.cert->second_peak_value));
        fields.push_back(to_string(row.cert->verdict));
        fields.emplace_back();
      } else {
        fields.insert(fields.end(), 4, std::string());
        // Commas and quotes would break the row; keep the message readable.
        std::string msg = row.error;
        for (char& ch : msg) {
          if (ch == ',' || ch == '"' || ch == '\n') ch = ';';
        }
        fields.push_back(msg);
      }
      write_csv_row(os, fields);
    }
  }
  if (!rows.empty() && failed == rows.size()) throw PreconditionFailure("certify: every row failed");
}

// ---- moments ----

void cmd_moments(const RunConfig& cfg, std::ostream& os, std::ostream&) {
  if (!cfg.n || !cfg.m || !cfg.k || !cfg.mu) throw UsageError("moments: --n, --m, --k and --mu are required");
  if (*cfg.n < 1) throw UsageError("moments: --n must be positive");
  if (*cfg.m < 0) throw UsageError("moments: --m must be nonnegative");
  if (*cfg.k < 0 || *cfg.k > *cfg.n) throw UsageError("moments: --k must lie in [0, n]");
  if (!(*cfg.mu >= 0.0 && *cfg.mu <= 1.0)) throw UsageError("moments: --mu must lie in [0, 1]");
  MomentOptions opts;
  opts.brute = cfg.brute;
  opts.mc_trials = cfg.mc_trials;
  opts.seed = cfg.seed;
  const MomentReport r = moment_report(*cfg.n, *cfg.m, *cfg.k, *cfg.mu, opts);

  std::optional<double> e_x_brute, e_x2_brute, e_x_mc, e_x_mc_se, e_x2_mc, e_x2_mc_se;
  if (r.brute) {
    e_x_brute = r.brute->e_x;
    e_x2_brute = r.brute->e_x2;
  }
  if (r.mc) {
    e_x_mc = r.mc->e_x;
    e_x2_mc = r.mc->e_x2;
    if (r.mc->se_defined) {
      e_x_mc_se = r.mc->e_x_se;
      e_x2_mc_se = r.mc->e_x2_se;
    }
  }
  const std::vector<std::pair<std::string, std::optional<double>>> fields = {
      {"mu", r.mu},
      {"e_x_formula", r.e_x_formula},
      {"e_x2_formula", r.e_x2_formula},
      {"log_e_x_formula", r.log_e_x_formula},
      {"log_e_x2_formula", r.log_e_x2_formula},
      {"e_x_brute", e_x_brute},
      {"e_x2_brute", e_x2_brute},
      {"e_x_mc", e_x_mc},
      {"e_x_mc_se", e_x_mc_se},
      {"e_x2_mc", e_x2_mc},
      {"e_x2_mc_se", e_x2_mc_se},
      {"max_abs_discrepancy", (r.brute || r.mc) ? std::optional<double>(r.max_abs_discrepancy) : std::nullopt},
  };

  if (resolve_format(cfg, Format::Json) == Format::Json) {
    ordered_json j = json_header("moments");
    j["n"] = r.n;
    j["m"] = r.m;
    j["k"] = r.k;
    for (const auto& [key, value] : fields) j[key] = json_value(value);
    j["mc_trials"] = r.mc ? ordered_json(r.mc->trials) : ordered_json(nullptr);
    j["mc_seed"] = r.mc ? ordered_json(cfg.seed) : ordered_json(nullptr);
    j["mc_se_defined"] = r.mc ? ordered_json(r.mc->se_defined) : ordered_json(nullptr);
    os << j.dump(2) << '\n';
    return;
  }
  std::vector<std::string> header = {"n", "m", "k"};
  std::vector<std::string> row = {std::to_string(r.n), std::to_string(r.m), std::to_string(r.k)};
  for (const auto& [key, value] : fields) {
    header.push_back(key);
    row.push_back(csv_field(value));
  }
  header.emplace_back("mc_trials");
  row.push_back(r.mc ? std::to_string(r.mc->trials) : std::string());
  write_csv_row(os, header);
  write_csv_row(os, row);
}

// ---- simulate ----

void cmd_simulate(const RunConfig& cfg, std::ostream& os, std::ostream&) {
  const auto algo = parse_algorithm(cfg.algo);
  if (!algo) throw UsageError("simulate: unknown --algo '" + cfg.algo + "' (exact, karp-sipser, greedy-random)");
  if (cfg.threads < 1) throw UsageError("simulate: --threads must be at least 1");
  if (!cfg.export_path.empty() && cfg.trials != 1) throw UsageError("simulate: --export needs --trials 1");

  std::vector<SimResult> results;
  std::optional<double> c = cfg.c;
  if (!cfg.import_path.empty()) {
    if (cfg.n || cfg.c) throw UsageError("simulate: --import replaces --n and --c");
    std::ifstream in(cfg.import_path);
    if (!in) throw IoError("simulate: cannot open '" + cfg.import_path + "'");
    MultiGraph g = [&] {
      try {
        return read_graph(in);
      } catch (const ParseError& e) {
        throw IoError(std::string("simulate: ") + e.what());
      }
    }();
    c = g.n() > 0 ? 2.0 * static_cast<double>(g.m()) / static_cast<double>(g.n()) : 0.0;
    results.push_back(run_on_graph(g, *algo, cfg.seed));
  } else {
    if (!cfg.n || !cfg.c) throw UsageError("simulate: --n and --c are required");
    if (*cfg.n < 1) throw UsageError("simulate: --n must be positive");
    if (!(*cfg.c >= 0.0) || !std::isfinite(*cfg.c)) throw UsageError("simulate: --c must be nonnegative");
    const auto n = static_cast<std::size_t>(*cfg.n);
    if (!cfg.export_path.empty()) {
      const MultiGraph g = sample(n, edge_count(n, *cfg.c), cfg.seed);
      std::ofstream out(cfg.export_path);
      if (!out) throw IoError("simulate: cannot write '" + cfg.export_path + "'");
      write_graph(out, g);
      if (!out) throw IoError("simulate: write to '" + cfg.export_path + "' failed");
    }
    results = run_trials(n, *cfg.c, cfg.trials, *algo, cfg.seed, cfg.threads);
  }

  std::optional<double> alpha_upper, alpha_lower;
  if (c && *c >= 2.0) {
    const AlphaBounds ab = alpha_bounds(*c, kDefaultY);
    alpha_upper = ab.upper;
    alpha_lower = ab.lower;
  }
  std::optional<RatioSummary> summary;
  if (!results.empty()) summary = summarize(results);

  if (resolve_format(cfg, Format::Csv) == Format::Json) {
    ordered_json j = json_header("simulate");
    j["algorithm"] = to_string(*algo);
    j["c"] = json_value(c);
    j["seed"] = cfg.seed;
    ordered_json list = ordered_json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
      const SimResult& r = results[i];
      ordered_json row;
      row["trial"] = i;
      row["seed"] = r.seed;
      row["n"] = r.n;
      row["m"] = r.m;
      row["set_size"] = r.set_size;
      row["ratio"] = r.ratio;
      row["independent"] = r.independent;
      row["maximal"] = r.maximal;
      if (cfg.timing) row["wall_seconds"] = r.wall_seconds;
      list.push_back(std::move(row));
    }
    j["trials"] = std::move(list);
    ordered_json s;
    s["min"] = json_value(summary ? std::optional<double>(summary->min) : std::nullopt);
    s["q25"] = json_value(summary ? std::optional<double>(summary->q25) : std::nullopt);
    s["median"] = json_value(summary ? std::optional<double>(summary->median) : std::nullopt);
    s["q75"] = json_value(summary ? std::optional<double>(summary->q75) : std::nullopt);
    s["max"] = json_value(summary ? std::optional<double>(summary->max) : std::nullopt);
    s["mean"] = json_value(summary ? std::optional<double>(summary->mean) : std::nullopt);
    s["alpha_upper"] = json_value(alpha_upper);
    s["alpha_lower"] = json_value(alpha_lower);
    s["y"] = kDefaultY;
    j["summary"] = std::move(s);
    os << j.dump(2) << '\n';
    return;
  }
  std::vector<std::string> header = {"trial", "seed", "n", "m", "algorithm", "set_size", "ratio", "independent", "maximal"};
  if (cfg.timing) header.emplace_back("wall_seconds");
  write_csv_row(os, header);
  for (std::size_t i = 0; i < results.size(); ++i) {
    const SimResult& r = results[i];
    std::vector<std::string> row = {std::to_string(i), std::to_string(r.seed), std::to_string(r.n),
                                    std::to_string(r.m), to_string(r.algorithm), std::to_string(r.set_size),
                                    format_number(r.ratio), bool_text(r.independent), bool_text(r.maximal)};
    if (cfg.timing) row.push_back(format_number(r.wall_seconds));
    write_csv_row(os, row);
  }
  os << '\n';
  write_csv_row(os, {"statistic", "value"});
  const std::vector<std::pair<std::string, std::optional<double>>> stats = {
      {"min", summary ? std::optional<double>(summary->min) : std::nullopt},
      {"q25", summary ? std::optional<double>(summary->q25) : std::nullopt},
      {"median", summary ? std::optional<double>(summary->median) : std::nullopt},
      {"q75", summary ? std::optional<double>(summary->q75) : std::nullopt},
      {"max", summary ? std::optional<double>(summary->max) : std::nullopt},
      {"mean", summary ? std::optional<double>(summary->mean) : std::nullopt},
      {"alpha_upper", alpha_upper},
      {"alpha_lower", alpha_lower},
  };
  for (const auto& [key, value] : stats) write_csv_row(os, {key, csv_field(value)});
}

// ---- flag wiring ----

void add_format_flags(CLI::App* sub, std::string& format, std::string& out_path) {
  sub->add_option("--format", format, "csv or json");
  sub->add_option("--out", out_path, "write results to this file instead of standard output");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string format;
  double alpha = 0.0, c = 0.0, x = 0.0, y = 0.0, mu = 0.0;
  std::int64_t n = 0, m = 0, k = 0;

  CLI::App app{"Bounds and validation tools for weighted second-moment independent-set analysis", "wsmis"};
  app.require_subcommand(1);

  CLI::App* bounds = app.add_subcommand("bounds", "first- and second-moment bounds for a density or a degree");
  CLI::Option* bounds_alpha = bounds->add_option("--alpha", alpha, "set density in (0, 1/2)");
  CLI::Option* bounds_c = bounds->add_option("--c", c, "average degree");
  CLI::Option* bounds_x = bounds->add_option("--x", x, "lower-bound constant, must exceed 4/e");
  CLI::Option* bounds_y = bounds->add_option("--y", y, "lower-bound constant, must exceed 4 sqrt(2)/e");
  bounds->add_flag("--force", cfg.force, "accept x or y at or below the threshold");
  add_format_flags(bounds, format, cfg.out_path);

  CLI::App* scan = app.add_subcommand("phi-scan", "phi and psi on a uniform overlap grid");
  CLI::Option* scan_alpha = scan->add_option("--alpha", alpha, "set density in (0, 1/2)");
  CLI::Option* scan_c = scan->add_option("--c", c, "average degree");
  scan->add_option("--points", cfg.points, "grid intervals; the output has points + 1 rows");
  add_format_flags(scan, format, cfg.out_path);

  CLI::App* certify = app.add_subcommand("certify", "stationary points and global-maximum verdict over an alpha grid");
  certify->add_option("--alpha-grid", cfg.alpha_grid, "start:end:{log|lin}[:count]");
  certify->add_option("--c-mode", cfg.c_mode, "lemma2, lemma3, lemma4 or explicit");
  CLI::Option* certify_x = certify->add_option("--x", x, "constant in the lemma4 degree");
  CLI::Option* certify_c = certify->add_option("--c", c, "degree for --c-mode explicit");
  certify->add_option("--grid-points", cfg.grid_points, "certification grid size");
  certify->add_option("--margin", cfg.margin, "certification margin");
  add_format_flags(certify, format, cfg.out_path);

  CLI::App* moments = app.add_subcommand("moments", "exact first and second moments, with brute-force and Monte Carlo checks");
  CLI::Option* mom_n = moments->add_option("--n", n, "vertices");
  CLI::Option* mom_m = moments->add_option("--m", m, "edges");
  CLI::Option* mom_k = moments->add_option("--k", k, "set size");
  CLI::Option* mom_mu = moments->add_option("--mu", mu, "edge weight in [0, 1]");
  moments->add_flag("--brute", cfg.brute, "enumerate every edge sequence");
  moments->add_option("--mc", cfg.mc_trials, "Monte Carlo trials");
  moments->add_option("--seed", cfg.seed, "base seed");
  add_format_flags(moments, format, cfg.out_path);

  CLI::App* simulate = app.add_subcommand("simulate", "independent sets found on sampled graphs");
  CLI::Option* sim_n = simulate->add_option("--n", n, "vertices");
  CLI::Option* sim_c = simulate->add_option("--c", c, "average degree; m = round(c n / 2)");
  simulate->add_option("--trials", cfg.trials, "number of graphs");
  simulate->add_option("--algo", cfg.algo, "exact, karp-sipser or greedy-random");
  simulate->add_option("--seed", cfg.seed, "base seed; trial i uses seed + i");
  simulate->add_option("--threads", cfg.threads, "worker threads");
  simulate->add_option("--import", cfg.import_path, "run on a graph file instead of sampling");
  simulate->add_option("--export", cfg.export_path, "write the sampled graph (needs --trials 1)");
  simulate->add_flag("--timing", cfg.timing, "include wall time per trial");
  add_format_flags(simulate, format, cfg.out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  auto set = [](CLI::Option* opt, auto value, auto& target) {
    if (opt->count() > 0) target = value;
  };
  const std::vector<std::pair<CLI::App*, std::function<void(std::ostream&, std::ostream&)>>> commands = {
      {bounds,
       [&](std::ostream& os, std::ostream& es) {
         set(bounds_alpha, alpha, cfg.alpha);
         set(bounds_c, c, cfg.c);
         set(bounds_x, x, cfg.x);
         set(bounds_y, y, cfg.y);
         cmd_bounds(cfg, os, es);
       }},
      {scan,
       [&](std::ostream& os, std::ostream& es) {
         set(scan_alpha, alpha, cfg.alpha);
         set(scan_c, c, cfg.c);
         cmd_phi_scan(cfg, os, es);
       }},
      {certify,
       [&](std::ostream& os, std::ostream& es) {
         set(certify_x, x, cfg.x);
         set(certify_c, c, cfg.c);
         cmd_certify(cfg, os, es);
       }},
      {moments,
       [&](std::ostream& os, std::ostream& es) {
         set(mom_n, n, cfg.n);
         set(mom_m, m, cfg.m);
         set(mom_k, k, cfg.k);
         set(mom_mu, mu, cfg.mu);
         cmd_moments(cfg, os, es);
       }},
      {simulate,
       [&](std::ostream& os, std::ostream& es) {
         set(sim_n, n, cfg.n);
         set(sim_c, c, cfg.c);
         cmd_simulate(cfg, os, es);
       }},
  };

  try {
    if (format == "csv") {
      cfg.format = Format::Csv;
    } else if (format == "json") {
      cfg.format = Format::Json;
    } else if (!format.empty()) {
      throw UsageError("--format must be csv or json");
    }
    std::ostringstream buffer;
    for (const auto& [sub, run] : commands) {
      if (sub->parsed()) {
        cfg.command = sub->get_name();
        run(buffer, err);
      }
    }
    if (cfg.out_path.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(cfg.out_path);
      if (!file) throw IoError("cannot open '" + cfg.out_path + "' for writing");
      file << buffer.str();
      file.flush();
      if (!file) throw IoError("write to '" + cfg.out_path + "' failed");
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const PreconditionFailure& e) {
    err << "error: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const SizeError& e) {
    err << "error: budget or size limit: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const std::exception& e) {
    // DomainError, ParameterError and NumericError: the inputs fail a
    // precondition of the underlying computation.
    err << "error: " << e.what() << '\n';
    return kExitPrecondition;
  }
  return kExitOk;
}

}  // namespace wsm::cli
