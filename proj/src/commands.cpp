#include "bkd/commands.hpp"

#include "bkd/asymptotics.hpp"
#include "bkd/inequalities.hpp"
#include "bkd/parallel.hpp"
#include "bkd/positivity.hpp"
#include "bkd/report.hpp"
#include "bkd/table_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <functional>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

namespace bkd {

namespace {

using ordered_json = nlohmann::ordered_json;

const std::vector<std::string> kVerifyChecks = {
    "turan3",       "theta-mono",   "dlog",         "logconcave", "jensen",   "bessel",   "sandwich",
    "theta-bounds", "delta-bounds", "lambda-bounds", "envelope",  "phi-psi",  "domination", "lemma-uv",
    "tau"};
const std::vector<std::string> kScanTargets = {"conjecture", "jensen"};

void write_output(const RunConfig& cfg, const std::string& body, std::ostream& out) {
  if (cfg.out.empty()) {
    out << body;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw UsageError("cannot open output file " + cfg.out);
  f << body;
  if (!f) throw UsageError("failed writing " + cfg.out);
}

PartitionTable load_table(const RunConfig& cfg, long N) {
  if (cfg.k < 0) throw UsageError("--k must be >= 0");
  if (N < 0) throw UsageError("table size must be >= 0");
  const auto k = static_cast<unsigned>(cfg.k);
  if (!cfg.use_cache) return delta_table(k, N);
  TableCache cache(cfg.cache_dir.empty() ? TableCache::default_directory() : std::filesystem::path(cfg.cache_dir));
  return cache.get_or_build(k, N);
}

std::pair<long, long> require_range(const RunConfig& cfg) {
  if (!cfg.from || !cfg.to) throw UsageError("this check needs --from and --to");
  if (*cfg.from > *cfg.to) throw UsageError("--from must not exceed --to");
  return {*cfg.from, *cfg.to};
}

std::vector<long> stepped(long from, long to, long step) {
  if (step < 1) throw UsageError("--step must be >= 1");
  std::vector<long> ns;
  for (long n = from; n <= to; n += step) ns.push_back(n);
  if (ns.back() != to) ns.push_back(to);
  return ns;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int emit_report(const RunConfig& cfg, const VerificationReport& rep, std::ostream& out,
                const std::function<void(std::ostream&)>& csv = {}) {
  std::ostringstream body;
  if (cfg.format == "json") {
    body << rep.to_json().dump(2) << '\n';
  } else if (cfg.format == "csv") {
    if (csv) csv(body);
    else rep.write_margins_csv(body);
  } else {
    body << rep.to_text();
  }
  write_output(cfg, body.str(), out);
  if (!cfg.out.empty()) out << rep.to_text();
  return rep.exit_code();
}

// ---- expand -------------------------------------------------------------

int cmd_expand(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.n < 0) throw UsageError("expand needs --n >= 0");
  const PartitionTable table = load_table(cfg, cfg.n);
  std::ostringstream body;
  if (cfg.format == "json") body << table_to_json(table) << '\n';
  else write_table_csv(body, table);
  write_output(cfg, body.str(), out);

  std::ostream& sink = cfg.out.empty() ? err : out;
  sink << "k=" << table.k() << " N=" << table.N() << " first=" << table[0].get_str()
       << " last=" << table[table.N()].get_str() << " sha256=" << table_digest(table) << '\n';
  return kExitPass;
}

// ---- verify: exact checks -----------------------------------------------

int verify_exact(const RunConfig& cfg, CheckKind kind, std::ostream& out) {
  const auto [from, to] = require_range(cfg);
  long look = 0;
  switch (kind) {
    case CheckKind::LogConcave: look = 1; break;
    case CheckKind::Turan3:
    case CheckKind::ThetaMonotone: look = 2; break;
    case CheckKind::DLog: look = cfg.r; break;
    case CheckKind::Jensen: look = cfg.d; break;
  }
  const PartitionTable table = load_table(cfg, to + look);
  ScanOptions opt;
  opt.r = cfg.r;
  opt.d = cfg.d;
  opt.workers = cfg.workers;
  opt.keep_margins = cfg.format == "csv";
  const auto rep = scan_check(table, kind, from, to, opt);
  return emit_report(cfg, rep, out);
}

// ---- verify: interval checks --------------------------------------------

template <class F>
int verify_analytic(const RunConfig& cfg, const std::string& name, std::ostream& out, long lookahead, F check) {
  const auto [from, to] = require_range(cfg);
  if (cfg.k < 1) throw UsageError(name + " needs --k >= 1");
  const auto ns = stepped(from, to, cfg.step);
  const PartitionTable table = load_table(cfg, to + lookahead);
  Stopwatch clock;
  auto rows = parallel_map<AnalyticCheck>(0, static_cast<long>(ns.size()) - 1, cfg.workers,
                                          [&](long i) { return check(table, ns[static_cast<std::size_t>(i)]); });
  auto rep = analytic_report(name, cfg.k, rows);
  rep.from = from;
  rep.to = to;
  rep.extras["precision"] = cfg.precision == 0 ? ordered_json("auto") : ordered_json(cfg.precision);
  rep.elapsed_ms = clock.elapsed_ms();
  return emit_report(cfg, rep, out, [&](std::ostream& s) {
    const mpfr_prec_t p = cfg.precision > 0 ? cfg.precision : kDefaultPrecision;
    if (name == "theta-bounds") {
      write_asymptotics_csv(s, table, ns, p);
      return;
    }
    s << "n,lower,value,upper,verdict\n";
    for (const auto& r : rows)
      s << r.n << ",[" << r.lower.lo_string(25) << ';' << r.lower.hi_string(25) << "],[" << r.value.lo_string(25)
        << ';' << r.value.hi_string(25) << "],[" << r.upper.lo_string(25) << ';' << r.upper.hi_string(25) << "],"
        << to_string(r.verdict) << '\n';
  });
}

int verify_bessel(const RunConfig& cfg, std::ostream& out) {
  if (cfg.z_grid.empty()) throw UsageError("bessel needs --z-grid a:b:count");
  const auto zs = parse_log_grid(cfg.z_grid);
  Stopwatch clock;
  auto checks = parallel_map<BesselRemainderCheck>(0, static_cast<long>(zs.size()) - 1, cfg.workers, [&](long i) {
    return check_bessel_remainder(Interval::from_double(zs[static_cast<std::size_t>(i)]), cfg.precision);
  });
  VerificationReport rep;
  rep.check = "bessel";
  rep.k = -1;
  rep.from = 0;
  rep.to = static_cast<long>(zs.size()) - 1;
  auto points = ordered_json::array();
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto& c = checks[i];
    if (c.verdict == Verdict::Fail) rep.failures.push_back(static_cast<long>(i));
    if (c.verdict == Verdict::Inconclusive) rep.inconclusive.push_back(static_cast<long>(i));
    ordered_json p;
    p["z"] = format_double(zs[i]);
    p["precision_bits"] = c.precision;
    p["margin_lo"] = c.margin.lo_string(20);
    p["scaled_error"] = {c.scaled_error.lo_string(20), c.scaled_error.hi_string(20)};
    p["verdict"] = to_string(c.verdict);
    points.push_back(std::move(p));
  }
  rep.extras["grid"] = cfg.z_grid;
  rep.extras["points"] = std::move(points);
  rep.elapsed_ms = clock.elapsed_ms();
  return emit_report(cfg, rep, out, [&](std::ostream& s) {
    s << "z,precision_bits,margin_lo,scaled_error_lo,scaled_error_hi,verdict\n";
    for (std::size_t i = 0; i < checks.size(); ++i)
      s << format_double(zs[i]) << ',' << checks[i].precision << ',' << checks[i].margin.lo_string(20) << ','
        << checks[i].scaled_error.lo_string(20) << ',' << checks[i].scaled_error.hi_string(20) << ','
        << to_string(checks[i].verdict) << '\n';
  });
}

int verify_envelope(const RunConfig& cfg, std::ostream& out) {
  const auto [from, to] = require_range(cfg);
  if (cfg.k < 1) throw UsageError("envelope needs --k >= 1");
  if (cfg.orientation != "phi-lower" && cfg.orientation != "phi-upper")
    throw UsageError("--orientation must be phi-lower or phi-upper");
  const auto orient = cfg.orientation == "phi-lower" ? EnvelopeOrientation::PhiLower : EnvelopeOrientation::PhiUpper;
  const auto ts = stepped(from, to, cfg.step);
  Stopwatch clock;
  auto rows = parallel_map<AnalyticCheck>(0, static_cast<long>(ts.size()) - 1, cfg.workers, [&](long i) {
    const long t = ts[static_cast<std::size_t>(i)];
    const auto e = envelope_check(static_cast<unsigned>(cfg.k), Interval::from_long(t), orient, cfg.precision);
    AnalyticCheck r;
    r.n = t;
    r.verdict = e.verdict;
    r.lower = e.lower;
    r.value = e.scaled_bessel;
    r.upper = e.upper;
    return r;
  });
  auto rep = analytic_report("envelope", cfg.k, rows);
  rep.from = from;
  rep.to = to;
  rep.extras["orientation"] = cfg.orientation;
  rep.elapsed_ms = clock.elapsed_ms();
  return emit_report(cfg, rep, out);
}

ordered_json positivity_json(const PositivityResult& r, bool& reverified) {
  ordered_json j;
  j["status"] = to_string(r.status);
  reverified = r.certificate && r.certificate->reverify();
  j["reverified"] = reverified;
  j["certificate"] = r.certificate ? ordered_json::parse(r.certificate->to_json()) : ordered_json(nullptr);
  j["witness"] = r.witness ? ordered_json(r.witness->get_str()) : ordered_json(nullptr);
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

int verify_phi_psi(const RunConfig& cfg, std::ostream& out) {
  Stopwatch clock;
  const PiBracket pi = PiBracket::from_precision(cfg.precision > 0 ? cfg.precision : 256);
  const auto psi = certify_positive_on_ray(psi_polynomial(), Rational(6), pi);
  const auto diff = certify_positive_on_ray(phi_polynomial() - psi_polynomial(), Rational(33, 10), pi);
  VerificationReport rep;
  rep.check = "phi-psi";
  rep.from = 0;
  rep.to = 1;
  const std::pair<const char*, const PositivityResult*> items[] = {{"psi", &psi}, {"phi_minus_psi", &diff}};
  for (long i = 0; i < 2; ++i) {
    bool ok = false;
    rep.extras[items[i].first] = positivity_json(*items[i].second, ok);
    if (items[i].second->status == PositivityStatus::Inconclusive) rep.inconclusive.push_back(i);
    else if (!ok) rep.failures.push_back(i);
  }
  rep.elapsed_ms = clock.elapsed_ms();
  return emit_report(cfg, rep, out);
}

int verify_domination(const RunConfig& cfg, std::ostream& out) {
  if (cfg.k < 1) throw UsageError("domination needs --k >= 1");
  Stopwatch clock;
  VerificationReport rep;
  rep.check = "domination";
  rep.k = cfg.k;
  rep.from = 0;
  rep.to = 1;
  const auto k = static_cast<unsigned>(cfg.k);
  const std::pair<const char*, DominationProblem> items[] = {{"J", j_polynomial_data(k)}, {"K", k_polynomial_data(k)}};
  for (long i = 0; i < 2; ++i) {
    const auto res = domination_threshold(items[i].second);
    const bool ok = res.threshold <= 315 && res.certificate.reverify();
    ordered_json j;
    j["threshold"] = res.threshold;
    j["refined"] = res.refined.get_str();
    j["unchecked_terms"] = res.unchecked_terms;
    j["certificate"] = ordered_json::parse(res.certificate.to_json());
    rep.extras[items[i].first] = std::move(j);
    if (!ok) rep.failures.push_back(i);
  }
  rep.elapsed_ms = clock.elapsed_ms();
  return emit_report(cfg, rep, out);
}

int verify_lemma_uv(const RunConfig& cfg, std::ostream& out) {
  if (cfg.samples < 1) throw UsageError("--samples must be >= 1");
  Stopwatch clock;
  std::mt19937_64 rng(cfg.seed);
  constexpr unsigned long kDen = 1UL << 30;
  std::uniform_int_distribution<unsigned long> frac(0, kDen - 1);
  VerificationReport rep;
  rep.check = "lemma-uv";
  rep.from = 1;
  rep.to = cfg.samples;
  long hyp_true = 0;
  for (long i = 1; i <= cfg.samples; ++i) {
    // u uniform on [15/16, 1), v uniform on (u, 1).
    Rational u = Rational(15, 16) + Rational(frac(rng), 16 * kDen);
    Rational v = u + (1 - u) * Rational(frac(rng) % (kDen - 1) + 1, kDen);
    u.canonicalize();
    v.canonicalize();
    const auto r = lemma_uv_check(u, v);
    hyp_true += r.hypothesis;
    if (!r.holds()) rep.failures.push_back(i);
  }
  const long roots = std::max(1L, cfg.samples / 100);
  std::vector<long> bad_roots;
  for (long i = 1; i <= roots; ++i) {
    Rational u = Rational(15, 16) + Rational(frac(rng), 16 * kDen);
    u.canonicalize();
    if (!root_ordering_check(u).ordered()) bad_roots.push_back(i);
  }
  rep.extras["hypothesis_true"] = hyp_true;
  rep.extras["root_ordering_samples"] = roots;
  rep.extras["root_ordering_failures"] = bad_roots;
  if (!bad_roots.empty() && rep.failures.empty()) rep.failures.push_back(0);
  rep.elapsed_ms = clock.elapsed_ms();
  return emit_report(cfg, rep, out);
}

int verify_tau(const RunConfig& cfg, std::ostream& out) {
  if (cfg.samples < 1) throw UsageError("--samples must be >= 1");
  Stopwatch clock;
  VerificationReport rep;
  rep.check = "tau";
  rep.from = 1;
  rep.to = cfg.samples;
  for (long i = 1; i <= cfg.samples; ++i) {
    Rational s(i, 4 * cfg.samples);
    s.canonicalize();
    if (!tau_positivity_check({s})) rep.failures.push_back(i);
  }
  rep.elapsed_ms = clock.elapsed_ms();
  return emit_report(cfg, rep, out);
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const std::string& c = cfg.check;
  const mpfr_prec_t p = cfg.precision;
  if (c == "turan3") return verify_exact(cfg, CheckKind::Turan3, out);
  if (c == "theta-mono") return verify_exact(cfg, CheckKind::ThetaMonotone, out);
  if (c == "dlog") return verify_exact(cfg, CheckKind::DLog, out);
  if (c == "logconcave") return verify_exact(cfg, CheckKind::LogConcave, out);
  if (c == "jensen") return verify_exact(cfg, CheckKind::Jensen, out);
  if (c == "bessel") return verify_bessel(cfg, out);
  if (c == "envelope") return verify_envelope(cfg, out);
  if (c == "phi-psi") return verify_phi_psi(cfg, out);
  if (c == "domination") return verify_domination(cfg, out);
  if (c == "lemma-uv") return verify_lemma_uv(cfg, out);
  if (c == "tau") return verify_tau(cfg, out);
  if (c == "sandwich")
    return verify_analytic(cfg, c, out, 1, [&](const PartitionTable& t, long n) { return sandwich_check(t, n, p); });
  if (c == "theta-bounds")
    return verify_analytic(cfg, c, out, 1, [&](const PartitionTable& t, long n) { return theta_bounds_check(t, n, p); });
  if (c == "delta-bounds")
    return verify_analytic(cfg, c, out, 0, [&](const PartitionTable& t, long n) { return delta_bounds_check(t, n, p); });
  if (c == "lambda-bounds")
    return verify_analytic(cfg, c, out, 0, [&](const PartitionTable& t, long n) {
      return lambda_bounds_check(static_cast<unsigned>(t.k()), n, p);
    });
  throw UsageError("unknown check '" + c + "'");
}

// ---- scan ---------------------------------------------------------------

int cmd_scan(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.to) throw UsageError("scan needs --to");
  const bool jensen = cfg.check == "jensen";
  if (!jensen && cfg.check != "conjecture") throw UsageError("unknown scan target '" + cfg.check + "'");
  const unsigned order = jensen ? cfg.d : cfg.r;
  if (order < 1) throw UsageError(jensen ? "--d must be >= 1" : "--r must be >= 1");
  const long from = cfg.from.value_or(jensen ? 0 : 1);
  if (from > *cfg.to) throw UsageError("--from must not exceed --to");
  const PartitionTable table = load_table(cfg, *cfg.to + order);
  const auto scan = jensen ? jensen_threshold(table, order, *cfg.to, from, cfg.workers)
                           : conjecture_threshold(table, order, *cfg.to, from, cfg.workers);

  std::ostringstream body;
  if (cfg.format == "json") {
    body << scan.report.to_json().dump(2) << '\n';
  } else if (cfg.format == "csv") {
    body << "n,violation\n";
    for (long n : scan.violations) body << n << ",1\n";
  } else {
    body << (jensen ? "jensen d=" : "conjecture r=") << order << " k=" << cfg.k << " n=" << from << ".." << *cfg.to
         << ": ";
    if (scan.threshold) body << "candidate " << *scan.threshold << '\n';
    else body << "no threshold found <= " << *cfg.to << '\n';
    body << "violations:";
    for (long n : scan.violations) body << ' ' << n;
    body << '\n';
  }
  write_output(cfg, body.str(), out);
  if (!cfg.out.empty())
    out << "candidate " << (scan.threshold ? std::to_string(*scan.threshold) : std::string("none")) << '\n';
  return scan.threshold ? kExitPass : kExitCounterexample;
}

}  // namespace

std::vector<double> parse_log_grid(const std::string& spec) {
  double a = 0, b = 0;
  long count = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(spec);
  if (!(in >> a >> c1 >> b >> c2 >> count) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof())
    throw UsageError("grid must look like a:b:count");
  if (!(a > 0) || !(b >= a) || count < 1) throw UsageError("grid needs 0 < a <= b and count >= 1");
  std::vector<double> out;
  for (long i = 0; i < count; ++i) {
    if (count == 1) {
      out.push_back(a);
      break;
    }
    const double f = static_cast<double>(i) / static_cast<double>(count - 1);
    out.push_back(i == count - 1 ? b : a * std::pow(b / a, f));
  }
  return out;
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.workers < 1) throw UsageError("--workers must be >= 1");
  if (cfg.precision != 0 && cfg.precision < 64) throw UsageError("--prec must be auto or >= 64");
  if (cfg.format != "csv" && cfg.format != "json" && cfg.format != "text")
    throw UsageError("--format must be csv, json or text");
  if (cfg.command == "expand") return cmd_expand(cfg, out, err);
  if (cfg.command == "verify") return cmd_verify(cfg, out);
  if (cfg.command == "scan") return cmd_scan(cfg, out);
  throw UsageError("unknown command '" + cfg.command + "'");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and interval checks for broken k-diamond partition numbers", "bkd"};
  app.require_subcommand(1);

  RunConfig cfg;
  long from = 0, to = 0;
  std::string prec = "auto";
  bool no_cache = false;

  auto common = [&](CLI::App* sub, bool range) {
    sub->add_option("--k", cfg.k, "diamond parameter k")->capture_default_str();
    sub->add_option("--format", cfg.format, "csv, json or text")->check(CLI::IsMember({"csv", "json", "text"}));
    sub->add_option("--out", cfg.out, "write the result here");
    sub->add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--cache-dir", cfg.cache_dir, "table cache directory (default: BKD_CACHE_DIR)");
    sub->add_flag("--no-cache", no_cache, "always expand tables from scratch");
    if (range) {
      sub->add_option("--from", from, "first index");
      sub->add_option("--to", to, "last index");
      sub->add_option("--r", cfg.r, "difference order");
      sub->add_option("--d", cfg.d, "Jensen degree");
      sub->add_option("--prec", prec, "precision bits or auto");
      sub->add_option("--step", cfg.step, "index stride for interval checks");
    }
  };

  auto* expand = app.add_subcommand("expand", "expand Delta_k(0..N) to CSV or JSON");
  common(expand, false);
  expand->add_option("--n", cfg.n, "truncation order")->required();
  expand->callback([&] { cfg.command = "expand"; });

  auto* verify = app.add_subcommand("verify", "check an inequality or bound on a range");
  verify->add_option("check", cfg.check, "check name")->required()->check(CLI::IsMember(kVerifyChecks));
  common(verify, true);
  verify->add_option("--z-grid", cfg.z_grid, "a:b:count log grid for bessel");
  verify->add_option("--orientation", cfg.orientation, "envelope orientation: phi-lower or phi-upper")
      ->check(CLI::IsMember({"phi-lower", "phi-upper"}));
  verify->add_option("--samples", cfg.samples, "random samples for lemma-uv and tau");
  verify->add_option("--seed", cfg.seed, "random seed");
  verify->callback([&] { cfg.command = "verify"; });

  auto* scan = app.add_subcommand("scan", "search for the onset of a sign pattern");
  scan->add_option("target", cfg.check, "conjecture or jensen")->required()->check(CLI::IsMember(kScanTargets));
  common(scan, true);
  scan->callback([&] { cfg.command = "scan"; });

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    // from/to are shared by verify and scan; only one subcommand runs.
    for (auto* sub : {verify, scan}) {
      if (!sub->parsed()) continue;
      if (sub->get_option("--from")->count()) cfg.from = from;
      if (sub->get_option("--to")->count()) cfg.to = to;
    }
    if (prec == "auto") cfg.precision = 0;
    else {
      try {
        cfg.precision = std::stol(prec);
      } catch (const std::exception&) {
        throw UsageError("--prec must be auto or an integer");
      }
    }
    if (expand->parsed() && cfg.format == "text") cfg.format = "csv";
    cfg.use_cache = !no_cache;
    return run_command(cfg, out, err);
  } catch (const UsageError& e) {
    err << "bkd: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "bkd: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace bkd
