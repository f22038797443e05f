// goldbach_lab: batch front end for the representation counter, the
// exceptional-set scanner, singular series and circle-method diagnostics.
//
// Exit codes: 0 ok, 1 usage or runtime error, 2 locally unsolvable
// parameters (the scan report is still written).

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "gblab/arcs.hpp"
#include "gblab/error.hpp"
#include "gblab/report.hpp"
#include "gblab/selftest.hpp"

namespace fs = std::filesystem;
using namespace gblab;

namespace {

struct GammaFlags {
  u64 A = 0, B = 0, g = 0, i = 0, j = 0;

  void add(CLI::App* app) {
    app->add_option("--A", A, "coefficient of p1 (positive, odd)")->required();
    app->add_option("--B", B, "coefficient of p2 (positive, odd)")->required();
    app->add_option("--g", g, "modulus of the residue classes (>= 2)")->required();
    app->add_option("--i", i, "residue class of p1, 0 < i < g, gcd(i,g)=1")->required();
    app->add_option("--j", j, "residue class of p2, 0 < j < g, gcd(j,g)=1")->required();
  }
  GammaParams validated() const { return validate_gamma(GammaParams{A, B, g, i, j}); }
  void append(std::vector<std::string>& args) const {
    for (auto [flag, v] : {std::pair{"--A", A}, {"--B", B}, {"--g", g}, {"--i", i}, {"--j", j}}) {
      args.emplace_back(flag);
      args.push_back(std::to_string(v));
    }
  }
};

struct ScanFlags {
  std::string poly;
  GammaFlags gamma;
  u64 N = 0;
  std::string cutoff = "full";
  std::string delta;
  std::optional<u64> P;
  bool kappa_window = false;
  bool keep_gcd = false;
  std::string out = ".";
  std::string format = "both";
  unsigned threads = 1;
  std::string strategy = "auto";
  std::size_t samples = 16;
  std::string stem = "scan";
};

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::InvalidConfig, "cannot write " + path.string());
  out << content;
}

ScanConfig make_config(const ScanFlags& f) {
  ScanConfig cfg;
  cfg.N = f.N;
  cfg.cutoff = f.cutoff == "paper" ? CutoffMode::Paper : CutoffMode::Full;
  if (!f.delta.empty()) cfg.delta = parse_ratio(f.delta);
  cfg.P_override = f.P;
  cfg.kappa_window = f.kappa_window;
  cfg.keep_gcd_obstructed = f.keep_gcd;
  cfg.threads = std::max(1u, f.threads);
  return cfg;
}

// Canonical argument list stored in the manifest; excludes --out so a
// replay can target another directory.
std::vector<std::string> canonical_scan_args(const ScanFlags& f) {
  std::vector<std::string> a = {"scan", "--poly", f.poly};
  f.gamma.append(a);
  a.insert(a.end(), {"--N", std::to_string(f.N), "--cutoff", f.cutoff});
  if (!f.delta.empty()) a.insert(a.end(), {"--delta", f.delta});
  if (f.P) a.insert(a.end(), {"--P", std::to_string(*f.P)});
  if (f.kappa_window) a.emplace_back("--kappa-window");
  if (f.keep_gcd) a.emplace_back("--keep-gcd-obstructed");
  a.insert(a.end(), {"--format", f.format, "--strategy", f.strategy, "--samples", std::to_string(f.samples),
                     "--stem", f.stem});
  return a;
}

int run_scan(const ScanFlags& f) {
  const auto t0 = std::chrono::steady_clock::now();
  const Polynomial poly = Polynomial::parse(f.poly);
  const GammaParams gamma = f.gamma.validated();
  if (gamma.ab_gcd_warning) {
    std::cerr << "warning: gcd(A,B) = " << gamma.ab_gcd << " > 1; n with gcd(A,B) !| 2f(n) are "
              << (f.keep_gcd ? "kept" : "filtered and counted as structurally_excluded") << "\n";
  }
  ScanOptions opts;
  opts.prediction_samples = f.samples;
  opts.strategy = f.strategy == "direct" ? ScanStrategy::Direct
                  : f.strategy == "table" ? ScanStrategy::Table
                                          : ScanStrategy::Auto;
  opts.sieve.threads = std::max(1u, f.threads);
  const ScanReport report = exceptional_scan(poly, gamma, make_config(f), opts);

  RunManifest manifest;
  manifest.command = "scan";
  manifest.args = canonical_scan_args(f);
  manifest.memory_estimate_bytes = estimate_scan_memory(report);
  const fs::path dir(f.out);
  if (f.format == "json" || f.format == "both") {
    write_file(dir / (f.stem + ".json"), scan_report_json(report, manifest).dump(2) + "\n");
  }
  if (f.format == "csv" || f.format == "both") {
    write_file(dir / (f.stem + ".csv"), scan_report_csv(report));
  }
  manifest.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_file(dir / (f.stem + ".timing.json"), timing_json(manifest).dump(2) + "\n");

  std::cout << "eligible " << report.eligible_total << ", exceptional " << report.exceptional.size()
            << ", density " << format12(report.density) << "\n";
  if (!report.local.solvable) {
    std::cerr << "parameters are not locally solvable: no m with 2f(m) == Ai + Bj (mod g)\n";
    return 2;
  }
  return 0;
}

struct RepFlags {
  u64 n = 0;
  GammaFlags gamma;
  std::optional<u64> X;
  u64 P = 1;
  std::string out;
};

int run_rep(const RepFlags& f) {
  const GammaParams gamma = f.gamma.validated();
  const u64 X = f.X.value_or(std::max<u64>(f.n, 2));
  const u64 limit = std::max<u64>(std::min(X, f.n), 2);
  const PrimeTable table = cached_sieve(limit);
  const RepRecord rec = rep_direct(table, f.n, gamma, f.P, X, true);
  const std::string text = rep_record_json(rec).dump() + "\n";
  if (f.out.empty()) {
    std::cout << text;
  } else {
    write_file(f.out, text);
  }
  return 0;
}

struct SingularFlags {
  u64 n = 0;
  std::string method = "euler";
  std::optional<u64> truncation;
};

int run_singular(const SingularFlags& f) {
  Json out = Json::array();
  if (f.method == "euler" || f.method == "both") {
    out.push_back(singular_json(
        singular_series(f.n, SingularMethod::EulerProduct, f.truncation.value_or(kDefaultEulerTruncation))));
  }
  if (f.method == "partial" || f.method == "both") {
    out.push_back(singular_json(
        singular_series(f.n, SingularMethod::PartialSum, f.truncation.value_or(kDefaultPartialTruncation))));
  }
  std::cout << (out.size() == 1 ? out[0].dump() : out.dump()) << "\n";
  return 0;
}

struct ArcsFlags {
  std::string poly;
  GammaFlags gamma;
  u64 N = 0;
  std::string cutoff = "paper";
  std::string delta;
  std::optional<u64> P;
  int samples = 1000;
  u64 seed = 0x9e3779b97f4a7c15ULL;
  bool all = false;
  std::string out;
};

int run_arcs(const ArcsFlags& f) {
  const Polynomial poly = Polynomial::parse(f.poly);
  const GammaParams gamma = f.gamma.validated();
  ScanFlags sf;
  sf.N = f.N;
  sf.cutoff = f.cutoff;
  sf.delta = f.delta;
  sf.P = f.P;
  const ArcDecomposition arcs = build_arcs(poly, make_config(sf));
  const PrimeTable table = cached_sieve(arcs.X());
  DiagnosticOptions opts;
  opts.samples = f.samples;
  opts.seed = f.seed;
  opts.minor_only = !f.all;
  const auto rows = minor_bound_diagnostic(table, gamma, arcs, opts);
  const std::string csv = arcs_csv(rows);
  if (f.out.empty()) {
    std::cout << csv;
  } else {
    write_file(f.out, csv);
  }
  return 0;
}

int run_selftest_cmd(const std::string& level) {
  const auto results = run_selftest(level == "full" ? SelftestLevel::Full : SelftestLevel::Fast);
  bool ok = true;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << format12(r.seconds) << " s): " << r.detail
              << "\n";
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}

int dispatch(std::vector<std::string> argv_in);

int run_replay(const std::string& report_path, const std::string& out_dir) {
  std::ifstream in(report_path);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open " + report_path);
  const Json report = Json::parse(in);
  std::vector<std::string> args = report.at("config").at("manifest").at("args").get<std::vector<std::string>>();
  args.insert(args.begin(), "goldbach_lab");
  args.insert(args.end(), {"--out", out_dir});
  return dispatch(args);
}

int dispatch(std::vector<std::string> args) {
  CLI::App app{"Generalised Goldbach representation laboratory", "goldbach_lab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  ScanFlags scan;
  auto* scan_cmd = app.add_subcommand("scan", "exceptional-set scan of 2f(n) = A p1 + B p2");
  scan_cmd->add_option("--poly", scan.poly, "coefficients c_k,...,c_0 of f")->required();
  scan.gamma.add(scan_cmd);
  scan_cmd->add_option("--N", scan.N, "scan limit")->required()->check(CLI::PositiveNumber);
  scan_cmd->add_option("--cutoff", scan.cutoff, "prime cutoff: full (P=1) or paper (P = X^(6 delta))")
      ->check(CLI::IsMember({"paper", "full"}));
  scan_cmd->add_option("--delta", scan.delta, "delta as a/b or decimal (paper cutoff)");
  scan_cmd->add_option("--P", scan.P, "explicit cutoff P (paper cutoff)");
  scan_cmd->add_flag("--kappa-window", scan.kappa_window, "scan only n in (2^(-1/k) N, N]");
  scan_cmd->add_flag("--keep-gcd-obstructed", scan.keep_gcd, "keep n with gcd(A,B) !| 2f(n)");
  scan_cmd->add_option("--out", scan.out, "output directory");
  scan_cmd->add_option("--format", scan.format, "json, csv or both")->check(CLI::IsMember({"json", "csv", "both"}));
  scan_cmd->add_option("--threads", scan.threads, "worker threads");
  scan_cmd->add_option("--strategy", scan.strategy, "auto, direct or table")
      ->check(CLI::IsMember({"auto", "direct", "table"}));
  scan_cmd->add_option("--samples", scan.samples, "prediction-ratio sample size");
  scan_cmd->add_option("--stem", scan.stem, "output file stem");

  RepFlags rep;
  auto* rep_cmd = app.add_subcommand("rep", "count representations of one target");
  rep_cmd->add_option("--n", rep.n, "target")->required();
  rep.gamma.add(rep_cmd);
  rep_cmd->add_option("--X", rep.X, "prime upper bound (default n)");
  rep_cmd->add_option("--P", rep.P, "primes must exceed P (default 1)");
  rep_cmd->add_option("--out", rep.out, "write JSON here instead of stdout");

  SingularFlags sing;
  auto* sing_cmd = app.add_subcommand("singular", "singular series S(n)");
  sing_cmd->add_option("--n", sing.n, "argument (>= 1)")->required()->check(CLI::PositiveNumber);
  sing_cmd->add_option("--method", sing.method, "euler, partial or both")
      ->check(CLI::IsMember({"euler", "partial", "both"}));
  sing_cmd->add_option("--truncation", sing.truncation, "prime bound (euler) or q bound (partial)");

  ArcsFlags arcs;
  auto* arcs_cmd = app.add_subcommand("arcs", "exponential sums on sampled major/minor arc points (CSV)");
  arcs_cmd->add_option("--poly", arcs.poly, "coefficients c_k,...,c_0 of f")->required();
  arcs.gamma.add(arcs_cmd);
  arcs_cmd->add_option("--N", arcs.N, "X = 2f(N)")->required()->check(CLI::PositiveNumber);
  arcs_cmd->add_option("--cutoff", arcs.cutoff, "paper or full")->check(CLI::IsMember({"paper", "full"}));
  arcs_cmd->add_option("--delta", arcs.delta, "delta as a/b or decimal");
  arcs_cmd->add_option("--P", arcs.P, "explicit cutoff P");
  arcs_cmd->add_option("--samples", arcs.samples, "number of sample points");
  arcs_cmd->add_option("--seed", arcs.seed, "sampling seed");
  arcs_cmd->add_flag("--all", arcs.all, "sample all of [0,1) instead of minor arcs only");
  arcs_cmd->add_option("--out", arcs.out, "CSV file (default stdout)");

  std::string level = "fast";
  auto* self_cmd = app.add_subcommand("selftest", "run the invariant suites");
  self_cmd->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));

  std::string replay_report;
  std::string replay_out = ".";
  auto* replay_cmd = app.add_subcommand("replay", "re-run the command recorded in a scan report");
  replay_cmd->add_option("report", replay_report, "scan report JSON")->required();
  replay_cmd->add_option("--out", replay_out, "output directory");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*scan_cmd) return run_scan(scan);
    if (*rep_cmd) return run_rep(rep);
    if (*sing_cmd) return run_singular(sing);
    if (*arcs_cmd) return run_arcs(arcs);
    if (*self_cmd) return run_selftest_cmd(level);
    if (*replay_cmd) return run_replay(replay_report, replay_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) { return dispatch(std::vector<std::string>(argv, argv + argc)); }
