#include "gblab/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace gblab {

double round12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

std::string format12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

Json manifest_json(const RunManifest& m) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = m.command;
  j["args"] = m.args;
  j["memory_estimate_bytes"] = m.memory_estimate_bytes;
  return j;
}

Json timing_json(const RunManifest& m) {
  Json j = manifest_json(m);
  j["wall_seconds"] = round12(m.wall_seconds);
  return j;
}

namespace {

const char* strategy_name(ScanStrategy s) {
  switch (s) {
    case ScanStrategy::Auto: return "auto";
    case ScanStrategy::Direct: return "direct";
    case ScanStrategy::Table: return "table";
  }
  return "?";
}

Json big_or_number(const mpz_class& v) {
  if (v.fits_ulong_p()) return Json(v.get_ui());
  return Json(v.get_str());
}

Json optional_number(const std::optional<double>& v) { return v ? Json(round12(*v)) : Json(nullptr); }

}  // namespace

u64 estimate_scan_memory(const ScanReport& r) {
  u64 bytes = r.prime_limit / 8 + 64;                // prime bitset
  bytes += r.eligible.size() * 2 * sizeof(u64);      // eligible n and targets
  if (r.strategy_used == ScanStrategy::Table) {
    const u64 len = (r.gamma.A + r.gamma.B) * r.prime_limit + 1;
    u64 pow2 = 1;
    while (pow2 < len) pow2 <<= 1;
    bytes += len * sizeof(u64) + 2 * pow2 * sizeof(u64);  // counts + transform buffers
  }
  return bytes;
}

Json scan_report_json(const ScanReport& r, const RunManifest& m) {
  Json j;
  j["f"] = {{"coeffs", r.f.to_string()}, {"degree", r.f.degree()}};
  j["gamma"] = {{"A", r.gamma.A},
                {"B", r.gamma.B},
                {"g", r.gamma.g},
                {"i", r.gamma.i},
                {"j", r.gamma.j},
                {"ab_gcd", r.gamma.ab_gcd},
                {"ab_gcd_warning", r.gamma.ab_gcd_warning}};
  Json cfg;
  cfg["N"] = r.config.N;
  cfg["cutoff"] = r.config.cutoff == CutoffMode::Full ? "full" : "paper";
  cfg["delta"] = std::to_string(r.bounds.delta.num) + "/" + std::to_string(r.bounds.delta.den);
  cfg["P"] = r.bounds.P;
  cfg["X"] = big_or_number(r.bounds.X);
  cfg["Q"] = round12(r.bounds.Q);
  cfg["kappa"] = round12(r.bounds.kappa);
  cfg["kappa_window"] = r.config.kappa_window;
  cfg["window"] = {r.bounds.n_lo, r.bounds.n_hi};
  cfg["keep_gcd_obstructed"] = r.config.keep_gcd_obstructed;
  cfg["solvable"] = r.local.solvable;
  cfg["local_witnesses"] = r.local.witnesses;
  cfg["strategy"] = strategy_name(r.strategy_used);
  cfg["prime_limit"] = r.prime_limit;
  cfg["structurally_small"] = r.structurally_small;
  cfg["manifest"] = manifest_json(m);
  j["config"] = std::move(cfg);
  j["eligible_total"] = r.eligible_total;
  j["exceptional"] = r.exceptional;
  j["structurally_excluded"] = r.structurally_excluded;
  j["density"] = round12(r.density);
  Json buckets = Json::array();
  for (const DecadeBucket& b : r.buckets) {
    buckets.push_back({{"lo", b.lo},
                       {"hi", b.hi},
                       {"eligible", b.eligible},
                       {"exceptional", b.exceptional},
                       {"density", round12(b.density())}});
  }
  j["buckets"] = std::move(buckets);
  if (r.prediction) {
    Json rows = Json::array();
    for (const PredictionRow& row : r.prediction->rows) {
      rows.push_back({{"n", row.n},
                      {"target", row.target},
                      {"count", row.count},
                      {"unordered", row.unordered},
                      {"weighted", round12(row.weighted)},
                      {"main_term", round12(row.main_term)},
                      {"ratio", optional_number(row.ratio)},
                      {"degenerate", row.degenerate}});
    }
    j["prediction_rows"] = {{"rows", std::move(rows)},
                            {"median_ratio", optional_number(r.prediction->median_ratio)},
                            {"expected_ratio", round12(r.prediction->expected_ratio)},
                            {"deviation_flag", r.prediction->deviation_flag}};
  } else {
    j["prediction_rows"] = nullptr;
  }
  return j;
}

std::string scan_report_csv(const ScanReport& r) {
  std::ostringstream out;
  out << "n,target\r\n";
  for (std::size_t k = 0; k < r.exceptional.size(); ++k) {
    out << r.exceptional[k] << ',' << csv_field(r.exceptional_targets[k]) << "\r\n";
  }
  return out.str();
}

Json rep_record_json(const RepRecord& rec) {
  Json j;
  j["n"] = rec.n;
  j["count"] = rec.count;
  j["unordered"] = rec.unordered();
  j["weighted"] = round12(rec.weighted);
  if (rec.witness) {
    j["witness"] = {rec.witness->first, rec.witness->second};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Json singular_json(const SingularValue& v) {
  return Json{{"n", v.n},
              {"value", round12(v.value)},
              {"method", to_string(v.method)},
              {"truncation", v.truncation},
              {"err_bound", round12(v.err_bound)}};
}

std::string arcs_csv(const std::vector<ArcSampleRow>& rows) {
  std::ostringstream out;
  out << "alpha,region,q,a,re_S_i,im_S_i,abs_S_i_S_j,envelope\r\n";
  for (const ArcSampleRow& row : rows) {
    out << format12(row.alpha.to_double()) << ',' << (row.major ? "major" : "minor") << ',' << row.q << ',' << row.a
        << ',' << format12(row.S_i.real()) << ',' << format12(row.S_i.imag()) << ','
        << format12(std::abs(row.S_i * row.S_j)) << ',' << format12(row.envelope) << "\r\n";
  }
  return out.str();
}

}  // namespace gblab
