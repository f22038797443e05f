#pragma once

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

#include "gblab/arcs.hpp"
#include "gblab/repcount.hpp"
#include "gblab/singular.hpp"

namespace gblab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "goldbach_lab";
inline constexpr const char* kToolVersion = "0.1.0";

/// What produced a report. Only deterministic fields go into the report
/// body; wall time is written to a separate timing file.
struct RunManifest {
  std::string command;
  std::vector<std::string> args;  // canonical argument list, replayable
  u64 memory_estimate_bytes = 0;
  double wall_seconds = 0.0;
};

/// Rounds to 12 significant digits so printed values are byte-stable.
double round12(double x);

/// RFC 4180 field quoting.
std::string csv_field(std::string_view s);

/// Fixed 12-significant-digit rendering.
std::string format12(double x);

Json manifest_json(const RunManifest& m);
Json timing_json(const RunManifest& m);

/// Top-level fields: f, gamma, config, eligible_total, exceptional,
/// structurally_excluded, density, buckets, prediction_rows.
Json scan_report_json(const ScanReport& r, const RunManifest& m);

/// Header "n,target" then one row per exceptional n.
std::string scan_report_csv(const ScanReport& r);

Json rep_record_json(const RepRecord& rec);
Json singular_json(const SingularValue& v);

/// Header "alpha,region,q,a,re_S_i,im_S_i,abs_S_i_S_j,envelope".
std::string arcs_csv(const std::vector<ArcSampleRow>& rows);

u64 estimate_scan_memory(const ScanReport& r);

}  // namespace gblab
