#include <doctest.h>

#include "gblab/report.hpp"

using namespace gblab;

TEST_CASE("csv quoting") {
  CHECK(csv_field("123") == "123");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("number formatting") {
  CHECK(format12(6.865891998765) == "6.86589199877");
  CHECK(round12(0.1 + 0.2) == 0.3);
  CHECK(round12(0.0) == 0.0);
}

TEST_CASE("scan report layout") {
  ScanConfig cfg;
  cfg.N = 200;
  ScanOptions opts;
  opts.prediction_samples = 4;
  const ScanReport r = exceptional_scan(Polynomial::parse("1,0"), validate_gamma({1, 1, 2, 1, 1}), cfg, opts);
  RunManifest m;
  m.command = "scan";
  m.args = {"scan", "--N", "200"};
  m.wall_seconds = 12.5;
  const Json j = scan_report_json(r, m);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"f", "gamma", "config", "eligible_total", "exceptional",
                                         "structurally_excluded", "density", "buckets", "prediction_rows"});
  CHECK(j["exceptional"] == Json::array({1, 2}));
  CHECK(j["config"]["manifest"]["args"][2] == "200");
  CHECK_FALSE(j.dump().find("wall_seconds") != std::string::npos);
  CHECK(timing_json(m)["wall_seconds"] == 12.5);
  CHECK(j["prediction_rows"]["rows"].size() == 4);
  CHECK(j.dump() == scan_report_json(exceptional_scan(Polynomial::parse("1,0"), validate_gamma({1, 1, 2, 1, 1}), cfg, opts), m).dump());
  CHECK(scan_report_csv(r) == "n,target\r\n1,2\r\n2,4\r\n");
}

TEST_CASE("rep and singular json") {
  const PrimeTable t = sieve_primes(100);
  const Json rep = rep_record_json(rep_direct(t, 10, validate_gamma({1, 1, 2, 1, 1}), 1, 10));
  CHECK(rep["count"] == 3);
  CHECK(rep["witness"] == Json::array({3, 7}));
  const Json s = singular_json(singular_series(1024));
  CHECK(s["method"] == "euler_product");
  CHECK(s["value"].get<double>() == doctest::Approx(1.32032).epsilon(1e-5));
}
