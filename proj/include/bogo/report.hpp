#pragma once
// Catalog scans and report emission (json / csv / text).
//
// Row order is by group name; timing fields are the only nondeterministic
// bytes and can be left out with EmitOptions::timing = false.

#include "bogo/catalog.hpp"
#include "bogo/powerexp.hpp"
#include "bogo/suites.hpp"
#include "bogo/wedge.hpp"

#include <string>
#include <vector>

namespace bogo {

enum class ReportFormat { Json, Csv, Text };
std::optional<ReportFormat> parse_format(const std::string& s);

struct EmitOptions {
  bool timing = true;
};

struct ScanRow {
  std::string name;
  std::string file;  // file name within the scanned directory
  std::string status = "ok";  // ok | violation | mismatch | error
  std::string message;
  std::string order;          // decimal
  std::int64_t exp_g = 0, exp_wedge = 0, exp_b0 = 0;
  std::string multiplier, b0;  // "[2,4]" notation
  std::string wedge_order;
  bool b0_divides = false, wedge_divides = false;
  bool crosscheck = false, kappa_identity = false, cp_lifts_commute = false;
  std::vector<std::string> tags;
  double seconds = 0;

  bool operator==(const ScanRow&) const = default;
};

struct ScanSummary {
  int groups = 0, ok = 0, violations = 0, mismatches = 0, errors = 0;
  double seconds = 0;

  bool operator==(const ScanSummary&) const = default;
};

struct ScanReport {
  std::vector<ScanRow> rows;
  ScanSummary summary;

  // 0: clean, 1: violation or expectation mismatch, 2: some file failed to load.
  int exit_code() const;
  bool operator==(const ScanReport&) const = default;
};

// Full pipeline for one catalog entry, including the annotation checks.
ScanRow scan_entry(const CatalogEntry& entry);
ScanReport scan_catalog(const std::vector<CatalogEntry>& entries, int jobs = 1);
ScanReport scan_directory(const std::string& dir, int jobs = 1);

std::string emit(const ScanReport& r, ReportFormat f, const EmitOptions& o = {});
ScanReport parse_scan_report_json(const std::string& text);

std::string emit(const VerificationReport& r, ReportFormat f, const EmitOptions& o = {});
std::string emit(const MatchReport& r, ReportFormat f);
std::string emit(const WedgeResult& r, ReportFormat f, const EmitOptions& o = {});

// The rows of a single-group scan, from an already computed result.
ScanRow row_from_result(const WedgeResult& w);

}  // namespace bogo
