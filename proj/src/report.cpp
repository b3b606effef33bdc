#include "bogo/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

namespace bogo {

using nlohmann::ordered_json;

namespace {

const std::set<std::string> kTheoremHypotheses = {"metabelian", "class<=5", "exponent4", "4-engel"};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

std::string torsion_text(const std::vector<BigInt>& t) {
  AbelianInvariants a;
  a.torsion = t;
  return invariants_text(a);
}

std::string fixed(double x, int digits = 3) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << x;
  return s.str();
}

}  // namespace

std::optional<ReportFormat> parse_format(const std::string& s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  if (s == "text") return ReportFormat::Text;
  return std::nullopt;
}

int ScanReport::exit_code() const {
  if (summary.errors > 0) return 2;
  if (summary.violations > 0 || summary.mismatches > 0) return 1;
  return 0;
}

ScanRow row_from_result(const WedgeResult& w) {
  ScanRow r;
  r.name = w.name;
  r.order = w.group_order.str();
  r.exp_g = w.exp_g;
  r.exp_wedge = w.exp_wedge;
  r.exp_b0 = w.exp_b0;
  r.multiplier = invariants_text(w.multiplier);
  r.b0 = invariants_text(w.b0);
  r.wedge_order = w.wedge_order.str();
  r.b0_divides = w.b0_divides;
  r.wedge_divides = w.wedge_divides;
  r.crosscheck = w.crosscheck;
  r.kappa_identity = w.kappa_identity;
  r.cp_lifts_commute = w.cp_lifts_commute;
  r.tags = w.tags;
  r.seconds = w.seconds;

  std::vector<std::string> problems;
  if (!w.crosscheck) problems.push_back("B0 paths disagree (" + invariants_text(w.b0) + " vs " +
                                        invariants_text(w.b0_cover) + ")");
  if (!w.kappa_identity) problems.push_back("|G^G| != |B0| |G'|");
  if (!w.cp_lifts_commute) problems.push_back("commuting-pair lifts do not commute in H");
  if (!w.b0_divides) problems.push_back("exp B0 does not divide exp G");
  const bool hyp = std::any_of(w.tags.begin(), w.tags.end(),
                               [](const std::string& t) { return kTheoremHypotheses.count(t) > 0; });
  if (hyp && !w.wedge_divides) problems.push_back("exp G^G does not divide exp G");
  if (!problems.empty()) {
    r.status = "violation";
    r.message = join(problems, "; ");
  }
  return r;
}

ScanRow scan_entry(const CatalogEntry& e) {
  ScanRow r;
  r.name = e.name;
  r.file = std::filesystem::path(e.path).filename().string();
  if (!e.presentation) {
    r.status = "error";
    r.message = e.error;
    return r;
  }
  try {
    r = row_from_result(curly_wedge(*e.presentation));
    r.name = e.name;
    r.file = std::filesystem::path(e.path).filename().string();
  } catch (const std::exception& ex) {
    r.status = "error";
    r.message = ex.what();
    return r;
  }
  if (r.status != "ok") return r;
  std::vector<std::string> mismatch;
  if (e.expected_order && e.expected_order->str() != r.order)
    mismatch.push_back("order " + r.order + ", annotated " + e.expected_order->str());
  if (e.expected_b0 && torsion_text(*e.expected_b0) != r.b0)
    mismatch.push_back("B0 " + r.b0 + ", annotated " + torsion_text(*e.expected_b0));
  if (e.expected_tags) {
    auto a = *e.expected_tags, b = r.tags;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) mismatch.push_back("tags " + join(b, ",") + ", annotated " + join(a, ","));
  }
  if (!mismatch.empty()) {
    r.status = "mismatch";
    r.message = join(mismatch, "; ");
  }
  return r;
}

ScanReport scan_catalog(const std::vector<CatalogEntry>& entries, int jobs) {
  const auto t0 = std::chrono::steady_clock::now();
  ScanReport rep;
  rep.rows.resize(entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < entries.size();) rep.rows[i] = scan_entry(entries[i]);
  };
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(entries.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::stable_sort(rep.rows.begin(), rep.rows.end(), [](const ScanRow& a, const ScanRow& b) {
    return std::tie(a.name, a.file) < std::tie(b.name, b.file);
  });
  auto& s = rep.summary;
  for (const auto& r : rep.rows) {
    ++s.groups;
    if (r.status == "ok") ++s.ok;
    if (r.status == "violation") ++s.violations;
    if (r.status == "mismatch") ++s.mismatches;
    if (r.status == "error") ++s.errors;
  }
  s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

ScanReport scan_directory(const std::string& dir, int jobs) { return scan_catalog(read_catalog(dir), jobs); }

// ---------------------------------------------------------------------------
// scan reports

namespace {

ordered_json row_json(const ScanRow& r, const EmitOptions& o) {
  ordered_json j;
  j["name"] = r.name;
  j["file"] = r.file;
  j["status"] = r.status;
  j["message"] = r.message;
  j["order"] = r.order;
  j["exp_g"] = r.exp_g;
  j["multiplier"] = r.multiplier;
  j["b0"] = r.b0;
  j["exp_wedge"] = r.exp_wedge;
  j["exp_b0"] = r.exp_b0;
  j["wedge_order"] = r.wedge_order;
  j["b0_divides"] = r.b0_divides;
  j["wedge_divides"] = r.wedge_divides;
  j["crosscheck"] = r.crosscheck;
  j["kappa_identity"] = r.kappa_identity;
  j["cp_lifts_commute"] = r.cp_lifts_commute;
  j["tags"] = r.tags;
  if (o.timing) j["seconds"] = r.seconds;
  return j;
}

const char* kCsvHeader =
    "name,file,status,order,exp_g,multiplier,b0,exp_wedge,exp_b0,wedge_order,b0_divides,"
    "wedge_divides,crosscheck,kappa_identity,cp_lifts_commute,tags,message";

std::string row_csv(const ScanRow& r, const EmitOptions& o) {
  auto b = [](bool x) { return std::string(x ? "true" : "false"); };
  std::vector<std::string> f = {r.name,
                                r.file,
                                r.status,
                                r.order,
                                std::to_string(r.exp_g),
                                r.multiplier,
                                r.b0,
                                std::to_string(r.exp_wedge),
                                std::to_string(r.exp_b0),
                                r.wedge_order,
                                b(r.b0_divides),
                                b(r.wedge_divides),
                                b(r.crosscheck),
                                b(r.kappa_identity),
                                b(r.cp_lifts_commute),
                                join(r.tags, ";"),
                                r.message};
  if (o.timing) f.push_back(fixed(r.seconds, 6));
  std::string s;
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + csv_field(f[i]);
  return s;
}

}  // namespace

std::string emit(const ScanReport& r, ReportFormat f, const EmitOptions& o) {
  switch (f) {
    case ReportFormat::Json: {
      ordered_json j;
      j["rows"] = ordered_json::array();
      for (const auto& row : r.rows) j["rows"].push_back(row_json(row, o));
      const auto& s = r.summary;
      j["summary"] = {{"groups", s.groups},         {"ok", s.ok},
                      {"violations", s.violations}, {"mismatches", s.mismatches},
                      {"errors", s.errors}};
      if (o.timing) j["summary"]["seconds"] = s.seconds;
      return j.dump(2) + "\n";
    }
    case ReportFormat::Csv: {
      std::string s = std::string(kCsvHeader) + (o.timing ? ",seconds" : "") + "\n";
      for (const auto& row : r.rows) s += row_csv(row, o) + "\n";
      return s;
    }
    case ReportFormat::Text: {
      std::ostringstream s;
      s << std::left << std::setw(22) << "group" << std::setw(8) << "order" << std::setw(6) << "expG"
        << std::setw(12) << "M" << std::setw(8) << "B0" << std::setw(8) << "expGwG" << std::setw(8)
        << "expB0" << std::setw(10) << "status" << "tags\n";
      for (const auto& row : r.rows) {
        s << std::setw(22) << row.name << std::setw(8) << row.order << std::setw(6) << row.exp_g
          << std::setw(12) << row.multiplier << std::setw(8) << row.b0 << std::setw(8) << row.exp_wedge
          << std::setw(8) << row.exp_b0 << std::setw(10) << row.status << join(row.tags, ",") << "\n";
        if (!row.message.empty()) s << "    " << row.message << "\n";
      }
      const auto& m = r.summary;
      s << m.groups << " groups: " << m.ok << " ok, " << m.violations << " violations, "
        << m.mismatches << " mismatches, " << m.errors << " errors";
      if (o.timing) s << " (" << fixed(m.seconds) << " s)";
      s << "\n";
      return s.str();
    }
  }
  return {};
}

ScanReport parse_scan_report_json(const std::string& text) {
  const auto j = ordered_json::parse(text);
  ScanReport r;
  for (const auto& x : j.at("rows")) {
    ScanRow row;
    row.name = x.at("name").get<std::string>();
    row.file = x.at("file").get<std::string>();
    row.status = x.at("status").get<std::string>();
    row.message = x.at("message").get<std::string>();
    row.order = x.at("order").get<std::string>();
    row.exp_g = x.at("exp_g").get<std::int64_t>();
    row.multiplier = x.at("multiplier").get<std::string>();
    row.b0 = x.at("b0").get<std::string>();
    row.exp_wedge = x.at("exp_wedge").get<std::int64_t>();
    row.exp_b0 = x.at("exp_b0").get<std::int64_t>();
    row.wedge_order = x.at("wedge_order").get<std::string>();
    row.b0_divides = x.at("b0_divides").get<bool>();
    row.wedge_divides = x.at("wedge_divides").get<bool>();
    row.crosscheck = x.at("crosscheck").get<bool>();
    row.kappa_identity = x.at("kappa_identity").get<bool>();
    row.cp_lifts_commute = x.at("cp_lifts_commute").get<bool>();
    row.tags = x.at("tags").get<std::vector<std::string>>();
    row.seconds = x.value("seconds", 0.0);
    r.rows.push_back(std::move(row));
  }
  const auto& s = j.at("summary");
  r.summary.groups = s.at("groups").get<int>();
  r.summary.ok = s.at("ok").get<int>();
  r.summary.violations = s.at("violations").get<int>();
  r.summary.mismatches = s.at("mismatches").get<int>();
  r.summary.errors = s.at("errors").get<int>();
  r.summary.seconds = s.value("seconds", 0.0);
  return r;
}

// ---------------------------------------------------------------------------
// suites, Table 1, single groups

std::string emit(const VerificationReport& r, ReportFormat f, const EmitOptions& o) {
  auto status = [](const SuiteItem& i) { return i.status == ItemStatus::Verified ? "Verified" : "NotReduced"; };
  switch (f) {
    case ReportFormat::Json: {
      ordered_json j;
      j["suite"] = r.suite;
      j["e"] = r.e;
      j["vacuous"] = r.vacuous;
      j["note"] = r.note;
      j["verified"] = r.verified();
      j["total"] = r.items.size();
      j["contexts"] = ordered_json::array();
      for (const auto& c : r.contexts) {
        ordered_json x;
        x["name"] = c.name;
        x["k"] = c.k;
        x["c"] = c.c;
        x["laws"] = c.laws;
        x["relations"] = c.relations;
        x["strategy"] = c.strategy;
        x["depth"] = c.depth;
        x["instances"] = c.instances;
        x["sifts"] = c.sifts;
        x["pivots"] = c.pivots;
        x["free_rank"] = c.free_rank;
        x["order"] = c.order;
        x["scalar"] = c.scalar;
        x["budget_exhausted"] = c.budget_exhausted;
        if (o.timing) x["seconds"] = c.seconds;
        j["contexts"].push_back(x);
      }
      j["items"] = ordered_json::array();
      for (const auto& i : r.items) {
        ordered_json x;
        x["name"] = i.name;
        x["context"] = i.context;
        x["claims"] = i.claims;
        x["status"] = status(i);
        x["replayed"] = i.replayed;
        x["certificate_terms"] = i.certificate_terms;
        x["residual"] = i.residual;
        x["hypotheses"] = i.hypotheses;
        x["notes"] = i.notes;
        if (o.timing) x["seconds"] = i.seconds;
        j["items"].push_back(x);
      }
      if (o.timing) j["seconds"] = r.seconds;
      return j.dump(2) + "\n";
    }
    case ReportFormat::Csv: {
      std::string s = std::string("item,context,status,replayed,certificate_terms,hypotheses,residual") +
                      (o.timing ? ",seconds" : "") + "\n";
      for (const auto& i : r.items) {
        std::vector<std::string> v = {i.name,   i.context, status(i), i.replayed ? "true" : "false",
                                      std::to_string(i.certificate_terms), join(i.hypotheses, ";"),
                                      i.residual};
        if (o.timing) v.push_back(fixed(i.seconds, 6));
        for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + csv_field(v[k]);
        s += "\n";
      }
      return s;
    }
    case ReportFormat::Text: {
      std::ostringstream s;
      s << "suite " << r.suite << " (e = " << r.e << ")\n";
      for (const auto& c : r.contexts) {
        s << "  context " << c.name << ": order " << c.order << ", " << c.pivots << " pivots, "
          << c.instances << " instances, " << c.scalar;
        if (o.timing) s << ", " << fixed(c.seconds) << " s";
        s << "\n";
      }
      for (const auto& i : r.items) {
        s << "  [" << (i.status == ItemStatus::Verified ? "ok  " : "FAIL") << "] " << i.name << "  {"
          << i.context << "}";
        if (!i.hypotheses.empty()) s << "  assuming " << join(i.hypotheses, "; ");
        s << "\n";
        if (!i.residual.empty()) s << "         residual " << i.residual << "\n";
        for (const auto& n : i.notes) s << "         note: " << n << "\n";
      }
      s << r.verified() << "/" << r.items.size() << " verified";
      if (r.vacuous) s << " (vacuous: " << r.note << ")";
      if (o.timing) s << " in " << fixed(r.seconds) << " s";
      s << "\n";
      return s.str();
    }
  }
  return {};
}

std::string emit(const MatchReport& r, ReportFormat f) {
  auto vec = [](const std::vector<BigInt>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
    return s + ")";
  };
  switch (f) {
    case ReportFormat::Json: {
      ordered_json j;
      j["rows"] = ordered_json::array();
      for (const auto& row : r.rows) {
        ordered_json x;
        x["row"] = row.commutator;
        x["expected"] = ordered_json::array();
        x["computed"] = ordered_json::array();
        for (const auto& b : row.expected) x["expected"].push_back(b.str());
        for (const auto& b : row.computed) x["computed"].push_back(b.str());
        x["match"] = row.match;
        j["rows"].push_back(x);
      }
      j["matched"] = r.matched;
      j["total"] = r.rows.size();
      return j.dump(2) + "\n";
    }
    case ReportFormat::Csv: {
      std::string s = "row,expected,computed,match\n";
      for (const auto& row : r.rows)
        s += csv_field(row.commutator) + "," + csv_field(vec(row.expected)) + "," +
             csv_field(vec(row.computed)) + "," + (row.match ? "true" : "false") + "\n";
      return s;
    }
    case ReportFormat::Text: {
      std::ostringstream s;
      s << std::left << std::setw(20) << "commutator" << std::setw(34) << "expected b" << "computed b\n";
      for (const auto& row : r.rows)
        s << std::setw(20) << row.commutator << std::setw(34) << vec(row.expected) << vec(row.computed)
          << (row.match ? "" : "   MISMATCH") << "\n";
      s << r.matched << "/" << r.rows.size() << " rows match\n";
      return s.str();
    }
  }
  return {};
}

std::string emit(const WedgeResult& w, ReportFormat f, const EmitOptions& o) {
  ScanReport r;
  r.rows.push_back(row_from_result(w));
  r.summary.groups = 1;
  r.summary.ok = r.rows[0].status == "ok";
  r.summary.violations = !r.summary.ok;
  r.summary.seconds = w.seconds;
  if (f != ReportFormat::Text) return emit(r, f, o);
  std::ostringstream s;
  s << "group " << w.name << " of order " << w.group_order << "\n"
    << "  M(G)            " << invariants_text(w.multiplier) << "\n"
    << "  B0(G)           " << invariants_text(w.b0) << "  (cover path " << invariants_text(w.b0_cover)
    << (w.crosscheck ? ", agree" : ", DISAGREE") << ")\n"
    << "  |G^G|           " << w.wedge_order << " = |B0| * |G'| = |B0| * " << w.derived_order
    << (w.kappa_identity ? "" : "  (FAILS)") << "\n"
    << "  |H|             " << w.cp_cover.order() << "  (" << w.commuting_pairs << " commuting pairs"
    << (w.reduced_pairs ? ", centralizer walk" : "") << ")\n"
    << "  exp G, G^G, B0  " << w.exp_g << ", " << w.exp_wedge << ", " << w.exp_b0 << "\n"
    << "  divisibility    exp B0 | exp G: " << (w.b0_divides ? "yes" : "NO")
    << ", exp G^G | exp G: " << (w.wedge_divides ? "yes" : "no") << "\n"
    << "  tags            " << (w.tags.empty() ? "-" : join(w.tags, ",")) << "\n";
  if (o.timing) s << "  time            " << fixed(w.seconds) << " s\n";
  return s.str();
}

}  // namespace bogo
