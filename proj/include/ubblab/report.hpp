#pragma once

// Verification report: check results with status, metrics, witnesses, and the
// theorem anchor each check certifies. Serializes to the same JSON container
// as the state-family format.

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace ubblab {

inline constexpr const char* kArtifactVersion = "1.0.0";

enum class CheckStatus { Pass, Warn, Inconclusive, Fail };

inline std::string status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "Pass";
    case CheckStatus::Warn: return "Warn";
    case CheckStatus::Inconclusive: return "Inconclusive";
    case CheckStatus::Fail: return "Fail";
  }
  return "?";
}

inline CheckStatus status_from_name(const std::string& s) {
  for (CheckStatus c : {CheckStatus::Pass, CheckStatus::Warn,
                        CheckStatus::Inconclusive, CheckStatus::Fail})
    if (status_name(c) == s) return c;
  throw std::runtime_error("unknown status: " + s);
}

// Severity order: Fail > Inconclusive > Warn > Pass.
inline int status_severity(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return 0;
    case CheckStatus::Warn: return 1;
    case CheckStatus::Inconclusive: return 2;
    case CheckStatus::Fail: return 3;
  }
  return 3;
}

inline CheckStatus worse(CheckStatus a, CheckStatus b) {
  return status_severity(a) >= status_severity(b) ? a : b;
}

struct CheckResult {
  std::string name;
  std::string anchor;  // e.g. "Theorem 2"
  CheckStatus status = CheckStatus::Pass;
  std::map<std::string, double> metrics;
  std::vector<std::string> witness;  // offending labels / cuts / coefficients
  double elapsed = 0.0;              // seconds

  void metric(const std::string& key, double v) { metrics[key] = v; }
  void require(bool ok, const std::string& why) {
    if (!ok) {
      status = worse(status, CheckStatus::Fail);
      witness.push_back(why);
    }
  }
};

struct ReportConfig {
  double tol_orth = 1e-12;
  double tol_rank = 1e-9;
  double tol_product = 1e-10;
  double tol_ges = 1e-6;
  std::uint64_t seed = 20250815;
  int restarts = 200;
  int random_trials = 100;
  bool long_running = false;
};

struct VerificationReport {
  std::string version = kArtifactVersion;
  int d = 0;
  std::vector<CheckResult> checks;
  ReportConfig config;
  double total_elapsed = 0.0;

  CheckStatus overall() const {
    CheckStatus s = CheckStatus::Pass;
    for (const auto& c : checks) s = worse(s, c.status);
    return s;
  }
};

// ---------------------------------------------------------------------------
// JSON (de)serialization

inline nlohmann::json report_to_json(const VerificationReport& r) {
  nlohmann::json j;
  j["version"] = r.version;
  j["d"] = r.d;
  j["config"] = {{"tol_orth", r.config.tol_orth},
                 {"tol_rank", r.config.tol_rank},
                 {"tol_product", r.config.tol_product},
                 {"tol_ges", r.config.tol_ges},
                 {"seed", r.config.seed},
                 {"restarts", r.config.restarts},
                 {"random_trials", r.config.random_trials},
                 {"long_running", r.config.long_running}};
  j["checks"] = nlohmann::json::array();
  for (const auto& c : r.checks) {
    j["checks"].push_back({{"name", c.name},
                           {"anchor", c.anchor},
                           {"status", status_name(c.status)},
                           {"metrics", c.metrics},
                           {"witness", c.witness},
                           {"elapsed", c.elapsed}});
  }
  j["total_elapsed"] = r.total_elapsed;
  j["overall"] = status_name(r.overall());
  return j;
}

inline VerificationReport report_from_json(const nlohmann::json& j) {
  VerificationReport r;
  r.version = j.at("version").get<std::string>();
  r.d = j.at("d").get<int>();
  const auto& c = j.at("config");
  r.config.tol_orth = c.at("tol_orth").get<double>();
  r.config.tol_rank = c.at("tol_rank").get<double>();
  r.config.tol_product = c.at("tol_product").get<double>();
  r.config.tol_ges = c.at("tol_ges").get<double>();
  r.config.seed = c.at("seed").get<std::uint64_t>();
  r.config.restarts = c.at("restarts").get<int>();
  r.config.random_trials = c.at("random_trials").get<int>();
  r.config.long_running = c.at("long_running").get<bool>();
  for (const auto& cj : j.at("checks")) {
    CheckResult cr;
    cr.name = cj.at("name").get<std::string>();
    cr.anchor = cj.at("anchor").get<std::string>();
    cr.status = status_from_name(cj.at("status").get<std::string>());
    cr.metrics = cj.at("metrics").get<std::map<std::string, double>>();
    cr.witness = cj.at("witness").get<std::vector<std::string>>();
    cr.elapsed = cj.at("elapsed").get<double>();
    r.checks.push_back(std::move(cr));
  }
  r.total_elapsed = j.at("total_elapsed").get<double>();
  return r;
}

inline void write_report(const VerificationReport& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << report_to_json(r).dump(1) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline VerificationReport read_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return report_from_json(nlohmann::json::parse(in));
}

// Human rendering: maps each check to the result it certifies.
inline std::string describe_check(const std::string& name) {
  if (name == "counts") return "Theorems 1/4 (dimension counts)";
  if (name == "orthogonality") return "Theorem 1 (pairwise orthogonality)";
  if (name == "biseparability") return "Theorem 1 (biseparability of members)";
  if (name == "ges") return "Theorem 1 (genuinely entangled subspace basis)";
  if (name == "unextendibility") return "Theorem 1 / Appendix A (unextendibility)";
  if (name == "nonlocality") return "Theorem 2 (strong nonlocality)";
  if (name.rfind("distillability", 0) == 0)
    return "Theorem 3 (distillability rank conditions)";
  return name;
}

inline std::string render_human(const VerificationReport& r) {
  std::ostringstream os;
  os << "verification report v" << r.version << "  d=" << r.d << "\n";
  os << "overall: " << status_name(r.overall()) << "\n\n";
  for (const auto& c : r.checks) {
    os << "[" << status_name(c.status) << "] " << c.name << " — "
       << describe_check(c.name) << " (anchor: " << c.anchor << ", "
       << c.elapsed << " s)\n";
    for (const auto& [k, v] : c.metrics) os << "    " << k << " = " << v << "\n";
    for (const auto& w : c.witness) os << "    ! " << w << "\n";
  }
  os << "\ntotal elapsed: " << r.total_elapsed << " s\n";
  return os.str();
}

}  // namespace ubblab
