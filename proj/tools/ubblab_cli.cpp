// Command-line front end: build state-family files, run verification suites,
// and render reports.
//
// Exit codes
//   build:  0 ok, 2 I/O failure, 3 invalid d
//   verify: 0 overall Pass (Warn with --allow-warn), 1 any Fail,
//           4 Inconclusive without --allow-inconclusive
//   report: 0 ok, 2 parse failure

#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "ubblab/certify.hpp"
#include "ubblab/families.hpp"
#include "ubblab/family_io.hpp"
#include "ubblab/report.hpp"

namespace {

int cmd_build(int d, const std::string& out_path) {
  if (d < 3) {
    std::cerr << "error: d >= 3 required\n";
    return 3;
  }
  try {
    ubblab::StateFamily fam = ubblab::build_ubb(d);
    ubblab::StateFamily psi = ubblab::build_psi_plus_family(d);
    ubblab::StateFamily ges = ubblab::build_ges_basis(d);
    for (auto& m : psi.members) fam.members.push_back(std::move(m));
    for (auto& m : ges.members) fam.members.push_back(std::move(m));
    ubblab::write_family(fam, out_path);
    std::cout << "wrote " << fam.members.size() << " states (d=" << d
              << ") to " << out_path << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_verify(int d, const std::vector<std::string>& suites,
               const ubblab::VerifyConfig& cfg, bool allow_warn,
               bool allow_inconclusive, const std::string& report_path) {
  if (d < 3) {
    std::cerr << "error: d >= 3 required\n";
    return 3;
  }
  ubblab::VerificationReport rep = ubblab::run_suites(d, suites, cfg);
  if (!report_path.empty()) ubblab::write_report(rep, report_path);
  std::cout << ubblab::render_human(rep);
  switch (rep.overall()) {
    case ubblab::CheckStatus::Pass:
      return 0;
    case ubblab::CheckStatus::Warn:
      return allow_warn ? 0 : 1;
    case ubblab::CheckStatus::Inconclusive:
      return allow_inconclusive ? 0 : 4;
    case ubblab::CheckStatus::Fail:
      return 1;
  }
  return 1;
}

int cmd_report(const std::string& report_path, const std::string& format) {
  try {
    ubblab::VerificationReport rep = ubblab::read_report(report_path);
    if (format == "machine")
      std::cout << ubblab::report_to_json(rep).dump(1) << "\n";
    else
      std::cout << ubblab::render_human(rep);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"four-partite unextendible biseparable basis toolkit"};
  app.require_subcommand(1);

  int d = 3;
  std::string out_path = "family.json";
  auto* build = app.add_subcommand("build", "write a state-family file");
  build->add_option("--d", d, "local dimension (>= 3)");
  build->add_option("--out", out_path, "output path");

  std::vector<std::string> suites;
  ubblab::VerifyConfig cfg;
  bool allow_warn = false, allow_inconclusive = false;
  std::string report_path;
  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--d", d, "local dimension (>= 3)");
  verify->add_option("--suite", suites, "suite name (repeatable), or 'all'");
  verify->add_option("--tol-rank", cfg.tol_rank, "relative rank tolerance");
  verify->add_option("--tol-orth", cfg.tol_orth, "orthogonality tolerance");
  verify->add_option("--seed", cfg.seed, "seed for randomized routines");
  verify->add_option("--restarts", cfg.restarts, "optimizer restarts per cut");
  verify->add_flag("--long-running", cfg.long_running,
                   "enable checks gated for d >= 5");
  verify->add_flag("--allow-warn", allow_warn, "exit 0 on overall Warn");
  verify->add_flag("--allow-inconclusive", allow_inconclusive,
                   "exit 0 on overall Inconclusive");
  verify->add_option("--report", report_path, "write the report here");

  std::string in_report, format = "human";
  auto* report = app.add_subcommand("report", "render a stored report");
  report->add_option("--report", in_report, "report path")->required();
  report->add_option("--format", format, "human | machine")
      ->check(CLI::IsMember({"human", "machine"}));

  CLI11_PARSE(app, argc, argv);

  if (build->parsed()) return cmd_build(d, out_path);
  if (verify->parsed()) {
    if (suites.empty()) suites.push_back("all");
    try {
      return cmd_verify(d, suites, cfg, allow_warn, allow_inconclusive,
                        report_path);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }
  return cmd_report(in_report, format);
}
