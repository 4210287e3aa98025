// adfd-analyzer: validate specs and models, check rule catalogs, and run
// the threat analysis over a model.
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "adfd/catalog.hpp"
#include "adfd/conformance.hpp"
#include "adfd/io.hpp"
#include "adfd/loader.hpp"
#include "adfd/report.hpp"
#include "adfd/rule_check.hpp"

namespace {

using adfd::ErrorCode;
using adfd::ModelError;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;      // usage, I/O, or parse failures
constexpr int kExitInvalid = 2;    // validation findings
constexpr int kExitMatched = 3;    // --fail-on-match and something matched

// Malformed input is the caller's problem (1); a well-formed document that
// breaks a semantic invariant is a validation finding (2).
int exit_code_for(const ModelError& e) {
  switch (e.code()) {
    case ErrorCode::IoError:
    case ErrorCode::InvalidDocument:
      return kExitUsage;
    default:
      return kExitInvalid;
  }
}

struct Paths {
  std::string spec;
  std::string model;
  std::string rules;
};

struct LoadedSpec {
  adfd::ContentSpecification spec;
  std::string digest;
};

LoadedSpec load_spec_file(const std::string& path) {
  const std::string bytes = adfd::read_file(path);
  return {adfd::load_specification(adfd::parse_json(bytes)), adfd::fnv1a_hex(bytes)};
}

int cmd_validate_spec(const Paths& paths) {
  load_spec_file(paths.spec);
  std::cout << "spec ok: " << paths.spec << "\n";
  return kExitOk;
}

int cmd_validate_model(const Paths& paths) {
  const LoadedSpec loaded = load_spec_file(paths.spec);
  const std::string bytes = adfd::read_file(paths.model);
  const adfd::Diagram diagram = adfd::load_diagram(adfd::parse_json(bytes), loaded.spec);

  const std::vector<adfd::Violation> violations = adfd::validate_diagram(diagram, loaded.spec);
  for (const adfd::Violation& v : violations) std::cout << adfd::violation_to_text(v) << "\n";
  if (!adfd::all_warnings(violations)) return kExitInvalid;
  std::cout << "model ok: " << paths.model << "\n";
  return kExitOk;
}

int cmd_check_rules(const Paths& paths) {
  const LoadedSpec loaded = load_spec_file(paths.spec);
  const adfd::Catalog catalog = adfd::load_catalog(adfd::parse_json(adfd::read_file(paths.rules)));

  bool any_failed = false;
  for (const adfd::Rule& rule : catalog.rules) {
    adfd::QueryPtr query;
    try {
      query = adfd::parse_query(rule.pattern_text);
    } catch (const adfd::ParseError& e) {
      std::cout << "FAIL " << rule.id << "\n  " << e.what() << "\n";
      any_failed = true;
      continue;
    }
    const std::vector<adfd::Violation> violations = adfd::check_query(*query, loaded.spec);
    const bool ok = adfd::all_warnings(violations);
    std::cout << (ok ? "PASS " : "FAIL ") << rule.id << "\n";
    for (const adfd::Violation& v : violations)
      std::cout << "  " << adfd::violation_to_text(v) << "\n";
    any_failed = any_failed || !ok;
  }
  std::cout << catalog.rules.size() << " rule(s) checked\n";
  return any_failed ? kExitInvalid : kExitOk;
}

struct AnalyzeFlags {
  std::string format = "text";
  std::string flow_uniqueness = "elements";
  std::string out_path;
  bool fail_on_match = false;
  unsigned jobs = 1;
};

int cmd_analyze(const Paths& paths, const AnalyzeFlags& flags) {
  const LoadedSpec loaded = load_spec_file(paths.spec);
  const std::string model_bytes = adfd::read_file(paths.model);
  const adfd::Diagram diagram = adfd::load_diagram(adfd::parse_json(model_bytes), loaded.spec);
  const adfd::Catalog catalog = adfd::load_catalog(adfd::parse_json(adfd::read_file(paths.rules)));

  adfd::AnalyzeOptions options;
  options.flow_uniqueness = flags.flow_uniqueness == "connectors"
                                ? adfd::FlowUniqueness::Connectors
                                : adfd::FlowUniqueness::Elements;
  options.jobs = flags.jobs;
  options.spec_digest = loaded.digest;
  options.model_digest = adfd::fnv1a_hex(model_bytes);

  adfd::ThreatReport report;
  try {
    report = adfd::analyze(diagram, loaded.spec, catalog, options);
  } catch (const adfd::ConformanceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const adfd::Violation& v : e.violations())
      std::cerr << adfd::violation_to_text(v) << "\n";
    return kExitInvalid;
  }

  std::string payload;
  if (flags.format == "structured")
    payload = adfd::report_to_json(report).dump(2) + "\n";
  else
    payload = adfd::report_to_text(report);

  if (flags.out_path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream out(flags.out_path, std::ios::binary);
    if (!out) throw ModelError(ErrorCode::IoError, "cannot write '" + flags.out_path + "'");
    out << payload;
  }

  std::size_t matched = 0;
  for (const adfd::RuleResult& r : report.results)
    matched += r.status == adfd::RuleStatus::Matched;
  if (flags.fail_on_match && matched > 0) return kExitMatched;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Threat analysis for asset data flow models"};
  app.set_version_flag("--version", adfd::kToolVersion);
  app.require_subcommand(1);

  Paths paths;
  AnalyzeFlags flags;

  CLI::App* validate_spec =
      app.add_subcommand("validate-spec", "Check a content specification file");
  validate_spec->add_option("--spec", paths.spec, "Specification file")->required();

  CLI::App* validate_model =
      app.add_subcommand("validate-model", "Check a model against its specification");
  validate_model->add_option("--spec", paths.spec, "Specification file")->required();
  validate_model->add_option("--model", paths.model, "Model file")->required();

  CLI::App* check_rules =
      app.add_subcommand("check-rules", "Statically check every rule in a catalog");
  check_rules->add_option("--spec", paths.spec, "Specification file")->required();
  check_rules->add_option("--rules", paths.rules, "Rule catalog file")->required();

  CLI::App* analyze = app.add_subcommand("analyze", "Run the rule catalog over a model");
  analyze->add_option("--spec", paths.spec, "Specification file")->required();
  analyze->add_option("--model", paths.model, "Model file")->required();
  analyze->add_option("--rules", paths.rules, "Rule catalog file")->required();
  analyze->add_option("--out", flags.out_path, "Write the report here instead of stdout");
  analyze->add_option("--format", flags.format, "Report format")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();
  analyze->add_option("--flow-uniqueness", flags.flow_uniqueness, "Flow enumeration mode")
      ->check(CLI::IsMember({"elements", "connectors"}))
      ->capture_default_str();
  analyze->add_flag("--fail-on-match", flags.fail_on_match,
                    "Exit with status 3 when any rule matches");
  analyze->add_option("--jobs", flags.jobs, "Worker threads for rule evaluation (0 = hardware)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate_spec->parsed()) return cmd_validate_spec(paths);
    if (validate_model->parsed()) return cmd_validate_model(paths);
    if (check_rules->parsed()) return cmd_check_rules(paths);
    if (analyze->parsed()) {
      if (flags.jobs == 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        flags.jobs = hw ? hw : 1;
      }
      return cmd_analyze(paths, flags);
    }
  } catch (const ModelError& e) {
    const int rc = exit_code_for(e);
    (rc == kExitUsage ? std::cerr : std::cout) << "error: " << e.what() << "\n";
    return rc;
  }
  return kExitUsage;
}
