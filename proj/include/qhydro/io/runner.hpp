#pragma once

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qhydro/io/artifacts.hpp"
#include "qhydro/io/config.hpp"
#include "qhydro/io/invariants.hpp"

namespace qhydro::io {

inline constexpr const char* kManifestFormat = "qhydro-run-manifest";
inline constexpr const char* kManifestName = "manifest.json";
inline constexpr const char* kOutputRootEnv = "QHYDRO_OUTPUT_ROOT";

enum ExitCode : int { kExitOk = 0, kExitIo = 1, kExitConfig = 2, kExitInvariant = 3, kExitNumeric = 4 };

struct RunReport {
  int exit_code = kExitOk;
  std::filesystem::path run_dir;
  std::vector<InvariantResult> invariants;
  std::vector<std::string> warnings;
  std::string message;
};

/// Run directory for a configured output_dir. With QHYDRO_OUTPUT_ROOT set,
/// the configured path is re-rooted there (absolute paths lose their root).
inline std::filesystem::path resolve_output_dir(const std::string& output_dir) {
  const std::filesystem::path p(output_dir);
  const char* root = std::getenv(kOutputRootEnv);
  if (root == nullptr || *root == '\0') return p;
  return std::filesystem::path(root) / p.relative_path();
}

namespace detail {

inline Json invariants_json(const std::vector<InvariantResult>& inv) {
  Json out = Json::array();
  for (const auto& r : inv) {
    Json v = std::isfinite(r.value) ? Json(r.value) : Json(nullptr);
    out.push_back(Json{{"name", r.name}, {"passed", r.passed}, {"value", v}, {"tolerance", r.tolerance},
                       {"detail", r.detail}});
  }
  return out;
}

inline std::string failing_names(const std::vector<InvariantResult>& inv) {
  std::string names;
  for (const auto& r : inv)
    if (!r.passed) names += (names.empty() ? "" : ", ") + r.name;
  return names;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os << text;
  if (!os) throw IoError("write failed: " + path.string());
}

inline RunReport failure(int code, std::string message) {
  RunReport r;
  r.exit_code = code;
  r.message = std::move(message);
  return r;
}

/// Maps the exceptions of a run or check onto exit codes.
template <class F>
RunReport guarded(F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    return failure(kExitConfig, e.what());
  } catch (const InvalidArgument& e) {
    return failure(kExitConfig, e.what());
  } catch (const NumericAbort& e) {
    return failure(kExitNumeric, std::string("numeric abort: ") + e.what());
  } catch (const IoError& e) {
    return failure(kExitIo, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return failure(kExitIo, e.what());
  }
}

}  // namespace detail

/// Produces the artifacts of a parsed scenario, evaluates its invariants from
/// the files just written and writes the manifest last.
inline RunReport run_scenario(const ScenarioConfig& cfg) {
  return detail::guarded([&] {
    RunReport report;
    report.run_dir = resolve_output_dir(cfg.output_dir);
    std::filesystem::create_directories(report.run_dir);
    std::filesystem::remove(report.run_dir / kManifestName);

    const auto start = std::chrono::steady_clock::now();
    const Production prod = produce(cfg, report.run_dir);
    report.invariants = evaluate_invariants(cfg, report.run_dir);
    const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - start;
    report.warnings = prod.warnings;

    const std::string failed = detail::failing_names(report.invariants);
    Json artifacts = Json::array();
    for (const auto& a : prod.artifacts) artifacts.push_back(Json{{"path", a.path}, {"rows", a.rows}});
    Json m{{"format", kManifestFormat},
           {"version", kConfigVersion},
           {"status", failed.empty() ? "passed" : "invariant_failed"},
           {"scenario", cfg.kind()},
           {"config", to_json(cfg)},
           {"artifacts", artifacts},
           {"wall_clock_seconds", wall.count()},
           {"invariants", detail::invariants_json(report.invariants)},
           {"warnings", prod.warnings},
           {"extra", prod.extra}};
    detail::write_text(report.run_dir / kManifestName, m.dump(2) + "\n");

    if (!failed.empty()) {
      report.exit_code = kExitInvariant;
      report.message = "invariant failed: " + failed;
    }
    return report;
  });
}

inline RunReport run(const std::filesystem::path& config_path) {
  return detail::guarded([&] { return run_scenario(load_config(config_path)); });
}

/// Data rows of a CSV or face count of an OBJ, as recorded in manifests.
inline std::size_t count_rows(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("missing artifact " + path.string());
  const bool obj = path.extension() == ".obj";
  std::size_t rows = 0;
  bool header = !obj;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    if (!obj || line.rfind("f ", 0) == 0) ++rows;
  }
  return rows;
}

/// Re-evaluates the invariants of a finished run from its artifacts and
/// compares them with the manifest. Disagreement counts as an invariant
/// failure.
inline RunReport check(const std::filesystem::path& manifest_path) {
  return detail::guarded([&] {
    std::ifstream is(manifest_path, std::ios::binary);
    if (!is) throw IoError("cannot open manifest " + manifest_path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    Json m;
    try {
      m = Json::parse(ss.str());
    } catch (const Json::parse_error& e) {
      throw IoError("manifest is not valid JSON: " + std::string(e.what()));
    }
    if (!m.is_object() || m.value("format", "") != kManifestFormat) throw IoError("not a run manifest");

    RunReport report;
    report.run_dir = manifest_path.parent_path();
    const ScenarioConfig cfg = parse_config(m.at("config").dump());
    std::vector<std::string> problems;
    for (const auto& a : m.at("artifacts")) {
      const auto path = a.at("path").get<std::string>();
      const auto rows = count_rows(report.run_dir / path);
      if (rows != a.at("rows").get<std::size_t>())
        problems.push_back(path + ": " + std::to_string(rows) + " rows, manifest records " +
                           std::to_string(a.at("rows").get<std::size_t>()));
    }

    report.invariants = evaluate_invariants(cfg, report.run_dir);
    const auto& recorded = m.at("invariants");
    if (recorded.size() != report.invariants.size()) problems.push_back("invariant count differs from manifest");
    for (std::size_t k = 0; k < std::min(recorded.size(), report.invariants.size()); ++k) {
      const auto& fresh = report.invariants[k];
      const auto& old = recorded[k];
      const bool same_value = old.at("value").is_null() ? !std::isfinite(fresh.value)
                                                        : old.at("value").get<double>() == fresh.value;
      if (old.at("name") != fresh.name || old.at("passed").get<bool>() != fresh.passed || !same_value)
        problems.push_back("invariant " + fresh.name + " disagrees with manifest");
    }

    const std::string failed = detail::failing_names(report.invariants);
    if (!problems.empty()) {
      report.exit_code = kExitInvariant;
      for (const auto& p : problems) report.message += (report.message.empty() ? "" : "; ") + p;
    } else if (!failed.empty()) {
      report.exit_code = kExitInvariant;
      report.message = "invariant failed: " + failed;
    }
    return report;
  });
}

}  // namespace qhydro::io
