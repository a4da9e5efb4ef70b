#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "qhydro/io/catalog.hpp"
#include "qhydro/io/runner.hpp"

namespace {

void report(const qhydro::io::RunReport& r, bool verbose) {
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
  if (verbose || r.exit_code == qhydro::io::kExitInvariant) {
    for (const auto& inv : r.invariants)
      std::cout << (inv.passed ? "PASS " : "FAIL ") << inv.name << "  value=" << qhydro::io::format_double(inv.value)
                << "  tolerance=" << qhydro::io::format_double(inv.tolerance) << '\n';
  }
  if (!r.message.empty()) std::cerr << "qhydro: " << r.message << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum hydrodynamics workbench"};
  app.require_subcommand(1);

  std::string config_path;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "run a scenario config and write artifacts plus manifest.json");
  run->add_option("config", config_path, "scenario config (JSON)")->required();
  run->add_flag("-q,--quiet", quiet, "suppress the invariant table");

  std::string samples_dir;
  auto* list = app.add_subcommand("list", "print the built-in scenario catalog");
  list->add_option("--write", samples_dir, "also write every catalog config into this directory");

  std::string manifest_path;
  auto* check = app.add_subcommand("check", "re-verify the invariants of a finished run");
  check->add_option("manifest", manifest_path, "manifest.json of the run")->required();

  CLI11_PARSE(app, argc, argv);

  if (*run) {
    const auto r = qhydro::io::run(config_path);
    report(r, !quiet);
    if (r.exit_code == qhydro::io::kExitOk) std::cout << "wrote " << (r.run_dir / qhydro::io::kManifestName).string() << '\n';
    return r.exit_code;
  }
  if (*list) {
    for (const auto& e : qhydro::io::catalog())
      std::cout << e.name << "  [criterion " << e.criterion << "; " << e.anchor << "]  " << e.description << '\n';
    if (!samples_dir.empty()) {
      try {
        for (const auto& p : qhydro::io::write_catalog(samples_dir)) std::cout << "wrote " << p.string() << '\n';
      } catch (const std::exception& e) {
        std::cerr << "qhydro: " << e.what() << '\n';
        return qhydro::io::kExitIo;
      }
    }
    return 0;
  }
  const auto r = qhydro::io::check(manifest_path);
  report(r, true);
  return r.exit_code;
}
