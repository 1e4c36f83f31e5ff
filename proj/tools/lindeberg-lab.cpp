// lindeberg-lab <suite> [--flag value]...
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "lindeberg/harness.hpp"

namespace {

enum Exit { kOk = 0, kFailed = 1, kBadConfig = 2, kFault = 3 };

const char* kFlags[] = {"distX", "distY", "n",          "N",    "z_re",
                        "z_im",  "beta",  "h",          "A",    "epsilon",
                        "g",     "out",   "replicates", "seed", "threads",
                        "format"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lindeberg universality experiments"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", std::string(lindeberg::kVersion));

  std::string suite_text;
  std::string config_path;
  bool quiet = false;
  app.add_option("suite", suite_text,
                 "clt | wigner | sk_free_energy | sk_ground_state | "
                 "erdos_kac | lambda_audit | bound_table")
      ->required();
  app.add_option("--config", config_path, "key = value file, one [suite] section each")
      ->check(CLI::ExistingFile);
  app.add_flag("--quiet", quiet, "Do not print the run manifest");

  lindeberg::KeyValues overrides;
  for (const char* flag : kFlags) {
    app.add_option_function<std::string>(
        std::string("--") + flag,
        [&overrides, flag](const std::string& v) { overrides[flag] = v; })
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadConfig;
  }

  lindeberg::ExperimentConfig config;
  try {
    const auto suite = lindeberg::parse_suite(suite_text);
    lindeberg::KeyValues values;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      std::stringstream buf;
      buf << in.rdbuf();
      values = lindeberg::parse_config_text(buf.str(), suite);
    }
    for (const auto& [k, v] : overrides) values[k] = v;
    config = lindeberg::ExperimentConfig::from_key_values(suite, values);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kBadConfig;
  }

  try {
    const auto manifest = lindeberg::run(config);
    if (config.output_path.empty()) {
      std::cout << lindeberg::render(manifest, config);
      if (!quiet) std::cerr << lindeberg::manifest_json(manifest);
    } else if (!quiet) {
      std::cout << lindeberg::manifest_json(manifest);
    }
    return manifest.all_passed ? kOk : kFailed;
  } catch (const std::exception& e) {
    std::cerr << "runtime fault: " << e.what() << '\n';
    return kFault;
  }
}
