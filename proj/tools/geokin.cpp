#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>

#include "geokin/error.hpp"
#include "geokin/scenario.hpp"

namespace {

using nlohmann::json;

enum Exit { kOk = 0, kFail = 1, kConfig = 2, kAbort = 3 };

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const geokin::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const geokin::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const geokin::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kAbort;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kAbort;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geokin: geometric kinetics scenario runner"};
  app.require_subcommand(1);

  std::string config_path, task;
  bool verbose = false;

  auto* run = app.add_subcommand("run", "Run the scenario described by a JSON config");
  run->add_option("config", config_path, "Config file")->required();
  run->add_option("--task", task, "Override the task named in the config");
  run->add_flag("-v,--verbose", verbose, "Echo the normalized config before running");

  auto* validate = app.add_subcommand("validate", "Parse and check a config without running it");
  validate->add_option("config", config_path, "Config file")->required();
  validate->add_option("--task", task, "Override the task named in the config");

  std::string chart_kind;
  int n = 1;
  std::uint64_t seed = 0;
  int samples = 100;
  std::string out_path;
  auto* identity = app.add_subcommand("identity", "Run the exact identity suite for one chart");
  identity->add_option("--chart", chart_kind, "symplectic, cosymplectic, contact or cocontact")
      ->required();
  identity->add_option("--n", n, "Degrees of freedom")->check(CLI::PositiveNumber);
  identity->add_option("--seed", seed, "Corpus seed");
  identity->add_option("--samples", samples, "Random cases per law")->check(CLI::PositiveNumber);
  identity->add_option("--out", out_path, "Write the JSON report here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  if (*run) {
    return guarded([&] {
      const auto cfg = geokin::load_config(config_path, task);
      if (verbose) std::cerr << geokin::describe(cfg).dump(2) << '\n';
      const auto outcome = geokin::run(cfg);
      std::cout << outcome.summary.dump(2) << '\n';
      std::cout << (outcome.passed ? "PASS" : "FAIL") << '\n';
      return outcome.passed ? kOk : kFail;
    });
  }
  if (*validate) {
    return guarded([&] {
      const auto cfg = geokin::load_config(config_path, task);
      std::cout << "ok\n" << geokin::describe(cfg).dump(2) << '\n';
      return kOk;
    });
  }
  return guarded([&] {
    const geokin::Chart chart(geokin::chart_kind_from_string(chart_kind), n);
    const json report = geokin::identity_report_json(chart, seed, samples);
    if (out_path.empty()) {
      std::cout << report.dump(2) << '\n';
    } else {
      std::ofstream out(out_path);
      if (!out) throw geokin::Error("cannot write '" + out_path + "'");
      out << report.dump(2) << '\n';
      std::cout << report.at("status").get<std::string>() << '\n';
    }
    return report.at("status") == "PASS" ? kOk : kFail;
  });
}
