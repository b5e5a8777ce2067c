#include <cstdio>
#include <fstream>
#include <string>

#include <CLI11.hpp>

#include "qcoex/errors.hpp"
#include "qcoex/scenario.hpp"
#include "qcoex/version.hpp"

namespace {

const qcoex::Cell* find_summary(const qcoex::Report& report, const char* key) {
  for (const auto& [k, v] : report.summary) {
    if (k == key) {
      return &v;
    }
  }
  return nullptr;
}

// stdout carries only the byte-deterministic report; human commentary goes
// to stderr so piping/diffing reports stays safe
void print_plan_summary(const qcoex::Report& report) {
  const auto* selected = find_summary(report, "selected_count");
  const auto* rejected = find_summary(report, "rejected_count");
  const auto* achieved = find_summary(report, "achieved_key_rate_bps");
  const auto* minimum = find_summary(report, "min_key_rate_bps");
  const auto* utilization = find_summary(report, "budget_utilization");
  if (!selected || !rejected || !achieved || !minimum || !utilization) {
    return;
  }
  const auto count = [](const qcoex::Cell* c) {
    return static_cast<long long>(std::get<std::int64_t>(*c));
  };
  std::fprintf(stderr,
               "plan: selected %lld of %lld slots, budget utilization %.1f%%, "
               "achieved %.6g bps (minimum %.6g bps)\n",
               count(selected), count(selected) + count(rejected),
               100.0 * std::get<double>(*utilization), std::get<double>(*achieved),
               std::get<double>(*minimum));
}

}

int main(int argc, char** argv) {
  CLI::App app{"planner for quantum key distribution coexisting with classical "
               "channels in multicore fiber"};
  app.set_version_flag("--version", std::string("qcoex ") + qcoex::kVersion);
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_path;
  std::string format = "csv";
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--scenario", scenario_path, "scenario JSON file")
        ->required();
    sub->add_option("--out", out_path, "write the report to this file instead of stdout");
    sub->add_option("--format", format, "report format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  };
  add_common(app.add_subcommand("leakage", "per-channel background click breakdown"));
  add_common(app.add_subcommand("keyrate", "decoy-state key rate at one length"));
  add_common(app.add_subcommand("sweep-distance", "key rate versus fiber length"));
  add_common(app.add_subcommand("sweep-wavelength", "key rate versus data-channel wavelength"));
  add_common(app.add_subcommand("plan", "select classical slots under the noise budget"));

  CLI11_PARSE(app, argc, argv);

  try {
    const qcoex::Command command =
        qcoex::parse_command(app.get_subcommands().front()->get_name());
    const qcoex::Scenario scenario = qcoex::load_scenario(scenario_path);
    const qcoex::Report report = qcoex::run_command(command, scenario);
    const std::string text = format == "json" ? report.to_json() : report.to_csv();
    if (out_path.empty()) {
      std::fputs(text.c_str(), stdout);
    } else {
      std::ofstream out(out_path, std::ios::binary);
      out << text;
      if (!out) {
        std::fprintf(stderr, "error: cannot write report to %s\n", out_path.c_str());
        return 4;
      }
    }
    if (command == qcoex::Command::Plan) {
      print_plan_summary(report);
    }
  } catch (const qcoex::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const qcoex::ModelError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::ios_base::failure& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
  return 0;
}
