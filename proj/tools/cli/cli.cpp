// Copyright 2026 The qghz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <string>
#include <vector>

namespace qghz::cli {

namespace {

using nlohmann::json;

// JSON values carry the same 12 significant digits as the text output.
double round12(double value) { return std::strtod(format_number(value).c_str(), nullptr); }

int parse_int(std::string_view token) {
  int value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc{} || ptr != end) {
    throw InputError("not an integer: '" + std::string(token) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) return parts;
    start = pos + 1;
  }
}

std::string label_symbol(const Levels& parity, const std::string& phase, int dim) {
  std::string x;
  for (std::size_t i = 0; i < parity.size(); ++i) {
    if (i && dim > 10) x += ',';
    x += std::to_string(parity[i]);
  }
  return "ψ_{" + x + "}^{" + phase + "}";
}

json label_json(const GhzLabel& label) { return json{{"x", label.parity}, {"k", label.phase}}; }

}  // namespace

// ---------------------------------------------------------------------------
// Parsing and rendering

GhzLabel parse_label(std::string_view text, const SystemShape& shape) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos || text.find(':', colon + 1) != std::string_view::npos) {
    throw InputError("label must look like x1,...,x_{n-1}:k, got '" + std::string(text) + "'");
  }
  GhzLabel label;
  for (auto token : split(text.substr(0, colon), ',')) label.parity.push_back(parse_int(token));
  label.phase = parse_int(text.substr(colon + 1));
  validate_label(shape, label);
  return label;
}

Levels parse_levels(std::string_view text, const SystemShape& shape) {
  Levels levels;
  const bool letters = !text.empty() && std::isalpha(static_cast<unsigned char>(text.front()));
  if (letters) {
    for (char c : text) {
      if (c < 'a' || c > 'z') throw InputError("bad level letter '" + std::string(1, c) + "'");
      levels.push_back(c - 'a');
    }
  } else {
    for (auto token : split(text, ',')) levels.push_back(parse_int(token));
  }
  shape.validate_levels(levels);
  return levels;
}

std::string render_oam(const Levels& levels, int dim) {
  std::string out;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (dim <= 26) {
      out += static_cast<char>('a' + levels[i]);
    } else {
      if (i) out += ',';
      out += std::to_string(levels[i]);
    }
  }
  return out;
}

std::string render_spatial(const Levels& levels, int dim) {
  std::string out;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (i && dim > 10) out += ',';
    out += std::to_string(levels[i]);
  }
  return out;
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void render_report(const VerificationReport& report, OutputFormat format, std::ostream& out) {
  const int d = report.shape.dim();
  const int n = report.shape.photons();
  if (format == OutputFormat::json) {
    json checks = json::array();
    for (const auto& c : report.checks) {
      checks.push_back({{"name", c.name},
                        {"passed", c.passed},
                        {"skipped", c.skipped},
                        {"worst_deviation", round12(c.worst_deviation)},
                        {"tolerance", round12(c.tolerance)},
                        {"runtime_ms", round12(c.runtime_ms)},
                        {"detail", c.detail}});
    }
    json labels = json::array();
    for (const auto& l : report.labels) {
      labels.push_back({{"label", label_json(l.label)},
                        {"oam_outcomes", l.oam_outcomes},
                        {"spatial_outcomes", l.spatial_outcomes},
                        {"outcome_pairs", l.outcome_pairs},
                        {"confusions", l.confusions}});
    }
    json doc{{"dim", d},
             {"photons", n},
             {"passed", report.passed()},
             {"labels_total", report.labels.size()},
             {"labels_distinguished", report.labels_distinguished()},
             {"dense_checks_skipped", report.dense_checks_skipped},
             {"checks", checks},
             {"labels", labels}};
    out << doc.dump(2) << '\n';
    return;
  }

  out << "# GHZ measurement verification: d=" << d << ", n=" << n << "\n\n";
  out << report.labels_distinguished() << "/" << report.labels.size()
      << " states distinguished\n\n";
  out << "| check | result | worst deviation | tolerance | runtime (ms) | detail |\n";
  out << "|---|---|---|---|---|---|\n";
  for (const auto& c : report.checks) {
    const char* result = c.skipped ? "SKIPPED" : (c.passed ? "PASS" : "FAIL");
    out << "| " << c.name << " | " << result << " | " << format_number(c.worst_deviation) << " | "
        << format_number(c.tolerance) << " | " << format_number(c.runtime_ms) << " | " << c.detail
        << " |\n";
  }
  if (report.dense_checks_skipped) out << "\nDense checks skipped: d^(2n) exceeds the dense cap.\n";
  out << "\nOverall: " << (report.passed() ? "PASS" : "FAIL") << '\n';
}

void render_tables(const ParityTable& parity, const PhaseTable& phase, OutputFormat format,
                   std::ostream& out) {
  const int d = parity.shape.dim();
  if (format == OutputFormat::json) {
    json parity_rows = json::array();
    for (const auto& [x, outcomes] : parity.rows) {
      json levels = json::array();
      json letters = json::array();
      for (const auto& o : outcomes) {
        levels.push_back(o);
        letters.push_back(render_oam(o, d));
      }
      parity_rows.push_back({{"x", x}, {"oam_outcomes", levels}, {"oam_rendered", letters}});
    }
    json phase_rows = json::array();
    for (const auto& [k, outcomes] : phase.rows) {
      json levels = json::array();
      json rendered = json::array();
      for (const auto& o : outcomes) {
        levels.push_back(o);
        rendered.push_back(render_spatial(o, d));
      }
      phase_rows.push_back({{"k", k}, {"spatial_outcomes", levels}, {"spatial_rendered", rendered}});
    }
    json doc{{"dim", d},
             {"photons", parity.shape.photons()},
             {"parity_table", parity_rows},
             {"phase_table", phase_rows},
             {"consistent_across_phase", parity.consistent_across_phase},
             {"consistent_across_parity", phase.consistent_across_parity}};
    out << doc.dump(2) << '\n';
    return;
  }

  out << "## Parity readout (OAM), d=" << d << ", n=" << parity.shape.photons() << "\n\n";
  out << "| Initial states | Possible detections in OAM DOF |\n|---|---|\n";
  for (const auto& [x, outcomes] : parity.rows) {
    out << "| " << label_symbol(x, "k", d) << " | ";
    bool first = true;
    for (const auto& o : outcomes) {
      out << (first ? "" : ", ") << render_oam(o, d);
      first = false;
    }
    out << " |\n";
  }
  out << "\n## Phase readout (spatial mode), d=" << d << ", n=" << phase.shape.photons() << "\n\n";
  out << "| Initial states | Possible detections in spatial-mode DOF |\n|---|---|\n";
  for (const auto& [k, outcomes] : phase.rows) {
    out << "| ψ_{x}^{" << k << "} | ";
    bool first = true;
    for (const auto& o : outcomes) {
      out << (first ? "" : ", ") << render_spatial(o, d);
      first = false;
    }
    out << " |\n";
  }
}

// ---------------------------------------------------------------------------
// Commands

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const SystemShape shape(config.dim, config.photons);
  try {
    const VerificationReport report = verify_shape(shape, VerifyOptions{config.limits, config.jobs});
    render_report(report, config.format, out);
    return report.passed() ? kExitOk : kExitFailure;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int cmd_tables(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const SystemShape shape(config.dim, config.photons);
  try {
    render_tables(parity_table(shape, config.limits), phase_table(shape, config.limits),
                  config.format, out);
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const SystemShape shape(config.dim, config.photons);
  if (!config.label) {
    err << "error: run requires --label x1,...,x_{n-1}:k\n";
    return kExitUsage;
  }
  const GhzLabel label = parse_label(*config.label, shape);
  if (config.shots == 0) throw InputError("--shots must be at least 1");

  const auto records = run_sampled(shape, label, config.shots, config.seed);
  std::size_t matches = 0;
  for (const auto& r : records) matches += r.decoded == label ? 1 : 0;
  const double accuracy = static_cast<double>(matches) / static_cast<double>(records.size());
  const int d = shape.dim();

  if (config.format == OutputFormat::json) {
    json rows = json::array();
    for (const auto& r : records) {
      rows.push_back({{"oam", r.oam.levels},
                      {"spatial", r.spatial.levels},
                      {"decoded", label_json(r.decoded)},
                      {"match", r.decoded == label}});
    }
    json doc{{"dim", d},
             {"photons", shape.photons()},
             {"label", label_json(label)},
             {"shots", config.shots},
             {"seed", config.seed},
             {"records", rows},
             {"accuracy", round12(accuracy)}};
    out << doc.dump(2) << '\n';
  } else {
    out << "# Shots for " << label_symbol(label.parity, std::to_string(label.phase), d)
        << ", d=" << d << ", n=" << shape.photons() << ", seed=" << config.seed << "\n\n";
    out << "| shot | OAM | spatial | decoded | match |\n|---|---|---|---|---|\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto& r = records[i];
      out << "| " << i + 1 << " | " << render_oam(r.oam.levels, d) << " | "
          << render_spatial(r.spatial.levels, d) << " | " << to_string(r.decoded) << " | "
          << (r.decoded == label ? "yes" : "no") << " |\n";
    }
    out << "\naccuracy: " << format_number(accuracy) << " (" << matches << "/" << records.size()
        << ")\n";
  }
  return matches == records.size() ? kExitOk : kExitFailure;
}

int cmd_classify(const RunConfig& config, const std::string& oam, const std::string& spatial,
                 std::ostream& out, std::ostream&) {
  const SystemShape shape(config.dim, config.photons);
  const Outcome oam_outcome{Register::oam, parse_levels(oam, shape)};
  const Outcome spatial_outcome{Register::spatial, parse_levels(spatial, shape)};
  const GhzLabel label = decode_label(oam_outcome, spatial_outcome, shape.dim());

  if (config.format == OutputFormat::json) {
    json doc{{"dim", shape.dim()},
             {"photons", shape.photons()},
             {"oam", oam_outcome.levels},
             {"spatial", spatial_outcome.levels},
             {"label", label_json(label)}};
    out << doc.dump(2) << '\n';
    return kExitOk;
  }
  out << "x=(";
  for (std::size_t i = 0; i < label.parity.size(); ++i) out << (i ? "," : "") << label.parity[i];
  out << "), k=" << label.phase << '\n';
  out << "label: " << to_string(label) << '\n';
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Qudit GHZ-state measurement simulator and verifier", "qghz"};
  app.require_subcommand(1);

  RunConfig config;
  std::string format = "markdown";
  std::string oam;
  std::string spatial;
  std::string label;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--dim", config.dim, "Qudit dimension d")->capture_default_str();
    sub->add_option("--photons", config.photons, "Photon count n")->capture_default_str();
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"markdown", "json"}))
        ->capture_default_str();
    sub->add_option("--dense-cap", config.limits.dense_amplitudes,
                    "Largest dense amplitude array")
        ->envname("QGHZ_DENSE_CAP")
        ->capture_default_str();
    sub->add_option("--enum-cap", config.limits.label_enumeration, "Largest label enumeration")
        ->capture_default_str();
  };

  auto* verify = app.add_subcommand("verify", "Run every protocol check for one (d, n)");
  add_common(verify);
  verify->add_option("--jobs", config.jobs, "Worker threads (0 = all cores)")
      ->capture_default_str();

  auto* tables = app.add_subcommand("tables", "Print the parity and phase readout tables");
  add_common(tables);

  auto* run = app.add_subcommand("run", "Simulate measurement shots on one GHZ state");
  add_common(run);
  run->add_option("--label", label, "GHZ label x1,...,x_{n-1}:k");
  run->add_option("--shots", config.shots, "Number of shots")->capture_default_str();
  run->add_option("--seed", config.seed, "Sampler seed")->capture_default_str();

  auto* classify = app.add_subcommand("classify", "Decode a label from two readouts");
  add_common(classify);
  classify->add_option("--oam", oam, "OAM readout, e.g. 0,0,1 or aab")->required();
  classify->add_option("--spatial", spatial, "Spatial readout, e.g. 0,0,2")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << '\n' << "run with --help for usage\n";
    return kExitUsage;
  }
  config.format = format == "json" ? OutputFormat::json : OutputFormat::markdown;
  if (!label.empty()) config.label = label;

  try {
    if (verify->parsed()) return cmd_verify(config, out, err);
    if (tables->parsed()) return cmd_tables(config, out, err);
    if (run->parsed()) return cmd_run(config, out, err);
    return cmd_classify(config, oam, spatial, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace qghz::cli
