/*
 * Copyright 2026 The flipaudit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "flipaudit/cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "flipaudit/chart.hpp"
#include "flipaudit/errors.hpp"
#include "flipaudit/ingest.hpp"
#include "flipaudit/pipeline.hpp"
#include "flipaudit/report.hpp"
#include "flipaudit/thresholds.hpp"

namespace flipaudit {

namespace {

struct ColumnFlags {
  std::string pred = "pred";
  std::string corr = "corr";
  std::string group = "group";
  std::string truth;
  int favorable = 1;
  int privileged = 1;
  CLI::Option* corr_option = nullptr;
};

void add_column_flags(CLI::App& cmd, ColumnFlags& flags) {
  cmd.add_option("--pred-col", flags.pred, "Predicted label column (name or 0-based index)")
      ->capture_default_str();
  flags.corr_option =
      cmd.add_option("--corr-col", flags.corr, "Corrected label column")->capture_default_str();
  cmd.add_option("--group-col", flags.group, "Protected group column")->capture_default_str();
  cmd.add_option("--true-col", flags.truth, "True label column (needed for EO)");
  cmd.add_option("--favorable", flags.favorable, "Raw label value meaning favorable")
      ->check(CLI::IsMember({0, 1}))
      ->capture_default_str();
  cmd.add_option("--privileged", flags.privileged, "Raw group value meaning privileged")
      ->check(CLI::IsMember({0, 1}))
      ->capture_default_str();
}

ColumnMapping to_mapping(const ColumnFlags& flags, bool with_corrected, bool auto_truth) {
  ColumnMapping m;
  m.predicted = flags.pred;
  m.corrected = with_corrected ? std::optional<std::string>(flags.corr) : std::nullopt;
  m.group = flags.group;
  if (!flags.truth.empty()) {
    m.truth = flags.truth;
  } else if (auto_truth) {
    m.truth = "true";
    m.truth_optional = true;
  }
  m.favorable = static_cast<Label>(flags.favorable);
  m.privileged = static_cast<Label>(flags.privileged);
  return m;
}

ThresholdConfig load_thresholds(const std::string& path) {
  return path.empty() ? ThresholdConfig::defaults() : ThresholdConfig::from_file(path);
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error(fmt::format("cannot write '{}'", path));
  file << text;
  if (!file) throw std::runtime_error(fmt::format("failed writing '{}'", path));
}

std::string read_input(const std::string& path, std::istream& in) {
  if (path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw IngestError(IngestErrorCode::kUnreadableFile, fmt::format("cannot open '{}'", path));
  }
  return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

std::string frame_to_csv(const AuditFrame& frame) {
  std::ostringstream os;
  write_csv(frame, os);
  return os.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Audit how post-processing label flips are distributed across groups",
               "flipaudit"};
  app.require_subcommand(1);

  std::string input = "-";
  std::string output = "-";
  std::string thresholds;
  std::string format = "text";
  std::string scenario = "paper-example";
  std::string debiaser_name = "sp-equalizer";
  double epsilon = 0.1;
  std::uint64_t seed = 0;
  ColumnFlags audit_cols, debias_cols, pipeline_cols;

  auto* audit = app.add_subcommand("audit", "Compute the proportionality report for a data file");
  audit->add_option("--input", input, "CSV or JSON records file, '-' for stdin")
      ->capture_default_str();
  audit->add_option("--output", output, "Report destination, '-' for stdout")
      ->capture_default_str();
  audit->add_option("--thresholds", thresholds, "Threshold config file (defaults built in)");
  audit->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();
  add_column_flags(*audit, audit_cols);

  auto* plot = app.add_subcommand("plot", "Render a structured report as an SVG chart");
  plot->add_option("--input", input, "Structured report, '-' for stdin")->capture_default_str();
  plot->add_option("--output", output, "SVG destination, '-' for stdout")->capture_default_str();

  auto* synth = app.add_subcommand("synth", "Generate a synthetic scenario as CSV");
  synth->add_option("--scenario", scenario, "'paper-example' or a scenario file")
      ->capture_default_str();
  auto* synth_seed = synth->add_option("--seed", seed, "Override the scenario seed");
  synth->add_option("--output", output, "CSV destination, '-' for stdout")
      ->capture_default_str();

  auto* debias = app.add_subcommand("debias", "Equalize statistical parity by flipping labels");
  debias->add_option("--input", input, "CSV or JSON records file, '-' for stdin")
      ->capture_default_str();
  debias->add_option("--output", output, "Corrected CSV destination, '-' for stdout")
      ->capture_default_str();
  debias->add_option("--epsilon", epsilon, "Target |SP difference| bound")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  debias->add_option("--seed", seed, "Seed for choosing flipped instances")
      ->capture_default_str();
  add_column_flags(*debias, debias_cols);

  auto* pipeline = app.add_subcommand(
      "pipeline", "Fairness gate, debias, re-gate and proportionality audit in one run");
  pipeline->add_option("--input", input, "CSV or JSON records file, '-' for stdin")
      ->capture_default_str();
  pipeline->add_option("--output", output, "Report destination, '-' for stdout")
      ->capture_default_str();
  pipeline->add_option("--thresholds", thresholds, "Threshold config file");
  pipeline->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();
  pipeline
      ->add_option("--epsilon", epsilon,
                   "Fair interval half-width and SP equalizer target")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  pipeline->add_option("--seed", seed, "Seed for the SP equalizer")->capture_default_str();
  pipeline
      ->add_option("--debiaser", debiaser_name,
                   "'sp-equalizer', or 'passthrough' to take corrected labels from --corr-col")
      ->check(CLI::IsMember({"sp-equalizer", "passthrough"}))
      ->capture_default_str();
  add_column_flags(*pipeline, pipeline_cols);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code != 0) {
      err << app.help();
      return 1;
    }
    return 0;
  }

  try {
    if (audit->parsed()) {
      const AuditFrame frame = ingest_path(input, to_mapping(audit_cols, true, false), in);
      const ProportionalityReport report = build_report(frame, load_thresholds(thresholds));
      write_output(output,
                   format == "structured" ? render_structured(report) : render_text(report),
                   out);
      return exit_code_for(report.verdict);
    }
    if (plot->parsed()) {
      const ProportionalityReport report = parse_structured(read_input(input, in));
      if (output == "-") {
        out << render_chart_svg(report);
      } else {
        emit_chart(report, output);
      }
      return 0;
    }
    if (synth->parsed()) {
      ScenarioSpec spec = load_scenario(scenario);
      if (synth_seed->count() > 0) spec.seed = seed;
      write_output(output, frame_to_csv(generate_scenario(spec)), out);
      return 0;
    }
    if (debias->parsed()) {
      const AuditFrame frame = ingest_path(input, to_mapping(debias_cols, false, true), in);
      const AuditFrame corrected =
          frame.with_corrected(sp_equalizing_debiaser(frame, epsilon, seed));
      const FlipSummary flips = summarize_flips(corrected);
      err << fmt::format("flipped {} labels ({} favorable, {} harmful); SP {:.4f} -> {:.4f}\n",
                         flips.n_flips, flips.n_favorable, flips.n_unfavorable,
                         statistical_parity_difference(frame.y_predicted(), frame.group()),
                         statistical_parity_difference(corrected.y_corrected(),
                                                       corrected.group()));
      write_output(output, frame_to_csv(corrected), out);
      return 0;
    }
    if (pipeline->parsed()) {
      const bool passthrough = debiaser_name == "passthrough";
      const AuditFrame frame =
          ingest_path(input, to_mapping(pipeline_cols, passthrough, true), in);
      Debiaser debiaser;
      if (passthrough) {
        debiaser = [](const AuditFrame& f) {
          return std::vector<Label>(f.y_corrected().begin(), f.y_corrected().end());
        };
      } else {
        debiaser = [epsilon, seed](const AuditFrame& f) {
          return sp_equalizing_debiaser(f, epsilon, seed);
        };
      }
      const PipelineOutcome outcome = run_audit_pipeline(
          frame, debiaser, load_thresholds(thresholds), FairInterval{-epsilon, epsilon});
      if (format == "structured") {
        write_output(output, render_structured(outcome.report), out);
        err << fmt::format("Decision: {}\n", to_string(outcome.decision));
      } else {
        write_output(output,
                     render_text(outcome.report) +
                         fmt::format("Decision: {}\n", to_string(outcome.decision)),
                     out);
      }
      return exit_code_for(outcome);
    }
  } catch (const IngestError& e) {
    err << fmt::format("error [{}]: {}\n", to_string(e.code()), e.what());
    return 1;
  } catch (const PipelineError& e) {
    err << fmt::format("error: {} (pre-debias SP difference {:.4f})\n", e.what(),
                       e.pre_fairness().sp_difference);
    return 1;
  } catch (const std::exception& e) {
    err << fmt::format("error: {}\n", e.what());
    return 1;
  }
  err << app.help();
  return 1;
}

}  // namespace flipaudit
