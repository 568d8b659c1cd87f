#include "shoulder/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

#include "shoulder/feature_matrix.hpp"
#include "shoulder/ingest.hpp"
#include "shoulder/parallel.hpp"
#include "shoulder/report.hpp"
#include "shoulder/stats.hpp"
#include "shoulder/synth.hpp"
#include "shoulder/text.hpp"

namespace fs = std::filesystem;

namespace shoulder::cli {

namespace {

constexpr const char* kDumpName = "comparison.csv";

struct Options {
  std::string cohort;
  std::string in;
  std::string out;
  std::string params;
  std::string profile;
  std::optional<std::uint64_t> seed;
  std::string rule = "strict";
  std::string ttest = "welch";
  std::string format = "table";
  unsigned jobs = 1;
};

stats::SignificanceRule rule_from(const std::string& name) {
  return name == "inclusive" ? stats::SignificanceRule::inclusive()
                             : stats::SignificanceRule::strict();
}

int cmd_simulate(const Options& o, std::ostream& out) {
  synth::CohortProfile profile = synth::default_profile();
  if (!o.profile.empty()) profile = synth::parse_profile(text::read_file(o.profile), o.profile);
  if (o.seed) profile.seed = *o.seed;
  profile.validate();
  const auto sessions = synth::generate_cohort(profile, o.out, o.jobs);
  out << "wrote " << sessions.size() << " sessions to " << o.out << '\n';
  return kExitOk;
}

int cmd_extract(const Options& o, std::ostream& out, std::ostream& err) {
  FeatureParams params;
  if (!o.params.empty()) params = parse_feature_params(text::read_file(o.params), o.params);
  const std::vector<Session> sessions = ingest::load_cohort(o.cohort, o.jobs);
  if (sessions.empty()) throw Error(ErrorKind::Cohort, "cohort " + o.cohort + " has no sessions");

  struct Result {
    FeatureMatrix rows;
    std::vector<Error> failures;
  };
  std::vector<Result> results(sessions.size());
  parallel_for(sessions.size(), o.jobs, [&](std::size_t i) {
    const Session& s = sessions[i];
    for (const auto& [task, label] : s.labels()) {
      for (const SegmentKind kind : kAllSegments) {
        for (const Placement placement : kAllPlacements) {
          try {
            results[i].rows.push_back({s.subject_id(), s.group(), task, kind, placement,
                                       extract_all(s, task, kind, placement, params)});
          } catch (const Error& e) {
            results[i].failures.push_back(e);
          }
        }
      }
    }
  });

  FeatureMatrix matrix;
  int code = kExitOk;
  for (auto& r : results) {
    matrix.insert(matrix.end(), r.rows.begin(), r.rows.end());
    for (const Error& e : r.failures) {
      err << "cell failed: " << e.what() << '\n';
      const int c = e.kind() == ErrorKind::Degenerate || e.kind() == ErrorKind::TooShort
                        ? kExitDegenerate
                        : exit_code_for(e.kind());
      code = std::max(code, c);
    }
  }
  sort_rows(matrix);
  text::write_file(o.out, write_feature_matrix(matrix));
  out << "wrote " << matrix.size() << " feature rows for " << sessions.size() << " sessions to "
      << o.out << '\n';
  return code;
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream& err) {
  const FeatureMatrix matrix = load_feature_matrix(o.in);
  const auto test = o.ttest == "student" ? stats::TTestKind::Student : stats::TTestKind::Welch;
  const stats::ComparisonTable table = stats::compare_cohort(matrix, rule_from(o.rule), test);
  std::error_code ec;
  fs::create_directories(o.out, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + o.out + ": " + ec.message());
  const std::string dump = report::write_comparison_dump(table);
  text::write_file(fs::path(o.out) / kDumpName, dump);
  for (const TaskKind task : kAllTasks) {
    text::write_file(fs::path(o.out) / report::task_table_filename(task),
                     report::render_task_table(table, task));
  }
  out << (o.format == "dump" ? dump : report::render_report(table));
  if (const std::size_t n = table.untestable_count(); n > 0) {
    err << n << " comparison cells are untestable (degenerate statistics)\n";
    return kExitDegenerate;
  }
  return kExitOk;
}

int cmd_report(const Options& o, std::ostream& out) {
  const stats::ComparisonTable table =
      report::parse_comparison_dump(text::read_file(o.in), o.in);
  const std::string rendered =
      o.format == "dump" ? report::write_comparison_dump(table) : report::render_report(table);
  if (o.out.empty()) {
    out << rendered;
  } else {
    text::write_file(o.out, rendered);
  }
  return table.untestable_count() > 0 ? kExitDegenerate : kExitOk;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Format: return kExitFormat;
    case ErrorKind::Validation:
    case ErrorKind::Boundary:
    case ErrorKind::TooShort:
    case ErrorKind::Cohort: return kExitValidation;
    case ErrorKind::Degenerate: return kExitDegenerate;
    case ErrorKind::Io: return kExitUsage;
  }
  return kExitUsage;
}

FeatureParams parse_feature_params(std::string_view bytes, std::string_view origin) {
  const auto kv = text::KeyValueFile::parse(bytes, origin);
  kv.reject_unknown({"peak_prominence_frac", "sparc_amp_threshold", "sparc_max_cutoff_hz",
                     "sparc_pad_level", "min_segment_s"});
  FeatureParams p;
  if (kv.has("peak_prominence_frac")) p.peak_prominence_frac = kv.get_real("peak_prominence_frac");
  if (kv.has("sparc_amp_threshold")) p.sparc_amp_threshold = kv.get_real("sparc_amp_threshold");
  if (kv.has("sparc_max_cutoff_hz")) p.sparc_max_cutoff_hz = kv.get_real("sparc_max_cutoff_hz");
  if (kv.has("sparc_pad_level")) {
    const std::uint64_t level = kv.get_index("sparc_pad_level");
    if (level > 16) throw Error(ErrorKind::Validation, std::string(origin) + ": sparc_pad_level > 16");
    p.sparc_pad_level = static_cast<int>(level);
  }
  if (kv.has("min_segment_s")) p.min_segment_s = kv.get_real("min_segment_s");
  p.validate();
  return p;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Instrumented shoulder-task assessment from wrist/arm IMU recordings"};
  app.require_subcommand(1);
  Options o;

  const auto add_jobs = [&](CLI::App* sub) {
    sub->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  };
  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic cohort directory");
  simulate->add_option("--out", o.out, "Output cohort directory")->required();
  simulate->add_option("--profile", o.profile, "Cohort profile file (defaults built in)");
  simulate->add_option("--seed", o.seed, "Override the profile seed");
  add_jobs(simulate);

  auto* extract = app.add_subcommand("extract", "Compute the feature matrix for a cohort");
  extract->add_option("--cohort", o.cohort, "Cohort directory")->required();
  extract->add_option("--out", o.out, "Feature matrix CSV to write")->required();
  extract->add_option("--params", o.params, "Feature parameter overrides");
  add_jobs(extract);

  auto* compare = app.add_subcommand("compare", "Patient vs healthy comparison tables");
  compare->add_option("--in", o.in, "Feature matrix CSV")->required();
  compare->add_option("--out", o.out, "Output directory for tables and dump")->required();
  compare->add_option("--rule", o.rule, "Effect-size boundary")
      ->check(CLI::IsMember({"strict", "inclusive"}));
  compare->add_option("--ttest", o.ttest, "Independent t-test variant")
      ->check(CLI::IsMember({"welch", "student"}));
  compare->add_option("--format", o.format, "What to print on stdout")
      ->check(CLI::IsMember({"table", "dump"}));

  auto* report_cmd = app.add_subcommand("report", "Render tables from a comparison dump");
  report_cmd->add_option("--in", o.in, "Comparison dump")->required();
  report_cmd->add_option("--out", o.out, "Write here instead of stdout");
  report_cmd->add_option("--format", o.format, "table or dump")
      ->check(CLI::IsMember({"table", "dump"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(o, out);
    if (extract->parsed()) return cmd_extract(o, out, err);
    if (compare->parsed()) return cmd_compare(o, out, err);
    return cmd_report(o, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace shoulder::cli
