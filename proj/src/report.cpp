#include "shoulder/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "shoulder/error.hpp"
#include "shoulder/text.hpp"

namespace shoulder::report {

namespace {

constexpr std::string_view kNotAvailable = "NA";

std::string placement_title(Placement p) { return p == Placement::Wrist ? "Wrist" : "Arm"; }

std::string real_or_na(bool present, double v) {
  return present ? text::format_real(v) : std::string(kNotAvailable);
}

std::string sanitize_note(std::string note) {
  std::replace(note.begin(), note.end(), ',', ';');
  std::replace(note.begin(), note.end(), '\n', ' ');
  return note;
}

}  // namespace

std::string format_p_value(double p, bool significant) {
  std::string out;
  if (p < 0.0005) {
    out = "<0.001";
  } else {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", p);
    out = buf;
  }
  if (significant) out += '*';
  return out;
}

std::string task_table_filename(TaskKind task) { return std::string(to_string(task)) + ".txt"; }

std::string write_comparison_dump(const stats::ComparisonTable& table) {
  using text::format_real;
  std::ostringstream out;
  out << "# test = " << (table.test == stats::TTestKind::Welch ? "welch" : "student") << '\n'
      << "# alpha = " << format_real(table.rule.alpha) << '\n'
      << "# min_effect = " << format_real(table.rule.min_effect) << '\n'
      << "# inclusive_effect = " << (table.rule.inclusive_effect ? 1 : 0) << '\n'
      << "# n_patient = " << table.n1 << '\n'
      << "# n_healthy = " << table.n2 << '\n'
      << kDumpHeader << '\n';
  for (const auto& c : table.cells) {
    out << to_string(c.task) << ',' << to_string(c.feature) << ','
        << (c.placement ? to_string(*c.placement) : kNotAvailable) << ',' << to_string(c.segment)
        << ',' << c.n1 << ',' << c.n2 << ',' << format_real(c.mean1) << ','
        << format_real(c.mean2) << ',' << (c.testable ? 1 : 0) << ','
        << real_or_na(c.testable, c.t_stat) << ',' << real_or_na(c.testable, c.dof) << ','
        << real_or_na(c.testable, c.p_value) << ',' << real_or_na(c.testable, c.d) << ','
        << real_or_na(c.testable, c.d_ci_low) << ',' << real_or_na(c.testable, c.d_ci_high)
        << ',' << (c.significant ? 1 : 0) << ',' << sanitize_note(c.note) << '\n';
  }
  return out.str();
}

stats::ComparisonTable parse_comparison_dump(std::string_view bytes, std::string_view origin) {
  const auto lines = text::split_lines(bytes);
  stats::ComparisonTable table;
  std::size_t i = 0;
  std::string preamble;
  for (; i < lines.size() && !lines[i].empty() && lines[i].front() == '#'; ++i) {
    preamble += std::string(lines[i].substr(1)) + '\n';
  }
  const auto kv = text::KeyValueFile::parse(preamble, origin);
  kv.reject_unknown({"test", "alpha", "min_effect", "inclusive_effect", "n_patient", "n_healthy"});
  const std::string& test = kv.get("test");
  if (test != "welch" && test != "student") {
    throw Error(ErrorKind::Format, std::string(origin) + ": unknown test '" + test + "'");
  }
  table.test = test == "welch" ? stats::TTestKind::Welch : stats::TTestKind::Student;
  table.rule.alpha = kv.get_real("alpha");
  table.rule.min_effect = kv.get_real("min_effect");
  table.rule.inclusive_effect = kv.get_index("inclusive_effect") != 0;
  table.n1 = kv.get_index("n_patient");
  table.n2 = kv.get_index("n_healthy");

  if (i >= lines.size() || lines[i] != kDumpHeader) {
    throw Error(ErrorKind::Format, std::string(origin) + ":" + std::to_string(i + 1) +
                                       ": expected dump header");
  }
  for (++i; i < lines.size(); ++i) {
    const std::string where = std::string(origin) + ":" + std::to_string(i + 1);
    const auto f = text::split_fields(lines[i]);
    if (f.size() != 17) {
      throw Error(ErrorKind::Format, where + ": expected 17 fields, got " + std::to_string(f.size()));
    }
    const auto bad = [&](std::size_t k) {
      throw Error(ErrorKind::Format, where + ": bad field " + std::to_string(k + 1) + " '" +
                                         std::string(f[k]) + "'");
    };
    stats::ComparisonCell c;
    const auto task = parse_task(f[0]);
    const auto feature = parse_feature(f[1]);
    const auto segment = parse_segment(f[3]);
    if (!task) bad(0);
    if (!feature) bad(1);
    if (!segment) bad(3);
    c.task = *task;
    c.feature = *feature;
    c.segment = *segment;
    if (f[2] != kNotAvailable) {
      const auto placement = parse_placement(f[2]);
      if (!placement) bad(2);
      c.placement = *placement;
    }
    if (c.placement.has_value() == is_placement_independent(c.feature)) bad(2);
    std::uint64_t n = 0;
    if (!text::parse_index(f[4], n)) bad(4);
    c.n1 = n;
    if (!text::parse_index(f[5], n)) bad(5);
    c.n2 = n;
    if (!text::parse_real(f[6], c.mean1)) bad(6);
    if (!text::parse_real(f[7], c.mean2)) bad(7);
    if (f[8] != "0" && f[8] != "1") bad(8);
    c.testable = f[8] == "1";
    double* stats_fields[] = {&c.t_stat, &c.dof, &c.p_value, &c.d, &c.d_ci_low, &c.d_ci_high};
    for (std::size_t k = 0; k < 6; ++k) {
      if (!c.testable) {
        if (f[9 + k] != kNotAvailable) bad(9 + k);
        continue;
      }
      if (!text::parse_real(f[9 + k], *stats_fields[k])) bad(9 + k);
    }
    if (!c.testable) c.p_value = 1.0;
    if (c.testable && !(c.p_value >= 0.0 && c.p_value <= 1.0)) bad(11);
    if (f[15] != "0" && f[15] != "1") bad(15);
    c.significant = f[15] == "1";
    c.note = std::string(f[16]);
    table.cells.push_back(std::move(c));
  }
  return table;
}

std::string render_task_table(const stats::ComparisonTable& table, TaskKind task) {
  const std::vector<std::string> header = {"Parameter", "Placement", "Complete Task",
                                           "Subtask 1", "Subtask 2", "Subtask 3"};
  std::vector<std::vector<std::string>> rows;
  for (const Feature feature : kAllFeatures) {
    std::vector<std::optional<Placement>> placements;
    if (is_placement_independent(feature)) {
      placements.push_back(std::nullopt);
    } else {
      for (const Placement p : kAllPlacements) placements.emplace_back(p);
    }
    for (std::size_t k = 0; k < placements.size(); ++k) {
      std::vector<std::string> row;
      row.emplace_back(k == 0 ? std::string(display_name(feature)) : std::string());
      row.emplace_back(placements[k] ? placement_title(*placements[k]) : std::string("N/A"));
      for (const SegmentKind segment : kAllSegments) {
        const auto& c = table.at(task, feature, placements[k], segment);
        row.push_back(c.testable ? format_p_value(c.p_value, c.significant)
                                 : std::string(kNotAvailable));
      }
      rows.push_back(std::move(row));
    }
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t j = 0; j < header.size(); ++j) {
    width[j] = header[j].size();
    for (const auto& r : rows) width[j] = std::max(width[j], r[j].size());
  }
  const auto emit = [&](std::ostringstream& out, const std::vector<std::string>& r) {
    std::string line;
    for (std::size_t j = 0; j < r.size(); ++j) {
      line += r[j];
      if (j + 1 < r.size()) line += std::string(width[j] - r[j].size() + 2, ' ');
    }
    out << line << '\n';
  };
  std::ostringstream out;
  out << "THE P VALUE FOR " << to_string(task) << " OF IMU FEATURES IN TWO PLACEMENTS\n"
      << task_title(task) << " (patients n=" << table.n1 << ", healthy n=" << table.n2 << ")\n";
  emit(out, header);
  for (const auto& r : rows) emit(out, r);
  out << table.rule.footnote() << '\n';
  return out.str();
}

std::string render_report(const stats::ComparisonTable& table) {
  std::string out;
  for (std::size_t t = 0; t < kAllTasks.size(); ++t) {
    if (t > 0) out += '\n';
    out += render_task_table(table, kAllTasks[t]);
  }
  return out;
}

}  // namespace shoulder::report
