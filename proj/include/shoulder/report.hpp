#pragma once

#include <string>
#include <string_view>

#include "shoulder/stats.hpp"

namespace shoulder::report {

/// Three decimals, "<0.001" below 0.0005, "*" suffix when significant.
std::string format_p_value(double p, bool significant);

/// Machine-readable dump of every cell statistic. `#` preamble lines record
/// the test, rule, and group sizes; one CSV row per cell follows.
std::string write_comparison_dump(const stats::ComparisonTable& table);
/// Inverse of write_comparison_dump. Throws Error(Format) with a line number.
stats::ComparisonTable parse_comparison_dump(std::string_view bytes,
                                             std::string_view origin = "dump");

inline constexpr std::string_view kDumpHeader =
    "task,feature,placement,segment,n1,n2,mean1,mean2,testable,t,dof,p,d,d_ci_low,d_ci_high,"
    "significant,note";

/// One task's p-value table: rows are parameter x placement (Duration once,
/// placement N/A); columns Complete Task, Subtask 1..3; footnote last.
std::string render_task_table(const stats::ComparisonTable& table, TaskKind task);
/// All five task tables separated by blank lines.
std::string render_report(const stats::ComparisonTable& table);

/// File name used for a task table inside an output directory, e.g. "WH.txt".
std::string task_table_filename(TaskKind task);

}  // namespace shoulder::report
