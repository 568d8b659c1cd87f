#include "shoulder/feature_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <tuple>

#include "shoulder/error.hpp"
#include "shoulder/text.hpp"

namespace shoulder {

void sort_rows(FeatureMatrix& matrix) {
  std::stable_sort(matrix.begin(), matrix.end(), [](const FeatureRow& a, const FeatureRow& b) {
    return std::tie(a.subject_id, a.task, a.segment, a.placement) <
           std::tie(b.subject_id, b.task, b.segment, b.placement);
  });
}

void write_feature_matrix(std::ostream& out, const FeatureMatrix& matrix) {
  using text::format_real;
  out << kFeatureMatrixHeader << '\n';
  for (const FeatureRow& r : matrix) {
    out << r.subject_id << ',' << to_string(r.group) << ',' << to_string(r.task) << ','
        << to_string(r.segment) << ',' << to_string(r.placement) << ',' << r.values.nmcp_a << ','
        << r.values.np_a << ',' << format_real(r.values.sparc) << ','
        << format_real(r.values.ldlj_a) << ',' << format_real(r.values.rav) << ','
        << format_real(r.values.pi) << ',' << format_real(r.values.duration_s) << '\n';
  }
}

std::string write_feature_matrix(const FeatureMatrix& matrix) {
  std::ostringstream out;
  write_feature_matrix(out, matrix);
  return out.str();
}

FeatureMatrix parse_feature_matrix(std::string_view bytes) {
  const auto lines = text::split_lines(bytes);
  if (lines.empty()) throw Error(ErrorKind::Format, "feature matrix: empty input");
  if (lines[0] != kFeatureMatrixHeader) {
    throw Error(ErrorKind::Format, "feature matrix line 1: expected header '" +
                                       std::string(kFeatureMatrixHeader) + "'");
  }
  FeatureMatrix matrix;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string where = "feature matrix line " + std::to_string(i + 1);
    const auto f = text::split_fields(lines[i]);
    if (f.size() != 12) {
      throw Error(ErrorKind::Format, where + ": expected 12 fields, got " + std::to_string(f.size()));
    }
    FeatureRow row;
    const auto bad = [&](const char* column, std::size_t field) {
      throw Error(ErrorKind::Format,
                  where + ": bad " + column + " value '" + std::string(f[field]) + "'");
    };
    row.subject_id = std::string(f[0]);
    if (row.subject_id.empty()) bad("subject_id", 0);
    const auto group = parse_group(f[1]);
    const auto task = parse_task(f[2]);
    const auto segment = parse_segment(f[3]);
    const auto placement = parse_placement(f[4]);
    if (!group) bad("group", 1);
    if (!task) bad("task", 2);
    if (!segment) bad("segment", 3);
    if (!placement) bad("placement", 4);
    row.group = *group;
    row.task = *task;
    row.segment = *segment;
    row.placement = *placement;
    std::uint64_t count = 0;
    if (!text::parse_index(f[5], count)) bad("nmcp_a", 5);
    row.values.nmcp_a = count;
    if (!text::parse_index(f[6], count)) bad("np_a", 6);
    row.values.np_a = count;
    double* reals[] = {&row.values.sparc, &row.values.ldlj_a, &row.values.rav, &row.values.pi,
                       &row.values.duration_s};
    const char* names[] = {"sparc", "ldlj_a", "rav", "pi", "duration_s"};
    for (std::size_t k = 0; k < 5; ++k) {
      if (!text::parse_real(f[7 + k], *reals[k]) || !std::isfinite(*reals[k])) bad(names[k], 7 + k);
    }
    matrix.push_back(std::move(row));
  }
  return matrix;
}

FeatureMatrix load_feature_matrix(const std::string& path) {
  try {
    return parse_feature_matrix(text::read_file(path));
  } catch (const Error& e) {
    throw e.with_context(path);
  }
}

}  // namespace shoulder
