#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "shoulder/features.hpp"
#include "shoulder/model.hpp"

namespace shoulder {

struct FeatureRow {
  std::string subject_id;
  Group group = Group::Healthy;
  TaskKind task = TaskKind::WH;
  SegmentKind segment = SegmentKind::Complete;
  Placement placement = Placement::Wrist;
  FeatureVector values;

  friend bool operator==(const FeatureRow&, const FeatureRow&) = default;
};

using FeatureMatrix = std::vector<FeatureRow>;

inline constexpr std::string_view kFeatureMatrixHeader =
    "subject_id,group,task,segment,placement,nmcp_a,np_a,sparc,ldlj_a,rav,pi,duration_s";

/// Sorts rows by (subject_id, task, segment, placement).
void sort_rows(FeatureMatrix& matrix);

void write_feature_matrix(std::ostream& out, const FeatureMatrix& matrix);
std::string write_feature_matrix(const FeatureMatrix& matrix);
/// Throws Error(Format) with a line number on any malformed row.
FeatureMatrix parse_feature_matrix(std::string_view text);
FeatureMatrix load_feature_matrix(const std::string& path);

}  // namespace shoulder
