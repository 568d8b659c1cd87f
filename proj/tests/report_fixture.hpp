#pragma once

#include "shoulder/stats.hpp"

namespace fixture {

using namespace shoulder;

/// A hand-built WH comparison table exercising each rendering convention:
/// sub-floor p values, rounding across the star threshold, untestable cells.
inline stats::ComparisonTable wh_table() {
  stats::ComparisonTable t;
  t.n1 = 20;
  t.n2 = 20;
  const double ps[] = {0.0004, 0.0168, 0.0005, 0.049, 0.0506, 0.2, 0.99949, 1.0};
  std::size_t k = 0;
  for (const Feature f : kAllFeatures) {
    std::vector<std::optional<Placement>> placements;
    if (is_placement_independent(f)) {
      placements.push_back(std::nullopt);
    } else {
      for (const Placement p : kAllPlacements) placements.emplace_back(p);
    }
    for (const auto& pl : placements) {
      for (const SegmentKind s : kAllSegments) {
        stats::ComparisonCell c;
        c.task = TaskKind::WH;
        c.feature = f;
        c.placement = pl;
        c.segment = s;
        c.n1 = 20;
        c.n2 = 20;
        c.mean1 = 1.5 + static_cast<double>(k);
        c.mean2 = 1.25;
        c.p_value = ps[k % 8];
        c.d = (k % 3 == 0) ? 0.5 : -1.75;
        c.t_stat = c.d * 3.0;
        c.dof = 37.5;
        c.d_ci_low = c.d - 0.625;
        c.d_ci_high = c.d + 0.625;
        c.testable = k % 11 != 10;
        if (!c.testable) {
          c.note = "zero variance in both groups, cannot test";
          c.p_value = 1.0;
          c.t_stat = c.dof = c.d = c.d_ci_low = c.d_ci_high = 0.0;
        }
        c.significant = c.testable && stats::significance_flag(c.p_value, c.d, t.rule);
        t.cells.push_back(c);
        ++k;
      }
    }
  }
  return t;
}

}  // namespace fixture
