#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shoulder/feature_matrix.hpp"
#include "shoulder/features.hpp"
#include "shoulder/model.hpp"

namespace shoulder::stats {

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation
/// converged to ~1e-15 relative.
double regularized_incomplete_beta(double a, double b, double x);

/// Two-sided p-value of a Student t statistic with `dof` degrees of freedom.
double t_two_sided_p(double t, double dof);

struct TTestResult {
  double t = 0.0;
  double dof = 0.0;
  double p = 1.0;
};

enum class TTestKind { Welch, Student };

/// Unequal-variance t-test with Welch-Satterthwaite degrees of freedom.
/// Requires at least two observations per sample and nonzero variance in at
/// least one of them (Error Degenerate otherwise).
TTestResult welch_t(std::span<const double> x, std::span<const double> y);
/// Pooled-variance t-test, dof = n1 + n2 - 2.
TTestResult student_t(std::span<const double> x, std::span<const double> y);
TTestResult independent_t(std::span<const double> x, std::span<const double> y,
                          TTestKind kind);

struct EffectSize {
  double d = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

/// Cohen's d with pooled SD and a 95% normal-approximation interval,
/// SE = sqrt((n1+n2)/(n1 n2) + d^2 / (2 (n1+n2-2))).
EffectSize cohens_d(std::span<const double> x, std::span<const double> y);

struct SignificanceRule {
  double alpha = 0.05;             // p must be strictly below
  double min_effect = 0.8;         // |d| threshold
  bool inclusive_effect = false;   // |d| >= min_effect instead of >

  static SignificanceRule strict() { return {}; }
  static SignificanceRule inclusive() { return {0.05, 0.8, true}; }
  /// Footnote text for rendered tables.
  std::string footnote() const;
};

bool significance_flag(double p, double d, const SignificanceRule& rule = {});

/// One (task, feature, placement, segment) comparison, patient vs healthy.
/// Cells whose statistics are undefined (constant features, too few
/// observations) are kept with testable == false.
struct ComparisonCell {
  TaskKind task = TaskKind::WH;
  Feature feature = Feature::NmcpA;
  std::optional<Placement> placement;  // empty for placement-independent features
  SegmentKind segment = SegmentKind::Complete;
  std::size_t n1 = 0;  // patients
  std::size_t n2 = 0;  // healthy
  double mean1 = 0.0;
  double mean2 = 0.0;
  bool testable = false;
  double t_stat = 0.0;
  double dof = 0.0;
  double p_value = 1.0;
  double d = 0.0;
  double d_ci_low = 0.0;
  double d_ci_high = 0.0;
  bool significant = false;
  std::string note;  // reason when untestable
};

struct ComparisonTable {
  std::size_t n1 = 0;  // patient sessions
  std::size_t n2 = 0;  // healthy sessions
  SignificanceRule rule;
  TTestKind test = TTestKind::Welch;
  /// Ordered by (task, feature, placement, segment).
  std::vector<ComparisonCell> cells;

  std::size_t untestable_count() const;
  /// Throws std::out_of_range when absent.
  const ComparisonCell& at(TaskKind task, Feature feature, std::optional<Placement> placement,
                           SegmentKind segment) const;
};

/// Cells per task: 6 placement-dependent features x 2 placements + duration,
/// each over 4 segment kinds.
inline constexpr std::size_t kCellsPerTask = (6 * 2 + 1) * 4;

/// Full comparison grid over a feature matrix. Errors (Cohort) when either
/// group is missing or has fewer than two sessions.
ComparisonTable compare_cohort(const FeatureMatrix& matrix, const SignificanceRule& rule = {},
                               TTestKind test = TTestKind::Welch);

}  // namespace shoulder::stats
