#include "shoulder/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "shoulder/error.hpp"

namespace shoulder::stats {

namespace {

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) return h;
  }
  return h;
}

struct Moments {
  std::size_t n = 0;
  double mean = 0.0;
  double var = 0.0;  // unbiased
};

// Sorted before summation so the result depends only on the multiset.
Moments moments(std::span<const double> xs) {
  std::vector<double> v(xs.begin(), xs.end());
  std::sort(v.begin(), v.end());
  Moments m;
  m.n = v.size();
  m.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(m.n);
  double ss = 0.0;
  for (const double x : v) ss += (x - m.mean) * (x - m.mean);
  m.var = ss / static_cast<double>(m.n - 1);
  return m;
}

void require_two_samples(std::span<const double> x, std::span<const double> y) {
  if (x.size() < 2 || y.size() < 2) {
    throw Error(ErrorKind::TooShort, "two-sample statistics need at least 2 observations per group");
  }
  for (const auto* s : {&x, &y}) {
    for (const double v : *s) {
      if (!std::isfinite(v)) throw Error(ErrorKind::Validation, "non-finite observation");
    }
  }
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("incomplete beta: a, b must be > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("incomplete beta: x outside [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double t_two_sided_p(double t, double dof) {
  if (!(dof > 0.0)) throw std::domain_error("t distribution: dof must be > 0");
  if (std::isinf(t)) return 0.0;
  const double p = regularized_incomplete_beta(dof / 2.0, 0.5, dof / (dof + t * t));
  return std::clamp(p, 0.0, 1.0);
}

TTestResult welch_t(std::span<const double> x, std::span<const double> y) {
  require_two_samples(x, y);
  const Moments a = moments(x);
  const Moments b = moments(y);
  const double va = a.var / static_cast<double>(a.n);
  const double vb = b.var / static_cast<double>(b.n);
  const double se2 = va + vb;
  if (!(se2 > 0.0)) {
    throw Error(ErrorKind::Degenerate, "welch t: both samples have zero variance");
  }
  TTestResult r;
  r.t = (a.mean - b.mean) / std::sqrt(se2);
  r.dof = se2 * se2 /
          (va * va / static_cast<double>(a.n - 1) + vb * vb / static_cast<double>(b.n - 1));
  r.p = t_two_sided_p(r.t, r.dof);
  return r;
}

TTestResult student_t(std::span<const double> x, std::span<const double> y) {
  require_two_samples(x, y);
  const Moments a = moments(x);
  const Moments b = moments(y);
  const double dof = static_cast<double>(a.n + b.n - 2);
  const double pooled =
      ((static_cast<double>(a.n) - 1.0) * a.var + (static_cast<double>(b.n) - 1.0) * b.var) / dof;
  if (!(pooled > 0.0)) {
    throw Error(ErrorKind::Degenerate, "student t: both samples have zero variance");
  }
  TTestResult r;
  r.t = (a.mean - b.mean) /
        std::sqrt(pooled * (1.0 / static_cast<double>(a.n) + 1.0 / static_cast<double>(b.n)));
  r.dof = dof;
  r.p = t_two_sided_p(r.t, r.dof);
  return r;
}

TTestResult independent_t(std::span<const double> x, std::span<const double> y,
                          TTestKind kind) {
  return kind == TTestKind::Welch ? welch_t(x, y) : student_t(x, y);
}

EffectSize cohens_d(std::span<const double> x, std::span<const double> y) {
  require_two_samples(x, y);
  const Moments a = moments(x);
  const Moments b = moments(y);
  const double n1 = static_cast<double>(a.n);
  const double n2 = static_cast<double>(b.n);
  const double pooled_var = ((n1 - 1.0) * a.var + (n2 - 1.0) * b.var) / (n1 + n2 - 2.0);
  if (!(pooled_var > 0.0)) {
    throw Error(ErrorKind::Degenerate, "cohen's d: pooled standard deviation is zero");
  }
  EffectSize e;
  e.d = (a.mean - b.mean) / std::sqrt(pooled_var);
  const double se = std::sqrt((n1 + n2) / (n1 * n2) + e.d * e.d / (2.0 * (n1 + n2 - 2.0)));
  e.ci_low = e.d - 1.96 * se;
  e.ci_high = e.d + 1.96 * se;
  return e;
}

std::string SignificanceRule::footnote() const {
  auto num = [](double v) {
    std::string s = std::to_string(v);
    s.erase(s.find_last_not_of('0') + 1);
    if (s.back() == '.') s.pop_back();
    return s;
  };
  return "*: p < " + num(alpha) + " and Cohen's d " + (inclusive_effect ? ">= " : "> ") +
         num(min_effect);
}

bool significance_flag(double p, double d, const SignificanceRule& rule) {
  if (!std::isfinite(p) || !std::isfinite(d)) return false;
  const double magnitude = std::fabs(d);
  const bool large = rule.inclusive_effect ? magnitude >= rule.min_effect
                                           : magnitude > rule.min_effect;
  return p < rule.alpha && large;
}

std::size_t ComparisonTable::untestable_count() const {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [](const ComparisonCell& c) { return !c.testable; }));
}

const ComparisonCell& ComparisonTable::at(TaskKind task, Feature feature,
                                          std::optional<Placement> placement,
                                          SegmentKind segment) const {
  for (const ComparisonCell& c : cells) {
    if (c.task == task && c.feature == feature && c.placement == placement &&
        c.segment == segment) {
      return c;
    }
  }
  throw std::out_of_range("comparison cell not found");
}

ComparisonTable compare_cohort(const FeatureMatrix& matrix, const SignificanceRule& rule,
                               TTestKind test) {
  std::map<std::string, Group> subjects;
  for (const FeatureRow& row : matrix) {
    const auto [it, inserted] = subjects.emplace(row.subject_id, row.group);
    if (!inserted && it->second != row.group) {
      throw Error(ErrorKind::Validation,
                  "subject " + row.subject_id + " appears in both groups");
    }
  }
  ComparisonTable table;
  table.rule = rule;
  table.test = test;
  for (const auto& [id, group] : subjects) {
    (group == Group::Patient ? table.n1 : table.n2) += 1;
  }
  for (const Group g : kAllGroups) {
    const std::size_t n = g == Group::Patient ? table.n1 : table.n2;
    if (n == 0) throw Error(ErrorKind::Cohort, "no " + std::string(to_string(g)) + " sessions");
    if (n < 2) {
      throw Error(ErrorKind::Cohort,
                  "only one " + std::string(to_string(g)) + " session; need at least 2");
    }
  }

  using Key = std::tuple<TaskKind, SegmentKind, Placement>;
  std::map<Key, std::vector<const FeatureRow*>> index;
  for (const FeatureRow& row : matrix) index[{row.task, row.segment, row.placement}].push_back(&row);

  for (const TaskKind task : kAllTasks) {
    for (const Feature feature : kAllFeatures) {
      std::vector<std::optional<Placement>> placements;
      if (is_placement_independent(feature)) {
        placements.push_back(std::nullopt);
      } else {
        for (const Placement p : kAllPlacements) placements.emplace_back(p);
      }
      for (const auto& placement : placements) {
        for (const SegmentKind segment : kAllSegments) {
          // One observation per subject; a placement-independent feature
          // takes the first placement that has a row.
          std::map<std::string, std::pair<Group, double>> obs;
          for (const Placement p : kAllPlacements) {
            if (placement && *placement != p) continue;
            const auto it = index.find({task, segment, p});
            if (it == index.end()) continue;
            for (const FeatureRow* row : it->second) {
              obs.emplace(row->subject_id, std::pair{row->group, row->values.value(feature)});
            }
          }
          std::vector<double> patients;
          std::vector<double> healthy;
          for (const auto& [id, gv] : obs) {
            (gv.first == Group::Patient ? patients : healthy).push_back(gv.second);
          }

          ComparisonCell cell;
          cell.task = task;
          cell.feature = feature;
          cell.placement = placement;
          cell.segment = segment;
          cell.n1 = patients.size();
          cell.n2 = healthy.size();
          const auto mean = [](const std::vector<double>& v) {
            return v.empty() ? 0.0
                             : std::accumulate(v.begin(), v.end(), 0.0) /
                                   static_cast<double>(v.size());
          };
          cell.mean1 = mean(patients);
          cell.mean2 = mean(healthy);
          try {
            const TTestResult t = independent_t(patients, healthy, test);
            const EffectSize e = cohens_d(patients, healthy);
            cell.testable = true;
            cell.t_stat = t.t;
            cell.dof = t.dof;
            cell.p_value = t.p;
            cell.d = e.d;
            cell.d_ci_low = e.ci_low;
            cell.d_ci_high = e.ci_high;
            cell.significant = significance_flag(t.p, e.d, rule);
          } catch (const Error& e) {
            cell.testable = false;
            cell.note = e.what();
          }
          table.cells.push_back(std::move(cell));
        }
      }
    }
  }
  return table;
}

}  // namespace shoulder::stats
