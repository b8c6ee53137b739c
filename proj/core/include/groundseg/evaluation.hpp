// Copyright 2026 The groundseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GROUNDSEG_EVALUATION_HPP_
#define GROUNDSEG_EVALUATION_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "groundseg/cloud_io.hpp"

namespace groundseg {

/// Per-point inclusion for range-limited evaluation; nullopt means unlimited.
std::vector<std::uint8_t> range_mask(const PointCloud& cloud, std::optional<double> max_range);

/// Positive/negative tallies per distinct score. Frames evaluated separately
/// merge exactly by summing tallies.
class ScoreCounts {
 public:
  void add(std::span<const double> scores, std::span<const std::uint8_t> truth,
           std::span<const std::uint8_t> mask);
  void merge(const ScoreCounts& other);

  std::uint64_t positives() const noexcept { return positives_; }
  std::uint64_t negatives() const noexcept { return negatives_; }

  struct Tally {
    std::uint64_t positives = 0;
    std::uint64_t negatives = 0;
  };
  const std::map<double, Tally>& by_score() const noexcept { return by_score_; }

 private:
  std::map<double, Tally> by_score_;
  std::uint64_t positives_ = 0;
  std::uint64_t negatives_ = 0;
};

struct PRPoint {
  double threshold = 0.0;
  double precision = 1.0;
  double recall = 0.0;
  std::uint64_t predicted = 0;  // points with score >= threshold
};

struct PRCurve {
  std::vector<PRPoint> points;  // ascending threshold
  std::uint64_t positive_count = 0;
  std::uint64_t negative_count = 0;
};

/// Sweeps every distinct score plus 0 and 1; a point is predicted ground when
/// score >= threshold. Precision is 1 when nothing is predicted. Throws
/// kDegenerateTruth without any masked-in positive.
PRCurve pr_curve(const ScoreCounts& counts);
PRCurve pr_curve(std::span<const double> scores, std::span<const std::uint8_t> truth,
                 std::span<const std::uint8_t> mask);

/// Step-wise area under the curve: points ordered by recall, each recall
/// increment weighted by the precision at its upper end.
double average_precision(const PRCurve& curve);

double best_f_score(const PRCurve& curve);

struct OperatingPoints {
  std::optional<double> precision_at_recall;
  std::optional<double> recall_at_precision;
};

/// Precision at the highest threshold reaching `target_recall`, and the
/// highest recall among thresholds reaching `target_precision`. Thresholds
/// that predict nothing are ignored.
OperatingPoints fixed_operating_points(const PRCurve& curve, double target_recall,
                                       double target_precision);

struct EvaluationReport {
  double average_precision = 0.0;
  double best_f_score = 0.0;
  double target_recall = 0.992;
  double target_precision = 0.924;
  OperatingPoints operating_points;
  std::uint64_t positives = 0;
  std::uint64_t negatives = 0;
};

EvaluationReport evaluate(const PRCurve& curve, double target_recall = 0.992,
                          double target_precision = 0.924);

/// `name<TAB>value` lines with six decimals.
void write_report(std::ostream& out, const EvaluationReport& report);
/// `threshold,precision,recall` rows with a header line.
void write_curve_csv(std::ostream& out, const PRCurve& curve);

}  // namespace groundseg

#endif  // GROUNDSEG_EVALUATION_HPP_
