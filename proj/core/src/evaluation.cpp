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

#include "groundseg/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

#include "groundseg/error.hpp"

namespace groundseg {

std::vector<std::uint8_t> range_mask(const PointCloud& cloud, std::optional<double> max_range) {
  std::vector<std::uint8_t> mask(cloud.size(), 1);
  if (!max_range) return mask;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    mask[i] = horizontal_range(cloud.points[i]) <= *max_range ? 1 : 0;
  }
  return mask;
}

void ScoreCounts::add(std::span<const double> scores, std::span<const std::uint8_t> truth,
                      std::span<const std::uint8_t> mask) {
  if (scores.size() != truth.size() || (!mask.empty() && mask.size() != scores.size())) {
    throw Error(ErrorKind::kShape, "scores, truth and mask lengths differ");
  }
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!mask.empty() && mask[i] == 0) continue;
    auto& tally = by_score_[scores[i]];
    if (truth[i] != 0) {
      ++tally.positives;
      ++positives_;
    } else {
      ++tally.negatives;
      ++negatives_;
    }
  }
}

void ScoreCounts::merge(const ScoreCounts& other) {
  for (const auto& [score, tally] : other.by_score_) {
    auto& mine = by_score_[score];
    mine.positives += tally.positives;
    mine.negatives += tally.negatives;
  }
  positives_ += other.positives_;
  negatives_ += other.negatives_;
}

PRCurve pr_curve(const ScoreCounts& counts) {
  if (counts.positives() == 0) throw Error(ErrorKind::kDegenerateTruth, "no positive point under the mask");
  std::vector<double> thresholds;
  thresholds.reserve(counts.by_score().size() + 2);
  thresholds.push_back(0.0);
  for (const auto& entry : counts.by_score()) thresholds.push_back(entry.first);
  thresholds.push_back(1.0);
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  PRCurve curve;
  curve.positive_count = counts.positives();
  curve.negative_count = counts.negatives();
  curve.points.resize(thresholds.size());

  // Walk thresholds from high to low, accumulating tallies with score >= t.
  auto it = counts.by_score().rbegin();
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  for (std::size_t k = thresholds.size(); k-- > 0;) {
    const double t = thresholds[k];
    while (it != counts.by_score().rend() && it->first >= t) {
      tp += it->second.positives;
      fp += it->second.negatives;
      ++it;
    }
    PRPoint& p = curve.points[k];
    p.threshold = t;
    p.predicted = tp + fp;
    p.precision = p.predicted == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(p.predicted);
    p.recall = static_cast<double>(tp) / static_cast<double>(curve.positive_count);
  }
  return curve;
}

PRCurve pr_curve(std::span<const double> scores, std::span<const std::uint8_t> truth,
                 std::span<const std::uint8_t> mask) {
  ScoreCounts counts;
  counts.add(scores, truth, mask);
  return pr_curve(counts);
}

double average_precision(const PRCurve& curve) {
  std::vector<PRPoint> points = curve.points;
  std::sort(points.begin(), points.end(), [](const PRPoint& a, const PRPoint& b) {
    if (a.recall != b.recall) return a.recall < b.recall;
    return a.threshold > b.threshold;
  });
  double area = 0.0;
  double previous_recall = 0.0;
  for (const auto& p : points) {
    area += (p.recall - previous_recall) * p.precision;
    previous_recall = p.recall;
  }
  return area;
}

double best_f_score(const PRCurve& curve) {
  double best = 0.0;
  for (const auto& p : curve.points) {
    const double denom = p.precision + p.recall;
    if (denom > 0.0) best = std::max(best, 2.0 * p.precision * p.recall / denom);
  }
  return best;
}

OperatingPoints fixed_operating_points(const PRCurve& curve, double target_recall,
                                       double target_precision) {
  if (!(target_recall > 0.0 && target_recall <= 1.0) ||
      !(target_precision > 0.0 && target_precision <= 1.0)) {
    throw Error(ErrorKind::kConfig, "operating point targets must lie in (0, 1]");
  }
  OperatingPoints out;
  for (const auto& p : curve.points) {
    if (p.predicted == 0) continue;
    if (p.recall >= target_recall) out.precision_at_recall = p.precision;  // last wins: highest threshold
    if (p.precision >= target_precision) {
      out.recall_at_precision = std::max(out.recall_at_precision.value_or(0.0), p.recall);
    }
  }
  return out;
}

EvaluationReport evaluate(const PRCurve& curve, double target_recall, double target_precision) {
  EvaluationReport r;
  r.average_precision = average_precision(curve);
  r.best_f_score = best_f_score(curve);
  r.target_recall = target_recall;
  r.target_precision = target_precision;
  r.operating_points = fixed_operating_points(curve, target_recall, target_precision);
  r.positives = curve.positive_count;
  r.negatives = curve.negative_count;
  return r;
}

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string fixed6(const std::optional<double>& v) { return v ? fixed6(*v) : "none"; }

}  // namespace

void write_report(std::ostream& out, const EvaluationReport& r) {
  out << "average_precision\t" << fixed6(r.average_precision) << '\n'
      << "best_f_score\t" << fixed6(r.best_f_score) << '\n'
      << "precision_at_recall_" << fixed6(r.target_recall) << '\t'
      << fixed6(r.operating_points.precision_at_recall) << '\n'
      << "recall_at_precision_" << fixed6(r.target_precision) << '\t'
      << fixed6(r.operating_points.recall_at_precision) << '\n'
      << "positives\t" << fixed6(static_cast<double>(r.positives)) << '\n'
      << "negatives\t" << fixed6(static_cast<double>(r.negatives)) << '\n';
}

void write_curve_csv(std::ostream& out, const PRCurve& curve) {
  out << "threshold,precision,recall\n";
  char buf[96];
  for (const auto& p : curve.points) {
    std::snprintf(buf, sizeof(buf), "%.9g,%.9f,%.9f\n", p.threshold, p.precision, p.recall);
    out << buf;
  }
}

}  // namespace groundseg
