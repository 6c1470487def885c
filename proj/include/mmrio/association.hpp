// Point association across consecutive radar scans.
//
// Pairs are scored with D_ij = 1 / (1 + squared distance) when a gating
// policy passes and 0 otherwise, assigned one-to-one by minimizing 1 - D
// with the Munkres solver, then filtered by the score threshold d_tau.
// A pure-greedy collection mode is available for ablations.
#pragma once

#include <vector>

#include <Eigen/Core>

#include "mmrio/assignment.hpp"
#include "mmrio/core.hpp"
#include "mmrio/radar.hpp"

namespace mmrio {

struct PolicyParams {
  double max_value = 0.0225;      // m^2, squared-distance gate
  double max_lateral = 4e-4;      // m^2, squared lateral displacement gate
  double min_intensity = 0.0;     // linear power; gate on the current point
  double score_threshold = 0.9;   // d_tau in (0, 1]
  // Sign of the longitudinal coordinate change of a static landmark as the
  // sensor advances. -1: landmarks drift toward the sensor (x decreases).
  double forward_axis_sign = -1.0;

  void validate() const {
    if (max_value <= 0.0 || max_lateral <= 0.0 || min_intensity < 0.0 ||
        score_threshold <= 0.0 || score_threshold > 1.0 ||
        (forward_axis_sign != 1.0 && forward_axis_sign != -1.0)) {
      throw ConfigError("PolicyParams: out-of-range parameter");
    }
  }
};

/// Landmark-descriptor gate for a candidate pair (current, previous).
/// Rejects on squared distance, longitudinal displacement against the
/// expected motion direction, squared lateral displacement, or a current
/// intensity below the floor.
inline bool policy(const RadarPoint& current, const RadarPoint& previous,
                   const PolicyParams& params) {
  const Vec3 d = current.position - previous.position;
  if (d.squaredNorm() > params.max_value) return false;
  if (d.x() * params.forward_axis_sign < 0.0) return false;
  if (d.y() * d.y() > params.max_lateral) return false;
  if (current.intensity < params.min_intensity) return false;
  return true;
}

/// Rows index the current scan, columns the previous scan. Entries lie in
/// [0, 1] and are exactly 0 where the policy rejects.
using SimilarityMatrix = Eigen::MatrixXd;

inline SimilarityMatrix similarity_matrix(const RadarScan& scan_t,
                                          const RadarScan& scan_prev,
                                          const PolicyParams& params) {
  params.validate();
  SimilarityMatrix d(scan_t.points.size(), scan_prev.points.size());
  for (int i = 0; i < d.rows(); ++i) {
    for (int j = 0; j < d.cols(); ++j) {
      const RadarPoint& cur = scan_t.points[static_cast<size_t>(i)];
      const RadarPoint& prev = scan_prev.points[static_cast<size_t>(j)];
      if (policy(cur, prev, params)) {
        d(i, j) = 1.0 / (1.0 + (cur.position - prev.position).squaredNorm());
      } else {
        d(i, j) = 0.0;
      }
    }
  }
  return d;
}

struct Match {
  int current_index = -1;   // into scan_t.points
  int previous_index = -1;  // into scan_prev.points
  double score = 0.0;       // D_ij, > d_tau
};

using MatchSet = std::vector<Match>;

enum class AssignMode {
  optimal,  // Munkres on cost = 1 - D, then threshold filtering
  greedy,   // iteratively take the best remaining pair above d_tau
};

/// One-to-one match set between consecutive scans. An empty result is a
/// valid outcome and signals the caller to fall back on prediction only.
inline MatchSet associate(const RadarScan& scan_t, const RadarScan& scan_prev,
                          const PolicyParams& params,
                          AssignMode mode = AssignMode::optimal) {
  const SimilarityMatrix d = similarity_matrix(scan_t, scan_prev, params);
  MatchSet matches;
  if (d.rows() == 0 || d.cols() == 0) return matches;

  if (mode == AssignMode::optimal) {
    const Assignment a = munkres((1.0 - d.array()).matrix());
    for (const auto& [i, j] : a.pairs) {
      const double score = d(i, j);
      if (score > params.score_threshold) matches.push_back({i, j, score});
    }
    return matches;
  }

  // Greedy: repeatedly collect the highest remaining score above d_tau.
  SimilarityMatrix work = d;
  while (true) {
    Eigen::Index bi = -1, bj = -1;
    double best = params.score_threshold;
    for (Eigen::Index i = 0; i < work.rows(); ++i) {
      for (Eigen::Index j = 0; j < work.cols(); ++j) {
        if (work(i, j) > best) {
          best = work(i, j);
          bi = i;
          bj = j;
        }
      }
    }
    if (bi < 0) break;
    matches.push_back({static_cast<int>(bi), static_cast<int>(bj), best});
    work.row(bi).setZero();
    work.col(bj).setZero();
  }
  std::sort(matches.begin(), matches.end(),
            [](const Match& a, const Match& b) {
              return a.current_index < b.current_index;
            });
  return matches;
}

}  // namespace mmrio
