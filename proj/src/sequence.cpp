#include "mir/sequence.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mir {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double safe_log(double p) { return p > 0.0 ? std::log(p) : kNegInf; }

}  // namespace

Matrix cost_matrix(const Matrix& a, const Matrix& b, CostMetric metric) {
  if (a.rows != b.rows) throw DimensionMismatch("column dimensions differ");

  Matrix cost(a.cols, b.cols);
  for (int i = 0; i < a.cols; ++i) {
    for (int j = 0; j < b.cols; ++j) {
      double dot = 0.0;
      double norm_a = 0.0;
      double norm_b = 0.0;
      double dist_sq = 0.0;
      for (int d = 0; d < a.rows; ++d) {
        const double x = a(d, i);
        const double y = b(d, j);
        dot += x * y;
        norm_a += x * x;
        norm_b += y * y;
        dist_sq += (x - y) * (x - y);
      }
      if (metric == CostMetric::kEuclidean) {
        cost(i, j) = std::sqrt(dist_sq);
      } else {
        if (norm_a <= 0.0 || norm_b <= 0.0) {
          cost(i, j) = (norm_a <= 0.0 && norm_b <= 0.0) ? 0.0 : 1.0;
        } else {
          cost(i, j) = 1.0 - dot / (std::sqrt(norm_a) * std::sqrt(norm_b));
        }
      }
    }
  }
  return cost;
}

AlignmentPath dtw(const Matrix& cost) {
  const int rows = cost.rows;
  const int cols = cost.cols;
  if (rows < 1 || cols < 1) throw EmptyMatrix("cost matrix must be non-empty");
  for (double c : cost.data) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw NegativeCost("costs must be finite and >= 0");
  }

  Matrix acc(rows, cols);
  acc(0, 0) = cost(0, 0);
  for (int i = 1; i < rows; ++i) acc(i, 0) = acc(i - 1, 0) + cost(i, 0);
  for (int j = 1; j < cols; ++j) acc(0, j) = acc(0, j - 1) + cost(0, j);
  for (int i = 1; i < rows; ++i) {
    for (int j = 1; j < cols; ++j) {
      acc(i, j) =
          cost(i, j) + std::min({acc(i - 1, j - 1), acc(i - 1, j), acc(i, j - 1)});
    }
  }

  AlignmentPath path;
  path.total_cost = acc(rows - 1, cols - 1);

  // Backtrack with tie preference diagonal > vertical > horizontal.
  int i = rows - 1;
  int j = cols - 1;
  path.pairs.emplace_back(i, j);
  while (i > 0 || j > 0) {
    if (i == 0) {
      --j;
    } else if (j == 0) {
      --i;
    } else {
      const double diag = acc(i - 1, j - 1);
      const double vert = acc(i - 1, j);
      const double horiz = acc(i, j - 1);
      const double best = std::min({diag, vert, horiz});
      if (diag == best) {
        --i;
        --j;
      } else if (vert == best) {
        --i;
      } else {
        --j;
      }
    }
    path.pairs.emplace_back(i, j);
  }
  std::reverse(path.pairs.begin(), path.pairs.end());
  return path;
}

StatePath viterbi(const Hmm& hmm) {
  const int num_states = hmm.num_states();
  const int num_steps = hmm.num_steps();
  if (num_states < 1 || num_steps < 1) throw EmptyInput("empty HMM");

  Matrix delta(num_states, num_steps, kNegInf);
  Matrix backpointer(num_states, num_steps, 0.0);

  for (int s = 0; s < num_states; ++s) {
    delta(s, 0) = safe_log(hmm.initial[s]) + safe_log(hmm.emissions(s, 0));
  }

  for (int t = 1; t < num_steps; ++t) {
    for (int s = 0; s < num_states; ++s) {
      int best_prev = 0;
      double best = kNegInf;
      for (int prev = 0; prev < num_states; ++prev) {
        const double score = delta(prev, t - 1) + safe_log(hmm.transitions(prev, s));
        if (score > best) {
          best = score;
          best_prev = prev;
        }
      }
      delta(s, t) = best + safe_log(hmm.emissions(s, t));
      backpointer(s, t) = best_prev;
    }
  }

  int best_state = 0;
  double best = kNegInf;
  for (int s = 0; s < num_states; ++s) {
    if (delta(s, num_steps - 1) > best) {
      best = delta(s, num_steps - 1);
      best_state = s;
    }
  }
  if (best == kNegInf) throw AllPathsImpossible("all state sequences have zero probability");

  StatePath path;
  path.log_prob = best;
  path.states.resize(static_cast<std::size_t>(num_steps));
  path.states[num_steps - 1] = best_state;
  for (int t = num_steps - 1; t > 0; --t) {
    best_state = static_cast<int>(backpointer(best_state, t));
    path.states[t - 1] = best_state;
  }
  return path;
}

}  // namespace mir
