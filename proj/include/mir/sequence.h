#ifndef MIR_SEQUENCE_H
#define MIR_SEQUENCE_H

#include <utility>
#include <vector>

#include "mir/errors.h"
#include "mir/matrix.h"

namespace mir {

enum class CostMetric { kEuclidean, kCosineDistance };

/// Monotonic alignment path over a cost matrix. Starts at (0,0), ends at
/// (I-1, J-1), steps taken from {(1,0), (0,1), (1,1)}.
struct AlignmentPath {
  std::vector<std::pair<int, int>> pairs;
  double total_cost = 0.0;
};

/// Discrete HMM for decoding: S states, T observation steps.
/// emissions(s, t) holds the per-step state likelihood.
struct Hmm {
  std::vector<double> initial;
  Matrix transitions;  // S x S, row-stochastic
  Matrix emissions;    // S x T

  int num_states() const { return transitions.rows; }
  int num_steps() const { return emissions.cols; }
};

struct StatePath {
  std::vector<int> states;
  double log_prob = 0.0;
};

/// Pairwise distances between the columns of A (dims x I) and B (dims x J).
/// CosineDistance treats an all-zero column as distance 1 to anything
/// nonzero and 0 to another all-zero column.
Matrix cost_matrix(const Matrix& a, const Matrix& b, CostMetric metric);

/// Dynamic time warping over a non-negative cost matrix. Backtracking
/// breaks ties preferring diagonal, then vertical, then horizontal steps.
AlignmentPath dtw(const Matrix& cost);

/// Log-domain Viterbi decoding; zero probabilities map to -inf without
/// producing NaN. Ties are broken toward the lowest state index. Throws
/// AllPathsImpossible when no sequence has nonzero probability.
StatePath viterbi(const Hmm& hmm);

}  // namespace mir

#endif  // MIR_SEQUENCE_H
