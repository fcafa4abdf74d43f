// Independent brute-force oracles used by the unit and acceptance suites.
// These deliberately avoid the library's dynamic-programming paths: they
// enumerate candidate solutions exhaustively and apply the documented
// tie-breaking rules directly.

#ifndef MIR_TESTS_ORACLES_H
#define MIR_TESTS_ORACLES_H

#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include "mir/matrix.h"
#include "mir/sequence.h"

namespace oracles {

struct DtwResult {
  double total_cost = 0.0;
  std::vector<std::pair<int, int>> path;
};

namespace detail {

// Steps encoded for tie comparison: diagonal < vertical < horizontal,
// compared over the reversed step sequence (the order backtracking sees).
inline void enumerate_paths(const mir::Matrix& cost, int i, int j, double acc,
                            std::vector<int>& steps,
                            std::vector<std::pair<int, int>>& cells,
                            DtwResult& best, std::vector<int>& best_key,
                            bool& have_best) {
  cells.emplace_back(i, j);
  acc += cost(i, j);
  if (i == cost.rows - 1 && j == cost.cols - 1) {
    std::vector<int> key(steps.rbegin(), steps.rend());
    if (!have_best || acc < best.total_cost ||
        (acc == best.total_cost && key < best_key)) {
      best.total_cost = acc;
      best.path = cells;
      best_key = key;
      have_best = true;
    }
  } else {
    if (i + 1 < cost.rows && j + 1 < cost.cols) {
      steps.push_back(0);
      enumerate_paths(cost, i + 1, j + 1, acc, steps, cells, best, best_key, have_best);
      steps.pop_back();
    }
    if (i + 1 < cost.rows) {
      steps.push_back(1);
      enumerate_paths(cost, i + 1, j, acc, steps, cells, best, best_key, have_best);
      steps.pop_back();
    }
    if (j + 1 < cost.cols) {
      steps.push_back(2);
      enumerate_paths(cost, i, j + 1, acc, steps, cells, best, best_key, have_best);
      steps.pop_back();
    }
  }
  cells.pop_back();
}

}  // namespace detail

/// Exhaustive minimum-cost monotone path. Exact for integer-valued costs.
inline DtwResult brute_force_dtw(const mir::Matrix& cost) {
  DtwResult best;
  std::vector<int> steps;
  std::vector<int> best_key;
  std::vector<std::pair<int, int>> cells;
  bool have_best = false;
  detail::enumerate_paths(cost, 0, 0, 0.0, steps, cells, best, best_key, have_best);
  return best;
}

struct ViterbiResult {
  double log_prob = -std::numeric_limits<double>::infinity();
  std::vector<int> states;
};

/// Exhaustive scan over all S^T state sequences. Ties prefer the sequence
/// whose reversed order is lexicographically smallest, matching backtracking
/// toward lower state indices.
inline ViterbiResult brute_force_viterbi(const mir::Hmm& hmm) {
  const int num_states = hmm.num_states();
  const int num_steps = hmm.num_steps();
  auto log_or_inf = [](double p) {
    return p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity();
  };

  ViterbiResult best;
  std::vector<int> seq(static_cast<std::size_t>(num_steps), 0);
  while (true) {
    double lp = log_or_inf(hmm.initial[seq[0]]) + log_or_inf(hmm.emissions(seq[0], 0));
    for (int t = 1; t < num_steps; ++t) {
      lp += log_or_inf(hmm.transitions(seq[t - 1], seq[t])) +
            log_or_inf(hmm.emissions(seq[t], t));
    }
    if (lp > best.log_prob) {
      best.log_prob = lp;
      best.states = seq;
    } else if (lp == best.log_prob && !best.states.empty() &&
               std::lexicographical_compare(seq.rbegin(), seq.rend(),
                                            best.states.rbegin(), best.states.rend())) {
      best.states = seq;
    }

    int t = num_steps - 1;
    while (t >= 0 && seq[t] == num_states - 1) seq[t--] = 0;
    if (t < 0) break;
    ++seq[t];
  }
  return best;
}

/// Straight-line KNN evaluation: full distance table, explicit vote rules.
inline int brute_force_knn(const mir::Matrix& observations,
                           const std::vector<int>& labels,
                           const std::vector<double>& query, int k) {
  const int count = observations.cols;
  std::vector<bool> used(static_cast<std::size_t>(count), false);
  std::vector<double> distance(static_cast<std::size_t>(count), 0.0);
  for (int i = 0; i < count; ++i) {
    double d = 0.0;
    for (int r = 0; r < observations.rows; ++r) {
      const double diff = observations(r, i) - query[r];
      d += diff * diff;
    }
    distance[i] = std::sqrt(d);
  }

  // Pick the k nearest one at a time, lower index first on distance ties.
  std::map<int, std::pair<int, double>> votes;
  for (int pick = 0; pick < k; ++pick) {
    int chosen = -1;
    for (int i = 0; i < count; ++i) {
      if (used[i]) continue;
      if (chosen < 0 || distance[i] < distance[chosen]) chosen = i;
    }
    used[chosen] = true;
    auto& [n, cum] = votes[labels[chosen]];
    ++n;
    cum += distance[chosen];
  }

  int best_class = -1;
  int best_votes = -1;
  double best_cum = 0.0;
  for (const auto& [cls, v] : votes) {
    if (v.first > best_votes ||
        (v.first == best_votes && v.second < best_cum)) {
      best_class = cls;
      best_votes = v.first;
      best_cum = v.second;
    }
  }
  return best_class;
}

}  // namespace oracles

#endif  // MIR_TESTS_ORACLES_H
