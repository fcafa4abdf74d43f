#ifndef MIR_ML_H
#define MIR_ML_H

#include <cstdint>
#include <vector>

#include "mir/errors.h"
#include "mir/matrix.h"

namespace mir {

/// Observation matrix (dims x count) with optional integer class labels.
struct Dataset {
  Matrix observations;
  std::vector<int> labels;

  int dims() const { return observations.rows; }
  int count() const { return observations.cols; }
};

/// Majority vote among the k nearest training points (Euclidean distance).
/// Distance ties prefer the lower training index; vote ties prefer the
/// smaller cumulative distance, then the lower class id.
int knn_classify(const Dataset& train, const std::vector<double>& query, int k);

struct KmeansResult {
  Matrix centroids;  // dims x k
  std::vector<int> assignments;
  std::vector<double> inertia_history;
};

/// Lloyd iterations from a seeded choice of k distinct observations.
/// Empty clusters are re-seeded to the observation farthest from its
/// centroid. Deterministic for a given (input, seed).
KmeansResult kmeans(const Dataset& data, int k, int max_iter = 100,
                    std::uint64_t seed = 0);

/// Diagonal-covariance Gaussian mixture.
struct GmmModel {
  std::vector<double> weights;
  Matrix means;      // dims x k
  Matrix variances;  // dims x k, floored at 1e-6
};

struct GmmFit {
  GmmModel model;
  std::vector<double> log_likelihood_history;
};

/// EM fit with log-domain responsibilities; means initialized via k-means
/// with the same seed, uniform weights, global per-dim variance.
GmmFit gmm_fit(const Dataset& data, int k, int max_iter = 100, double tol = 1e-6,
               std::uint64_t seed = 0);

/// log sum_j w_j N(x; mu_j, diag sigma2_j) via log-sum-exp.
double gmm_log_likelihood(const GmmModel& model, const std::vector<double>& x);

struct PcaResult {
  Matrix components;  // dims x dims, columns = principal axes
  std::vector<double> eigenvalues;
  std::vector<double> mean;
};

/// Eigendecomposition of the population covariance. Components are sorted
/// by descending eigenvalue; each column's largest-magnitude entry is made
/// positive.
PcaResult pca(const Dataset& data);
std::vector<double> pca_transform(const PcaResult& result, const std::vector<double>& x);

struct NmfResult {
  Matrix dictionary;   // rows x rank, >= 0
  Matrix activations;  // rank x cols, >= 0
  std::vector<double> divergence_history;
};

/// Multiplicative-update NMF minimizing the Euclidean divergence
/// ||V - WH||_F^2, factors initialized uniform on (0, 1] from the seed.
NmfResult nmf(const Matrix& v, int rank, int max_iter = 200, double tol = 1e-4,
              std::uint64_t seed = 0);

}  // namespace mir

#endif  // MIR_ML_H
