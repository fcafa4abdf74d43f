#include "mir/ml.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "mir/rng.h"

namespace mir {

namespace {

constexpr double kVarianceFloor = 1e-6;
constexpr double kNmfEpsilon = 1e-12;

double sq_distance(const Matrix& a, int col_a, const Matrix& b, int col_b) {
  double d = 0.0;
  for (int r = 0; r < a.rows; ++r) {
    const double diff = a(r, col_a) - b(r, col_b);
    d += diff * diff;
  }
  return d;
}

double log_sum_exp(const std::vector<double>& values) {
  const double peak = *std::max_element(values.begin(), values.end());
  if (!std::isfinite(peak)) return peak;
  double acc = 0.0;
  for (double v : values) acc += std::exp(v - peak);
  return peak + std::log(acc);
}

/// Jacobi eigendecomposition of a symmetric matrix. Returns eigenvalues in
/// `values` and eigenvectors as columns of `vectors`.
void jacobi_eigen(const Matrix& sym, std::vector<double>& values, Matrix& vectors) {
  const int n = sym.rows;
  Matrix a = sym;
  vectors = Matrix(n, n);
  for (int i = 0; i < n; ++i) vectors(i, i) = 1.0;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    if (off < 1e-24) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int i = 0; i < n; ++i) {
          const double aip = a(i, p);
          const double aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(i, q) = s * aip + c * aiq;
        }
        for (int i = 0; i < n; ++i) {
          const double api = a(p, i);
          const double aqi = a(q, i);
          a(p, i) = c * api - s * aqi;
          a(q, i) = s * api + c * aqi;
        }
        for (int i = 0; i < n; ++i) {
          const double vip = vectors(i, p);
          const double viq = vectors(i, q);
          vectors(i, p) = c * vip - s * viq;
          vectors(i, q) = s * vip + c * viq;
        }
      }
    }
  }

  values.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) values[i] = a(i, i);
}

}  // namespace

int knn_classify(const Dataset& train, const std::vector<double>& query, int k) {
  const int count = train.count();
  if (count == 0) throw EmptyTrainingSet("no training observations");
  if (static_cast<int>(query.size()) != train.dims()) {
    throw DimensionMismatch("query dimension differs from training data");
  }
  if (k < 1 || k > count) throw Error("k must be in [1, count]");

  std::vector<std::pair<double, int>> by_distance(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    double d = 0.0;
    for (int r = 0; r < train.dims(); ++r) {
      const double diff = train.observations(r, i) - query[r];
      d += diff * diff;
    }
    by_distance[i] = {std::sqrt(d), i};
  }
  std::sort(by_distance.begin(), by_distance.end());  // distance, then index

  std::map<int, std::pair<int, double>> votes;  // class -> (count, cum distance)
  for (int i = 0; i < k; ++i) {
    auto& [n, cum] = votes[train.labels[by_distance[i].second]];
    ++n;
    cum += by_distance[i].first;
  }

  int best_class = votes.begin()->first;
  auto best = votes.begin()->second;
  for (const auto& [cls, v] : votes) {
    if (v.first > best.first || (v.first == best.first && v.second < best.second)) {
      best_class = cls;
      best = v;
    }
  }
  return best_class;
}

KmeansResult kmeans(const Dataset& data, int k, int max_iter, std::uint64_t seed) {
  const int count = data.count();
  const int dims = data.dims();
  if (k < 1) throw Error("k must be positive");
  if (k > count) throw KTooLarge("k exceeds the number of observations");

  Rng rng(seed);
  const std::vector<std::size_t> order = rng.permutation(static_cast<std::size_t>(count));

  KmeansResult result;
  result.centroids = Matrix(dims, k);
  for (int c = 0; c < k; ++c) {
    for (int r = 0; r < dims; ++r) {
      result.centroids(r, c) = data.observations(r, static_cast<int>(order[c]));
    }
  }
  result.assignments.assign(static_cast<std::size_t>(count), -1);

  std::vector<double> point_distance(static_cast<std::size_t>(count), 0.0);
  for (int iter = 0; iter < max_iter; ++iter) {
    bool changed = false;
    double inertia = 0.0;
    for (int i = 0; i < count; ++i) {
      int best_c = 0;
      double best_d = sq_distance(data.observations, i, result.centroids, 0);
      for (int c = 1; c < k; ++c) {
        const double d = sq_distance(data.observations, i, result.centroids, c);
        if (d < best_d) {
          best_d = d;
          best_c = c;
        }
      }
      if (result.assignments[i] != best_c) {
        result.assignments[i] = best_c;
        changed = true;
      }
      point_distance[i] = best_d;
      inertia += best_d;
    }
    result.inertia_history.push_back(inertia);
    if (!changed) break;

    Matrix sums(dims, k);
    std::vector<int> sizes(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < count; ++i) {
      const int c = result.assignments[i];
      ++sizes[c];
      for (int r = 0; r < dims; ++r) sums(r, c) += data.observations(r, i);
    }
    for (int c = 0; c < k; ++c) {
      if (sizes[c] > 0) {
        for (int r = 0; r < dims; ++r) result.centroids(r, c) = sums(r, c) / sizes[c];
      } else {
        // Re-seed an empty cluster to the observation farthest from its
        // centroid.
        int farthest = 0;
        for (int i = 1; i < count; ++i) {
          if (point_distance[i] > point_distance[farthest]) farthest = i;
        }
        for (int r = 0; r < dims; ++r) {
          result.centroids(r, c) = data.observations(r, farthest);
        }
        point_distance[farthest] = 0.0;
      }
    }
  }
  return result;
}

GmmFit gmm_fit(const Dataset& data, int k, int max_iter, double tol,
               std::uint64_t seed) {
  const int count = data.count();
  const int dims = data.dims();
  if (k < 1) throw Error("k must be positive");
  if (k > count) throw KTooLarge("k exceeds the number of observations");

  if (k > 1) {
    bool all_identical = true;
    for (int i = 1; i < count && all_identical; ++i) {
      for (int r = 0; r < dims; ++r) {
        if (data.observations(r, i) != data.observations(r, 0)) {
          all_identical = false;
          break;
        }
      }
    }
    if (all_identical) throw DegenerateData("all observations are identical");
  }

  GmmFit fit;
  GmmModel& model = fit.model;
  model.weights.assign(static_cast<std::size_t>(k), 1.0 / k);
  model.means = kmeans(data, k, 100, seed).centroids;
  model.variances = Matrix(dims, k);

  // Global per-dimension population variance as the starting spread.
  for (int r = 0; r < dims; ++r) {
    double mean = 0.0;
    for (int i = 0; i < count; ++i) mean += data.observations(r, i);
    mean /= count;
    double var = 0.0;
    for (int i = 0; i < count; ++i) {
      const double d = data.observations(r, i) - mean;
      var += d * d;
    }
    var = std::max(var / count, kVarianceFloor);
    for (int c = 0; c < k; ++c) model.variances(r, c) = var;
  }

  Matrix log_resp(k, count);
  double prev_ll = -std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < max_iter; ++iter) {
    // E-step with log-domain responsibilities.
    double ll = 0.0;
    std::vector<double> frame(static_cast<std::size_t>(k));
    for (int i = 0; i < count; ++i) {
      for (int c = 0; c < k; ++c) {
        double lp = std::log(model.weights[c]);
        for (int r = 0; r < dims; ++r) {
          const double var = model.variances(r, c);
          const double d = data.observations(r, i) - model.means(r, c);
          lp += -0.5 * std::log(2.0 * 3.14159265358979323846 * var) -
                d * d / (2.0 * var);
        }
        frame[c] = lp;
      }
      const double lse = log_sum_exp(frame);
      ll += lse;
      for (int c = 0; c < k; ++c) log_resp(c, i) = frame[c] - lse;
    }
    fit.log_likelihood_history.push_back(ll);
    if (ll - prev_ll < tol && iter > 0) break;
    prev_ll = ll;

    // M-step.
    for (int c = 0; c < k; ++c) {
      double total = 0.0;
      for (int i = 0; i < count; ++i) total += std::exp(log_resp(c, i));
      model.weights[c] = total / count;
      for (int r = 0; r < dims; ++r) {
        double mean = 0.0;
        for (int i = 0; i < count; ++i) {
          mean += std::exp(log_resp(c, i)) * data.observations(r, i);
        }
        mean /= total;
        double var = 0.0;
        for (int i = 0; i < count; ++i) {
          const double d = data.observations(r, i) - mean;
          var += std::exp(log_resp(c, i)) * d * d;
        }
        model.means(r, c) = mean;
        model.variances(r, c) = std::max(var / total, kVarianceFloor);
      }
    }
  }
  return fit;
}

double gmm_log_likelihood(const GmmModel& model, const std::vector<double>& x) {
  const int k = static_cast<int>(model.weights.size());
  const int dims = model.means.rows;
  if (static_cast<int>(x.size()) != dims) {
    throw DimensionMismatch("input dimension differs from model");
  }
  std::vector<double> terms(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) {
    double lp = std::log(model.weights[c]);
    for (int r = 0; r < dims; ++r) {
      const double var = model.variances(r, c);
      const double d = x[r] - model.means(r, c);
      lp += -0.5 * std::log(2.0 * 3.14159265358979323846 * var) - d * d / (2.0 * var);
    }
    terms[c] = lp;
  }
  return log_sum_exp(terms);
}

PcaResult pca(const Dataset& data) {
  const int count = data.count();
  const int dims = data.dims();
  if (count < 2) throw TooFewObservations("need at least two observations");

  PcaResult result;
  result.mean.assign(static_cast<std::size_t>(dims), 0.0);
  for (int r = 0; r < dims; ++r) {
    for (int i = 0; i < count; ++i) result.mean[r] += data.observations(r, i);
    result.mean[r] /= count;
  }

  Matrix cov(dims, dims);
  for (int r = 0; r < dims; ++r) {
    for (int s = r; s < dims; ++s) {
      double acc = 0.0;
      for (int i = 0; i < count; ++i) {
        acc += (data.observations(r, i) - result.mean[r]) *
               (data.observations(s, i) - result.mean[s]);
      }
      cov(r, s) = cov(s, r) = acc / count;  // population covariance
    }
  }

  std::vector<double> values;
  Matrix vectors;
  jacobi_eigen(cov, values, vectors);

  std::vector<int> order(static_cast<std::size_t>(dims));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return values[a] > values[b]; });

  result.components = Matrix(dims, dims);
  result.eigenvalues.resize(static_cast<std::size_t>(dims));
  for (int c = 0; c < dims; ++c) {
    result.eigenvalues[c] = values[order[c]];
    int peak = 0;
    for (int r = 1; r < dims; ++r) {
      if (std::abs(vectors(r, order[c])) > std::abs(vectors(peak, order[c]))) peak = r;
    }
    const double sign = vectors(peak, order[c]) < 0.0 ? -1.0 : 1.0;
    for (int r = 0; r < dims; ++r) {
      result.components(r, c) = sign * vectors(r, order[c]);
    }
  }
  return result;
}

std::vector<double> pca_transform(const PcaResult& result, const std::vector<double>& x) {
  const int dims = result.components.rows;
  if (static_cast<int>(x.size()) != dims) {
    throw DimensionMismatch("input dimension differs from model");
  }
  std::vector<double> out(static_cast<std::size_t>(dims), 0.0);
  for (int c = 0; c < dims; ++c) {
    for (int r = 0; r < dims; ++r) {
      out[c] += result.components(r, c) * (x[r] - result.mean[r]);
    }
  }
  return out;
}

NmfResult nmf(const Matrix& v, int rank, int max_iter, double tol,
              std::uint64_t seed) {
  const int rows = v.rows;
  const int cols = v.cols;
  for (double x : v.data) {
    if (x < 0.0) throw NegativeInput("input matrix must be non-negative");
  }
  if (rank < 1 || rank > std::min(rows, cols)) {
    throw RankTooLarge("rank must be in [1, min(rows, cols)]");
  }

  Rng rng(seed);
  NmfResult result;
  Matrix& w = result.dictionary;
  Matrix& h = result.activations;
  w = Matrix(rows, rank);
  h = Matrix(rank, cols);
  for (double& x : w.data) x = rng.next_open_closed();
  for (double& x : h.data) x = rng.next_open_closed();

  auto divergence = [&]() {
    double acc = 0.0;
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) {
        double wh = 0.0;
        for (int r = 0; r < rank; ++r) wh += w(i, r) * h(r, j);
        const double d = v(i, j) - wh;
        acc += d * d;
      }
    }
    return acc;
  };

  double prev = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < max_iter; ++iter) {
    // H <- H .* (W'V) ./ (W'WH + eps)
    Matrix wtv(rank, cols);
    for (int r = 0; r < rank; ++r) {
      for (int j = 0; j < cols; ++j) {
        double acc = 0.0;
        for (int i = 0; i < rows; ++i) acc += w(i, r) * v(i, j);
        wtv(r, j) = acc;
      }
    }
    Matrix wtw(rank, rank);
    for (int r = 0; r < rank; ++r) {
      for (int s = 0; s < rank; ++s) {
        double acc = 0.0;
        for (int i = 0; i < rows; ++i) acc += w(i, r) * w(i, s);
        wtw(r, s) = acc;
      }
    }
    for (int r = 0; r < rank; ++r) {
      for (int j = 0; j < cols; ++j) {
        double wtwh = 0.0;
        for (int s = 0; s < rank; ++s) wtwh += wtw(r, s) * h(s, j);
        h(r, j) *= wtv(r, j) / (wtwh + kNmfEpsilon);
      }
    }

    // W <- W .* (VH') ./ (WHH' + eps)
    Matrix vht(rows, rank);
    for (int i = 0; i < rows; ++i) {
      for (int r = 0; r < rank; ++r) {
        double acc = 0.0;
        for (int j = 0; j < cols; ++j) acc += v(i, j) * h(r, j);
        vht(i, r) = acc;
      }
    }
    Matrix hht(rank, rank);
    for (int r = 0; r < rank; ++r) {
      for (int s = 0; s < rank; ++s) {
        double acc = 0.0;
        for (int j = 0; j < cols; ++j) acc += h(r, j) * h(s, j);
        hht(r, s) = acc;
      }
    }
    for (int i = 0; i < rows; ++i) {
      for (int r = 0; r < rank; ++r) {
        double whht = 0.0;
        for (int s = 0; s < rank; ++s) whht += w(i, s) * hht(s, r);
        w(i, r) *= vht(i, r) / (whht + kNmfEpsilon);
      }
    }

    const double current = divergence();
    result.divergence_history.push_back(current);
    if (std::isfinite(prev) &&
        (prev - current) < tol * std::max(prev, kNmfEpsilon)) {
      break;
    }
    prev = current;
  }
  return result;
}

}  // namespace mir
