#ifndef MIR_MATRIX_H
#define MIR_MATRIX_H

#include <cstddef>
#include <vector>

namespace mir {

/// Minimal dense row-major matrix of doubles.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c, double fill = 0.0)
      : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, fill) {}

  double& operator()(int r, int c) {
    return data[static_cast<std::size_t>(r) * cols + c];
  }
  double operator()(int r, int c) const {
    return data[static_cast<std::size_t>(r) * cols + c];
  }

  std::vector<double> column(int c) const {
    std::vector<double> out(rows);
    for (int r = 0; r < rows; ++r) out[r] = (*this)(r, c);
    return out;
  }

  void set_column(int c, const std::vector<double>& v) {
    for (int r = 0; r < rows; ++r) (*this)(r, c) = v[r];
  }
};

}  // namespace mir

#endif  // MIR_MATRIX_H
