#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace hanfuse {

// Dense row-major double matrix. Deliberately minimal: the tagger needs
// predictable, reproducible arithmetic more than BLAS speed at these sizes.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, 0.0) {}

  double* row(int i) { return data.data() + static_cast<size_t>(i) * cols; }
  const double* row(int i) const { return data.data() + static_cast<size_t>(i) * cols; }

  double& at(int r, int c) {
    assert(r >= 0 && r < rows && c >= 0 && c < cols);
    return data[static_cast<size_t>(r) * cols + c];
  }
  double at(int r, int c) const {
    assert(r >= 0 && r < rows && c >= 0 && c < cols);
    return data[static_cast<size_t>(r) * cols + c];
  }

  void zero() { std::fill(data.begin(), data.end(), 0.0); }

  bool same_shape(const Matrix& other) const {
    return rows == other.rows && cols == other.cols;
  }

  bool operator==(const Matrix& other) const {
    return rows == other.rows && cols == other.cols && data == other.data;
  }
};

// Mutable/const views over a parameter segment living inside a flat vector.
struct TensorView {
  double* data = nullptr;
  int rows = 0;
  int cols = 0;

  double* row(int i) { return data + static_cast<size_t>(i) * cols; }
  double& at(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
  size_t size() const { return static_cast<size_t>(rows) * cols; }
};

struct ConstTensorView {
  const double* data = nullptr;
  int rows = 0;
  int cols = 0;

  ConstTensorView() = default;
  ConstTensorView(const double* d, int r, int c) : data(d), rows(r), cols(c) {}
  ConstTensorView(const TensorView& v) : data(v.data), rows(v.rows), cols(v.cols) {}

  const double* row(int i) const { return data + static_cast<size_t>(i) * cols; }
  double at(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }
  size_t size() const { return static_cast<size_t>(rows) * cols; }
};

// y = W x  (W: m x n, x: n, y: m)
void matvec(ConstTensorView W, const double* x, double* y);
// y += W x
void matvec_add(ConstTensorView W, const double* x, double* y);
// y += W^T a  (W: m x n, a: m, y: n)
void matvec_transpose_add(ConstTensorView W, const double* a, double* y);
// G += a b^T  (G: m x n, a: m, b: n)
void outer_add(TensorView G, const double* a, const double* b);

double l2_distance(const double* a, const double* b, int n);

}  // namespace hanfuse
