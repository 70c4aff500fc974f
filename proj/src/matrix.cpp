#include "hanfuse/matrix.hpp"

#include <cmath>

namespace hanfuse {

void matvec(ConstTensorView W, const double* x, double* y) {
  for (int i = 0; i < W.rows; ++i) {
    const double* w = W.row(i);
    double acc = 0.0;
    for (int j = 0; j < W.cols; ++j) acc += w[j] * x[j];
    y[i] = acc;
  }
}

void matvec_add(ConstTensorView W, const double* x, double* y) {
  for (int i = 0; i < W.rows; ++i) {
    const double* w = W.row(i);
    double acc = 0.0;
    for (int j = 0; j < W.cols; ++j) acc += w[j] * x[j];
    y[i] += acc;
  }
}

void matvec_transpose_add(ConstTensorView W, const double* a, double* y) {
  for (int i = 0; i < W.rows; ++i) {
    const double* w = W.row(i);
    double ai = a[i];
    if (ai == 0.0) continue;
    for (int j = 0; j < W.cols; ++j) y[j] += ai * w[j];
  }
}

void outer_add(TensorView G, const double* a, const double* b) {
  for (int i = 0; i < G.rows; ++i) {
    double* g = G.row(i);
    double ai = a[i];
    if (ai == 0.0) continue;
    for (int j = 0; j < G.cols; ++j) g[j] += ai * b[j];
  }
}

double l2_distance(const double* a, const double* b, int n) {
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

}  // namespace hanfuse
