#pragma once

#include "hanfuse/matrix.hpp"

namespace hanfuse {

// One direction of an LSTM. Gate rows are packed input, forget, cell
// candidate, output (4h x *).
struct LstmDirView {
  ConstTensorView wx;  // 4h x d
  ConstTensorView wh;  // 4h x h
  const double* bias = nullptr;  // 4h
  int hidden = 0;
};

struct LstmDirGradView {
  TensorView wx;
  TensorView wh;
  double* bias = nullptr;
};

// Per-timestep activations kept for backpropagation.
struct LstmDirCache {
  Matrix gates;   // n x 4h, post-activation (i, f, g, o)
  Matrix cell;    // n x h
  Matrix hidden;  // n x h
};

// reverse=false walks t = 0..n-1, reverse=true walks t = n-1..0; zero
// initial states either way. hidden.row(t) is always the state AT t.
void lstm_dir_forward(const Matrix& inputs, LstmDirView params, bool reverse,
                      LstmDirCache& cache);

// dhidden: n x h upstream gradient on hidden states. Accumulates parameter
// gradients and adds input gradients into dinputs.
void lstm_dir_backward(const Matrix& inputs, LstmDirView params, bool reverse,
                       const LstmDirCache& cache, const Matrix& dhidden,
                       Matrix& dinputs, LstmDirGradView grad);

struct BiLstmView {
  LstmDirView fw;
  LstmDirView bw;
};

struct BiLstmGradView {
  LstmDirGradView fw;
  LstmDirGradView bw;
};

struct BiLstmCache {
  LstmDirCache fw;
  LstmDirCache bw;
};

// Bidirectional forward: row t = [forward hidden at t | backward hidden at t].
Matrix lstm_forward(const Matrix& inputs, BiLstmView params, BiLstmCache* cache = nullptr);

void lstm_backward(const Matrix& inputs, BiLstmView params, const BiLstmCache& cache,
                   const Matrix& dout, Matrix& dinputs, BiLstmGradView grad);

}  // namespace hanfuse
