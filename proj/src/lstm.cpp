#include "hanfuse/lstm.hpp"

#include <cmath>
#include <vector>

#include "hanfuse/error.hpp"

namespace hanfuse {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void check_dims(const Matrix& inputs, LstmDirView params) {
  int h = params.hidden;
  if (params.wx.rows != 4 * h || params.wh.rows != 4 * h || params.wh.cols != h)
    fail(ErrorKind::ShapeMismatch, "LSTM gate parameter shapes are inconsistent");
  if (inputs.cols != params.wx.cols)
    fail(ErrorKind::ShapeMismatch,
         "LSTM expects input dim " + std::to_string(params.wx.cols) + ", got " +
             std::to_string(inputs.cols));
}

}  // namespace

void lstm_dir_forward(const Matrix& inputs, LstmDirView params, bool reverse,
                      LstmDirCache& cache) {
  check_dims(inputs, params);
  int n = inputs.rows, h = params.hidden;
  cache.gates = Matrix(n, 4 * h);
  cache.cell = Matrix(n, h);
  cache.hidden = Matrix(n, h);

  std::vector<double> z(4 * h);
  const double* h_prev = nullptr;  // nullptr encodes the zero initial state
  const double* c_prev = nullptr;

  for (int step = 0; step < n; ++step) {
    int t = reverse ? n - 1 - step : step;
    matvec(params.wx, inputs.row(t), z.data());
    if (h_prev) matvec_add(params.wh, h_prev, z.data());
    for (int k = 0; k < 4 * h; ++k) z[k] += params.bias[k];

    double* gates = cache.gates.row(t);
    double* cell = cache.cell.row(t);
    double* hidden = cache.hidden.row(t);
    for (int k = 0; k < h; ++k) {
      double gi = sigmoid(z[k]);
      double gf = sigmoid(z[h + k]);
      double gg = std::tanh(z[2 * h + k]);
      double go = sigmoid(z[3 * h + k]);
      gates[k] = gi;
      gates[h + k] = gf;
      gates[2 * h + k] = gg;
      gates[3 * h + k] = go;
      double c = gi * gg + (c_prev ? gf * c_prev[k] : 0.0);
      cell[k] = c;
      hidden[k] = go * std::tanh(c);
    }
    h_prev = hidden;
    c_prev = cell;
  }
}

void lstm_dir_backward(const Matrix& inputs, LstmDirView params, bool reverse,
                       const LstmDirCache& cache, const Matrix& dhidden,
                       Matrix& dinputs, LstmDirGradView grad) {
  int n = inputs.rows, h = params.hidden;
  std::vector<double> dh_next(h, 0.0), dc_next(h, 0.0), dz(4 * h);

  for (int step = n - 1; step >= 0; --step) {
    int t = reverse ? n - 1 - step : step;
    int t_prev_step = step - 1;                       // previous in walk order
    int t_prev = reverse ? n - 1 - t_prev_step : t_prev_step;
    bool has_prev = t_prev_step >= 0;

    const double* gates = cache.gates.row(t);
    const double* cell = cache.cell.row(t);

    for (int k = 0; k < h; ++k) {
      double dh = dhidden.at(t, k) + dh_next[k];
      double gi = gates[k], gf = gates[h + k], gg = gates[2 * h + k], go = gates[3 * h + k];
      double tc = std::tanh(cell[k]);
      double dgo = dh * tc;
      double dc = dh * go * (1.0 - tc * tc) + dc_next[k];
      double c_prev = has_prev ? cache.cell.at(t_prev, k) : 0.0;
      double dgi = dc * gg;
      double dgg = dc * gi;
      double dgf = dc * c_prev;
      dz[k] = dgi * gi * (1.0 - gi);
      dz[h + k] = dgf * gf * (1.0 - gf);
      dz[2 * h + k] = dgg * (1.0 - gg * gg);
      dz[3 * h + k] = dgo * go * (1.0 - go);
      dc_next[k] = dc * gf;
    }

    outer_add(grad.wx, dz.data(), inputs.row(t));
    if (has_prev) outer_add(grad.wh, dz.data(), cache.hidden.row(t_prev));
    for (int k = 0; k < 4 * h; ++k) grad.bias[k] += dz[k];

    matvec_transpose_add(params.wx, dz.data(), dinputs.row(t));
    std::fill(dh_next.begin(), dh_next.end(), 0.0);
    if (has_prev) matvec_transpose_add(params.wh, dz.data(), dh_next.data());
    if (!has_prev) std::fill(dc_next.begin(), dc_next.end(), 0.0);
  }
}

Matrix lstm_forward(const Matrix& inputs, BiLstmView params, BiLstmCache* cache) {
  if (params.fw.hidden != params.bw.hidden)
    fail(ErrorKind::ShapeMismatch, "forward/backward hidden sizes differ");
  BiLstmCache local;
  BiLstmCache& c = cache ? *cache : local;
  lstm_dir_forward(inputs, params.fw, /*reverse=*/false, c.fw);
  lstm_dir_forward(inputs, params.bw, /*reverse=*/true, c.bw);

  int n = inputs.rows, h = params.fw.hidden;
  Matrix out(n, 2 * h);
  for (int t = 0; t < n; ++t) {
    std::copy(c.fw.hidden.row(t), c.fw.hidden.row(t) + h, out.row(t));
    std::copy(c.bw.hidden.row(t), c.bw.hidden.row(t) + h, out.row(t) + h);
  }
  return out;
}

void lstm_backward(const Matrix& inputs, BiLstmView params, const BiLstmCache& cache,
                   const Matrix& dout, Matrix& dinputs, BiLstmGradView grad) {
  int n = inputs.rows, h = params.fw.hidden;
  Matrix dh_fw(n, h), dh_bw(n, h);
  for (int t = 0; t < n; ++t) {
    std::copy(dout.row(t), dout.row(t) + h, dh_fw.row(t));
    std::copy(dout.row(t) + h, dout.row(t) + 2 * h, dh_bw.row(t));
  }
  lstm_dir_backward(inputs, params.fw, /*reverse=*/false, cache.fw, dh_fw, dinputs, grad.fw);
  lstm_dir_backward(inputs, params.bw, /*reverse=*/true, cache.bw, dh_bw, dinputs, grad.bw);
}

}  // namespace hanfuse
