#include <cmath>

#include "doctest.h"
#include "hanfuse/lstm.hpp"
#include "hanfuse/rng.hpp"
#include "oracles.hpp"

using namespace hanfuse;

namespace {

// Owns one direction's parameters in a single flat vector.
struct DirParams {
  int d, h;
  std::vector<double> data;

  DirParams(int d_, int h_, Rng* rng = nullptr) : d(d_), h(h_) {
    data.assign(static_cast<size_t>(4 * h) * (d + h + 1), 0.0);
    if (rng)
      for (double& v : data) v = rng->uniform(-0.5, 0.5);
  }
  double* wx() { return data.data(); }
  double* wh() { return data.data() + static_cast<size_t>(4 * h) * d; }
  double* bias() { return data.data() + static_cast<size_t>(4 * h) * (d + h); }
  LstmDirView view() {
    LstmDirView v;
    v.wx = ConstTensorView{wx(), 4 * h, d};
    v.wh = ConstTensorView{wh(), 4 * h, h};
    v.bias = bias();
    v.hidden = h;
    return v;
  }
  LstmDirGradView grad_view(std::vector<double>& g) {
    LstmDirGradView v;
    v.wx = TensorView{g.data(), 4 * h, d};
    v.wh = TensorView{g.data() + static_cast<size_t>(4 * h) * d, 4 * h, h};
    v.bias = g.data() + static_cast<size_t>(4 * h) * (d + h);
    return v;
  }
};

Matrix random_matrix(int rows, int cols, Rng& rng) {
  Matrix m(rows, cols);
  for (double& v : m.data) v = rng.uniform(-1.0, 1.0);
  return m;
}

}  // namespace

TEST_CASE("zero parameters give zero hidden states") {
  DirParams p(3, 4);
  Rng rng(1);
  Matrix x = random_matrix(5, 3, rng);
  BiLstmView bi{p.view(), p.view()};
  Matrix h = lstm_forward(x, bi);
  for (double v : h.data) CHECK(v == 0.0);
}

TEST_CASE("length-1 input: forward and backward directions agree") {
  Rng rng(2);
  DirParams p(4, 3, &rng);
  Matrix x = random_matrix(1, 4, rng);
  BiLstmView bi{p.view(), p.view()};  // identical parameters both ways
  Matrix h = lstm_forward(x, bi);
  REQUIRE(h.cols == 6);
  for (int k = 0; k < 3; ++k) CHECK(h.at(0, k) == h.at(0, 3 + k));
}

TEST_CASE("reversal symmetry: backward pass equals forward on reversed input") {
  Rng rng(3);
  DirParams p(3, 5, &rng);
  Matrix x = random_matrix(6, 3, rng);
  Matrix x_rev(6, 3);
  for (int t = 0; t < 6; ++t)
    std::copy(x.row(5 - t), x.row(5 - t) + 3, x_rev.row(t));

  LstmDirCache fw_on_rev, bw_on_orig;
  lstm_dir_forward(x_rev, p.view(), /*reverse=*/false, fw_on_rev);
  lstm_dir_forward(x, p.view(), /*reverse=*/true, bw_on_orig);
  for (int t = 0; t < 6; ++t)
    for (int k = 0; k < 5; ++k)
      CHECK(bw_on_orig.hidden.at(t, k) == doctest::Approx(fw_on_rev.hidden.at(5 - t, k)));
}

TEST_CASE("BPTT gradient matches central finite differences") {
  Rng rng(4);
  int n = 4, d = 6, h = 5;
  DirParams fw(d, h, &rng), bw(d, h, &rng);
  Matrix x = random_matrix(n, d, rng);
  Matrix weights = random_matrix(n, 2 * h, rng);  // random scalar loss projection

  auto loss = [&] {
    BiLstmView bi{fw.view(), bw.view()};
    Matrix out = lstm_forward(x, bi);
    double acc = 0.0;
    for (size_t i = 0; i < out.data.size(); ++i) acc += out.data[i] * weights.data[i];
    return acc;
  };

  // analytic gradients
  BiLstmView bi{fw.view(), bw.view()};
  BiLstmCache cache;
  Matrix out = lstm_forward(x, bi, &cache);
  std::vector<double> gfw(fw.data.size(), 0.0), gbw(bw.data.size(), 0.0);
  Matrix dx(n, d);
  BiLstmGradView grad{fw.grad_view(gfw), bw.grad_view(gbw)};
  lstm_backward(x, bi, cache, weights, dx, grad);

  for (size_t i = 0; i < fw.data.size(); ++i) {
    double fd = oracles::central_difference(loss, fw.data, i);
    CHECK(oracles::gradients_match(gfw[i], fd));
  }
  for (size_t i = 0; i < bw.data.size(); ++i) {
    double fd = oracles::central_difference(loss, bw.data, i);
    CHECK(oracles::gradients_match(gbw[i], fd));
  }
  for (size_t i = 0; i < x.data.size(); ++i) {
    double fd = oracles::central_difference(loss, x.data, i);
    CHECK(oracles::gradients_match(dx.data[i], fd));
  }
}

TEST_CASE("input dimension mismatch is a shape error") {
  DirParams p(3, 4);
  Matrix x(2, 5);
  BiLstmView bi{p.view(), p.view()};
  CHECK_THROWS_AS(lstm_forward(x, bi), Error);
}
