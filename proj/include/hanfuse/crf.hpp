#pragma once

#include <utility>
#include <vector>

#include "hanfuse/matrix.hpp"

namespace hanfuse {

// Linear-chain CRF scores. A path y over emissions E (n x T) scores
//   start[y_0] + sum_t E[t][y_t] + sum_t trans[y_{t-1}][y_t] + end[y_{n-1}]
// and is normalized by the forward-algorithm partition function.
struct CrfView {
  ConstTensorView transitions;  // T x T, [from][to]
  const double* start = nullptr;
  const double* end = nullptr;
  int tags = 0;
};

struct CrfGradView {
  TensorView transitions;
  double* start = nullptr;
  double* end = nullptr;
};

double crf_path_score(const Matrix& emissions, const std::vector<int>& tags, CrfView crf);

// log P(tags | emissions); always <= 0 up to rounding.
double crf_log_likelihood(const Matrix& emissions, const std::vector<int>& tags, CrfView crf);

// Adds d(-log P)/d(emissions) into demissions and the CRF parameter
// gradients into grad. Returns the log-likelihood.
double crf_log_likelihood_grad(const Matrix& emissions, const std::vector<int>& tags,
                               CrfView crf, Matrix& demissions, CrfGradView grad);

// Globally optimal path; ties resolved toward the lowest tag index at the
// earliest differing position.
std::pair<std::vector<int>, double> viterbi_decode(const Matrix& emissions, CrfView crf);

double log_sum_exp(const double* values, int n);

}  // namespace hanfuse
