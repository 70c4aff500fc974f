#include "hanfuse/crf.hpp"

#include <cmath>
#include <limits>

#include "hanfuse/error.hpp"

namespace hanfuse {

namespace {

void check_instance(const Matrix& emissions, CrfView crf) {
  if (emissions.rows < 1)
    fail(ErrorKind::ShapeMismatch, "emissions must have at least one row");
  if (emissions.cols != crf.tags || crf.transitions.rows != crf.tags ||
      crf.transitions.cols != crf.tags)
    fail(ErrorKind::ShapeMismatch, "emissions/CRF tag count mismatch");
}

void check_tags(const std::vector<int>& tags, int n, int T) {
  if (static_cast<int>(tags.size()) != n)
    fail(ErrorKind::ShapeMismatch, "tag sequence length mismatch");
  for (int t : tags)
    if (t < 0 || t >= T) fail(ErrorKind::ShapeMismatch, "tag index out of range");
}

}  // namespace

double log_sum_exp(const double* values, int n) {
  double hi = values[0];
  for (int i = 1; i < n; ++i) hi = std::max(hi, values[i]);
  if (!std::isfinite(hi)) return hi;  // all -inf stays -inf
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += std::exp(values[i] - hi);
  return hi + std::log(acc);
}

double crf_path_score(const Matrix& emissions, const std::vector<int>& tags, CrfView crf) {
  check_instance(emissions, crf);
  check_tags(tags, emissions.rows, crf.tags);
  double score = crf.start[tags[0]] + emissions.at(0, tags[0]);
  for (int t = 1; t < emissions.rows; ++t)
    score += crf.transitions.at(tags[t - 1], tags[t]) + emissions.at(t, tags[t]);
  score += crf.end[tags.back()];
  return score;
}

namespace {

// alpha[t][j] = log sum of scores of prefixes ending at t with tag j
// (start and emissions included, end excluded).
Matrix forward_messages(const Matrix& emissions, CrfView crf) {
  int n = emissions.rows, T = crf.tags;
  Matrix alpha(n, T);
  for (int j = 0; j < T; ++j) alpha.at(0, j) = crf.start[j] + emissions.at(0, j);
  std::vector<double> scratch(T);
  for (int t = 1; t < n; ++t) {
    for (int j = 0; j < T; ++j) {
      for (int i = 0; i < T; ++i)
        scratch[i] = alpha.at(t - 1, i) + crf.transitions.at(i, j);
      alpha.at(t, j) = log_sum_exp(scratch.data(), T) + emissions.at(t, j);
    }
  }
  return alpha;
}

// beta[t][i] = log sum over completions after position t given tag i
// (emissions after t and end included, emission at t excluded).
Matrix backward_messages(const Matrix& emissions, CrfView crf) {
  int n = emissions.rows, T = crf.tags;
  Matrix beta(n, T);
  for (int i = 0; i < T; ++i) beta.at(n - 1, i) = crf.end[i];
  std::vector<double> scratch(T);
  for (int t = n - 2; t >= 0; --t) {
    for (int i = 0; i < T; ++i) {
      for (int j = 0; j < T; ++j)
        scratch[j] = crf.transitions.at(i, j) + emissions.at(t + 1, j) + beta.at(t + 1, j);
      beta.at(t, i) = log_sum_exp(scratch.data(), T);
    }
  }
  return beta;
}

double partition(const Matrix& alpha, CrfView crf) {
  int n = alpha.rows, T = alpha.cols;
  std::vector<double> scratch(T);
  for (int j = 0; j < T; ++j) scratch[j] = alpha.at(n - 1, j) + crf.end[j];
  return log_sum_exp(scratch.data(), T);
}

}  // namespace

double crf_log_likelihood(const Matrix& emissions, const std::vector<int>& tags, CrfView crf) {
  double score = crf_path_score(emissions, tags, crf);
  Matrix alpha = forward_messages(emissions, crf);
  return score - partition(alpha, crf);
}

double crf_log_likelihood_grad(const Matrix& emissions, const std::vector<int>& tags,
                               CrfView crf, Matrix& demissions, CrfGradView grad) {
  check_instance(emissions, crf);
  check_tags(tags, emissions.rows, crf.tags);
  int n = emissions.rows, T = crf.tags;

  Matrix alpha = forward_messages(emissions, crf);
  Matrix beta = backward_messages(emissions, crf);
  double log_z = partition(alpha, crf);

  // unary marginals: d(-ll)/dE[t][j] = P(y_t = j) - [gold]
  for (int t = 0; t < n; ++t) {
    for (int j = 0; j < T; ++j) {
      double marginal = std::exp(alpha.at(t, j) + beta.at(t, j) - log_z);
      demissions.at(t, j) += marginal - (tags[t] == j ? 1.0 : 0.0);
    }
  }

  // start/end
  for (int j = 0; j < T; ++j) {
    double m0 = std::exp(alpha.at(0, j) + beta.at(0, j) - log_z);
    grad.start[j] += m0 - (tags[0] == j ? 1.0 : 0.0);
    double mn = std::exp(alpha.at(n - 1, j) + beta.at(n - 1, j) - log_z);
    grad.end[j] += mn - (tags[n - 1] == j ? 1.0 : 0.0);
  }

  // pairwise marginals
  for (int t = 0; t + 1 < n; ++t) {
    for (int i = 0; i < T; ++i) {
      for (int j = 0; j < T; ++j) {
        double m = std::exp(alpha.at(t, i) + crf.transitions.at(i, j) +
                            emissions.at(t + 1, j) + beta.at(t + 1, j) - log_z);
        grad.transitions.at(i, j) += m - (tags[t] == i && tags[t + 1] == j ? 1.0 : 0.0);
      }
    }
  }

  return crf_path_score(emissions, tags, crf) - log_z;
}

std::pair<std::vector<int>, double> viterbi_decode(const Matrix& emissions, CrfView crf) {
  check_instance(emissions, crf);
  int n = emissions.rows, T = crf.tags;

  // mu[t][j] = best score of a suffix starting at t with tag j (emission at
  // t, transitions after, and end included). Reconstructing forward from
  // mu picks the lowest tag index at the earliest differing position among
  // the optimal paths.
  Matrix mu(n, T);
  for (int j = 0; j < T; ++j) mu.at(n - 1, j) = emissions.at(n - 1, j) + crf.end[j];
  for (int t = n - 2; t >= 0; --t) {
    for (int i = 0; i < T; ++i) {
      double best = -std::numeric_limits<double>::infinity();
      for (int j = 0; j < T; ++j)
        best = std::max(best, crf.transitions.at(i, j) + mu.at(t + 1, j));
      mu.at(t, i) = emissions.at(t, i) + best;
    }
  }

  std::vector<int> path(n);
  double best_total = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < T; ++j) {
    double s = crf.start[j] + mu.at(0, j);
    if (s > best_total) {
      best_total = s;
      path[0] = j;
    }
  }
  for (int t = 1; t < n; ++t) {
    double target = -std::numeric_limits<double>::infinity();
    int pick = 0;
    for (int j = 0; j < T; ++j) {
      double s = crf.transitions.at(path[t - 1], j) + mu.at(t, j);
      if (s > target) {
        target = s;
        pick = j;
      }
    }
    path[t] = pick;
  }
  // re-score along the path so the returned value matches crf_path_score
  // bit for bit (the DP accumulates in a different association order)
  return {path, crf_path_score(emissions, path, crf)};
}

}  // namespace hanfuse
