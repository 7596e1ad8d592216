#include "treebo/linalg.hpp"

#include <stdexcept>

namespace treebo {

std::atomic<long>& chol_counter() {
  static std::atomic<long> counter{0};
  return counter;
}

Eigen::LLT<Mat> chol_with_jitter(const Mat& A, double* jitter_used) {
  if (A.rows() != A.cols()) throw std::invalid_argument("matrix must be square");
  const Eigen::Index n = A.rows();
  double base = n > 0 ? A.diagonal().mean() : 0.0;
  if (!(base > 0.0)) base = 1.0;

  double jitter = 0.0;
  while (true) {
    ++chol_counter();
    Eigen::LLT<Mat> llt(jitter == 0.0 ? A : Mat(A + jitter * Mat::Identity(n, n)));
    if (llt.info() == Eigen::Success) {
      if (jitter_used) *jitter_used = jitter;
      return llt;
    }
    if (jitter == 0.0) {
      jitter = 1e-8 * base;
    } else {
      jitter *= 10.0;
      if (jitter > 1e-2 * base)
        throw DegeneracyError("kernel matrix not positive definite after jitter escalation");
    }
  }
}

}  // namespace treebo
