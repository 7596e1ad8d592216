#pragma once

#include <atomic>

#include "treebo/types.hpp"

namespace treebo {

// Count of Cholesky factorizations performed since process start; lets tests
// assert that cached factorizations are reused.
std::atomic<long>& chol_counter();

// Cholesky of a symmetric positive (semi-)definite matrix with escalating
// diagonal jitter: on failure add 1e-8 * mean(diag), escalate tenfold up to
// 1e-2 * mean(diag), then throw DegeneracyError. jitter_used receives the
// jitter that succeeded (0 when none was needed).
Eigen::LLT<Mat> chol_with_jitter(const Mat& A, double* jitter_used = nullptr);

}  // namespace treebo
