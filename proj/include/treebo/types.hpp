#pragma once

#include <Eigen/Dense>

#include <stdexcept>

namespace treebo {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using AdjacencyMatrix = Eigen::MatrixXi;

// Raised when a kernel matrix cannot be factorized even after the escalating
// diagonal-jitter ladder (see chol_with_jitter).
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised for invalid run/experiment configurations; the message names the
// offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace treebo
