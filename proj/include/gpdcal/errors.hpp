#pragma once

#include <stdexcept>
#include <string>

namespace gpdcal {

/// Base class for all library errors.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid distribution or configuration parameters (non-positive scale, ...).
class parameter_error : public error {
 public:
  using error::error;
};

/// Argument outside the mathematical domain of an operation.
class domain_error : public error {
 public:
  using error::error;
};

/// A requested moment does not exist for these parameters.
class moment_error : public error {
 public:
  using error::error;
};

/// Sample carries no information for the requested estimator (e.g. all equal).
class degenerate_sample_error : public error {
 public:
  using error::error;
};

/// Expected intrinsic loss undefined for this sample size.
class undefined_loss_error : public error {
 public:
  using error::error;
};

/// Point estimator undefined at this sample (division by zero, ...).
class estimator_error : public error {
 public:
  using error::error;
};

/// No observations beyond the threshold; tail calibration impossible.
class empty_tail_error : public error {
 public:
  using error::error;
};

/// Requested quantile lies below the modeled tail.
class out_of_tail_error : public error {
 public:
  using error::error;
};

/// Markov chain failed a basic health check (e.g. nothing accepted).
class chain_error : public error {
 public:
  using error::error;
};

/// Malformed or insufficient input data.
class data_error : public error {
 public:
  using error::error;
};

}  // namespace gpdcal
