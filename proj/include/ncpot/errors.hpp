// Copyright 2026 the ncpot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace ncpot {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-contract input (CLI exit code 2).
struct InputError : Error {
  using Error::Error;
};

// Data violates the strict-positivity hypothesis required by a
// factorization or solver entry point.
struct NotStrictlyPositiveError : InputError {
  using InputError::InputError;
};

// Numerical degeneracy: singular limits, lost invertibility, failed
// canonicalization (CLI exit code 3).
struct DegeneracyError : Error {
  using Error::Error;
};

// Iteration budget exhausted before reaching the requested tolerance.
struct ConvergenceError : DegeneracyError {
  double residual = 0.0;
  ConvergenceError(const std::string& what, double res)
      : DegeneracyError(what), residual(res) {}
};

// Sampling too coarse to resolve a phase or limit; caller should refine.
struct ResolutionError : DegeneracyError {
  using DegeneracyError::DegeneracyError;
};

}  // namespace ncpot
