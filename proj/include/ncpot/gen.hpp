// Copyright 2026 the ncpot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>

#include "ncpot/curvature.hpp"
#include "ncpot/poly.hpp"

namespace ncpot {

// Deterministic instance generator.  Distributions are hand-rolled from the
// mt19937_64 bit stream so identical seeds give identical instances on every
// platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform();                   // [0, 1)
  double uniform(double a, double b);
  double normal();                    // Box-Muller
  Complex cnormal();
  int uniform_int(int lo, int hi);    // inclusive

  CMatrix gaussian(int d, double scale = 1.0);
  CMatrix hermitian(int d, double scale = 1.0);
  CMatrix psd(int d, double scale = 1.0);      // G* G
  CMatrix unitary(int d);

  MatrixPolynomial poly(int d, int degree, double scale = 1.0);
  VectorPolynomial vpoly(int d, int degree, double scale = 1.0);

  // Polynomial invertible on the closed unit disc: c (Id - z B_1) ... with
  // ||B_i|| <= rho < 1.
  MatrixPolynomial outer_poly(int d, int degree, double rho = 0.6);

  // Hermitian Laurent symbol G*G (+ lift) with circle margin >= min_margin.
  MatrixLaurentPolynomial psd_laurent(int d, int degree, double min_margin);

  // Random closed-form fields on the unit disc.  flat terms >= 2 gives a
  // generically strictly seminegative field.
  MetricField flat_sum_field(int d, int terms, int degree);
  MetricField dual_field(int d, int terms, int degree);

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ncpot
