// Copyright 2026 the ncpot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace ncpot {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Repo-wide numeric defaults. Tolerances are relative unless noted.
namespace defaults {
inline constexpr double herm_tol = 1e-12;          // hermitian-defect gate
inline constexpr double psd_tol = 1e-9;            // PSD margin gate
inline constexpr double factor_tol = 1e-10;        // factorization residual
inline constexpr double margin_floor_factor = 1e-6;  // strict-positivity floor
inline constexpr double limit_spread_tol = 1e-6;   // Schur t-limit acceptance
inline constexpr int dirichlet_degree = 64;
inline constexpr double newton_region = 0.25;
inline constexpr int quadrature_min = 256;
}  // namespace defaults

inline bool is_finite(const CMatrix& m) {
  return m.allFinite();
}

// Smallest power of two >= n (n >= 1).
inline int next_pow2(int n) {
  int p = 1;
  while (p < n) p *= 2;
  return p;
}

}  // namespace ncpot
