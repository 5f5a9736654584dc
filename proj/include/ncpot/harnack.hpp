// Copyright 2026 the ncpot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

#include "ncpot/curvature.hpp"
#include "ncpot/types.hpp"

namespace ncpot {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Largest power of two dividing n >= 1.
std::uint64_t beta(std::uint64_t n);

// Weighted shift truncated to dimension d: entry (n, n-1) = 1/beta(n-1)
// (1-based), zeroed where 2^k divides n-1 when k is present.
struct ShiftSpec {
  int dim = 2;
  std::optional<int> k;  // nilpotency parameter; nullopt = untruncated weights
};

CMatrix shift_matrix(const ShiftSpec& spec);
// Subdiagonal weights only (cheap path for large dimensions).
Eigen::VectorXd shift_weights(const ShiftSpec& spec);

// Solution of (Id - zeta A_k) x = e1 by forward substitution.  For real
// integral zeta the entries and ||x||^2 are computed exactly in big-rational
// arithmetic alongside the floating vector.
struct Resolvent {
  CVector x;
  std::optional<BigRational> norm_sq_exact;  // present for integral real zeta
  std::vector<BigRational> exact;            // entries, same condition
};
Resolvent resolvent_vector(std::optional<int> k, Complex zeta, int d);

// Exact check of  prod_{m < 2^k} beta(m) = 2^{sum_{j<k} j 2^{k-j-1}} < 2^{2^k}.
struct ProductIdentity {
  int k = 0;
  BigInt product;       // brute-force product
  BigInt formula;       // closed-form power of two
  std::uint64_t exponent = 0;
  bool equal = false;
  bool below_2n = false;
};
ProductIdentity product_identity_check(int k);

// The scaled flat family L_k(z) = eps * (Id - (2 z / z0) A_k),
// eps = 1 / (1 + 2/|z0|), P_k = L_k^{-*} L_k^{-1}:  P_k(0) = eps^{-2} Id,
// P_k >= Id on the disc, each P_k flat, and ||P_k(z0)|| grows with k.
struct HarnackEntry {
  int k = 0;
  double norm_at_z0 = 0.0;      // ||P_k(z0)|| = eps^{-2} ||H_k(2)^{-1}||^2
  double lower_bound = 0.0;     // eps^{-2} ||resolvent||^2 (e1 column)
  double p_zero_scalar = 0.0;   // P_k(0) = p_zero_scalar * Id, exactly
  double p_zero_offdiag = 0.0;  // max off-diagonal magnitude of P_k(0)
  double boundary_margin = 0.0; // min over grid of lambda_min(P_k - Id)
  double flat_margin = 0.0;     // curvature-defect norm / scale at probe points
};

struct HarnackFamily {
  Complex z0;
  double epsilon = 0.0;
  int dim = 0;
  std::vector<HarnackEntry> entries;
};

struct HarnackOptions {
  int boundary_grid = 16;
  int flat_probes = 5;     // probe points with |z| small (benign conditioning)
  bool check_flatness = true;
};

HarnackFamily harnack_family(Complex z0, int k_min, int k_max, int d,
                             const HarnackOptions& opts = {});

// Exact curvature jet of P_k at z, all pieces applied through bidiagonal
// solves; usable at large d where dense evaluation is impractical.
MetricField::Jet harnack_jet(std::optional<int> k, Complex z0, int d, Complex z);

// Matrix-free flatness probe: ||defect||_2 / (||P_zzbar||_2) estimated by
// power iteration on the chained operator.
double harnack_flat_margin(std::optional<int> k, Complex z0, int d, Complex z);

// Truncation growth witness for the non-invertibility of Id - zeta A in the
// limit: smallest singular values and resolvent norms across dimensions, and
// the |x_{2^j}| > 1/2 component flags.
struct LimitWitness {
  Complex zeta;
  std::vector<int> dims;
  std::vector<double> sigma_min;
  std::vector<double> resolvent_norm_sq;
  std::vector<bool> big_components;  // |x_{2^j}| > 1/2 for j = 0..log2(d)
};
LimitWitness noninvertible_limit_witness(int d, Complex zeta);

}  // namespace ncpot
