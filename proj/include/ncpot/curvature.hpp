// Copyright 2026 the ncpot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <variant>

#include "ncpot/dirichlet.hpp"
#include "ncpot/report.hpp"

namespace ncpot {

// Closed-form metric field on a disc with exact z / z-bar derivatives.
//
//   FlatSum      P(z) = sum_i H_i(z)* H_i(z)         (seminegative generator)
//   DualFlatSum  P(z) = ((sum_i H_i(z)* H_i(z))^T)^{-1}  (semipositive generator)
//   Constant     P(z) = C
//   BlockDiag    P(z) = P_1(z) (+) ... (+) P_m(z)    (direct sum of subfields)
class MetricField {
 public:
  struct FlatSum {
    std::vector<MatrixPolynomial> terms;
  };
  struct DualFlatSum {
    std::vector<MatrixPolynomial> terms;
  };
  struct Constant {
    CMatrix value;
  };
  struct BlockDiag {
    std::vector<MetricField> parts;
  };

  MetricField() = default;
  static MetricField flat_sum(std::vector<MatrixPolynomial> terms,
                              DiscSpec domain = DiscSpec::unit());
  static MetricField dual_flat_sum(std::vector<MatrixPolynomial> terms,
                                   DiscSpec domain = DiscSpec::unit());
  static MetricField constant(const CMatrix& value, DiscSpec domain = DiscSpec::unit());
  static MetricField direct_sum(std::vector<MetricField> parts);

  int dim() const { return dim_; }
  const DiscSpec& domain() const { return domain_; }
  const std::variant<FlatSum, DualFlatSum, Constant, BlockDiag>& data() const {
    return data_;
  }
  bool is_dual() const { return std::holds_alternative<DualFlatSum>(data_); }

  // P(z), hermitian; DualFlatSum requires the inner sum invertible at z.
  CMatrix value(Complex z) const;

  struct Jet {
    CMatrix p, pz, pzb, pzzb;
  };
  Jet derivatives(Complex z) const;

  // Gauge transform z -> K(z)* P(z) K(z) for a FlatSum field (terms H_i K).
  MetricField gauged(const MatrixPolynomial& k) const;

 private:
  int dim_ = 0;
  DiscSpec domain_;
  std::variant<FlatSum, DualFlatSum, Constant, BlockDiag> data_;
};

// Exact (P, P_z, P_zbar, P_zzbar) at z.
MetricField::Jet derivatives_exact(const MetricField& field, Complex z);

// Pointwise curvature-sign data.  defect_neg = P_zzbar - P_zbar P^{-1} P_z;
// seminegative curvature at z means defect_neg >= 0, semipositive means
// defect_pos = -defect_neg >= 0.
struct CurvatureSample {
  Complex z{0.0, 0.0};
  CMatrix defect_neg;
  CMatrix defect_pos;
  double margin_neg = 0.0;  // lambda_min(defect_neg)
  double margin_pos = 0.0;  // lambda_min(defect_pos)
  double scale = 1.0;       // ||P_zzbar|| + ||P_zbar P^{-1} P_z||
};

CurvatureSample curvature_defect(const MetricField& field, Complex z);
// Shared assembly from precomputed derivatives (also used by the shift-family
// module, which evaluates jets by triangular solves).
CurvatureSample defect_from_jet(const MetricField::Jet& jet, Complex z);

// Second-order central differences of the field evaluator; agrees with the
// exact path to O(step^2).  step <= 0 selects eps^(1/4) * (1 + |z|), clipped
// by the distance to the domain boundary.
CurvatureSample curvature_fd(const MetricField& field, Complex z, double step = 0.0);

enum class CurvatureClass { flat, seminegative, semipositive, indefinite };

struct Classification {
  CurvatureClass cls = CurvatureClass::indefinite;
  double worst_neg = 0.0;  // min over grid of margin_neg (scale-relative)
  double worst_pos = 0.0;
  Complex witness_neg{0.0, 0.0};
  Complex witness_pos{0.0, 0.0};
};

Classification classify_field(const MetricField& field,
                              std::span<const Complex> grid, double tol = 1e-9);

// Brute-force seminegativity oracle: the circle average of <P phi, phi> must
// dominate its center value on every disc, for holomorphic phi.
CertReport subharmonicity_test(const MetricField& field, const VectorPolynomial& phi,
                               std::span<const DiscSpec> discs, double tol = 1e-9,
                               int quadrature_n = 64);
// Sample-based core (one disc), reusable with cached circle samples.
double subharmonic_margin(const BoundarySamples& p_samples, const CMatrix& p_center,
                          const VectorPolynomial& phi);

// Sub-mean-value check of log n(z), n(z) = ||Q(z)^{1/2} A(z) P(z)^{-1/2}||_2,
// for flat P, Q (the curvature-decreasing hypothesis holds with both sides 0).
CertReport log_norm_psh_test(const FlatMetric& p, const FlatMetric& q,
                             const MatrixPolynomial& a,
                             std::span<const DiscSpec> discs, double tol = 1e-9,
                             int quadrature_n = defaults::quadrature_min);

}  // namespace ncpot
