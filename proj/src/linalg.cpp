// Copyright 2026 the ncpot authors
// SPDX-License-Identifier: Apache-2.0

#include "ncpot/linalg.hpp"

#include <array>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace ncpot {

HermitianMatrix HermitianMatrix::from(const CMatrix& m, double tol) {
  if (m.rows() != m.cols())
    throw InputError("HermitianMatrix: matrix must be square");
  if (!is_finite(m))
    throw InputError("HermitianMatrix: non-finite entries");
  const double defect = (m - m.adjoint()).norm();
  if (defect > tol * (1.0 + m.norm()))
    throw InputError("HermitianMatrix: hermitian defect " + std::to_string(defect) +
                     " exceeds tolerance");
  return HermitianMatrix(symmetrize(m));
}

HermitianMatrix HermitianMatrix::symmetrized(const CMatrix& m) {
  if (m.rows() != m.cols())
    throw InputError("HermitianMatrix: matrix must be square");
  return HermitianMatrix(symmetrize(m));
}

PsdMatrix PsdMatrix::from(const HermitianMatrix& h, double tol) {
  const PsdCheck chk = is_psd(h, tol);
  if (!chk.psd)
    throw InputError("PsdMatrix: smallest eigenvalue " + std::to_string(chk.margin) +
                     " below PSD tolerance");
  return PsdMatrix(h, chk.margin);
}

BlockMatrix2x2::BlockMatrix2x2(HermitianMatrix a, CMatrix b, HermitianMatrix c)
    : a_(std::move(a)), c_(std::move(c)), b_(std::move(b)) {
  if (a_.dim() != c_.dim() || b_.rows() != a_.dim() || b_.cols() != c_.dim())
    throw InputError("BlockMatrix2x2: block dimensions disagree");
  if (!is_finite(b_)) throw InputError("BlockMatrix2x2: non-finite entries");
}

CMatrix BlockMatrix2x2::assembled() const {
  const Eigen::Index d = a_.dim();
  CMatrix m(2 * d, 2 * d);
  m.topLeftCorner(d, d) = a_.mat();
  m.topRightCorner(d, d) = b_;
  m.bottomLeftCorner(d, d) = b_.adjoint();
  m.bottomRightCorner(d, d) = c_.mat();
  return m;
}

double lambda_min(const CMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double lambda_max(const CMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(hermitian.rows() - 1);
}

double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

double min_singular(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

PsdCheck is_psd(const HermitianMatrix& m, double tol) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m.mat(), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double lmin = ev(0);
  const double norm2 = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  return {lmin >= -tol * (1.0 + norm2), lmin};
}

CMatrix sqrt_psd_raw(const CMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix inv_sqrt_psd(const CMatrix& hermitian, double floor_rel) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double top = ev(ev.size() - 1);
  if (top <= 0.0 || ev(0) < floor_rel * top)
    throw DegeneracyError("inv_sqrt_psd: matrix numerically singular");
  Eigen::VectorXd inv = ev.cwiseSqrt().cwiseInverse();
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
}

PsdMatrix sqrt_psd(const PsdMatrix& m) {
  CMatrix s = sqrt_psd_raw(m.mat());
  return PsdMatrix::from(HermitianMatrix::symmetrized(s));
}

HermitianMatrix schur_complement(const HermitianMatrix& a, const CMatrix& b,
                                 const PsdMatrix& c, double t) {
  if (!(t > 0.0)) throw InputError("schur_complement: t must be positive");
  if (a.dim() != c.dim() || b.rows() != a.dim() || b.cols() != c.dim())
    throw InputError("schur_complement: dimension mismatch");
  CMatrix ct = c.mat();
  ct.diagonal().array() += t;
  Eigen::LLT<CMatrix> llt(ct);
  if (llt.info() != Eigen::Success)
    throw DegeneracyError("schur_complement: c + t Id not positive definite");
  const CMatrix d = b * llt.solve(b.adjoint());
  return HermitianMatrix::symmetrized(a.mat() - d);
}

SchurLimit schur_complement_limit(const HermitianMatrix& a, const CMatrix& b,
                                  const PsdMatrix& c,
                                  std::span<const double> t_grid,
                                  double spread_tol) {
  const double c_scale = 1.0 + lambda_max(c.mat());
  const double a_scale = 1.0 + a.mat().operatorNorm();

  std::array<double, 4> default_grid{1e-3 * c_scale, 1e-5 * c_scale,
                                     1e-7 * c_scale, 1e-9 * c_scale};
  std::span<const double> grid =
      t_grid.empty() ? std::span<const double>(default_grid) : t_grid;
  if (grid.size() < 2)
    throw InputError("schur_complement_limit: need at least two t values");

  // D(t) = b (c + t Id)^{-1} b*, monotone nondecreasing as t decreases.
  std::vector<CMatrix> d_values;
  d_values.reserve(grid.size());
  double prev_t = std::numeric_limits<double>::infinity();
  for (double t : grid) {
    if (!(t > 0.0) || t >= prev_t)
      throw InputError("schur_complement_limit: t grid must be positive decreasing");
    prev_t = t;
    CMatrix ct = c.mat();
    ct.diagonal().array() += t;
    Eigen::LLT<CMatrix> llt(ct);
    if (llt.info() != Eigen::Success)
      throw DegeneracyError("schur_complement_limit: c + t Id not positive definite");
    CMatrix d = b * llt.solve(b.adjoint());
    d = symmetrize(d);
    if (!is_finite(d))
      throw DegeneracyError("schur_complement_limit: non-finite evaluation");
    d_values.push_back(std::move(d));
  }

  const double mono_tol = 1e-9;
  for (size_t j = 0; j + 1 < d_values.size(); ++j) {
    const double step_min = lambda_min(d_values[j + 1] - d_values[j]);
    const double d_scale = 1.0 + d_values[j].operatorNorm();
    if (step_min < -mono_tol * d_scale)
      throw DegeneracyError(
          "schur_complement_limit: D(t) not monotone; c effectively singular in a "
          "direction b touches");
  }

  // Linear-in-t Richardson step from the two smallest t values.  The
  // reported spread is the size of the extrapolation correction: it bounds
  // the residual error of the returned value and blows up on divergent
  // (1/t-type) data, while staying proportional to t_last on convergent data.
  const size_t last = d_values.size() - 1;
  const CMatrix diff = d_values[last] - d_values[last - 1];
  const double t1 = grid[last - 1], t2 = grid[last];
  const double spread = (t2 / (t1 - t2)) * diff.operatorNorm();
  if (!(spread <= spread_tol * a_scale))
    throw DegeneracyError("schur_complement_limit: t-limit spread " +
                          std::to_string(spread) + " exceeds tolerance (divergent limit)");

  CMatrix d_extrap = d_values[last] + (t2 / (t1 - t2)) * diff;
  d_extrap = symmetrize(d_extrap);
  return {HermitianMatrix::symmetrized(a.mat() - d_extrap), spread};
}

bool block_psd_test(const BlockMatrix2x2& block, double tol) {
  const CMatrix m = block.assembled();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double norm2 = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  return ev(0) >= -tol * (1.0 + norm2);
}

double block_psd_margin(const BlockMatrix2x2& block) {
  return lambda_min(block.assembled());
}

InvertibilityCert invertibility_certificate(std::span<const CMatrix> ms, double tol) {
  if (ms.empty()) throw InputError("invertibility_certificate: empty family");
  const Eigen::Index d = ms.front().rows();
  double worst = std::numeric_limits<double>::infinity();
  for (const CMatrix& m : ms) {
    if (m.rows() != d || m.cols() != d)
      throw InputError("invertibility_certificate: dimension mismatch in family");
    worst = std::min(worst, min_singular(m));
  }
  return {worst >= tol, worst};
}

}  // namespace ncpot
