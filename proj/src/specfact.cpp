// Copyright 2026 the ncpot authors
// SPDX-License-Identifier: Apache-2.0

#include "ncpot/specfact.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Cholesky>
#include <Eigen/LU>

namespace ncpot {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Complex> unit_circle_grid(int n) {
  std::vector<Complex> w(n);
  for (int j = 0; j < n; ++j) {
    const double t = 2.0 * kPi * j / n;
    w[j] = Complex(std::cos(t), std::sin(t));
  }
  return w;
}

int validation_grid_size(int band) {
  return next_pow2(std::max(64, 8 * (2 * band + 1)));
}

// Residual, winding and boundary invertibility of a candidate factor.
void validate_factor(const MatrixLaurentPolynomial& f, const MatrixPolynomial& h,
                     double scale, FactorizationReport& report) {
  int n = validation_grid_size(std::max(f.band(), h.degree()));
  double residual = 0.0;
  double min_sigma = std::numeric_limits<double>::infinity();
  for (int attempt = 0;; ++attempt) {
    std::vector<Complex> dets;
    dets.reserve(n);
    residual = 0.0;
    min_sigma = std::numeric_limits<double>::infinity();
    bool det_ok = true;
    for (Complex w : unit_circle_grid(n)) {
      const CMatrix hv = h.eval(w);
      residual = std::max(residual, operator_norm(hv.adjoint() * hv - f.eval(w)));
      min_sigma = std::min(min_sigma, min_singular(hv));
      const Complex det = Eigen::PartialPivLU<CMatrix>(hv).determinant();
      if (det == Complex(0.0, 0.0)) det_ok = false;
      dets.push_back(det);
    }
    report.residual = residual / (1.0 + scale);
    report.min_boundary_sigma = min_sigma;
    if (!det_ok) {
      report.winding = -1;
      return;
    }
    try {
      report.winding = winding_number(dets);
      return;
    } catch (const ResolutionError&) {
      if (attempt >= 6) {
        report.winding = -1;
        return;
      }
      n *= 2;
    }
  }
}

// ---- Bauer kernel -----------------------------------------------------------

// Banded block Cholesky of the Toeplitz sections T_{ij} = F_{j-i}.  Rows only
// couple to the previous N rows, so the factorization streams through a ring
// buffer; the trailing row yields the factor candidate H_u = L_{m, m-u}^*.
class BauerStream {
 public:
  explicit BauerStream(const MatrixLaurentPolynomial& f)
      : f_(f), d_(f.dim()), band_(f.band()), rows_(band_ + 1) {}

  // Factor one more row; returns false on Cholesky breakdown.
  bool step() {
    const int i = next_row_++;
    auto& row = rows_[i % (band_ + 1)];
    row.assign(band_ + 1, CMatrix());
    for (int j = std::max(0, i - band_); j <= i; ++j) {
      CMatrix m = f_.coeff(j - i);
      const int k_lo = std::max({0, i - band_, j - band_});
      for (int k = k_lo; k < j; ++k)
        m -= block(i, k, row) * block(j, k, rows_[j % (band_ + 1)]).adjoint();
      if (j < i) {
        const CMatrix& ljj = block(j, j, rows_[j % (band_ + 1)]);
        // Solve X L_jj^* = M  =>  X = (L_jj^{-1} M^*)^*.
        row[band_ - (i - j)] =
            ljj.triangularView<Eigen::Lower>().solve(m.adjoint()).adjoint();
      } else {
        Eigen::LLT<CMatrix> llt(m);
        if (llt.info() != Eigen::Success) return false;
        row[band_] = llt.matrixL();
      }
    }
    return true;
  }

  int rows_done() const { return next_row_; }

  // Candidate coefficients H_u = (L_{m, m-u})^* from the last factored row.
  std::vector<CMatrix> candidate() const {
    const int m = next_row_ - 1;
    const auto& row = rows_[m % (band_ + 1)];
    std::vector<CMatrix> h(band_ + 1, CMatrix::Zero(d_, d_));
    for (int u = 0; u <= band_ && u <= m; ++u) h[u] = row[band_ - u].adjoint();
    return h;
  }

 private:
  // Block L_{i,k} of logical row i (k in [i-band, i]), given that row's store.
  const CMatrix& block(int i, int k, const std::vector<CMatrix>& row) const {
    return row[band_ - (i - k)];
  }

  const MatrixLaurentPolynomial& f_;
  int d_, band_;
  int next_row_ = 0;
  std::vector<std::vector<CMatrix>> rows_;
};

double candidate_diff(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s = std::max(s, operator_norm(a[i] - b[i]));
  return s;
}

// ---- Wilson kernel ----------------------------------------------------------

struct WilsonState {
  std::vector<CMatrix> h;  // factor values on the grid
  int iterations = 0;
  double residual = 0.0;
};

double wilson_residual(const std::vector<CMatrix>& h, const std::vector<CMatrix>& fv,
                       double scale) {
  double r = 0.0;
  for (size_t j = 0; j < h.size(); ++j)
    r = std::max(r, operator_norm(h[j].adjoint() * h[j] - fv[j]));
  return r / (1.0 + scale);
}

// One Newton sweep: H <- G H with G the half-zero-mode analytic projection of
// Y = H^{-*} F H^{-1} + Id, computed spectrally on the grid.
bool wilson_sweep(std::vector<CMatrix>& h, const std::vector<CMatrix>& fv) {
  const int n = static_cast<int>(h.size());
  const int d = static_cast<int>(h.front().rows());
  std::vector<CMatrix> y(n);
  for (int j = 0; j < n; ++j) {
    Eigen::PartialPivLU<CMatrix> lu(h[j]);
    const CMatrix hinv = lu.inverse();
    if (!is_finite(hinv)) return false;
    y[j] = hinv.adjoint() * fv[j] * hinv + CMatrix::Identity(d, d);
  }
  std::vector<CMatrix> hat = dft_matrix_sequence(y);
  hat[0] *= 0.5;
  for (int k = n / 2; k < n; ++k) hat[k].setZero();
  const std::vector<CMatrix> g = idft_matrix_sequence(hat);
  for (int j = 0; j < n; ++j) {
    h[j] = g[j] * h[j];
    if (!is_finite(h[j])) return false;
  }
  return true;
}

std::vector<CMatrix> sample_symbol(const MatrixLaurentPolynomial& f, int n) {
  std::vector<CMatrix> fv(n);
  const auto grid = unit_circle_grid(n);
  for (int j = 0; j < n; ++j) {
    fv[j] = f.eval(grid[j]);
    fv[j] = symmetrize(fv[j]);
  }
  return fv;
}

WilsonState wilson_on_grid(const MatrixLaurentPolynomial& f, int n, double tol,
                           int max_iters, double scale) {
  constexpr int kMaxGrid = 1 << 15;
  std::vector<CMatrix> fv = sample_symbol(f, n);
  std::vector<CMatrix> hat0 = dft_matrix_sequence(fv);
  WilsonState st;
  st.h.assign(n, sqrt_psd_raw(symmetrize(hat0[0])));
  st.residual = wilson_residual(st.h, fv, scale);
  double prev = std::numeric_limits<double>::infinity();
  while (st.residual > tol && st.iterations < max_iters) {
    // Quadratic convergence plateaus at the grid's aliasing floor; a stall
    // above tolerance means the iterate's analytic tail needs more samples.
    if (st.residual > 0.5 * prev && n < kMaxGrid) {
      std::vector<CMatrix> hat = dft_matrix_sequence(st.h);
      hat.resize(2 * n, CMatrix::Zero(f.dim(), f.dim()));
      st.h = idft_matrix_sequence(hat);
      n *= 2;
      fv = sample_symbol(f, n);
      st.residual = wilson_residual(st.h, fv, scale);
      prev = std::numeric_limits<double>::infinity();
      continue;
    }
    if (!wilson_sweep(st.h, fv)) {
      st.residual = std::numeric_limits<double>::infinity();
      return st;
    }
    ++st.iterations;
    prev = st.residual;
    st.residual = wilson_residual(st.h, fv, scale);
    if (!std::isfinite(st.residual)) return st;
  }
  return st;
}

// Coefficients of the grid factor, truncated to the target degree; the mass
// beyond it is returned separately.
std::pair<std::vector<CMatrix>, double> grid_to_coeffs(const std::vector<CMatrix>& h,
                                                       int degree) {
  const int n = static_cast<int>(h.size());
  std::vector<CMatrix> hat = dft_matrix_sequence(h);
  double trailing = 0.0;
  for (int k = degree + 1; k < n; ++k) trailing = std::max(trailing, hat[k].norm());
  hat.resize(degree + 1);
  return {std::move(hat), trailing};
}

void check_preconditions(const MatrixLaurentPolynomial& f) {
  const double defect = f.herm_defect();
  if (defect > 1e-9 * (1.0 + f.coeff_scale()))
    throw InputError("factorization: Laurent symbol is not hermitian-symmetric");
}

}  // namespace

CircleRange circle_range(const MatrixLaurentPolynomial& f, int n_grid) {
  CircleRange out;
  out.margin = std::numeric_limits<double>::infinity();
  for (Complex w : unit_circle_grid(n_grid)) {
    CMatrix v = f.eval(w);
    v = symmetrize(v);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(v, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    out.margin = std::min(out.margin, ev(0));
    out.scale = std::max(out.scale, std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1))));
  }
  return out;
}

double lift_to_margin(MatrixLaurentPolynomial& f, double target, int n_grid) {
  const CircleRange r = circle_range(f, n_grid);
  if (r.margin >= target) return 0.0;
  const double eps = target - r.margin;
  f = f.lifted(eps);
  return eps;
}

MatrixPolynomial normalize_factor(const MatrixPolynomial& h) {
  const CMatrix h0 = h.coeff(0);
  const double h0_norm = operator_norm(h0);
  if (min_singular(h0) <= 1e-14 * std::max(1.0, h0_norm))
    throw DegeneracyError("normalize_factor: H(0) numerically singular");
  const CMatrix u = sqrt_psd_raw(h0.adjoint() * h0) * h0.inverse();
  const int d = h.dim();
  const double unit_defect =
      operator_norm(u.adjoint() * u - CMatrix::Identity(d, d));
  if (unit_defect > 1e-10)
    throw DegeneracyError("normalize_factor: gauge rotation not unitary, defect " +
                          std::to_string(unit_defect));
  MatrixPolynomial out = h.left_mul(u);
  out.coeff(0) = symmetrize(out.coeff(0));
  return out;
}

Factorization factor_bauer(const MatrixLaurentPolynomial& f, double tol,
                           int max_blocks) {
  check_preconditions(f);
  const MatrixLaurentPolynomial ft = f.trimmed();
  const int band = ft.band();
  const CircleRange range = circle_range(ft, validation_grid_size(band));
  if (range.margin < margin_floor(range.scale))
    throw NotStrictlyPositiveError(
        "factor_bauer: symbol circle margin below the strict-positivity floor");

  FactorizationReport report;
  report.method = FactorMethod::bauer;

  BauerStream stream(ft);
  int checkpoint = std::max(2 * band + 2, 16);
  std::vector<CMatrix> prev;
  bool converged = false;
  while (!converged && stream.rows_done() < max_blocks) {
    if (!stream.step())
      throw NotStrictlyPositiveError("factor_bauer: Cholesky breakdown (symbol not positive)");
    if (stream.rows_done() == checkpoint) {
      std::vector<CMatrix> current = stream.candidate();
      if (!prev.empty() &&
          candidate_diff(current, prev) <= 0.25 * tol * (1.0 + range.scale))
        converged = true;
      prev = std::move(current);
      checkpoint *= 2;
    }
  }
  if (!converged) {
    const double res = prev.empty() ? std::numeric_limits<double>::infinity()
                                    : candidate_diff(stream.candidate(), prev);
    throw ConvergenceError("factor_bauer: Toeplitz section budget exhausted", res);
  }
  report.blocks_used = stream.rows_done();

  MatrixPolynomial h = normalize_factor(MatrixPolynomial(ft.dim(), stream.candidate()));
  report.h0_hermiticity =
      (h.coeff(0) - h.coeff(0).adjoint()).norm() / (1.0 + h.coeff(0).norm());
  validate_factor(ft, h, range.scale, report);
  return {std::move(h), report};
}

Factorization factor_wilson(const MatrixLaurentPolynomial& f, double tol,
                            int max_iters) {
  check_preconditions(f);
  MatrixLaurentPolynomial ft = f.trimmed();
  const int band = ft.band();
  const int n = validation_grid_size(band);
  const CircleRange range = circle_range(ft, n);
  if (range.margin < margin_floor(range.scale))
    throw NotStrictlyPositiveError(
        "factor_wilson: symbol circle margin below the strict-positivity floor");

  FactorizationReport report;
  report.method = FactorMethod::wilson;

  // The Newton sweep can lose circle invertibility on hard symbols; restart
  // with a reported +eps*Id lift.
  double lift = 0.0;
  WilsonState st;
  for (int restart = 0;; ++restart) {
    st = wilson_on_grid(ft, n, 0.25 * tol, max_iters, range.scale);
    if (std::isfinite(st.residual) && st.residual <= 0.25 * tol) break;
    if (restart >= 3)
      throw ConvergenceError("factor_wilson: iteration budget exhausted", st.residual);
    const double eps = std::max(1e-10 * range.scale, 100.0 * lift);
    ft = ft.lifted(eps);
    lift += eps;
  }
  report.iterations = st.iterations;
  report.lift = lift;

  auto [coeffs, trailing] = grid_to_coeffs(st.h, band);
  report.trailing_mass = trailing / (1.0 + range.scale);
  MatrixPolynomial h = normalize_factor(MatrixPolynomial(ft.dim(), std::move(coeffs)));
  report.h0_hermiticity =
      (h.coeff(0) - h.coeff(0).adjoint()).norm() / (1.0 + h.coeff(0).norm());
  validate_factor(f.trimmed(), h, range.scale, report);
  return {std::move(h), report};
}

Factorization fejer_riesz_factor(const MatrixLaurentPolynomial& f, double tol,
                                 FactorMethod method) {
  return method == FactorMethod::bauer ? factor_bauer(f, tol) : factor_wilson(f, tol);
}

DualFactor dual_boundary_factor(const BoundarySamples& p, double tol) {
  const int n = p.n();
  const int d = p.dim();
  const double margin = p.psd_margin();
  const double scale = p.scale();
  if (margin < margin_floor(scale))
    throw NotStrictlyPositiveError(
        "dual_boundary_factor: boundary data not strictly positive");

  // q = (P^{-1})^T on the circle: hermitian, strictly positive, and analytic
  // in the band, so its Fourier tail decays geometrically.
  std::vector<CMatrix> q(n);
  for (int j = 0; j < n; ++j) {
    Eigen::LLT<CMatrix> llt(p.value(j));
    if (llt.info() != Eigen::Success)
      throw DegeneracyError("dual_boundary_factor: sample not positive definite");
    q[j] = llt.solve(CMatrix::Identity(d, d)).transpose();
    q[j] = symmetrize(q[j]);
  }
  const std::vector<CMatrix> hat = dft_matrix_sequence(q);

  // Effective band of q from its coefficient tail.
  double q_scale = 0.0;
  for (const CMatrix& m : hat) q_scale = std::max(q_scale, m.norm());
  int band_eff = 0;
  for (int k = 1; k <= n / 2 - 1; ++k) {
    const double mass = std::max(hat[k].norm(), hat[n - k].norm());
    if (mass > 1e-13 * q_scale) band_eff = k;
  }

  int degree = std::min(std::max(8, 4 * band_eff), n / 2 - 1);
  DualFactor out;
  for (;;) {
    std::vector<CMatrix> coeffs(2 * degree + 1);
    for (int m = -degree; m <= degree; ++m) coeffs[m + degree] = hat[(m + n) % n];
    MatrixLaurentPolynomial ql(d, degree, std::move(coeffs));
    ql.enforce_symmetry();
    Factorization k = factor_wilson(ql, std::min(tol * 1e-2, 1e-10));
    MatrixPolynomial h = k.h.transpose_coeffs();

    double residual = 0.0;
    for (int j = 0; j < n; ++j) {
      const CMatrix hv = h.eval(p.local_point(j));
      residual = std::max(
          residual,
          operator_norm(hv.adjoint() * p.value(j) * hv - CMatrix::Identity(d, d)));
    }
    if (residual <= tol || degree >= n / 2 - 1) {
      if (residual > tol)
        throw ConvergenceError(
            "dual_boundary_factor: residual floor not reached at the sample band "
            "limit; refine the circle sampling",
            residual);
      out.h = std::move(h);
      out.residual = residual;
      out.degree = degree;
      return out;
    }
    degree = std::min(2 * degree, n / 2 - 1);
  }
}

}  // namespace ncpot
