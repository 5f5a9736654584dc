// Copyright 2026 the ncpot authors
// SPDX-License-Identifier: Apache-2.0

#include "ncpot/dirichlet.hpp"

#include <cmath>
#include <numbers>

namespace ncpot {

namespace {
constexpr double kPi = std::numbers::pi;
}

FlatMetric::FlatMetric(MatrixPolynomial h, DiscSpec domain)
    : h_(std::move(h)), domain_(domain) {
  if (h_.dim() <= 0) throw InputError("FlatMetric: empty factor");
}

CMatrix FlatMetric::factor_at(Complex z) const {
  if (!domain_.contains(z, 1e-9))
    throw InputError("FlatMetric: evaluation point outside the closed domain disc");
  return h_.eval(domain_.to_local(z));
}

CMatrix FlatMetric::value(Complex z) const {
  const CMatrix hv = factor_at(z);
  CMatrix p = hv.adjoint() * hv;
  return symmetrize(p);
}

PsdMatrix evaluate_metric(const FlatMetric& fm, Complex z) {
  return PsdMatrix::from(HermitianMatrix::symmetrized(fm.value(z)));
}

DirichletResult solve_dirichlet(const BoundarySamples& f, int trunc_degree,
                                double tol, FactorMethod method) {
  if (trunc_degree < 0 || 2 * trunc_degree + 1 > f.n())
    throw InputError("solve_dirichlet: truncation degree incompatible with samples");
  const double scale = f.scale();
  const double floor = margin_floor(scale);
  if (f.psd_margin() < floor)
    throw NotStrictlyPositiveError("solve_dirichlet: boundary data not strictly positive");

  DirichletResult out;

  // Raw truncation is exact on band-limited data; fall back to the Fejer
  // (positivity-preserving) truncation when it erodes the margin.
  TruncationResult raw = fourier_truncate(f, trunc_degree);
  MatrixLaurentPolynomial symbol = raw.poly.trimmed();
  const CircleRange raw_range = circle_range(symbol, next_pow2(std::max(
                                                         64, 4 * (trunc_degree + 1))));
  if (raw_range.margin >= floor) {
    out.truncation_error = raw.error;
    out.fejer_smoothed = false;
  } else {
    FejerResult fej = fejer_truncate(f, trunc_degree, 0.5 * floor);
    symbol = fej.poly.trimmed();
    double err = 0.0;
    for (int j = 0; j < f.n(); ++j)
      err = std::max(err, operator_norm(symbol.eval(f.local_point(j)) - f.value(j)));
    out.truncation_error = err;
    out.fejer_smoothed = true;
  }

  Factorization fact = fejer_riesz_factor(symbol, tol, method);
  out.factor_residual = fact.report.residual;
  out.report = fact.report;
  out.metric = FlatMetric(std::move(fact.h), f.disc());
  return out;
}

NewtonResult newton_schwarz_solve(const BoundarySamples& f, double tol,
                                  int max_iters, double region) {
  const int n = f.n();
  const int d = f.dim();
  const double scale = f.scale();
  if (f.psd_margin() < margin_floor(scale))
    throw NotStrictlyPositiveError("newton_schwarz_solve: data not strictly positive");

  // Normalize at the boundary point 1 (sample index 0).
  const CMatrix f1 = f.value(0);
  const CMatrix f1_sqrt = sqrt_psd_raw(f1);
  const CMatrix f1_isqrt = inv_sqrt_psd(f1);
  std::vector<CMatrix> ftilde(n);
  double dist = 0.0;
  for (int j = 0; j < n; ++j) {
    ftilde[j] = f1_isqrt * f.value(j) * f1_isqrt;
    ftilde[j] = symmetrize(ftilde[j]);
    dist = std::max(dist,
                    operator_norm(ftilde[j] - CMatrix::Identity(d, d)));
  }
  if (dist > region)
    throw ConvergenceError(
        "newton_schwarz_solve: data outside the perturbative neighborhood; "
        "use solve_dirichlet",
        dist);

  // Newton on h(w), h(1) = 0, target (Id + h)*(Id + h) = ftilde on the circle.
  std::vector<CMatrix> h(n, CMatrix::Zero(d, d));
  std::vector<CMatrix> rho(n);
  int iters = 0;
  double res = 0.0;
  for (;;) {
    res = 0.0;
    for (int j = 0; j < n; ++j) {
      const CMatrix e = CMatrix::Identity(d, d) + h[j];
      rho[j] = ftilde[j] - e.adjoint() * e;
      rho[j] = symmetrize(rho[j]);
      res = std::max(res, operator_norm(rho[j]));
    }
    if (res <= 0.5 * tol || iters >= max_iters) break;

    // Solve the linearization (delta* + delta)|circle = rho with delta(1) = 0.
    BoundarySamples rho_s = BoundarySamples::make(f.disc(), rho);
    MatrixPolynomial s = schwarz_integral(rho_s);
    const CMatrix s1 = s.eval(Complex(1.0, 0.0));
    for (int j = 0; j < n; ++j) h[j] += s.eval(f.local_point(j)) - s1;
    ++iters;
  }
  if (res > tol)
    throw ConvergenceError("newton_schwarz_solve: no convergence", res);

  std::vector<CMatrix> h_vals(n);
  for (int j = 0; j < n; ++j)
    h_vals[j] = (CMatrix::Identity(d, d) + h[j]) * f1_sqrt;
  std::vector<CMatrix> hat = dft_matrix_sequence(h_vals);
  hat.resize(n / 2);  // analytic part; tail is spectrally small
  MatrixPolynomial hp = MatrixPolynomial(d, std::move(hat)).trimmed(1e-13);
  hp = normalize_factor(hp);

  NewtonResult out;
  out.metric = FlatMetric(std::move(hp), f.disc());
  out.iterations = iters;
  double final_res = 0.0;
  for (int j = 0; j < n; ++j) {
    const CMatrix hv = out.metric.h().eval(f.local_point(j));
    final_res = std::max(final_res,
                         operator_norm(hv.adjoint() * hv - f.value(j)));
  }
  out.residual = final_res / (1.0 + scale);
  return out;
}

CertReport compare_boundary_interior(const FlatMetric& p, const FlatMetric& q,
                                     std::span<const Complex> interior_pts,
                                     double tol, int boundary_n) {
  if (p.dim() != q.dim())
    throw InputError("compare_boundary_interior: dimension mismatch");
  const DiscSpec dom = p.domain();
  if (std::abs(dom.center - q.domain().center) > 1e-12 ||
      std::abs(dom.radius - q.domain().radius) > 1e-12)
    throw InputError("compare_boundary_interior: domains differ");

  // Hypothesis check on the boundary: P >= Q there, else the theorem does
  // not apply (precondition failure, not a certificate failure).
  double bmargin = std::numeric_limits<double>::infinity();
  double bscale = 1.0;
  for (Complex z : circle_samples(dom, boundary_n)) {
    const CMatrix diff = p.value(z) - q.value(z);
    bmargin = std::min(bmargin, lambda_min(diff));
    bscale = std::max(bscale, operator_norm(p.value(z)));
  }
  if (bmargin < -tol * bscale)
    throw InputError("compare_boundary_interior: boundary ordering P >= Q fails "
                     "(margin " + std::to_string(bmargin) + ")");

  CertReport rep;
  rep.witness = dom;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (Complex z : interior_pts) {
    const double m = lambda_min(p.value(z) - q.value(z));
    if (m < rep.worst_margin) {
      rep.worst_margin = m;
      rep.witness_point = z;
    }
  }
  rep.pass = rep.worst_margin >= -tol * bscale;
  return rep;
}

double unitary_gauge_distance(const MatrixPolynomial& h1, const MatrixPolynomial& h2,
                              int grid_n) {
  if (h1.dim() != h2.dim())
    throw InputError("unitary_gauge_distance: dimension mismatch");
  const CMatrix a = h1.coeff(0);
  const CMatrix b = h2.coeff(0);
  if (min_singular(a) <= 1e-14 * (1.0 + operator_norm(a)) ||
      min_singular(b) <= 1e-14 * (1.0 + operator_norm(b)))
    throw DegeneracyError("unitary_gauge_distance: singular constant term");
  const CMatrix u = b * a.inverse();
  const int d = h1.dim();
  double dist = operator_norm(u.adjoint() * u - CMatrix::Identity(d, d));
  for (int j = 0; j < grid_n; ++j) {
    const double t = 2.0 * kPi * j / grid_n;
    const Complex w(std::cos(t), std::sin(t));
    dist = std::max(dist, operator_norm(h2.eval(w) - u * h1.eval(w)));
  }
  return dist;
}

std::vector<Complex> interior_grid(const DiscSpec& domain, int rings, int spokes,
                                   double fill) {
  std::vector<Complex> pts;
  pts.push_back(domain.center);
  for (int i = 1; i <= rings; ++i) {
    const double r = domain.radius * fill * double(i) / double(rings);
    for (int j = 0; j < spokes; ++j) {
      const double t = 2.0 * kPi * j / spokes;
      pts.push_back(domain.center + r * Complex(std::cos(t), std::sin(t)));
    }
  }
  return pts;
}

}  // namespace ncpot
