// Copyright 2026 the ncpot authors
// SPDX-License-Identifier: Apache-2.0
//
// ncpot: batch front-end for boundary factorization, flat Dirichlet solves,
// curvature classification, curvature-sign certificates, and the weighted
// shift metric family.
//
// Exit codes: 0 pass, 1 certificate negative, 2 input/usage error,
// 3 numerical degeneracy.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ncpot/harnack.hpp"
#include "ncpot/io.hpp"
#include "ncpot/selftest.hpp"

namespace {

using namespace ncpot;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;
constexpr int kExitDegenerate = 3;

void emit_error(const char* kind, const std::string& message) {
  json j{{"error", {{"kind", kind}, {"message", message}}}};
  std::cerr << j.dump() << "\n";
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct FactorArgs {
  std::string in, out, report;
  std::string method = "bauer";
  double tol = defaults::factor_tol;
};

int run_factor(const FactorArgs& a) {
  const MatrixLaurentPolynomial f = io::laurent_from_json(io::load_file(a.in));
  const FactorMethod method =
      a.method == "wilson" ? FactorMethod::wilson : FactorMethod::bauer;
  const Factorization fact = fejer_riesz_factor(f, a.tol, method);
  if (!a.out.empty()) io::save_file(a.out, io::poly_to_json(fact.h));
  const json rep = io::factorization_report_to_json(fact.report);
  if (!a.report.empty())
    io::save_file(a.report, rep);
  else
    std::cout << rep.dump(2) << "\n";
  return fact.report.pass(std::max(a.tol, 1e-8)) ? kExitPass : kExitDegenerate;
}

struct DirichletArgs {
  std::string boundary, out, eval_points;
  int degree = defaults::dirichlet_degree;
  double tol = defaults::factor_tol;
  std::string method = "bauer";
};

int run_dirichlet(const DirichletArgs& a) {
  const BoundarySamples f = io::samples_from_json(io::load_file(a.boundary));
  const FactorMethod method =
      a.method == "wilson" ? FactorMethod::wilson : FactorMethod::bauer;
  const DirichletResult res = solve_dirichlet(f, a.degree, a.tol, method);
  if (!a.out.empty()) io::save_file(a.out, io::flat_metric_to_json(res.metric));
  json summary{{"factor_residual", res.factor_residual},
               {"truncation_error", res.truncation_error},
               {"fejer_smoothed", res.fejer_smoothed},
               {"report", io::factorization_report_to_json(res.report)}};
  if (!a.eval_points.empty()) {
    json evals = json::array();
    for (Complex z : io::points_from_json(io::load_file(a.eval_points)))
      evals.push_back(json{{"z", io::complex_to_json(z)},
                           {"P", io::matrix_to_json(res.metric.value(z))}});
    summary["evaluations"] = std::move(evals);
  }
  std::cout << summary.dump(2) << "\n";
  return kExitPass;
}

struct CurvatureArgs {
  std::string field, out;
  int grid = 32;
  double tol = 1e-9;
};

int run_curvature(const CurvatureArgs& a) {
  const MetricField field = io::field_from_json(io::load_file(a.field));
  const int spokes = 8;
  const int rings = std::max(1, a.grid / spokes);
  const auto pts = interior_grid(field.domain(), rings, spokes);
  const Classification cls = classify_field(field, pts, a.tol);
  const char* name = cls.cls == CurvatureClass::flat           ? "flat"
                     : cls.cls == CurvatureClass::seminegative ? "seminegative"
                     : cls.cls == CurvatureClass::semipositive ? "semipositive"
                                                               : "indefinite";
  json j{{"classification", name},
         {"worst_neg_margin", cls.worst_neg},
         {"worst_pos_margin", cls.worst_pos},
         {"witness_neg", io::complex_to_json(cls.witness_neg)},
         {"witness_pos", io::complex_to_json(cls.witness_pos)},
         {"grid_points", pts.size()}};
  if (!a.out.empty())
    io::save_file(a.out, j);
  else
    std::cout << j.dump(2) << "\n";
  return kExitPass;
}

struct CertifyArgs {
  std::string field, discs, out, mode = "seminegative";
  double tol = 1e-9;
  int samples = defaults::quadrature_min;
  std::string profile_out, profile_center = "0,0";
  std::string profile_radii;
};

double parse_number(const std::string& s) {
  try {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw InputError("trailing characters in number: " + s);
    return v;
  } catch (const std::logic_error&) {
    throw InputError("cannot parse number: " + s);
  }
}

std::vector<double> parse_radii(const std::string& csv) {
  std::vector<double> out;
  size_t pos = 0;
  while (pos < csv.size()) {
    size_t next = csv.find(',', pos);
    if (next == std::string::npos) next = csv.size();
    out.push_back(parse_number(csv.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

Complex parse_complex(const std::string& csv) {
  const size_t comma = csv.find(',');
  if (comma == std::string::npos) return Complex(parse_number(csv), 0.0);
  return Complex(parse_number(csv.substr(0, comma)),
                 parse_number(csv.substr(comma + 1)));
}

int run_certify(const CertifyArgs& a) {
  const MetricField field = io::field_from_json(io::load_file(a.field));
  std::vector<DiscSpec> discs;
  if (!a.discs.empty())
    discs = io::discs_from_json(io::load_file(a.discs));
  else
    discs = default_disc_family(field.domain());

  if (!a.profile_out.empty()) {
    // Radial profile of the Schur mean (plot data).
    const Complex z0 = parse_complex(a.profile_center);
    std::vector<double> radii = a.profile_radii.empty()
                                    ? std::vector<double>{}
                                    : parse_radii(a.profile_radii);
    if (radii.empty()) {
      const double rmax =
          0.9 * (field.domain().radius - std::abs(z0 - field.domain().center));
      for (int i = 1; i <= 16; ++i) radii.push_back(rmax * i / 16.0);
    }
    std::FILE* fp = std::fopen(a.profile_out.c_str(), "w");
    if (fp == nullptr) throw InputError("cannot open " + a.profile_out);
    std::fputs("r,schur_norm,margin_vs_center\n", fp);
    const CMatrix p0 = field.value(z0);
    for (double r : radii) {
      const SchurMean sm = schur_mean(field, DiscSpec(z0, r), a.samples);
      std::fprintf(fp, "%s,%s,%s\n", format_double(r).c_str(),
                   format_double(operator_norm(sm.value.mat())).c_str(),
                   format_double(lambda_min(sm.value.mat() - p0)).c_str());
    }
    std::fclose(fp);
  }

  CertReport rep;
  if (a.mode == "seminegative") {
    const SemiNegReport sn = certify_seminegative(field, discs, a.tol, a.samples);
    rep = sn.cert;
  } else if (a.mode == "semipositive") {
    rep = certify_semipositive(field, discs, std::max(a.tol, 1e-8), a.samples);
  } else {
    throw InputError("certify: unknown mode '" + a.mode + "'");
  }
  const json j = io::cert_report_to_json(rep);
  if (!a.out.empty())
    io::save_file(a.out, j);
  else
    std::cout << j.dump(2) << "\n";
  return rep.pass ? kExitPass : kExitNegative;
}

struct HarnackArgs {
  double z0_re = 0.5, z0_im = 0.0;
  int kmax = 8, kmin = 1;
  int dim = 1024;
  std::string out, report;
  bool no_flat = false;
};

int run_harnack(const HarnackArgs& a) {
  HarnackOptions opts;
  opts.check_flatness = !a.no_flat;
  const HarnackFamily fam =
      harnack_family(Complex(a.z0_re, a.z0_im), a.kmin, a.kmax, a.dim, opts);

  std::string csv = "k,norm_pz0,lower_bound,p0_scalar\n";
  for (const HarnackEntry& e : fam.entries) {
    csv += std::to_string(e.k) + "," + format_double(e.norm_at_z0) + "," +
           format_double(e.lower_bound) + "," + format_double(e.p_zero_scalar) + "\n";
  }
  if (!a.out.empty()) {
    std::FILE* fp = std::fopen(a.out.c_str(), "w");
    if (fp == nullptr) throw InputError("cannot open " + a.out);
    std::fputs(csv.c_str(), fp);
    std::fclose(fp);
  } else {
    std::cout << csv;
  }
  if (!a.report.empty()) {
    json entries = json::array();
    for (const HarnackEntry& e : fam.entries)
      entries.push_back(json{{"k", e.k},
                             {"norm_pz0", e.norm_at_z0},
                             {"lower_bound", e.lower_bound},
                             {"p0_scalar", e.p_zero_scalar},
                             {"p0_offdiag", e.p_zero_offdiag},
                             {"boundary_margin", e.boundary_margin},
                             {"flat_margin", e.flat_margin}});
    io::save_file(a.report, json{{"z0", io::complex_to_json(fam.z0)},
                                 {"epsilon", fam.epsilon},
                                 {"dim", fam.dim},
                                 {"entries", std::move(entries)}});
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"noncommutative potential toolkit"};
  app.require_subcommand(1);

  FactorArgs fa;
  auto* factor = app.add_subcommand("factor", "spectral-factor a Laurent symbol");
  factor->add_option("--in", fa.in, "Laurent symbol JSON")->required();
  factor->add_option("--out", fa.out, "factor polynomial JSON");
  factor->add_option("--report", fa.report, "factorization report JSON");
  factor->add_option("--method", fa.method, "bauer|wilson")
      ->check(CLI::IsMember({"bauer", "wilson"}));
  factor->add_option("--tol", fa.tol, "relative residual tolerance");

  DirichletArgs da;
  auto* dirichlet = app.add_subcommand("dirichlet", "solve the flat Dirichlet problem");
  dirichlet->add_option("--boundary", da.boundary, "boundary samples JSON")->required();
  dirichlet->add_option("--degree", da.degree, "truncation degree");
  dirichlet->add_option("--out", da.out, "flat metric JSON");
  dirichlet->add_option("--eval", da.eval_points, "points JSON to evaluate P at");
  dirichlet->add_option("--tol", da.tol, "factorization tolerance");
  dirichlet->add_option("--method", da.method, "bauer|wilson")
      ->check(CLI::IsMember({"bauer", "wilson"}));

  CurvatureArgs ca;
  auto* curvature = app.add_subcommand("curvature", "classify the curvature sign");
  curvature->add_option("--field", ca.field, "metric field JSON")->required();
  curvature->add_option("--grid", ca.grid, "evaluation grid size");
  curvature->add_option("--tol", ca.tol, "margin tolerance");
  curvature->add_option("--out", ca.out, "classification JSON");

  CertifyArgs ce;
  auto* certify = app.add_subcommand("certify", "run a curvature-sign certificate");
  certify->add_option("--field", ce.field, "metric field JSON")->required();
  certify->add_option("--mode", ce.mode, "seminegative|semipositive")
      ->check(CLI::IsMember({"seminegative", "semipositive"}));
  certify->add_option("--discs", ce.discs, "disc family JSON");
  certify->add_option("--tol", ce.tol, "margin tolerance");
  certify->add_option("--samples", ce.samples, "quadrature sample count");
  certify->add_option("--out", ce.out, "certificate report JSON");
  certify->add_option("--profile-out", ce.profile_out, "Schur-mean radial profile CSV");
  certify->add_option("--profile-center", ce.profile_center, "profile center re,im");
  certify->add_option("--profile-radii", ce.profile_radii, "profile radii r1,r2,...");

  HarnackArgs ha;
  auto* harnack = app.add_subcommand("harnack", "weighted-shift metric family");
  harnack->add_option("--z0", ha.z0_re, "evaluation point on the real axis")->required();
  harnack->add_option("--z0-im", ha.z0_im, "imaginary part of z0");
  harnack->add_option("--kmin", ha.kmin, "first truncation index");
  harnack->add_option("--kmax", ha.kmax, "last truncation index");
  harnack->add_option("--dim", ha.dim, "matrix truncation dimension");
  harnack->add_option("--out", ha.out, "CSV output path");
  harnack->add_option("--report", ha.report, "diagnostics JSON path");
  harnack->add_flag("--no-flat-check", ha.no_flat, "skip the flatness probes");

  std::uint64_t seed = 20260809ULL;
  auto* selftest = app.add_subcommand("selftest", "run the built-in invariant battery");
  selftest->add_option("--seed", seed, "generator seed");

  // NCPOT_THREADS caps internal parallelism; results never depend on it.
  if (const char* threads = std::getenv("NCPOT_THREADS")) {
    const int n = std::atoi(threads);
    if (n >= 1) Eigen::setNbThreads(n);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInput;
  }

  try {
    if (factor->parsed()) return run_factor(fa);
    if (dirichlet->parsed()) return run_dirichlet(da);
    if (curvature->parsed()) return run_curvature(ca);
    if (certify->parsed()) return run_certify(ce);
    if (harnack->parsed()) return run_harnack(ha);
    if (selftest->parsed()) return run_selftest(seed, std::cout) ? kExitPass : kExitNegative;
  } catch (const InputError& e) {
    emit_error("input", e.what());
    return kExitInput;
  } catch (const DegeneracyError& e) {
    emit_error("degeneracy", e.what());
    return kExitDegenerate;
  } catch (const Error& e) {
    emit_error("error", e.what());
    return kExitDegenerate;
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return kExitDegenerate;
  }
  return kExitInput;
}
