// Copyright 2026 the ncpot authors
// SPDX-License-Identifier: Apache-2.0

#include "ncpot/io.hpp"

#include <fstream>

namespace ncpot::io {

namespace {

json require(const json& j, const char* key) {
  if (!j.contains(key))
    throw InputError(std::string("json: missing key '") + key + "'");
  return j.at(key);
}

}  // namespace

json complex_to_json(Complex z) {
  return json::array({z.real(), z.imag()});
}

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw InputError("json: complex number must be [re, im]");
  return Complex(j.at(0).get<double>(), j.at(1).get<double>());
}

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index jc = 0; jc < m.cols(); ++jc)
      row.push_back(complex_to_json(m(i, jc)));
    rows.push_back(std::move(row));
  }
  return json{{"dim", m.rows()}, {"entries", std::move(rows)}};
}

CMatrix matrix_from_json(const json& j) {
  const int d = require(j, "dim").get<int>();
  if (d <= 0) throw InputError("json: matrix dim must be positive");
  const json& rows = require(j, "entries");
  if (!rows.is_array() || static_cast<int>(rows.size()) != d)
    throw InputError("json: entries row count does not match dim");
  CMatrix m(d, d);
  for (int i = 0; i < d; ++i) {
    const json& row = rows.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != d)
      throw InputError("json: entries column count does not match dim");
    for (int c = 0; c < d; ++c) m(i, c) = complex_from_json(row.at(c));
  }
  if (!is_finite(m)) throw InputError("json: non-finite matrix entry");
  return m;
}

json hermitian_to_json(const HermitianMatrix& m) {
  json j = matrix_to_json(m.mat());
  j["kind"] = "hermitian";
  return j;
}

HermitianMatrix hermitian_from_json(const json& j) {
  return HermitianMatrix::from(matrix_from_json(j));
}

json psd_to_json(const PsdMatrix& m) {
  json j = matrix_to_json(m.mat());
  j["kind"] = "psd";
  return j;
}

PsdMatrix psd_from_json(const json& j) {
  return PsdMatrix::from(hermitian_from_json(j));
}

json disc_to_json(const DiscSpec& d) {
  return json{{"z0", complex_to_json(d.center)}, {"r", d.radius}};
}

DiscSpec disc_from_json(const json& j) {
  return DiscSpec(complex_from_json(require(j, "z0")), require(j, "r").get<double>());
}

json samples_to_json(const BoundarySamples& s) {
  json vals = json::array();
  for (const CMatrix& v : s.values()) vals.push_back(matrix_to_json(v));
  return json{{"z0", complex_to_json(s.disc().center)},
              {"r", s.disc().radius},
              {"n", s.n()},
              {"values", std::move(vals)}};
}

BoundarySamples samples_from_json(const json& j) {
  const DiscSpec disc(complex_from_json(require(j, "z0")), require(j, "r").get<double>());
  const json& vals = require(j, "values");
  const int n = require(j, "n").get<int>();
  if (!vals.is_array() || static_cast<int>(vals.size()) != n)
    throw InputError("json: sample count does not match n");
  std::vector<CMatrix> values;
  values.reserve(n);
  for (const json& v : vals) values.push_back(matrix_from_json(v));
  return BoundarySamples::make(disc, std::move(values));
}

json laurent_to_json(const MatrixLaurentPolynomial& f) {
  json coeffs = json::object();
  for (int n = -f.band(); n <= f.band(); ++n)
    coeffs[std::to_string(n)] = matrix_to_json(f.coeff(n));
  return json{{"dim", f.dim()}, {"N", f.band()}, {"coeffs", std::move(coeffs)}};
}

MatrixLaurentPolynomial laurent_from_json(const json& j) {
  const int d = require(j, "dim").get<int>();
  const int band = require(j, "N").get<int>();
  const json& coeffs = require(j, "coeffs");
  std::vector<CMatrix> cs(2 * band + 1, CMatrix::Zero(d, d));
  for (int n = -band; n <= band; ++n) {
    const std::string key = std::to_string(n);
    if (coeffs.contains(key)) cs[n + band] = matrix_from_json(coeffs.at(key));
  }
  MatrixLaurentPolynomial f(d, band, std::move(cs));
  if (f.herm_defect() > 1e-9 * (1.0 + f.coeff_scale()))
    throw InputError("json: Laurent coefficients violate F_{-n} = F_n^*");
  f.enforce_symmetry();
  return f;
}

json poly_to_json(const MatrixPolynomial& h) {
  json coeffs = json::array();
  for (const CMatrix& c : h.coeffs()) coeffs.push_back(matrix_to_json(c));
  return json{{"dim", h.dim()}, {"N", h.degree()}, {"coeffs", std::move(coeffs)}};
}

MatrixPolynomial poly_from_json(const json& j) {
  const int d = require(j, "dim").get<int>();
  const json& coeffs = require(j, "coeffs");
  if (!coeffs.is_array() || coeffs.empty())
    throw InputError("json: polynomial coeffs must be a nonempty array");
  std::vector<CMatrix> cs;
  cs.reserve(coeffs.size());
  for (const json& c : coeffs) cs.push_back(matrix_from_json(c));
  return MatrixPolynomial(d, std::move(cs));
}

json flat_metric_to_json(const FlatMetric& fm) {
  return json{{"domain", disc_to_json(fm.domain())}, {"H", poly_to_json(fm.h())}};
}

FlatMetric flat_metric_from_json(const json& j) {
  return FlatMetric(poly_from_json(require(j, "H")),
                    disc_from_json(require(j, "domain")));
}

json field_to_json(const MetricField& f) {
  json j;
  j["domain"] = disc_to_json(f.domain());
  if (const auto* c = std::get_if<MetricField::Constant>(&f.data())) {
    j["variant"] = "constant";
    j["value"] = matrix_to_json(c->value);
    return j;
  }
  if (const auto* bd = std::get_if<MetricField::BlockDiag>(&f.data())) {
    j["variant"] = "direct_sum";
    json parts = json::array();
    for (const auto& p : bd->parts) parts.push_back(field_to_json(p));
    j["parts"] = std::move(parts);
    return j;
  }
  json terms = json::array();
  if (const auto* fs = std::get_if<MetricField::FlatSum>(&f.data())) {
    j["variant"] = "flat_sum";
    for (const auto& t : fs->terms) terms.push_back(poly_to_json(t));
  } else {
    const auto& ds = std::get<MetricField::DualFlatSum>(f.data());
    j["variant"] = "dual_flat_sum";
    for (const auto& t : ds.terms) terms.push_back(poly_to_json(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

MetricField field_from_json(const json& j) {
  const std::string variant = require(j, "variant").get<std::string>();
  const DiscSpec domain =
      j.contains("domain") ? disc_from_json(j.at("domain")) : DiscSpec::unit();
  if (variant == "constant")
    return MetricField::constant(matrix_from_json(require(j, "value")), domain);
  if (variant == "direct_sum") {
    const json& parts = require(j, "parts");
    std::vector<MetricField> fields;
    fields.reserve(parts.size());
    for (const json& p : parts) fields.push_back(field_from_json(p));
    return MetricField::direct_sum(std::move(fields));
  }
  const json& terms = require(j, "terms");
  if (!terms.is_array() || terms.empty())
    throw InputError("json: field terms must be a nonempty array");
  std::vector<MatrixPolynomial> ts;
  ts.reserve(terms.size());
  for (const json& t : terms) ts.push_back(poly_from_json(t));
  if (variant == "flat_sum") return MetricField::flat_sum(std::move(ts), domain);
  if (variant == "dual_flat_sum")
    return MetricField::dual_flat_sum(std::move(ts), domain);
  throw InputError("json: unknown field variant '" + variant + "'");
}

json cert_report_to_json(const CertReport& r) {
  json items = json::array();
  for (const auto& it : r.items)
    items.push_back(json{{"disc", disc_to_json(it.disc)}, {"margin", it.margin}});
  json j{{"pass", r.pass},
         {"worst_margin", r.worst_margin},
         {"witness", disc_to_json(r.witness)},
         {"witness_point", complex_to_json(r.witness_point)},
         {"margins", std::move(items)}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json factorization_report_to_json(const FactorizationReport& r) {
  return json{{"residual", r.residual},
              {"winding", r.winding},
              {"h0_hermiticity", r.h0_hermiticity},
              {"method", r.method == FactorMethod::bauer ? "bauer" : "wilson"},
              {"blocks_used", r.blocks_used},
              {"iterations", r.iterations},
              {"trailing_mass", r.trailing_mass},
              {"min_boundary_sigma", r.min_boundary_sigma},
              {"lift", r.lift}};
}

std::vector<Complex> points_from_json(const json& j) {
  if (!j.is_array()) throw InputError("json: points file must be an array");
  std::vector<Complex> pts;
  pts.reserve(j.size());
  for (const json& p : j) pts.push_back(complex_from_json(p));
  return pts;
}

std::vector<DiscSpec> discs_from_json(const json& j) {
  const json& arr = j.is_array() ? j : require(j, "discs");
  std::vector<DiscSpec> discs;
  discs.reserve(arr.size());
  for (const json& d : arr) discs.push_back(disc_from_json(d));
  return discs;
}

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("json parse error in " + path + ": " + e.what());
  }
}

void save_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open output file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace ncpot::io
