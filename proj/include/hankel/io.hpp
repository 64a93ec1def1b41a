#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "hankel/family.hpp"
#include "hankel/identities.hpp"
#include "hankel/matrix.hpp"
#include "hankel/spectral.hpp"

namespace hankel::io {

using json = nlohmann::json;

inline constexpr const char* schema_version = "1";

/// Shortest decimal string that reads back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  if (res.ec != std::errc()) {
    throw std::runtime_error("format_double: conversion failed");
  }
  return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  return v;
}

inline json spec_to_json(const FamilySpec& spec) {
  json params = json::object();
  if (const auto* p = std::get_if<H1>(&spec.family)) {
    params["k"] = p->k;
    params["alpha"] = p->alpha;
  } else if (const auto* p = std::get_if<H2>(&spec.family)) {
    params["lambda"] = p->lambda;
  } else if (const auto* p = std::get_if<H4>(&spec.family)) {
    params["N"] = p->N;
    params["gamma"] = p->gamma;
    params["delta"] = p->delta;
  }
  return json{{"family", family_name(spec)}, {"block", block_name(spec.block)}, {"params", params}};
}

inline Block parse_block(const std::string& b) {
  if (b == "full") {
    return Block::full;
  }
  if (b == "even") {
    return Block::even;
  }
  if (b == "odd") {
    return Block::odd;
  }
  throw std::invalid_argument("unknown block '" + b + "' (expected full, even or odd)");
}

inline FamilySpec spec_from_json(const json& j) {
  const std::string fam = j.at("family").get<std::string>();
  const json& p = j.at("params");
  FamilySpec spec;
  if (fam == "h1") {
    spec = h1(p.at("k").get<double>(), p.at("alpha").get<double>());
  } else if (fam == "h2") {
    spec = h2(p.at("lambda").get<double>());
  } else if (fam == "h3") {
    spec = h3();
  } else if (fam == "h4") {
    spec = h4(p.at("N").get<int>(), p.at("gamma").get<double>(), p.at("delta").get<double>());
  } else {
    throw std::invalid_argument("unknown family '" + fam + "'");
  }
  spec.block = parse_block(j.value("block", std::string("full")));
  validate(spec);
  return spec;
}

/// {schema, family, block, params, size, strip_signs, entries} with entries as rows.
inline json matrix_to_json(const FamilySpec& spec, const DenseMatrix<double>& M, bool strip_signs = false) {
  json j = spec_to_json(spec);
  j["schema"] = schema_version;
  j["size"] = M.size();
  j["strip_signs"] = strip_signs;
  json rows = json::array();
  for (std::size_t m = 0; m < M.size(); ++m) {
    json row = json::array();
    for (std::size_t n = 0; n < M.size(); ++n) {
      row.push_back(M(m, n));
    }
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  return j;
}

struct MatrixDocument {
  FamilySpec spec;
  bool strip_signs = false;
  DenseMatrix<double> entries;
};

inline MatrixDocument matrix_from_json(const json& j) {
  if (j.value("schema", std::string()) != schema_version) {
    throw std::invalid_argument("matrix document: unsupported schema (expected \"1\")");
  }
  MatrixDocument doc{spec_from_json(j), j.value("strip_signs", false), DenseMatrix<double>(j.at("size").get<std::size_t>())};
  const json& rows = j.at("entries");
  if (rows.size() != doc.entries.size()) {
    throw std::invalid_argument("matrix document: row count does not match size");
  }
  for (std::size_t m = 0; m < rows.size(); ++m) {
    if (rows[m].size() != doc.entries.size()) {
      throw std::invalid_argument("matrix document: ragged row " + std::to_string(m));
    }
    for (std::size_t n = 0; n < rows[m].size(); ++n) {
      doc.entries(m, n) = rows[m][n].get<double>();
    }
  }
  return doc;
}

/// Column-major CSV: line j lists column j of the matrix.
inline void write_matrix_csv(std::ostream& os, const DenseMatrix<double>& M) {
  for (std::size_t n = 0; n < M.size(); ++n) {
    for (std::size_t m = 0; m < M.size(); ++m) {
      if (m > 0) {
        os << ',';
      }
      os << format_double(M(m, n));
    }
    os << '\n';
  }
}

inline DenseMatrix<double> read_matrix_csv(std::istream& is) {
  std::vector<std::vector<double>> cols;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) {
      continue;
    }
    std::vector<double> col;
    std::size_t start = 0;
    while (start <= line.size()) {
      const std::size_t comma = line.find(',', start);
      const std::size_t end = comma == std::string::npos ? line.size() : comma;
      col.push_back(parse_double(line.substr(start, end - start)));
      if (comma == std::string::npos) {
        break;
      }
      start = comma + 1;
    }
    cols.push_back(std::move(col));
  }
  DenseMatrix<double> M(cols.size());
  for (std::size_t n = 0; n < cols.size(); ++n) {
    if (cols[n].size() != cols.size()) {
      throw std::invalid_argument("matrix csv: not square");
    }
    for (std::size_t m = 0; m < cols.size(); ++m) {
      M(m, n) = cols[n][m];
    }
  }
  return M;
}

inline json spectrum_to_json(const SpectrumReport& r) {
  json j;
  j["schema"] = schema_version;
  j["spec"] = spec_to_json(r.spec);
  j["strip_signs"] = r.strip_signs;
  j["sizes"] = r.sizes;
  j["eigenvalues"] = r.eigenvalues;
  j["lambda_max"] = r.lambda_max;
  j["enclosure"] = {r.lower_bound, r.upper_bound};
  j["enclosure_ok"] = r.enclosure_ok;
  j["lambda_max_monotone"] = r.lambda_max_monotone;
  return j;
}

/// CSV with columns size,index,eigenvalue.
inline void write_spectrum_csv(std::ostream& os, const SpectrumReport& r) {
  os << "size,index,eigenvalue\n";
  for (std::size_t i = 0; i < r.sizes.size(); ++i) {
    for (std::size_t k = 0; k < r.eigenvalues[i].size(); ++k) {
      os << r.sizes[i] << ',' << k << ',' << format_double(r.eigenvalues[i][k]) << '\n';
    }
  }
}

/// CSV with columns x,density (absolutely continuous) or x,mass (atoms).
inline void write_density_csv(std::ostream& os, const SpectralRep& rep, double lo, double hi, std::size_t points) {
  if (const auto* ac = std::get_if<AbsolutelyContinuous>(&rep.measure)) {
    os << "x,density\n";
    lo = std::max(lo, ac->lower);
    hi = std::min(hi, ac->upper);
    for (std::size_t i = 0; i < points; ++i) {
      const double x = points == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
      os << format_double(x) << ',' << format_double(ac->density(x)) << '\n';
    }
    return;
  }
  const auto& dm = std::get<Discrete>(rep.measure);
  os << "x,mass\n";
  for (std::size_t j = 0; j < points; ++j) {
    if (dm.count && j >= *dm.count) {
      break;
    }
    const double x = dm.location(j);
    if (x > hi) {
      break;
    }
    if (x >= lo) {
      os << format_double(x) << ',' << format_double(dm.mass(j)) << '\n';
    }
  }
}

inline json identity_to_json(const IdentityReport& r) {
  return json{{"name", r.name},           {"lhs", r.lhs},         {"rhs", r.rhs},
              {"rel_err", r.rel_err},     {"abs_err", r.abs_err}, {"method", method_name(r.method)},
              {"tail_bound", r.tail_bound}, {"exponent10", r.exponent10}};
}

}  // namespace hankel::io
