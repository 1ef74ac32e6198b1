#include "witnesskit/json_io.hpp"

#include <cstdio>

#include "witnesskit/errors.hpp"

namespace witnesskit {

using nlohmann::json;

namespace {

json complex_to_json(cd_t z) { return json::array({z.real(), z.imag()}); }

cd_t complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw DomainError("bad_argument", "complex entries must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

json matrix_to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXcd matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw DomainError("bad_argument", "matrix must be an array of rows");
  Eigen::MatrixXcd m(static_cast<long>(j.size()), static_cast<long>(j[0].size()));
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (j[r].size() != j[0].size())
      throw DomainError("bad_argument", "matrix rows must have equal length");
    for (std::size_t c = 0; c < j[r].size(); ++c)
      m(static_cast<long>(r), static_cast<long>(c)) = complex_from_json(j[r][c]);
  }
  return m;
}

json vector_to_json(const Eigen::VectorXcd& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Eigen::VectorXcd vector_from_json(const json& j) {
  if (!j.is_array()) throw DomainError("bad_argument", "vector must be an array");
  Eigen::VectorXcd v(static_cast<long>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<long>(i)) = complex_from_json(j[i]);
  return v;
}

json decomposition_to_json(const LocalDecomposition& d) {
  json out;
  out["target_dims"] = d.target.dims;
  json settings = json::array();
  for (const auto& s : d.settings) {
    json js;
    json bases = json::array();
    for (const auto& b : s.bases) {
      json cols = json::array();
      for (int c = 0; c < b.cols(); ++c) cols.push_back(vector_to_json(b.col(c)));
      bases.push_back(std::move(cols));
    }
    js["bases"] = std::move(bases);
    json coeffs = json::array();
    for (int i = 0; i < s.coeffs.size(); ++i) coeffs.push_back(s.coeffs(i));
    js["coeffs"] = std::move(coeffs);
    settings.push_back(std::move(js));
  }
  out["settings"] = std::move(settings);
  return out;
}

LocalDecomposition decomposition_from_json(const json& j) {
  if (!j.contains("target_dims") || !j.contains("settings"))
    throw DomainError("bad_argument", "decomposition JSON needs target_dims and settings");
  LocalDecomposition d;
  std::vector<int> dims = j["target_dims"].get<std::vector<int>>();
  for (const auto& js : j["settings"]) {
    Setting s;
    for (const auto& jb : js.at("bases")) {
      if (!jb.is_array() || jb.empty())
        throw DomainError("bad_argument", "basis must be a nonempty array of columns");
      Eigen::VectorXcd first = vector_from_json(jb[0]);
      Eigen::MatrixXcd b(first.size(), static_cast<long>(jb.size()));
      b.col(0) = first;
      for (std::size_t c = 1; c < jb.size(); ++c) b.col(static_cast<long>(c)) = vector_from_json(jb[c]);
      s.bases.push_back(std::move(b));
    }
    std::vector<double> coeffs = js.at("coeffs").get<std::vector<double>>();
    s.coeffs = Eigen::Map<const Eigen::VectorXd>(coeffs.data(), static_cast<long>(coeffs.size()));
    d.settings.push_back(std::move(s));
  }
  d.target = identity_op(dims);
  d.target.mat.setZero();
  for (const auto& s : d.settings) d.target.mat += s.realize().mat;
  return d;
}

json tensor_decomposition_to_json(const TensorDecomposition& d) {
  json out;
  out["target_dims"] = d.target.dims;
  json terms = json::array();
  for (const auto& t : d.terms) {
    json jt;
    jt["coeff"] = t.coeff;
    json factors = json::array();
    for (const auto& f : t.factors) factors.push_back(matrix_to_json(f));
    jt["factors"] = std::move(factors);
    terms.push_back(std::move(jt));
  }
  out["terms"] = std::move(terms);
  return out;
}

TensorDecomposition tensor_decomposition_from_json(const json& j) {
  if (!j.contains("target_dims") || !j.contains("terms"))
    throw DomainError("bad_argument", "tensor decomposition JSON needs target_dims and terms");
  TensorDecomposition d;
  std::vector<int> dims = j["target_dims"].get<std::vector<int>>();
  for (const auto& jt : j["terms"]) {
    TensorTerm t;
    t.coeff = jt.at("coeff").get<double>();
    for (const auto& jf : jt.at("factors")) t.factors.push_back(matrix_from_json(jf));
    d.terms.push_back(std::move(t));
  }
  d.target = identity_op(dims);
  d.target.mat.setZero();
  if (!d.terms.empty()) d.target.mat = d.recompose().mat;
  return d;
}

std::string csv_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string fnv1a64_hex(std::string_view bytes) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

}  // namespace witnesskit
