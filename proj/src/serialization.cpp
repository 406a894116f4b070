// Copyright 2026 The litsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "litsim/serialization.hpp"

#include <cmath>
#include <limits>

namespace litsim {

namespace json_check {

void object_with_keys(const Json& j, const std::string& path,
                      std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(path + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw ConfigError(path + "." + key + ": unknown key");
  }
}

const Json& required(const Json& j, const char* key, const std::string& path) {
  if (!j.contains(key)) throw ConfigError(path + "." + key + ": missing required field");
  return j.at(key);
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path + ": expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path + ": must be finite");
  return x;
}

std::vector<double> number_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::string string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path + ": expected a string");
  return j.get<std::string>();
}

std::uint64_t unsigned_integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() &&
                                 j.get<std::int64_t>() < 0)) {
    throw ConfigError(path + ": expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

}  // namespace json_check

using namespace json_check;

Json to_json(const ComplexMatrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (const auto& z : m.entries()) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return {{"dim", m.dim()}, {"re", re}, {"im", im}};
}

Json complex_vector_to_json(const std::vector<Complex>& v) {
  Json re = Json::array();
  Json im = Json::array();
  for (const auto& z : v) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return {{"re", re}, {"im", im}};
}

Json to_json(const Strategy& s) {
  Json ls = Json::array();
  for (const auto& l : s.lindblad_ops()) ls.push_back(to_json(l));
  return {{"label", s.label()}, {"H", to_json(s.hamiltonian().matrix())}, {"L", ls}};
}

Json to_json(const LITParams& p) {
  return {{"U", to_json(p.u())},
          {"Gamma", complex_vector_to_json(p.gamma())},
          {"phi", p.phi()}};
}

Json to_json(const QubitLITParams& q) {
  return {{"alpha_mag", q.alpha_mag}, {"theta0", q.theta0}, {"theta_rate", q.theta_rate}};
}

std::vector<Complex> complex_vector_from_json(const Json& j, const std::string& path) {
  object_with_keys(j, path, {"re", "im"});
  const auto re = number_array(required(j, "re", path), path + ".re");
  const auto im = number_array(required(j, "im", path), path + ".im");
  if (re.size() != im.size()) {
    throw ConfigError(path + ": \"re\" and \"im\" have different lengths");
  }
  std::vector<Complex> out(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) out[i] = {re[i], im[i]};
  return out;
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& path) {
  object_with_keys(j, path, {"dim", "re", "im"});
  const auto dim = unsigned_integer(required(j, "dim", path), path + ".dim");
  if (dim == 0) throw ConfigError(path + ".dim: must be positive");
  const auto re = number_array(required(j, "re", path), path + ".re");
  const auto im = number_array(required(j, "im", path), path + ".im");
  if (re.size() != dim * dim || im.size() != dim * dim) {
    throw ConfigError(path + ": expected " + std::to_string(dim * dim) +
                      " entries in \"re\" and \"im\"");
  }
  std::vector<Complex> entries(dim * dim);
  for (std::size_t k = 0; k < entries.size(); ++k) entries[k] = {re[k], im[k]};
  return ComplexMatrix(dim, std::move(entries));
}

Strategy strategy_from_json(const Json& j, const std::string& path) {
  object_with_keys(j, path, {"label", "H", "L"});
  std::string label;
  if (j.contains("label")) label = string(j.at("label"), path + ".label");
  ComplexMatrix h = matrix_from_json(required(j, "H", path), path + ".H");
  if (!HermitianOperator::is_hermitian(h)) {
    throw ConfigError(path + ".H: not Hermitian (tolerance 1e-10 relative)");
  }
  std::vector<ComplexMatrix> ls;
  if (j.contains("L")) {
    const Json& arr = j.at("L");
    if (!arr.is_array()) throw ConfigError(path + ".L: expected an array of matrices");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string p = path + ".L[" + std::to_string(i) + "]";
      ls.push_back(matrix_from_json(arr[i], p));
      if (ls.back().dim() != h.dim()) {
        throw ConfigError(p + ": dimension differs from H");
      }
    }
  }
  return Strategy(HermitianOperator(std::move(h)), std::move(ls), std::move(label));
}

LITParams lit_params_from_json(const Json& j, const std::string& path) {
  object_with_keys(j, path, {"U", "Gamma", "phi"});
  ComplexMatrix u = matrix_from_json(required(j, "U", path), path + ".U");
  auto gamma = complex_vector_from_json(required(j, "Gamma", path), path + ".Gamma");
  const double phi = j.contains("phi") ? number(j.at("phi"), path + ".phi") : 0.0;
  if (gamma.size() != u.dim()) {
    throw ConfigError(path + ".Gamma: length " + std::to_string(gamma.size()) +
                      " does not match U dimension " + std::to_string(u.dim()));
  }
  const double defect = LITParams::unitarity_defect(u);
  if (!(defect <= LITParams::kUnitarityTolerance)) {
    throw ConfigError(path + ".U: not unitary, ||U U^dag - I||_max = " +
                      std::to_string(defect) + " exceeds tolerance 1e-10");
  }
  return LITParams(std::move(u), std::move(gamma), phi);
}

QubitLITParams qubit_lit_params_from_json(const Json& j, const std::string& path) {
  object_with_keys(j, path, {"alpha_mag", "theta0", "theta_rate"});
  QubitLITParams q;
  q.alpha_mag = number(required(j, "alpha_mag", path), path + ".alpha_mag");
  if (j.contains("theta0")) q.theta0 = number(j.at("theta0"), path + ".theta0");
  if (j.contains("theta_rate")) q.theta_rate = number(j.at("theta_rate"), path + ".theta_rate");
  if (q.alpha_mag < 0.0) throw ConfigError(path + ".alpha_mag: must be >= 0");
  return q;
}

}  // namespace litsim
