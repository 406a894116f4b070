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

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "litsim/lit.hpp"

namespace litsim {

using Json = nlohmann::json;

// Matrices:   {"dim": n, "re": [...], "im": [...]}, row-major.
// Strategies: {"label": str, "H": matrix, "L": [matrix, ...]}.
// LITParams:  {"U": matrix, "Gamma": {"re": [...], "im": [...]}, "phi": x}.
// QubitLITParams: {"alpha_mag": x, "theta0": x, "theta_rate": x}.
//
// Readers throw ConfigError prefixed with `path` (a JSON-path such as
// "$.lit.general.U").

Json to_json(const ComplexMatrix& m);
Json to_json(const Strategy& s);
Json to_json(const LITParams& p);
Json to_json(const QubitLITParams& q);
Json complex_vector_to_json(const std::vector<Complex>& v);

ComplexMatrix matrix_from_json(const Json& j, const std::string& path);
Strategy strategy_from_json(const Json& j, const std::string& path);
LITParams lit_params_from_json(const Json& j, const std::string& path);
QubitLITParams qubit_lit_params_from_json(const Json& j, const std::string& path);
std::vector<Complex> complex_vector_from_json(const Json& j, const std::string& path);

namespace json_check {
/// Throws ConfigError if `j` is not an object or carries keys outside `allowed`.
void object_with_keys(const Json& j, const std::string& path,
                      std::initializer_list<const char*> allowed);
const Json& required(const Json& j, const char* key, const std::string& path);
double number(const Json& j, const std::string& path);
std::vector<double> number_array(const Json& j, const std::string& path);
std::string string(const Json& j, const std::string& path);
std::uint64_t unsigned_integer(const Json& j, const std::string& path);
}  // namespace json_check

}  // namespace litsim
