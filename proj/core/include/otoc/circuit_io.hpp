// Copyright 2026 The otoc-tn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OTOC_CIRCUIT_IO_HPP
#define OTOC_CIRCUIT_IO_HPP

#include <string>

#include <json.hpp>

#include "otoc/circuit.hpp"

namespace otoc {

/// Circuit interchange document. Gates are listed layer-major then
/// site-lexicographic so serialized files are byte-stable.
nlohmann::json circuit_to_json(const OtocCircuit& c);
OtocCircuit circuit_from_json(const nlohmann::json& j);

std::string circuit_to_string(const OtocCircuit& c);

void write_circuit(const OtocCircuit& c, const std::string& path);
OtocCircuit read_circuit(const std::string& path);

nlohmann::json ensemble_spec_to_json(const EnsembleSpec& spec);
EnsembleSpec ensemble_spec_from_json(const nlohmann::json& j);

}  // namespace otoc

#endif
