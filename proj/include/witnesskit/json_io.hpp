#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "witnesskit/decomp.hpp"
#include "witnesskit/operator.hpp"

namespace witnesskit {

// Complex entries serialize as [re, im]; matrices as arrays of rows.
nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j);

nlohmann::json vector_to_json(const Eigen::VectorXcd& v);
Eigen::VectorXcd vector_from_json(const nlohmann::json& j);

// Schema: { "target_dims": [...], "settings": [ { "bases": [ per party an
// array of basis columns ], "coeffs": [...] } ] }. Loading rebuilds the
// target by recomposing the settings.
nlohmann::json decomposition_to_json(const LocalDecomposition& d);
LocalDecomposition decomposition_from_json(const nlohmann::json& j);

// Schema: { "target_dims": [...], "terms": [ { "coeff": x, "factors": [...] } ] }.
nlohmann::json tensor_decomposition_to_json(const TensorDecomposition& d);
TensorDecomposition tensor_decomposition_from_json(const nlohmann::json& j);

// Shortest representation that parses back to the identical double ("%.17g").
std::string csv_double(double x);

// FNV-1a 64-bit digest, used for output fingerprints in run manifests.
std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace witnesskit
