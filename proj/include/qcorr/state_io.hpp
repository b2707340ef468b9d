#pragma once

// State files: {"dim_a": 2, "dim_b": d, "re": [[...]], "im": [[...]]} with
// row-major matrices in the A-major index convention.

#include <filesystem>
#include <stdexcept>

#include <json.hpp>

#include "qcorr/states.hpp"

namespace qcorr {

/// Raised for unreadable files and malformed JSON; invalid physics is
/// reported as StateValidationError instead.
class StateFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const nlohmann::json& j);

DensityMatrix load_state(const std::filesystem::path& path);
/// Throws std::runtime_error if the file cannot be written.
void save_state(const std::filesystem::path& path, const DensityMatrix& rho);

}  // namespace qcorr
