#include "qcorr/state_io.hpp"

#include <fstream>

namespace qcorr {

namespace {

Eigen::MatrixXd read_real_matrix(const nlohmann::json& j, const char* key, int side) {
  if (!j.contains(key) || !j[key].is_array() || static_cast<int>(j[key].size()) != side) {
    throw StateFormatError(std::string("state file: '") + key + "' must be an array of " +
                           std::to_string(side) + " rows");
  }
  Eigen::MatrixXd m(side, side);
  for (int i = 0; i < side; ++i) {
    const auto& row = j[key][i];
    if (!row.is_array() || static_cast<int>(row.size()) != side) {
      throw StateFormatError(std::string("state file: row ") + std::to_string(i) + " of '" + key +
                             "' must have " + std::to_string(side) + " entries");
    }
    for (int k = 0; k < side; ++k) {
      if (!row[k].is_number()) throw StateFormatError("state file: non-numeric entry");
      m(i, k) = row[k].get<double>();
    }
  }
  return m;
}

}  // namespace

nlohmann::json state_to_json(const DensityMatrix& rho) {
  const auto& m = rho.matrix();
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json re_row = nlohmann::json::array();
    nlohmann::json im_row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      re_row.push_back(m(i, k).real());
      im_row.push_back(m(i, k).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return {{"dim_a", 2}, {"dim_b", rho.dim_b()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

DensityMatrix state_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw StateFormatError("state file: top level must be an object");
  if (!j.contains("dim_a") || !j["dim_a"].is_number_integer() || j["dim_a"].get<int>() != 2) {
    throw StateFormatError("state file: dim_a must be 2");
  }
  if (!j.contains("dim_b") || !j["dim_b"].is_number_integer()) {
    throw StateFormatError("state file: dim_b must be an integer");
  }
  const int d = j["dim_b"].get<int>();
  if (d < 2 || d > kMaxLocalDim) throw StateFormatError("state file: dim_b out of range");
  const Eigen::MatrixXd re = read_real_matrix(j, "re", 2 * d);
  const Eigen::MatrixXd im = read_real_matrix(j, "im", 2 * d);
  ComplexMatrix m(2 * d, 2 * d);
  m.real() = re;
  m.imag() = im;
  return validate(m, d);
}

DensityMatrix load_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw StateFormatError("cannot open state file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw StateFormatError("state file " + path.string() + ": " + e.what());
  }
  return state_from_json(j);
}

void save_state(const std::filesystem::path& path, const DensityMatrix& rho) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  // nlohmann emits shortest round-trip doubles (up to 17 significant digits).
  out << state_to_json(rho).dump(1) << '\n';
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace qcorr
