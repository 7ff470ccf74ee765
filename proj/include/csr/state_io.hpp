#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "csr/fidelity.hpp"
#include "csr/protocol.hpp"
#include "csr/state.hpp"

namespace csr::io {

/// Malformed or structurally wrong input (not a physics violation).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// State files hold exactly one of
//   {"pure":  [[re, im] x 8]}
//   {"dense": [[[re, im] x 8] x 8]}
//   {"bloch": {"a", "b", "c": [3], "Q", "R", "S": [[3] x 3], "tau": [[[3] x 3] x 3]}}
// Missing Bloch blocks are zero.
DensityMatrix3Q<double> parse_state(const nlohmann::json& doc);
DensityMatrix3Q<double> parse_state_text(const std::string& text);
DensityMatrix3Q<double> load_state_file(const std::string& path);

nlohmann::json to_json_dense(const DensityMatrix3Q<double>& rho);
nlohmann::json to_json_bloch(const BlochDecomposition<double>& d);

struct Preset {
  std::string name;
  DensityMatrix3Q<double> state;
  std::string note;  // empty unless the preset needed adjustment
};

const std::vector<std::string>& preset_names();
std::optional<Preset> find_preset(const std::string& name);

nlohmann::ordered_json report_to_json(const FidelityReport<double>& r);

nlohmann::ordered_json simulation_to_json(const protocol::McResult& r);

}  // namespace csr::io
