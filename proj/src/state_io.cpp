#include "csr/state_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "csr/wclass.hpp"

namespace csr::io {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::complex<double> parse_complex(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw InputError(where + ": expected [re, im]");
  return {v[0].get<double>(), v[1].get<double>()};
}

void expect_array(const json& v, std::size_t n, const std::string& where) {
  if (!v.is_array() || v.size() != n)
    throw InputError(where + ": expected array of length " + std::to_string(n));
}

double parse_real(const json& v, const std::string& where) {
  if (!v.is_number()) throw InputError(where + ": expected number");
  return v.get<double>();
}

Eigen::Vector3d parse_vec3(const json& v, const std::string& where) {
  expect_array(v, 3, where);
  return {parse_real(v[0], where), parse_real(v[1], where), parse_real(v[2], where)};
}

Eigen::Matrix3d parse_mat3(const json& v, const std::string& where) {
  expect_array(v, 3, where);
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i) m.row(i) = parse_vec3(v[i], where).transpose();
  return m;
}

json vec_json(const Eigen::Vector3d& v) { return json::array({v(0), v(1), v(2)}); }

json mat_json(const Eigen::Matrix3d& m) {
  json out = json::array();
  for (int i = 0; i < 3; ++i) out.push_back(json::array({m(i, 0), m(i, 1), m(i, 2)}));
  return out;
}

Vector8c<double> ket(std::initializer_list<std::pair<int, double>> terms) {
  Vector8c<double> v = Vector8c<double>::Zero();
  for (const auto& [index, amp] : terms) v(index) += amp;
  return v;
}

DensityMatrix3Q<double> pure(const Vector8c<double>& v) {
  return pure_to_density(PureState3Q<double>::normalized(v));
}

DensityMatrix3Q<double> equal_mixture(const Vector8c<double>& u, const Vector8c<double>& v) {
  const Matrix8c<double> m =
      (pure(u).matrix() + pure(v).matrix()) / 2.0;
  return validate_state<double>(m);
}

}  // namespace

DensityMatrix3Q<double> parse_state(const json& doc) {
  if (!doc.is_object() || doc.size() != 1)
    throw InputError("state file must be an object with exactly one of \"pure\", \"dense\", \"bloch\"");
  if (doc.contains("pure")) {
    const json& p = doc["pure"];
    expect_array(p, 8, "pure");
    Vector8c<double> v;
    for (int i = 0; i < 8; ++i) v(i) = parse_complex(p[i], "pure[" + std::to_string(i) + "]");
    return pure_to_density(PureState3Q<double>(v));
  }
  if (doc.contains("dense")) {
    const json& d = doc["dense"];
    expect_array(d, 8, "dense");
    Matrix8c<double> m;
    for (int r = 0; r < 8; ++r) {
      expect_array(d[r], 8, "dense[" + std::to_string(r) + "]");
      for (int c = 0; c < 8; ++c)
        m(r, c) = parse_complex(d[r][c], "dense[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
    return validate_state<double>(m);
  }
  if (doc.contains("bloch")) {
    const json& b = doc["bloch"];
    if (!b.is_object()) throw InputError("bloch: expected object");
    BlochDecomposition<double> d;
    for (const auto& [key, value] : b.items()) {
      if (key == "a") d.a = parse_vec3(value, key);
      else if (key == "b") d.b = parse_vec3(value, key);
      else if (key == "c") d.c = parse_vec3(value, key);
      else if (key == "Q") d.Q = parse_mat3(value, key);
      else if (key == "R") d.R = parse_mat3(value, key);
      else if (key == "S") d.S = parse_mat3(value, key);
      else if (key == "tau") {
        expect_array(value, 3, key);
        for (int i = 0; i < 3; ++i) d.tau[i] = parse_mat3(value[i], key);
      } else {
        throw InputError("bloch: unknown key \"" + key + "\"");
      }
    }
    return validate_state<double>(compose_state(d));
  }
  throw InputError("state file must contain one of \"pure\", \"dense\", \"bloch\"");
}

DensityMatrix3Q<double> parse_state_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("JSON parse error: ") + e.what());
  }
  return parse_state(doc);
}

DensityMatrix3Q<double> load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open state file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_state_text(ss.str());
}

json to_json_dense(const DensityMatrix3Q<double>& rho) {
  json rows = json::array();
  for (int r = 0; r < 8; ++r) {
    json row = json::array();
    for (int c = 0; c < 8; ++c) row.push_back(json::array({rho.matrix()(r, c).real(), rho.matrix()(r, c).imag()}));
    rows.push_back(row);
  }
  return json{{"dense", rows}};
}

json to_json_bloch(const BlochDecomposition<double>& d) {
  json tau = json::array();
  for (int i = 0; i < 3; ++i) tau.push_back(mat_json(d.tau[i]));
  return json{{"bloch",
               {{"a", vec_json(d.a)},
                {"b", vec_json(d.b)},
                {"c", vec_json(d.c)},
                {"Q", mat_json(d.Q)},
                {"R", mat_json(d.R)},
                {"S", mat_json(d.S)},
                {"tau", tau}}}};
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"ghz", "w", "wexample3", "gamma-mix", "delta-mix", "beta-mix", "mixed"};
  return names;
}

std::optional<Preset> find_preset(const std::string& name) {
  if (name == "ghz") return Preset{name, pure(ket({{0b000, 1}, {0b111, 1}})), {}};
  if (name == "w") return Preset{name, pure(ket({{0b001, 1}, {0b010, 1}, {0b100, 1}})), {}};
  if (name == "wexample3") {
    const std::array<double, 4> raw{0.7, 0.7, 0.09, 0.11};
    const auto p = wclass::WClassParams::normalized(raw);
    std::ostringstream note;
    note.precision(12);
    note << "lambda renormalized from (0.7, 0.7, 0.09, 0.11) to (" << p[0] << ", " << p[1] << ", " << p[2]
         << ", " << p[3] << ")";
    return Preset{name, pure_to_density(wclass::wclass_state(p)), note.str()};
  }
  if (name == "gamma-mix" || name == "delta-mix") {
    // Both families are printed with the same kets: (|000> +- |100> +- |110> + |111>) / 2.
    return Preset{name,
                  equal_mixture(ket({{0b000, 1}, {0b100, 1}, {0b110, 1}, {0b111, 1}}),
                                ket({{0b000, 1}, {0b100, -1}, {0b110, -1}, {0b111, 1}})),
                  {}};
  }
  if (name == "beta-mix") {
    return Preset{name,
                  equal_mixture(ket({{0b000, 1}, {0b100, 1}, {0b101, 1}, {0b110, 1}}),
                                ket({{0b000, 1}, {0b100, 1}, {0b101, 1}, {0b110, -1}})),
                  {}};
  }
  if (name == "mixed") return Preset{name, validate_state<double>(Matrix8c<double>(Matrix8c<double>::Identity() / 8.0)), {}};
  return std::nullopt;
}

ordered_json report_to_json(const FidelityReport<double>& r) {
  ordered_json j;
  j["setting"] = r.setting.str();
  j["theta"] = r.theta;
  j["f_max"] = r.f_max;
  j["f_tele_dealer_reconstructor"] = r.f_tele_dealer_reconstructor;
  j["f_tele_dealer_assistant"] = r.f_tele_dealer_assistant;
  j["case_label"] = to_string(r.case_label.label);
  j["pair_is_zero"] = r.case_label.pair_is_zero;
  j["t_is_zero"] = r.case_label.t_is_zero;
  j["qss_ok"] = r.qss_ok;
  j["qss_details"] = ordered_json{{"dealer_assistant_trace_norm", r.qss.dealer_assistant_norm},
                                  {"dealer_reconstructor_trace_norm", r.qss.dealer_reconstructor_norm},
                                  {"theta", r.qss.theta}};
  j["quantum_advantage"] = r.quantum_advantage;
  j["epsilon"] = r.case_label.epsilon;
  return j;
}

ordered_json simulation_to_json(const protocol::McResult& r) {
  ordered_json j;
  j["mean"] = r.estimate.mean;
  j["std_error"] = r.estimate.std_error;
  j["n_samples"] = r.estimate.n_samples;
  j["seed"] = r.seed;
  ordered_json branches = ordered_json::array();
  for (int a = 0; a < protocol::kBranches; ++a) {
    const auto& b = r.plan.branches[a];
    ordered_json e;
    e["l"] = b.l;
    e["x"] = b.x_sign > 0 ? "+" : "-";
    e["mean_probability"] = r.per_branch[a].mean_probability;
    e["mean_weighted_fidelity"] = r.per_branch[a].mean_weighted_fidelity;
    e["so3_value"] = b.so3_value;
    e["trace_norm_value"] = b.trace_norm_value;
    e["degenerate_svd"] = b.degenerate;
    branches.push_back(e);
  }
  j["per_branch"] = branches;
  return j;
}

}  // namespace csr::io
