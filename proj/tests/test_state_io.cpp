#include <gtest/gtest.h>

#include "csr/state_io.hpp"
#include "test_support.hpp"

using namespace csr;
using namespace csr::io;

namespace {

const Setting kAbc = Setting::canonical();

FidelityReport<double> report_for(const std::string& preset) {
  return full_report(find_preset(preset)->state, kAbc);
}

}  // namespace

TEST(ParseState, PureForm) {
  const auto rho = parse_state_text(R"({"pure": [[0.70710678118654752,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0.70710678118654752,0]]})");
  EXPECT_NEAR(theta(decompose_state(rho), kAbc), 3.0, 1e-12);
}

TEST(ParseState, DenseFormRoundTrip) {
  csr::testing::Rng rng(1);
  const auto rho = csr::testing::random_mixed_state(rng);
  const auto back = parse_state(to_json_dense(rho));
  EXPECT_EQ(back.matrix(), rho.matrix());
}

TEST(ParseState, BlochFormRoundTrip) {
  csr::testing::Rng rng(2);
  const auto rho = csr::testing::random_mixed_state(rng);
  const auto back = parse_state(to_json_bloch(decompose_state(rho)));
  EXPECT_LT((back.matrix() - rho.matrix()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ParseState, BlochMissingBlocksAreZero) {
  const auto rho = parse_state_text(R"({"bloch": {"R": [[0,0,0],[0,0,0],[0,0,0.5]]}})");
  EXPECT_NEAR(decompose_state(rho).R(2, 2), 0.5, 1e-15);
  EXPECT_EQ(decompose_state(rho).a.norm(), 0.0);
}

TEST(ParseState, Errors) {
  EXPECT_THROW(parse_state_text("{not json"), InputError);
  EXPECT_THROW(parse_state_text("{}"), InputError);
  EXPECT_THROW(parse_state_text(R"({"pure": [], "dense": []})"), InputError);
  EXPECT_THROW(parse_state_text(R"({"mixed": 1})"), InputError);
  EXPECT_THROW(parse_state_text(R"({"pure": [[1,0]]})"), InputError);
  EXPECT_THROW(parse_state_text(R"({"bloch": {"tau": 3}})"), InputError);
  EXPECT_THROW(parse_state_text(R"({"bloch": {"z": [0,0,0]}})"), InputError);
  // physically invalid inputs surface as StateError
  EXPECT_THROW(parse_state_text(R"({"pure": [[1,0],[1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]]})"), StateError);
  EXPECT_THROW(parse_state_text(R"({"bloch": {"tau": [[[1,0,0],[0,0,0],[0,0,0]],[[0,0,0],[0,0,0],[0,0,0]],[[0,0,0],[0,0,0],[0,0,0]]], "a": [0,0,1]}})"),
               StateError);
  EXPECT_THROW(load_state_file("/nonexistent/state.json"), InputError);
}

TEST(Presets, AllNamesResolve) {
  for (const auto& name : preset_names()) EXPECT_TRUE(find_preset(name)) << name;
  EXPECT_FALSE(find_preset("bogus"));
  EXPECT_FALSE(find_preset("wexample3")->note.empty());
}

TEST(Presets, ExampleValues) {
  const auto g = report_for("ghz");
  EXPECT_NEAR(g.theta, 3.0, 1e-12);
  EXPECT_NEAR(g.f_max, 1.0, 1e-12);
  const auto w = report_for("w");
  EXPECT_NEAR(w.theta, 7.0 / 3, 1e-12);
  EXPECT_NEAR(report_for("gamma-mix").f_max, 0.75, 1e-12);
  EXPECT_NEAR(report_for("delta-mix").f_max, 0.75, 1e-12);
  EXPECT_EQ(report_for("gamma-mix").case_label.label, Case::Case2);
  EXPECT_EQ(report_for("mixed").f_max, 0.5);
  EXPECT_NEAR(report_for("beta-mix").qss.dealer_assistant_norm, 0.5, 1e-12);
}

TEST(ReportJson, FieldOrderIsFixed) {
  const auto j = report_to_json(report_for("ghz"));
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  const std::vector<std::string> expected{"setting",
                                          "theta",
                                          "f_max",
                                          "f_tele_dealer_reconstructor",
                                          "f_tele_dealer_assistant",
                                          "case_label",
                                          "pair_is_zero",
                                          "t_is_zero",
                                          "qss_ok",
                                          "qss_details",
                                          "quantum_advantage",
                                          "epsilon"};
  EXPECT_EQ(keys, expected);
  EXPECT_EQ(j["case_label"], "Case1");
  EXPECT_EQ(j["qss_ok"], true);
  EXPECT_EQ(j["epsilon"], 1e-9);
  EXPECT_EQ(j.dump(), report_to_json(report_for("ghz")).dump());
}

TEST(SimulationJson, Shape) {
  const auto mc = protocol::expected_fidelity_mc(find_preset("ghz")->state, kAbc, 100, 3, 1);
  const auto j = simulation_to_json(mc);
  EXPECT_EQ(j["n_samples"], 100);
  EXPECT_EQ(j["seed"], 3);
  ASSERT_EQ(j["per_branch"].size(), 8u);
  EXPECT_EQ(j["per_branch"][1]["x"], "-");
}
