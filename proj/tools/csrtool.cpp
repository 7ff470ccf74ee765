// csrtool: closed-form reconstruction fidelities, protocol oracle, W-class
// scatter and the classical baseline from the command line.
//
// Exit codes: 0 success, 2 input or validation error, 3 I/O error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "csr/fidelity.hpp"
#include "csr/protocol.hpp"
#include "csr/state_io.hpp"
#include "csr/wclass.hpp"

namespace {

constexpr int kExitInput = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string state_path;
  std::string preset;
  std::string setting = "ABC";
  std::size_t samples = 0;
  std::uint64_t seed = 42;
  double epsilon = csr::kDefaultZeroEpsilon;
  std::string out;
  unsigned threads = csr::default_threads();
  // classical
  std::optional<double> p;
  std::string strategy = "same";
};

csr::DensityMatrix3Q<double> load_input(const RunConfig& cfg) {
  if (!cfg.preset.empty()) {
    auto preset = csr::io::find_preset(cfg.preset);
    if (!preset) throw csr::io::InputError("unknown preset: " + cfg.preset);
    if (!preset->note.empty()) std::cerr << "note: " << preset->note << '\n';
    return preset->state;
  }
  if (cfg.state_path.empty()) throw csr::io::InputError("one of --state or --preset is required");
  return csr::io::load_state_file(cfg.state_path);
}

csr::Setting parse_setting(const std::string& text) {
  auto s = csr::Setting::parse(text);
  if (!s) throw csr::io::InputError("invalid --setting '" + text + "' (expected a permutation of ABC)");
  return *s;
}

void emit(const nlohmann::ordered_json& j, const RunConfig& cfg) {
  if (cfg.out.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw IoError("cannot write " + cfg.out);
  f << j.dump(2) << '\n';
  if (!f) throw IoError("write failed: " + cfg.out);
}

int cmd_analyze(const RunConfig& cfg) {
  if (!(cfg.epsilon > 0)) throw csr::io::InputError("--epsilon must be positive");
  const auto rho = load_input(cfg);
  emit(csr::io::report_to_json(csr::full_report(rho, parse_setting(cfg.setting), cfg.epsilon)), cfg);
  return 0;
}

int cmd_oracle(const RunConfig& cfg) {
  const auto rho = load_input(cfg);
  const auto setting = parse_setting(cfg.setting);
  const std::size_t n = cfg.samples == 0 ? 100000 : cfg.samples;
  const auto mc = csr::protocol::expected_fidelity_mc(rho, setting, n, cfg.seed, cfg.threads);
  nlohmann::ordered_json j;
  j["setting"] = setting.str();
  j["closed_form"] = csr::f_max(csr::decompose_state(rho), setting);
  j["so3_closed_form"] = mc.plan.f_so3;
  j["so3_gap"] = mc.plan.so3_gap;
  j["mc_mean"] = mc.estimate.mean;
  j["mc_std_error"] = mc.estimate.std_error;
  j["simulation"] = csr::io::simulation_to_json(mc);
  emit(j, cfg);
  return 0;
}

int cmd_scatter(const RunConfig& cfg) {
  const std::size_t n = cfg.samples == 0 ? 100000 : cfg.samples;
  const auto records = csr::wclass::scatter_experiment(n, cfg.seed);
  auto write = [&](std::ostream& os) {
    csr::wclass::write_csv_header(os);
    for (const auto& r : records) csr::wclass::write_csv_record(os, r);
  };
  if (cfg.out.empty()) {
    write(std::cout);
    return 0;
  }
  std::ofstream f(cfg.out);
  if (!f) throw IoError("cannot write " + cfg.out);
  write(f);
  f.flush();
  if (!f) throw IoError("write failed: " + cfg.out);
  return 0;
}

int cmd_classical(const RunConfig& cfg) {
  using csr::protocol::GuessStrategy;
  const std::size_t n = cfg.samples == 0 ? 1000000 : cfg.samples;
  nlohmann::ordered_json j;
  const auto honest = csr::protocol::classical_baseline(n, cfg.seed);
  j["honest_baseline"] = honest.mean;
  j["honest_std_error"] = honest.std_error;
  if (cfg.p) {
    const double p = *cfg.p;
    if (!(p >= 0 && p <= 1)) throw csr::io::InputError("--p must lie in [0, 1]");
    GuessStrategy strategy;
    if (cfg.strategy == "same") strategy = GuessStrategy::Same;
    else if (cfg.strategy == "negate") strategy = GuessStrategy::Negate;
    else throw csr::io::InputError("--strategy must be 'same' or 'negate'");
    const auto guess = csr::protocol::dishonest_guess_fidelity(p, strategy, n, cfg.seed);
    j["p"] = p;
    j["strategy"] = cfg.strategy;
    j["guess_fidelity"] = guess.mean;
    j["guess_std_error"] = guess.std_error;
    j["formula_value"] = csr::protocol::dishonest_guess_formula(p, strategy);
  }
  j["n_samples"] = n;
  j["seed"] = cfg.seed;
  emit(j, cfg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Controlled state reconstruction fidelity toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_state = [&](CLI::App* sub) {
    auto* st = sub->add_option("--state", cfg.state_path, "State file (JSON: pure | dense | bloch)");
    auto* pr = sub->add_option("--preset", cfg.preset, "Builtin state")
                   ->check(CLI::IsMember(csr::io::preset_names()));
    st->excludes(pr);
    sub->add_option("--setting", cfg.setting, "Roles as dealer/assistant/reconstructor, e.g. ABC");
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--samples", cfg.samples, "Monte-Carlo or scatter sample count")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "RNG seed");
    sub->add_option("--out", cfg.out, "Output file (default stdout)");
  };

  auto* analyze = app.add_subcommand("analyze", "Closed-form fidelity report");
  add_state(analyze);
  analyze->add_option("--epsilon", cfg.epsilon, "Max-abs threshold below which R or T counts as zero");
  analyze->add_option("--out", cfg.out, "Output file (default stdout)");

  auto* oracle = app.add_subcommand("oracle", "Closed form vs brute-force protocol simulation");
  add_state(oracle);
  add_common(oracle);
  oracle->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);

  auto* scatter = app.add_subcommand("scatter", "W-class reconstruction vs teleportation scatter (CSV)");
  add_common(scatter);

  auto* classical = app.add_subcommand("classical", "Classical share-splitting baseline");
  add_common(classical);
  classical->add_option("--p", cfg.p, "Pr[s2 = 0] for the dishonest-guess experiment");
  classical->add_option("--strategy", cfg.strategy, "Dishonest guess: same | negate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(cfg);
    if (oracle->parsed()) return cmd_oracle(cfg);
    if (scatter->parsed()) return cmd_scatter(cfg);
    if (classical->parsed()) return cmd_classical(cfg);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const csr::io::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const csr::StateError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
