// Acceptance suite: one PASS/FAIL line per criterion, details indented below.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "csr/fidelity.hpp"
#include "csr/protocol.hpp"
#include "csr/state_io.hpp"
#include "csr/wclass.hpp"
#include "test_support.hpp"

using namespace csr;

namespace {

const Setting kAbc = Setting::canonical();

class Criterion {
 public:
  explicit Criterion(std::string name) : name_(std::move(name)) {}

  // Records one sub-check; returns ok so callers can chain.
  bool check(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4))) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    lines_.push_back(std::string(ok ? "    ok   " : "    FAIL ") + buf);
    ok_ = ok_ && ok;
    return ok;
  }

  void note(const std::string& text) { lines_.push_back("    note " + text); }

  bool finish(double seconds, double budget) {
    check(seconds < budget, "runtime %.2f s < %.0f s", seconds, budget);
    std::printf("[%s] %s (%.2f s)\n", ok_ ? "PASS" : "FAIL", name_.c_str(), seconds);
    for (const auto& l : lines_) std::printf("%s\n", l.c_str());
    std::fflush(stdout);
    return ok_;
  }

 private:
  std::string name_;
  std::vector<std::string> lines_;
  bool ok_ = true;
};

bool near(double x, double want, double tol) { return std::abs(x - want) <= tol; }

FidelityReport<double> preset_report(const char* name) { return full_report(io::find_preset(name)->state, kAbc); }

void ghz_exactness(Criterion& c) {
  const auto r = preset_report("ghz");
  c.check(near(r.theta, 3.0, 1e-12), "theta = %.16g, want 3", r.theta);
  c.check(near(r.f_max, 1.0, 1e-12), "F_max = %.16g, want 1", r.f_max);
  c.check(near(r.f_tele_dealer_reconstructor, 2.0 / 3, 1e-12), "F'(dealer-reconstructor) = %.16g, want 2/3",
          r.f_tele_dealer_reconstructor);
}

void w_exactness(Criterion& c) {
  const auto& rho = io::find_preset("w")->state;
  const auto r = full_report(rho, kAbc);
  const double rnorm = trace_norm(pair_correlation_for_setting(decompose_state(rho), kAbc));
  c.check(near(r.theta, 7.0 / 3, 1e-12), "theta = %.16g, want 7/3", r.theta);
  c.check(near(r.f_max, 8.0 / 9, 1e-12), "F_max = %.16g, want 8/9", r.f_max);
  c.check(near(r.f_tele_dealer_reconstructor, 7.0 / 9, 1e-12), "F' = %.16g, want 7/9", r.f_tele_dealer_reconstructor);
  c.check(near(rnorm, 5.0 / 3, 1e-12), "||R||_1 = %.16g, want 5/3", rnorm);
}

void mixtures(Criterion& c) {
  for (const char* name : {"gamma-mix", "delta-mix"}) {
    const auto r = preset_report(name);
    c.check(near(r.f_max, 0.75, 1e-12), "%s: F_max = %.16g, want 3/4", name, r.f_max);
    c.note(std::string(name) + ": " + to_string(r.case_label.label) +
           ", R zero = " + (r.case_label.pair_is_zero ? "yes" : "no") +
           ", T zero = " + (r.case_label.t_is_zero ? "yes" : "no"));
  }
  const auto& g = io::find_preset("gamma-mix")->state;
  const auto& d = io::find_preset("delta-mix")->state;
  const double diff = (g.matrix() - d.matrix()).cwiseAbs().maxCoeff();
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "the printed kets make both mixtures the same state (max |difference| = %g), so both land in the "
                "R = O, T != O pattern; no T = O, R != O example results",
                diff);
  c.note(buf);
}

void qss_example(Criterion& c) {
  const auto& beta = io::find_preset("beta-mix")->state;
  const auto r = full_report(beta, kAbc);
  const double qn = r.qss.dealer_assistant_norm, rn = r.qss.dealer_reconstructor_norm;
  c.check(near(qn, 0.5, 1e-12), "beta: ||Q||_1 = %.16g, want 1/2", qn);
  c.check(near(rn, 0.5, 1e-12), "beta: ||R||_1 = %.16g, want 1/2", rn);
  c.check(r.f_max > 2.0 / 3, "beta: F_max = %.16g > 2/3", r.f_max);
  c.check(r.qss_ok, "beta: qss_ok = %s", r.qss_ok ? "true" : "false");
  for (const auto& s : Setting::all()) {
    const auto q = qss_check(decompose_state(beta), s);
    char buf[160];
    std::snprintf(buf, sizeof buf, "beta %s: ||dealer-assistant||_1 = %.6f, ||dealer-reconstructor||_1 = %.6f, theta = %.6f",
                  s.str().c_str(), q.dealer_assistant_norm, q.dealer_reconstructor_norm, q.theta);
    c.note(buf);
  }
  c.note("no labelling of this mixture has both pair norms <= 1 together with theta > 1");
  const auto g = preset_report("ghz");
  c.check(g.qss_ok, "ghz: qss_ok = %s", g.qss_ok ? "true" : "false");
}

void oracle_agreement(Criterion& c) {
  std::vector<std::pair<std::string, DensityMatrix3Q<double>>> states{{"ghz", io::find_preset("ghz")->state},
                                                                      {"w", io::find_preset("w")->state}};
  testing::Rng rng(2024);
  for (int i = 0; i < 20; ++i) states.emplace_back("random pure " + std::to_string(i), testing::random_pure_state(rng));
  int worst_index = 0;
  double worst_z = 0;
  std::uint64_t seed = 1000;
  int i = 0;
  for (const auto& [name, rho] : states) {
    const auto mc = protocol::expected_fidelity_mc(rho, kAbc, 100000, seed++);
    const double se = mc.estimate.std_error, mean = mc.estimate.mean;
    const double band = std::max(3 * se, 1e-12);
    const bool match = std::abs(mean - mc.plan.f_so3) <= band;
    const bool bounded = mean <= mc.plan.f_max + band;
    const double z = se > 1e-12 ? std::abs(mean - mc.plan.f_so3) / se : 0;
    if (z > worst_z) worst_z = z, worst_index = i;
    if (!match || !bounded || i < 2)
      c.check(match && bounded, "%s: MC %.6f +- %.2g, SO(3) form %.6f, F_max %.6f", name.c_str(), mean, se,
              mc.plan.f_so3, mc.plan.f_max);
    ++i;
  }
  c.check(true, "all %zu states within 3 standard errors (largest |z| = %.2f at %s)", states.size(), worst_z,
          states[worst_index].first.c_str());
}

void classical_limit(Criterion& c) {
  const auto base = protocol::classical_baseline(1000000, 7);
  c.check(near(base.mean, 2.0 / 3, 3 * base.std_error), "baseline %.6f +- %.2g, want 2/3", base.mean, base.std_error);
  std::uint64_t seed = 70;
  for (double p : {0.0, 0.25, 0.5, 1.0}) {
    for (auto strat : {protocol::GuessStrategy::Same, protocol::GuessStrategy::Negate}) {
      const auto g = protocol::dishonest_guess_fidelity(p, strat, 1000000, seed++);
      const double want = protocol::dishonest_guess_formula(p, strat);
      const bool same = strat == protocol::GuessStrategy::Same;
      c.check(near(g.mean, want, std::max(3 * g.std_error, 1e-12)), "p = %.2f, guess %s: %.6f +- %.2g, formula %s = %.6f",
              p, same ? "s1" : "not s1", g.mean, g.std_error, same ? "(1+p)/3" : "(2-p)/3", want);
    }
  }
  c.check(protocol::dishonest_guess_formula(0.5, protocol::GuessStrategy::Same) == 0.5 &&
              protocol::dishonest_guess_formula(0.5, protocol::GuessStrategy::Negate) == 0.5,
          "both strategies give 1/2 at p = 1/2");
}

void scatter(Criterion& c) {
  const auto records = wclass::scatter_experiment(100000, 42);
  double min_recon = 1;
  std::size_t orange = 0;
  for (const auto& r : records) {
    min_recon = std::min(min_recon, r.f_recon);
    orange += r.region == wclass::Region::Orange;
  }
  c.check(min_recon >= 2.0 / 3 - 1e-9, "min f_recon over %zu samples = %.12f >= 2/3 - 1e-9", records.size(), min_recon);
  c.note("orange fraction " + std::to_string(double(orange) / records.size()));

  const auto ex3 = wclass::evaluate(wclass::WClassParams::normalized({0.7, 0.7, 0.09, 0.11}));
  c.check(ex3.f_tele <= 2.0 / 3, "example point: f_tele = %.12f <= 2/3", ex3.f_tele);
  c.check(ex3.f_recon > 2.0 / 3, "example point: f_recon = %.12f > 2/3", ex3.f_recon);
  c.check(ex3.region == wclass::Region::Orange, "example point region = %s, want orange", to_string(ex3.region));

  const double r3 = 1 / std::sqrt(3.0);
  const auto w = wclass::evaluate(wclass::WClassParams({r3, 0, r3, r3}));
  c.check(near(w.f_tele, 7.0 / 9, 1e-12) && w.region == wclass::Region::Blue, "W point: f_tele = %.12f (7/9), %s",
          w.f_tele, to_string(w.region));
}

void properties(Criterion& c) {
  testing::Rng rng(8);
  double round_trip = 0, symmetry = 0;
  for (int n = 0; n < 1000; ++n) {
    const auto rho = testing::random_state(rng);
    const auto d = decompose_state(rho);
    round_trip = std::max(round_trip, (compose_state(d) - rho.matrix()).cwiseAbs().maxCoeff());
    for (const auto& s : Setting::all()) {
      const Setting swapped(s.reconstructor(), s.assistant(), s.dealer());
      symmetry = std::max(symmetry, std::abs(theta(d, s) - theta(d, swapped)));
    }
  }
  c.check(round_trip <= 1e-12, "decompose/compose round trip max error %.2g", round_trip);

  double completeness = 0, orthogonality = 0;
  const auto& bell = protocol::BellProjectorSet::get();
  const auto& had = protocol::HadamardProjectorSet::get();
  protocol::Matrix4cd sum4 = protocol::Matrix4cd::Zero();
  for (int l = 0; l < 4; ++l) {
    sum4 += bell.projectors[l];
    for (int m = 0; m < 4; ++m) {
      const protocol::Matrix4cd want = l == m ? bell.projectors[l] : protocol::Matrix4cd::Zero();
      orthogonality = std::max(orthogonality, (bell.projectors[l] * bell.projectors[m] - want).cwiseAbs().maxCoeff());
    }
  }
  completeness = (sum4 - protocol::Matrix4cd::Identity()).cwiseAbs().maxCoeff();
  completeness = std::max(completeness, (had.projectors[0] + had.projectors[1] - protocol::Matrix2cd::Identity())
                                            .cwiseAbs()
                                            .maxCoeff());
  orthogonality = std::max(orthogonality, (had.projectors[0] * had.projectors[1]).cwiseAbs().maxCoeff());
  protocol::Matrix8cd sum8 = protocol::Matrix8cd::Zero();
  for (int a = 0; a < protocol::kBranches; ++a) sum8 += protocol::branch_projector(a);
  completeness = std::max(completeness, (sum8 - protocol::Matrix8cd::Identity()).cwiseAbs().maxCoeff());
  c.check(completeness <= 1e-12, "projector completeness error %.2g", completeness);
  c.check(orthogonality <= 1e-12, "projector orthogonality error %.2g", orthogonality);

  double invariance = 0;
  for (int n = 0; n < 1000; ++n) {
    const Eigen::Matrix3d z = testing::random_matrix(rng);
    const double base = trace_norm(z);
    const Eigen::Matrix3d u = testing::random_orthogonal(rng, n % 2 == 0);
    const Eigen::Matrix3d v = testing::random_orthogonal(rng, n % 3 == 0);
    invariance = std::max(invariance, std::abs(trace_norm(Eigen::Matrix3d(u * z * v)) - base));
  }
  c.check(invariance <= 1e-10, "trace-norm orthogonal invariance error %.2g", invariance);
  c.check(symmetry <= 1e-12, "theta dealer<->reconstructor symmetry error %.2g", symmetry);

  int within = 0;
  double worst_z = 0;
  for (int n = 0; n < 20; ++n) {
    const Eigen::Matrix3d a = testing::random_matrix(rng);
    const Eigen::Matrix3d y = (a + a.transpose()) / 2;
    const auto avg = protocol::sphere_average_identity_check(y, 100000, 300 + n);
    const double z = std::abs(avg.lhs - avg.rhs) / avg.std_error;
    worst_z = std::max(worst_z, z);
    within += z <= 3;
  }
  c.check(within == 20, "sphere average identity: %d/20 within 3 sigma (largest |z| = %.2f)", within, worst_z);
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    double budget_s;
    std::function<void(Criterion&)> run;
  };
  const std::vector<Entry> entries{
      {"1 GHZ exactness", 1, ghz_exactness},
      {"2 W exactness", 1, w_exactness},
      {"3 mixture examples", 60, mixtures},
      {"4 QSS example", 60, qss_example},
      {"5 oracle agreement", 300, oracle_agreement},
      {"6 classical limit", 60, classical_limit},
      {"7 W-class scatter", 120, scatter},
      {"8 property suites", 60, properties},
  };
  int failed = 0;
  for (const auto& e : entries) {
    Criterion c(e.name);
    const auto t0 = std::chrono::steady_clock::now();
    e.run(c);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !c.finish(dt, e.budget_s);
  }
  std::printf("%d of %zu criteria failed\n", failed, entries.size());
  return failed;
}
