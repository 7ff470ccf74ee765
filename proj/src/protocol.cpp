#include "csr/protocol.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Geometry>

namespace csr::protocol {

namespace {

constexpr double kZeroProbability = 1e-15;
constexpr double kDegenerateTol = 1e-12;

int alpha_of(int l, int x_index) { return 2 * l + x_index; }

Matrix2cd bloch_dot_sigma(const Eigen::Vector3d& n) {
  Matrix2cd m = Matrix2cd::Zero();
  for (int i = 0; i < 3; ++i) m += n(i) * pauli<double>(i + 1);
  return m;
}

}  // namespace

const BellProjectorSet& BellProjectorSet::get() {
  static const BellProjectorSet set = [] {
    BellProjectorSet s;
    s.diagonals = {Eigen::Vector3d(-1, -1, -1), Eigen::Vector3d(-1, 1, 1), Eigen::Vector3d(1, -1, 1),
                   Eigen::Vector3d(1, 1, -1)};
    for (int l = 0; l < 4; ++l) {
      Matrix4cd p = kron(pauli<double>(0), pauli<double>(0));
      for (int i = 0; i < 3; ++i) p += s.diagonals[l](i) * kron(pauli<double>(i + 1), pauli<double>(i + 1));
      s.projectors[l] = p / 4.0;
    }
    return s;
  }();
  return set;
}

const HadamardProjectorSet& HadamardProjectorSet::get() {
  static const HadamardProjectorSet set = [] {
    HadamardProjectorSet s;
    s.projectors[0] = (pauli<double>(0) + pauli<double>(1)) / 2.0;
    s.projectors[1] = (pauli<double>(0) - pauli<double>(1)) / 2.0;
    return s;
  }();
  return set;
}

CorrectionRotation CorrectionRotation::from_omega(const Eigen::Matrix3d& omega) {
  CorrectionRotation r;
  r.omega = omega;
  // Charlie's Bloch vector turns by Omega^T; q = (cos t/2, n sin t/2) maps to
  // U = cos(t/2) I - i sin(t/2) n.sigma.
  const Eigen::Quaterniond q(Eigen::Matrix3d(omega.transpose()));
  const std::complex<double> i(0, 1);
  r.u = q.w() * pauli<double>(0) - i * (q.x() * pauli<double>(1) + q.y() * pauli<double>(2) + q.z() * pauli<double>(3));
  return r;
}

double CorrectionRotation::consistency_error() const {
  double err = (omega.transpose() * omega - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  err = std::max(err, std::abs(omega.determinant() - 1.0));
  err = std::max(err, (u * u.adjoint() - Matrix2cd::Identity()).cwiseAbs().maxCoeff());
  for (int axis = 0; axis < 3; ++axis) {
    const Eigen::Vector3d n = Eigen::Vector3d::Unit(axis);
    const Matrix2cd lhs = u * bloch_dot_sigma(n) * u.adjoint();
    const Matrix2cd rhs = bloch_dot_sigma(omega.transpose() * n);
    err = std::max(err, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return err;
}

std::pair<Eigen::Matrix3d, double> best_proper_rotation(const Eigen::Matrix3d& m) {
  // Tr(M Omega) with M = U S V^T is maximized over SO(3) by
  // Omega = V diag(1, 1, det(U V^T)) U^T.
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Matrix3d& u = svd.matrixU();
  const Eigen::Matrix3d& v = svd.matrixV();
  const double d = (u * v.transpose()).determinant() < 0 ? -1.0 : 1.0;
  const Eigen::Matrix3d omega = v * Eigen::Vector3d(1, 1, d).asDiagonal() * u.transpose();
  const auto& s = svd.singularValues();
  return {omega, s(0) + s(1) + d * s(2)};
}

RotationPlan optimal_rotations(const BlochDecomposition<double>& d, const Setting& s) {
  const Eigen::Matrix3d pair = pair_correlation_for_setting(d, s);
  const Eigen::Matrix3d t = t_matrix_for_setting(d, s);
  const auto& bell = BellProjectorSet::get();

  RotationPlan plan;
  double so3_sum = 0, tn_sum = 0;
  for (int l = 0; l < 4; ++l) {
    for (int xi = 0; xi < 2; ++xi) {
      const int sign = xi == 0 ? +1 : -1;
      BranchOptimum& b = plan.branches[alpha_of(l, xi)];
      b.l = l;
      b.x_sign = sign;
      b.branch_matrix = bell.diagonals[l].asDiagonal() * (pair + sign * t);

      const auto [omega, value] = best_proper_rotation(b.branch_matrix);
      Eigen::JacobiSVD<Eigen::Matrix3d> svd(b.branch_matrix);
      const auto& sv = svd.singularValues();
      b.so3_value = value;
      b.trace_norm_value = sv.sum();
      b.degenerate = std::abs(sv(0) - sv(1)) < kDegenerateTol || std::abs(sv(1) - sv(2)) < kDegenerateTol;
      plan.rotations[alpha_of(l, xi)] = CorrectionRotation::from_omega(omega);

      so3_sum += b.so3_value;
      tn_sum += b.trace_norm_value;
    }
  }
  plan.f_so3 = 0.5 + so3_sum / 48.0;
  plan.f_max = 0.5 + tn_sum / 48.0;
  plan.so3_gap = plan.f_max - plan.f_so3;
  return plan;
}

const Matrix8cd& branch_projector(int alpha) {
  static const std::array<Matrix8cd, kBranches> table = [] {
    std::array<Matrix8cd, kBranches> t;
    const auto& bell = BellProjectorSet::get();
    const auto& had = HadamardProjectorSet::get();
    for (int l = 0; l < 4; ++l)
      for (int xi = 0; xi < 2; ++xi) t[alpha_of(l, xi)] = kron(bell.projectors[l], had.projectors[xi]);
    return t;
  }();
  return table.at(alpha);
}

Matrix2cd reduce_to_reconstructor(const Matrix8cd& pi, const Matrix16cd& total) {
  // (Pi (x) I) total (Pi (x) I) and (Pi (x) I) total have the same trace over
  // (S, A, B) because Pi is idempotent and acts only on the traced wires.
  Matrix2cd out = Matrix2cd::Zero();
  for (int k = 0; k < 8; ++k)
    for (int kp = 0; kp < 8; ++kp) {
      const std::complex<double> w = pi(k, kp);
      if (w == 0.0) continue;
      for (int c = 0; c < 2; ++c)
        for (int cp = 0; cp < 2; ++cp) out(c, cp) += w * total(2 * kp + c, 2 * k + cp);
    }
  return out;
}

Outcomes simulate_branches(const DensityMatrix3Q<double>& rho, const BlochVector<double>& phi,
                           const RotationSet& rotations) {
  const Matrix2cd secret = phi.density();
  const Matrix16cd total = kron(secret, rho.matrix());
  Outcomes out;
  for (int l = 0; l < 4; ++l) {
    for (int xi = 0; xi < 2; ++xi) {
      const int alpha = alpha_of(l, xi);
      ProtocolOutcome& o = out[alpha];
      o.l = l;
      o.x_sign = xi == 0 ? +1 : -1;
      o.omega = rotations[alpha].omega;
      const Matrix2cd unnormalized = reduce_to_reconstructor(branch_projector(alpha), total);
      o.p_alpha = unnormalized.trace().real();
      if (o.p_alpha <= kZeroProbability) {
        o.p_alpha = std::max(o.p_alpha, 0.0);
        continue;
      }
      const Matrix2cd& u = rotations[alpha].u;
      const Matrix2cd corrected = u * (unnormalized / o.p_alpha) * u.adjoint();
      o.charlie_state = corrected;
      o.branch_fidelity = (corrected * secret).trace().real();
    }
  }
  return out;
}

double expected_fidelity(const Outcomes& outcomes) {
  double f = 0;
  for (const auto& o : outcomes) f += o.p_alpha * o.branch_fidelity;
  return f;
}

namespace {

struct ProtocolAccumulator {
  RunningStats fidelity;
  std::array<double, kBranches> prob{};
  std::array<double, kBranches> weighted{};

  void merge(const ProtocolAccumulator& o) {
    fidelity.merge(o.fidelity);
    for (int a = 0; a < kBranches; ++a) {
      prob[a] += o.prob[a];
      weighted[a] += o.weighted[a];
    }
  }
};

McResult run_protocol(const DensityMatrix3Q<double>& canonical_rho, const RotationPlan& plan, std::size_t n,
                      std::uint64_t seed, unsigned threads) {
  if (n < 1) throw std::invalid_argument("n_samples must be >= 1");
  const auto acc = run_chunked<ProtocolAccumulator>(n, seed, threads, [&](Rng& rng, ProtocolAccumulator& a) {
    const BlochVector<double> phi(uniform_unit_vector(rng));
    const Outcomes outcomes = simulate_branches(canonical_rho, phi, plan.rotations);
    a.fidelity.add(expected_fidelity(outcomes));
    for (int k = 0; k < kBranches; ++k) {
      a.prob[k] += outcomes[k].p_alpha;
      a.weighted[k] += outcomes[k].p_alpha * outcomes[k].branch_fidelity;
    }
  });
  McResult r;
  r.estimate = acc.fidelity.estimate();
  r.seed = seed;
  r.plan = plan;
  for (int k = 0; k < kBranches; ++k) {
    r.per_branch[k].mean_probability = acc.prob[k] / static_cast<double>(n);
    r.per_branch[k].mean_weighted_fidelity = acc.weighted[k] / static_cast<double>(n);
  }
  return r;
}

}  // namespace

McResult expected_fidelity_mc(const DensityMatrix3Q<double>& rho, const Setting& s, std::size_t n_samples,
                              std::uint64_t seed, unsigned threads) {
  const auto canonical_rho = permute_qubits(rho, s.order());
  const RotationPlan plan = optimal_rotations(decompose_state(canonical_rho), Setting::canonical());
  return run_protocol(canonical_rho, plan, n_samples, seed, threads);
}

McResult expected_fidelity_mc(const DensityMatrix3Q<double>& rho, const Setting& s, const RotationSet& rotations,
                              std::size_t n_samples, std::uint64_t seed, unsigned threads) {
  const auto canonical_rho = permute_qubits(rho, s.order());
  RotationPlan plan = optimal_rotations(decompose_state(canonical_rho), Setting::canonical());
  plan.rotations = rotations;
  return run_protocol(canonical_rho, plan, n_samples, seed, threads);
}

SphereAverage sphere_average_identity_check(const Eigen::Matrix3d& y, std::size_t n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  const auto stats = run_chunked<RunningStats>(n_samples, seed, 1, [&](Rng& rng, RunningStats& acc) {
    const Eigen::Vector3d phi = uniform_unit_vector(rng);
    acc.add(phi.dot(y * phi));
  });
  return {stats.mean(), y.trace() / 3.0, stats.std_error()};
}

// ---- classical baseline ----------------------------------------------------

ClassicalShare ClassicalShare::split(int s, double p, Rng& rng) {
  std::bernoulli_distribution s2_is_zero(p);
  ClassicalShare share;
  share.s = s;
  share.p = p;
  share.s2 = s2_is_zero(rng) ? 0 : 1;
  share.s1 = s ^ share.s2;
  return share;
}

int measure_secret(const Eigen::Vector3d& bloch, Rng& rng) {
  std::bernoulli_distribution up(std::clamp((1.0 + bloch.z()) / 2.0, 0.0, 1.0));
  return up(rng) ? 0 : 1;
}

double basis_overlap(const Eigen::Vector3d& bloch, int s) {
  return s == 0 ? (1.0 + bloch.z()) / 2.0 : (1.0 - bloch.z()) / 2.0;
}

double classical_round(const Eigen::Vector3d& bloch, Rng& rng) {
  const int s = measure_secret(bloch, rng);
  const ClassicalShare share = ClassicalShare::split(s, 0.5, rng);
  return basis_overlap(bloch, share.s1 ^ share.s2);
}

McEstimate classical_baseline(std::size_t n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  return run_chunked<RunningStats>(n_samples, seed, 1,
                                   [](Rng& rng, RunningStats& acc) {
                                     acc.add(classical_round(uniform_unit_vector(rng), rng));
                                   })
      .estimate();
}

McEstimate classical_fixed_theta(double theta, std::size_t n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  const Eigen::Vector3d bloch(std::sin(theta), 0.0, std::cos(theta));
  return run_chunked<RunningStats>(n_samples, seed, 1,
                                   [&](Rng& rng, RunningStats& acc) { acc.add(classical_round(bloch, rng)); })
      .estimate();
}

McEstimate dishonest_guess_fidelity(double p, GuessStrategy strategy, std::size_t n_samples, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  return run_chunked<RunningStats>(n_samples, seed, 1,
                                   [&](Rng& rng, RunningStats& acc) {
                                     const Eigen::Vector3d q = uniform_unit_vector(rng);
                                     const ClassicalShare share = ClassicalShare::split(measure_secret(q, rng), p, rng);
                                     const int guess = strategy == GuessStrategy::Same ? share.s1 : share.s1 ^ 1;
                                     acc.add(basis_overlap(q, guess));
                                   })
      .estimate();
}

double dishonest_guess_formula(double p, GuessStrategy strategy) {
  // s' equals s exactly when s2 = 0 (Same) or s2 = 1 (Negate); a correct bit
  // averages 2/3 over the sphere and a flipped one 1/3.
  return strategy == GuessStrategy::Same ? (1.0 + p) / 3.0 : (2.0 - p) / 3.0;
}

}  // namespace csr::protocol
