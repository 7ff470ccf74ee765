#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "csr/fidelity.hpp"
#include "csr/montecarlo.hpp"
#include "csr/state.hpp"

// Brute-force simulation of the three-party reconstruction protocol and the
// classical share-splitting baseline.
//
// Wire order inside the simulator is (secret S, A, B, C), S most significant.
// The dealer holds S and A and performs a Bell measurement on them, the
// assistant B measures sigma_x, and the reconstructor C applies a unitary
// chosen per outcome. Outcomes are indexed alpha = 2 * l + (x == '-').

namespace csr::protocol {

using Matrix2cd = Matrix2c<double>;
using Matrix4cd = Matrix4c<double>;
using Matrix8cd = Matrix8c<double>;
using Matrix16cd = Matrix16c<double>;

inline constexpr int kBranches = 8;

struct BellProjectorSet {
  // P_l = (I + sum_i diag_l(i) sigma_i (x) sigma_i) / 4
  std::array<Eigen::Vector3d, 4> diagonals;
  std::array<Matrix4cd, 4> projectors;

  static const BellProjectorSet& get();
};

struct HadamardProjectorSet {
  // index 0 is x = (+1, 0, 0), index 1 is x = (-1, 0, 0)
  std::array<Matrix2cd, 2> projectors;

  static const HadamardProjectorSet& get();
};

/// Proper rotation Omega and an SU(2) element U with
/// U (n . sigma) U^dagger = (Omega^T n) . sigma.
struct CorrectionRotation {
  Eigen::Matrix3d omega = Eigen::Matrix3d::Identity();
  Matrix2cd u = Matrix2cd::Identity();

  static CorrectionRotation from_omega(const Eigen::Matrix3d& omega);
  static CorrectionRotation identity() { return {}; }

  // Largest deviation over the three Pauli axes, plus orthogonality and det.
  double consistency_error() const;
};

using RotationSet = std::array<CorrectionRotation, kBranches>;

struct BranchOptimum {
  int l = 0;
  int x_sign = +1;
  Eigen::Matrix3d branch_matrix = Eigen::Matrix3d::Zero();  // T_l (P + x T)
  double so3_value = 0;         // max over SO(3) of Tr(M Omega)
  double trace_norm_value = 0;  // max over O(3), ||M||_1
  bool degenerate = false;      // repeated singular values; the SVD basis is not unique
};

struct RotationPlan {
  RotationSet rotations;
  std::array<BranchOptimum, kBranches> branches;
  double f_so3 = 0.5;  // closed form achievable with proper rotations
  double f_max = 0.5;  // trace-norm closed form
  double so3_gap = 0;  // f_max - f_so3 >= 0
};

/// Per-branch optimum of Tr[T_l (P +- T) Omega] over SO(3) via the SVD.
RotationPlan optimal_rotations(const BlochDecomposition<double>& d, const Setting& s);

/// argmax over SO(3) of Tr(M Omega), with the attained value.
std::pair<Eigen::Matrix3d, double> best_proper_rotation(const Eigen::Matrix3d& m);

struct ProtocolOutcome {
  int l = 0;
  int x_sign = +1;
  double p_alpha = 0;
  // Normalized reconstructor state after the correction; empty when p_alpha == 0.
  std::optional<Matrix2cd> charlie_state;
  Eigen::Matrix3d omega = Eigen::Matrix3d::Identity();
  double branch_fidelity = 0;
};

using Outcomes = std::array<ProtocolOutcome, kBranches>;

/// Measurement operator on (S, A, B) for branch alpha.
const Matrix8cd& branch_projector(int alpha);

/// Tr_{SAB}[(Pi (x) I) total] for an 8x8 operator Pi on (S, A, B).
Matrix2cd reduce_to_reconstructor(const Matrix8cd& pi, const Matrix16cd& total);

/// All eight branches for secret phi through resource rho (canonical setting).
Outcomes simulate_branches(const DensityMatrix3Q<double>& rho, const BlochVector<double>& phi,
                           const RotationSet& rotations);

/// sum_alpha p_alpha * branch_fidelity
double expected_fidelity(const Outcomes& outcomes);

struct BranchStats {
  double mean_probability = 0;
  double mean_weighted_fidelity = 0;  // E[p_alpha * fidelity]
};

struct McResult {
  McEstimate estimate;
  std::uint64_t seed = 0;
  RotationPlan plan;  // rotations used; closed forms only meaningful when optimal
  std::array<BranchStats, kBranches> per_branch;
};

/// Monte-Carlo average over uniformly drawn pure secrets, using the optimal
/// rotations for the setting. rho is relabeled so the setting maps to (A, B, C).
McResult expected_fidelity_mc(const DensityMatrix3Q<double>& rho, const Setting& s, std::size_t n_samples,
                              std::uint64_t seed, unsigned threads = default_threads());

/// As above with caller-chosen rotations (indexed in the relabeled frame).
McResult expected_fidelity_mc(const DensityMatrix3Q<double>& rho, const Setting& s, const RotationSet& rotations,
                              std::size_t n_samples, std::uint64_t seed, unsigned threads = default_threads());

struct SphereAverage {
  double lhs = 0;  // MC mean of <phi, Y phi>
  double rhs = 0;  // Tr(Y) / 3
  double std_error = 0;
};

SphereAverage sphere_average_identity_check(const Eigen::Matrix3d& y, std::size_t n_samples, std::uint64_t seed);

// ---- classical baseline ----------------------------------------------------

struct ClassicalShare {
  int s = 0;
  int s1 = 0;
  int s2 = 0;
  double p = 0.5;  // Pr[s2 = 0]

  /// Draws s2 ~ {p, 1 - p} and sets s1 = s xor s2.
  static ClassicalShare split(int s, double p, Rng& rng);
};

/// Measures the secret in {up, down}; returns the bit.
int measure_secret(const Eigen::Vector3d& bloch, Rng& rng);

/// |<q|s>|^2 for the basis state |s> and a pure secret with this Bloch vector.
double basis_overlap(const Eigen::Vector3d& bloch, int s);

/// One honest round: measure, split, recombine, rebuild |s>.
double classical_round(const Eigen::Vector3d& bloch, Rng& rng);

McEstimate classical_baseline(std::size_t n_samples, std::uint64_t seed);

/// Honest rounds with every secret at polar angle theta.
McEstimate classical_fixed_theta(double theta, std::size_t n_samples, std::uint64_t seed);

enum class GuessStrategy { Same, Negate };

/// Bob holds s1 only and guesses s' = s1 (Same) or s' = not s1 (Negate).
McEstimate dishonest_guess_fidelity(double p, GuessStrategy strategy, std::size_t n_samples, std::uint64_t seed);

/// Closed form of the dishonest guess fidelity for the sampling model above.
double dishonest_guess_formula(double p, GuessStrategy strategy);

}  // namespace csr::protocol
