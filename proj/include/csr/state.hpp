#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "csr/linalg.hpp"

namespace csr {

enum class Qubit { A = 0, B = 1, C = 2 };

inline int index_of(Qubit q) { return static_cast<int>(q); }
inline char name_of(Qubit q) { return "ABC"[index_of(q)]; }

// Tolerances shared by every state-level check.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdFloor = -1e-9;
inline constexpr double kImagResidueTol = 1e-8;
inline constexpr double kNormTol = 1e-12;

class StateError : public std::runtime_error {
 public:
  enum class Kind { NotHermitian, NotUnitTrace, NotPSD, NotNormalized, NonHermitianInput, BadShape };

  StateError(Kind kind, double violation, const std::string& what)
      : std::runtime_error(what), kind_(kind), violation_(violation) {}

  Kind kind() const { return kind_; }
  // Magnitude of the failed check (distance from the admissible set).
  double violation() const { return violation_; }

 private:
  Kind kind_;
  double violation_;
};

inline const char* to_string(StateError::Kind kind) {
  switch (kind) {
    case StateError::Kind::NotHermitian: return "NotHermitian";
    case StateError::Kind::NotUnitTrace: return "NotUnitTrace";
    case StateError::Kind::NotPSD: return "NotPSD";
    case StateError::Kind::NotNormalized: return "NotNormalized";
    case StateError::Kind::NonHermitianInput: return "NonHermitianInput";
    case StateError::Kind::BadShape: return "BadShape";
  }
  return "Unknown";
}

namespace detail {
[[noreturn]] inline void fail(StateError::Kind kind, double violation, const std::string& msg) {
  throw StateError(kind, violation, std::string(to_string(kind)) + ": " + msg + " (violation " +
                                        std::to_string(violation) + ")");
}
}  // namespace detail

/// Eight amplitudes over |000>..|111>, qubit A most significant.
template <typename Scalar = double>
class PureState3Q {
 public:
  explicit PureState3Q(const Vector8c<Scalar>& amplitudes) : amplitudes_(amplitudes) {
    const Scalar err = std::abs(amplitudes_.squaredNorm() - Scalar(1));
    if (!(err <= Scalar(kNormTol)))
      detail::fail(StateError::Kind::NotNormalized, static_cast<double>(err), "sum |amp|^2 != 1");
  }

  static PureState3Q normalized(Vector8c<Scalar> amplitudes) {
    const Scalar n = amplitudes.norm();
    if (!(n > Scalar(0)))
      detail::fail(StateError::Kind::NotNormalized, 1.0, "zero amplitude vector");
    amplitudes /= n;
    return PureState3Q(amplitudes);
  }

  const Vector8c<Scalar>& amplitudes() const { return amplitudes_; }

 private:
  Vector8c<Scalar> amplitudes_;
};

template <typename Scalar = double>
class BlochVector {
 public:
  explicit BlochVector(const Vector3<Scalar>& phi) : phi_(phi) {
    const Scalar excess = phi_.norm() - Scalar(1);
    if (!(excess <= Scalar(kNormTol)))
      detail::fail(StateError::Kind::NotNormalized, static_cast<double>(excess), "|phi| > 1");
  }

  const Vector3<Scalar>& vector() const { return phi_; }

  Matrix2c<Scalar> density() const {
    Matrix2c<Scalar> rho = pauli<Scalar>(0);
    for (int i = 0; i < 3; ++i) rho += phi_(i) * pauli<Scalar>(i + 1);
    return rho / Scalar(2);
  }

 private:
  Vector3<Scalar> phi_;
};

/// Validated three-qubit density matrix. Only validate_state() and
/// pure_to_density() construct one.
template <typename Scalar = double>
class DensityMatrix3Q {
 public:
  const Matrix8c<Scalar>& matrix() const { return matrix_; }

  Scalar purity() const { return (matrix_ * matrix_).trace().real(); }

 private:
  explicit DensityMatrix3Q(const Matrix8c<Scalar>& m) : matrix_(m) {}

  template <typename S>
  friend DensityMatrix3Q<S> validate_state(const Matrix8c<S>& m);

  Matrix8c<Scalar> matrix_;
};

/// Local vectors a, b, c; pair correlations Q (AB), R (AC), S (BC); tensor
/// tau with tau[i](j, k) = t_{ijk}. All indices are 0-based x, y, z.
template <typename Scalar = double>
struct BlochDecomposition {
  Vector3<Scalar> a = Vector3<Scalar>::Zero();
  Vector3<Scalar> b = Vector3<Scalar>::Zero();
  Vector3<Scalar> c = Vector3<Scalar>::Zero();
  Matrix3<Scalar> Q = Matrix3<Scalar>::Zero();
  Matrix3<Scalar> R = Matrix3<Scalar>::Zero();
  Matrix3<Scalar> S = Matrix3<Scalar>::Zero();
  std::array<Matrix3<Scalar>, 3> tau{Matrix3<Scalar>::Zero(), Matrix3<Scalar>::Zero(),
                                     Matrix3<Scalar>::Zero()};

  Scalar t(int i, int j, int k) const { return tau[i](j, k); }
  Scalar& t(int i, int j, int k) { return tau[i](j, k); }

  Scalar max_abs() const {
    Scalar m = std::max({a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff(),
                         c.cwiseAbs().maxCoeff(), Q.cwiseAbs().maxCoeff(),
                         R.cwiseAbs().maxCoeff(), S.cwiseAbs().maxCoeff()});
    for (const auto& slice : tau) m = std::max(m, slice.cwiseAbs().maxCoeff());
    return m;
  }
};

/// Two-qubit analogue: local vectors and the 3x3 correlation matrix.
template <typename Scalar = double>
struct PairDecomposition {
  Vector3<Scalar> first = Vector3<Scalar>::Zero();
  Vector3<Scalar> second = Vector3<Scalar>::Zero();
  Matrix3<Scalar> corr = Matrix3<Scalar>::Zero();
};

template <typename Scalar>
DensityMatrix3Q<Scalar> validate_state(const Matrix8c<Scalar>& m) {
  const Scalar herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (!(herm <= Scalar(kHermitianTol)))
    detail::fail(StateError::Kind::NotHermitian, static_cast<double>(herm), "max|rho - rho^dagger|");

  const Scalar trace_err = std::abs(m.trace() - Complex<Scalar>(1));
  if (!(trace_err <= Scalar(kTraceTol)))
    detail::fail(StateError::Kind::NotUnitTrace, static_cast<double>(trace_err), "|Tr rho - 1|");

  const Matrix8c<Scalar> hermitian = (m + m.adjoint()) / Scalar(2);
  Eigen::SelfAdjointEigenSolver<Matrix8c<Scalar>> eig(hermitian, Eigen::EigenvaluesOnly);
  const Scalar min_eig = eig.eigenvalues().minCoeff();
  if (!(min_eig >= Scalar(kPsdFloor)))
    detail::fail(StateError::Kind::NotPSD, static_cast<double>(-min_eig), "negative eigenvalue");

  return DensityMatrix3Q<Scalar>(m);
}

template <typename Scalar>
DensityMatrix3Q<Scalar> validate_state(const Eigen::MatrixX<Complex<Scalar>>& m) {
  if (m.rows() != 8 || m.cols() != 8)
    detail::fail(StateError::Kind::BadShape, 0.0,
                 "expected 8x8, got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  return validate_state<Scalar>(Matrix8c<Scalar>(m));
}

template <typename Scalar>
DensityMatrix3Q<Scalar> pure_to_density(const PureState3Q<Scalar>& psi) {
  const auto& v = psi.amplitudes();
  return validate_state<Scalar>(Matrix8c<Scalar>(v * v.adjoint()));
}

/// (1/8) sum of all Pauli-string terms. Hermitian with unit trace; positivity
/// is up to the caller (pass the result to validate_state).
template <typename Scalar>
Matrix8c<Scalar> compose_state(const BlochDecomposition<Scalar>& d) {
  Matrix8c<Scalar> rho = pauli_string<Scalar>(0, 0, 0);
  for (int i = 0; i < 3; ++i) {
    rho += d.a(i) * pauli_string<Scalar>(i + 1, 0, 0);
    rho += d.b(i) * pauli_string<Scalar>(0, i + 1, 0);
    rho += d.c(i) * pauli_string<Scalar>(0, 0, i + 1);
    for (int j = 0; j < 3; ++j) {
      rho += d.Q(i, j) * pauli_string<Scalar>(i + 1, j + 1, 0);
      rho += d.R(i, j) * pauli_string<Scalar>(i + 1, 0, j + 1);
      rho += d.S(i, j) * pauli_string<Scalar>(0, i + 1, j + 1);
      for (int k = 0; k < 3; ++k) rho += d.t(i, j, k) * pauli_string<Scalar>(i + 1, j + 1, k + 1);
    }
  }
  return rho / Scalar(8);
}

/// Pauli expectation values of an arbitrary 8x8 operator. Throws
/// NonHermitianInput when any coefficient has imaginary part above 1e-8.
template <typename Scalar>
BlochDecomposition<Scalar> decompose_operator(const Matrix8c<Scalar>& rho) {
  Scalar worst = 0;
  auto coeff = [&](int i, int j, int k) {
    const Complex<Scalar> v = pauli_expectation(rho, i, j, k);
    worst = std::max(worst, std::abs(v.imag()));
    return v.real();
  };
  BlochDecomposition<Scalar> d;
  for (int i = 0; i < 3; ++i) {
    d.a(i) = coeff(i + 1, 0, 0);
    d.b(i) = coeff(0, i + 1, 0);
    d.c(i) = coeff(0, 0, i + 1);
    for (int j = 0; j < 3; ++j) {
      d.Q(i, j) = coeff(i + 1, j + 1, 0);
      d.R(i, j) = coeff(i + 1, 0, j + 1);
      d.S(i, j) = coeff(0, i + 1, j + 1);
      for (int k = 0; k < 3; ++k) d.t(i, j, k) = coeff(i + 1, j + 1, k + 1);
    }
  }
  if (!(worst <= Scalar(kImagResidueTol)))
    detail::fail(StateError::Kind::NonHermitianInput, static_cast<double>(worst),
                 "imaginary residue in Pauli coefficient");
  return d;
}

template <typename Scalar>
BlochDecomposition<Scalar> decompose_state(const DensityMatrix3Q<Scalar>& rho) {
  return decompose_operator(rho.matrix());
}

/// Traces out one qubit; the two survivors keep their relative order.
template <typename Scalar>
Matrix4c<Scalar> partial_trace(const Matrix8c<Scalar>& rho, Qubit discard) {
  const int shift = 2 - index_of(discard);
  auto expand = [shift](int kept, int bit) {
    const int high = (kept >> shift) << (shift + 1);
    const int low = kept & ((1 << shift) - 1);
    return high | (bit << shift) | low;
  };
  Matrix4c<Scalar> out = Matrix4c<Scalar>::Zero();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      for (int bit = 0; bit < 2; ++bit) out(r, c) += rho(expand(r, bit), expand(c, bit));
  return out;
}

template <typename Scalar>
Matrix4c<Scalar> partial_trace(const DensityMatrix3Q<Scalar>& rho, Qubit discard) {
  return partial_trace(rho.matrix(), discard);
}

template <typename Scalar>
PairDecomposition<Scalar> decompose_pair(const Matrix4c<Scalar>& rho) {
  PairDecomposition<Scalar> d;
  for (int i = 0; i < 3; ++i) {
    d.first(i) = (rho * kron(pauli<Scalar>(i + 1), pauli<Scalar>(0))).trace().real();
    d.second(i) = (rho * kron(pauli<Scalar>(0), pauli<Scalar>(i + 1))).trace().real();
    for (int j = 0; j < 3; ++j)
      d.corr(i, j) = (rho * kron(pauli<Scalar>(i + 1), pauli<Scalar>(j + 1))).trace().real();
  }
  return d;
}

/// Relabels wires: qubit slot p of the result holds qubit order[p] of rho.
template <typename Scalar>
Matrix8c<Scalar> permute_qubits(const Matrix8c<Scalar>& rho, const std::array<Qubit, 3>& order) {
  auto map = [&](int idx) {
    int src = 0;
    for (int p = 0; p < 3; ++p) {
      const int bit = (idx >> (2 - p)) & 1;
      src |= bit << (2 - index_of(order[p]));
    }
    return src;
  };
  Matrix8c<Scalar> out;
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) out(r, c) = rho(map(r), map(c));
  return out;
}

template <typename Scalar>
DensityMatrix3Q<Scalar> permute_qubits(const DensityMatrix3Q<Scalar>& rho,
                                       const std::array<Qubit, 3>& order) {
  return validate_state<Scalar>(permute_qubits(rho.matrix(), order));
}

}  // namespace csr
