#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace csr {

template <typename Scalar>
using Complex = std::complex<Scalar>;

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;

template <typename Scalar>
using Matrix2c = Eigen::Matrix<Complex<Scalar>, 2, 2>;
template <typename Scalar>
using Matrix4c = Eigen::Matrix<Complex<Scalar>, 4, 4>;
template <typename Scalar>
using Matrix8c = Eigen::Matrix<Complex<Scalar>, 8, 8>;
template <typename Scalar>
using Vector8c = Eigen::Matrix<Complex<Scalar>, 8, 1>;
template <typename Scalar>
using Matrix16c = Eigen::Matrix<Complex<Scalar>, 16, 16>;

// Index 0 is the identity, 1..3 are sigma_x, sigma_y, sigma_z.
template <typename Scalar = double>
Matrix2c<Scalar> pauli(int index) {
  using C = Complex<Scalar>;
  Matrix2c<Scalar> m;
  switch (index) {
    case 0: m << C(1), C(0), C(0), C(1); break;
    case 1: m << C(0), C(1), C(1), C(0); break;
    case 2: m << C(0), C(0, -1), C(0, 1), C(0); break;
    case 3: m << C(1), C(0), C(0), C(-1); break;
    default: m.setZero();
  }
  return m;
}

// Kronecker product of dense matrices; the left operand owns the most
// significant index bits.
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& lhs, const Eigen::MatrixBase<DerivedB>& rhs) {
  using Scalar = typename DerivedA::Scalar;
  constexpr int ra = DerivedA::RowsAtCompileTime, rb = DerivedB::RowsAtCompileTime;
  constexpr int ca = DerivedA::ColsAtCompileTime, cb = DerivedB::ColsAtCompileTime;
  constexpr int Rows = (ra == Eigen::Dynamic || rb == Eigen::Dynamic) ? Eigen::Dynamic : ra * rb;
  constexpr int Cols = (ca == Eigen::Dynamic || cb == Eigen::Dynamic) ? Eigen::Dynamic : ca * cb;
  Eigen::Matrix<Scalar, Rows, Cols> out(lhs.rows() * rhs.rows(), lhs.cols() * rhs.cols());
  for (Eigen::Index i = 0; i < lhs.rows(); ++i)
    for (Eigen::Index j = 0; j < lhs.cols(); ++j)
      out.block(i * rhs.rows(), j * rhs.cols(), rhs.rows(), rhs.cols()) = lhs(i, j) * rhs;
  return out;
}

// sigma_{i} (x) sigma_{j} (x) sigma_{k}, indices 0..3 as in pauli().
template <typename Scalar = double>
Matrix8c<Scalar> pauli_string(int i, int j, int k) {
  return kron(kron(pauli<Scalar>(i), pauli<Scalar>(j)), pauli<Scalar>(k));
}

// Tr(rho * (sigma_i (x) sigma_j (x) sigma_k)) without forming the 8x8 string.
// Every Pauli string has exactly one nonzero per row, so this is O(8).
template <typename Scalar>
Complex<Scalar> pauli_expectation(const Matrix8c<Scalar>& rho, int i, int j, int k) {
  const std::array<int, 3> ops{i, j, k};
  Complex<Scalar> acc(0);
  for (int row = 0; row < 8; ++row) {
    int col = 0;
    Complex<Scalar> amp(1);
    for (int q = 0; q < 3; ++q) {
      const int bit = (row >> (2 - q)) & 1;
      int out = bit;
      switch (ops[q]) {
        case 0: break;
        case 1: out = bit ^ 1; break;
        case 2: out = bit ^ 1; amp *= bit == 0 ? Complex<Scalar>(0, -1) : Complex<Scalar>(0, 1); break;
        case 3: if (bit) amp = -amp; break;
      }
      col |= out << (2 - q);
    }
    // P(row, col) = amp; Tr(rho P) = sum_row P(row, col) rho(col, row)
    acc += amp * rho(col, row);
  }
  return acc;
}

/// Sum of singular values, Tr sqrt(M^T M).
template <typename Derived>
typename Derived::RealScalar trace_norm(const Eigen::MatrixBase<Derived>& m) {
  using Plain = typename Derived::PlainObject;
  Eigen::JacobiSVD<Plain> svd(m.eval());
  return svd.singularValues().sum();
}

}  // namespace csr
