#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "csr/linalg.hpp"
#include "csr/state.hpp"

namespace csr {

/// Ordered (dealer, assistant, reconstructor) role assignment.
class Setting {
 public:
  Setting(Qubit dealer, Qubit assistant, Qubit reconstructor)
      : dealer_(dealer), assistant_(assistant), reconstructor_(reconstructor) {
    if (dealer == assistant || dealer == reconstructor || assistant == reconstructor)
      throw std::invalid_argument("setting roles must be a permutation of A, B, C");
  }

  static Setting canonical() { return {Qubit::A, Qubit::B, Qubit::C}; }

  // Accepts "ABC", "CBA", ... (case-insensitive).
  static std::optional<Setting> parse(std::string_view text) {
    if (text.size() != 3) return std::nullopt;
    std::array<Qubit, 3> q{};
    for (int i = 0; i < 3; ++i) {
      const char ch = static_cast<char>(text[i] & ~0x20);
      if (ch < 'A' || ch > 'C') return std::nullopt;
      q[i] = static_cast<Qubit>(ch - 'A');
    }
    if (q[0] == q[1] || q[0] == q[2] || q[1] == q[2]) return std::nullopt;
    return Setting(q[0], q[1], q[2]);
  }

  static std::array<Setting, 6> all() {
    using enum Qubit;
    return {Setting(A, B, C), Setting(C, B, A), Setting(A, C, B),
            Setting(B, C, A), Setting(B, A, C), Setting(C, A, B)};
  }

  Qubit dealer() const { return dealer_; }
  Qubit assistant() const { return assistant_; }
  Qubit reconstructor() const { return reconstructor_; }

  std::array<Qubit, 3> order() const { return {dealer_, assistant_, reconstructor_}; }

  std::string str() const { return {name_of(dealer_), name_of(assistant_), name_of(reconstructor_)}; }

  bool operator==(const Setting&) const = default;

 private:
  Qubit dealer_;
  Qubit assistant_;
  Qubit reconstructor_;
};

inline constexpr double kDefaultZeroEpsilon = 1e-9;
inline constexpr double kQssSlack = 1e-12;

namespace detail {

// Correlation matrix between two distinct qubits, rows indexed by `row`.
template <typename Scalar>
Matrix3<Scalar> pair_matrix(const BlochDecomposition<Scalar>& d, Qubit row, Qubit col) {
  const int r = index_of(row), c = index_of(col);
  const Matrix3<Scalar>* m = nullptr;
  bool transpose = false;
  if (r == 0 && c == 1) m = &d.Q;
  else if (r == 1 && c == 0) m = &d.Q, transpose = true;
  else if (r == 0 && c == 2) m = &d.R;
  else if (r == 2 && c == 0) m = &d.R, transpose = true;
  else if (r == 1 && c == 2) m = &d.S;
  else m = &d.S, transpose = true;
  return transpose ? Matrix3<Scalar>(m->transpose()) : *m;
}

}  // namespace detail

/// sigma_x slice of the tensor on the assistant wire, rows = dealer Pauli
/// index, columns = reconstructor Pauli index.
template <typename Scalar>
Matrix3<Scalar> t_matrix_for_setting(const BlochDecomposition<Scalar>& d, const Setting& s) {
  Matrix3<Scalar> T;
  std::array<int, 3> idx{};
  idx[index_of(s.assistant())] = 0;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      idx[index_of(s.dealer())] = i;
      idx[index_of(s.reconstructor())] = k;
      T(i, k) = d.t(idx[0], idx[1], idx[2]);
    }
  }
  return T;
}

/// R when B assists, Q when C assists, S when A assists; rows follow the dealer.
template <typename Scalar>
Matrix3<Scalar> pair_correlation_for_setting(const BlochDecomposition<Scalar>& d, const Setting& s) {
  return detail::pair_matrix(d, s.dealer(), s.reconstructor());
}

template <typename Scalar>
Matrix3<Scalar> dealer_assistant_correlation(const BlochDecomposition<Scalar>& d, const Setting& s) {
  return detail::pair_matrix(d, s.dealer(), s.assistant());
}

/// (||P + T||_1 + ||P - T||_1) / 2
template <typename Scalar>
Scalar theta(const Matrix3<Scalar>& pair, const Matrix3<Scalar>& t) {
  return (trace_norm(pair + t) + trace_norm(pair - t)) / Scalar(2);
}

template <typename Scalar>
Scalar theta(const BlochDecomposition<Scalar>& d, const Setting& s) {
  return theta<Scalar>(pair_correlation_for_setting(d, s), t_matrix_for_setting(d, s));
}

template <typename Scalar>
Scalar f_max_from_theta(Scalar th) {
  return (Scalar(1) + th / Scalar(3)) / Scalar(2);
}

template <typename Scalar>
Scalar f_max(const BlochDecomposition<Scalar>& d, const Setting& s) {
  return f_max_from_theta(theta(d, s));
}

/// Optimal two-party teleportation fidelity through a pair with this
/// correlation matrix.
template <typename Scalar>
Scalar teleportation_fidelity(const Matrix3<Scalar>& pair) {
  return (Scalar(1) + trace_norm(pair) / Scalar(3)) / Scalar(2);
}

enum class Case { Case1 = 1, Case2 = 2, Case3 = 3, Case4 = 4 };

inline const char* to_string(Case c) {
  switch (c) {
    case Case::Case1: return "Case1";
    case Case::Case2: return "Case2";
    case Case::Case3: return "Case3";
    case Case::Case4: return "Case4";
  }
  return "?";
}

struct CaseLabel {
  Case label;
  double epsilon;
  bool pair_is_zero;
  bool t_is_zero;
};

// A matrix counts as O iff every entry is below epsilon in magnitude.
template <typename Scalar>
CaseLabel classify_case(const Matrix3<Scalar>& pair, const Matrix3<Scalar>& t,
                        double epsilon = kDefaultZeroEpsilon) {
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  const bool p0 = pair.cwiseAbs().maxCoeff() < Scalar(epsilon);
  const bool t0 = t.cwiseAbs().maxCoeff() < Scalar(epsilon);
  const Case c = !p0 && !t0 ? Case::Case1 : p0 && !t0 ? Case::Case2 : !p0 && t0 ? Case::Case3 : Case::Case4;
  return {c, epsilon, p0, t0};
}

template <typename Scalar>
struct QssCheck {
  bool ok;
  Scalar dealer_assistant_norm;      // Tr sqrt(Q'^T Q')
  Scalar dealer_reconstructor_norm;  // Tr sqrt(R'^T R')
  Scalar theta;
};

/// Secret sharing needs both single-shareholder channels at or below the
/// classical teleportation limit (norm <= 1) and joint reconstruction above it.
template <typename Scalar>
QssCheck<Scalar> qss_check(const BlochDecomposition<Scalar>& d, const Setting& s) {
  QssCheck<Scalar> q;
  q.dealer_assistant_norm = trace_norm(dealer_assistant_correlation(d, s));
  q.dealer_reconstructor_norm = trace_norm(pair_correlation_for_setting(d, s));
  q.theta = theta(d, s);
  q.ok = q.dealer_assistant_norm <= Scalar(1 + kQssSlack) &&
         q.dealer_reconstructor_norm <= Scalar(1 + kQssSlack) && q.theta > Scalar(1);
  return q;
}

template <typename Scalar = double>
struct FidelityReport {
  Setting setting = Setting::canonical();
  Scalar theta = 0;
  Scalar f_max = 0.5;
  Scalar f_tele_dealer_reconstructor = 0.5;
  Scalar f_tele_dealer_assistant = 0.5;
  CaseLabel case_label{Case::Case4, kDefaultZeroEpsilon, true, true};
  QssCheck<Scalar> qss{false, 0, 0, 0};
  bool qss_ok = false;
  bool quantum_advantage = false;
};

template <typename Scalar>
FidelityReport<Scalar> full_report(const BlochDecomposition<Scalar>& d, const Setting& s,
                                   double epsilon = kDefaultZeroEpsilon) {
  const Matrix3<Scalar> pair = pair_correlation_for_setting(d, s);
  const Matrix3<Scalar> t = t_matrix_for_setting(d, s);
  FidelityReport<Scalar> r;
  r.setting = s;
  r.theta = theta<Scalar>(pair, t);
  r.f_max = f_max_from_theta(r.theta);
  r.f_tele_dealer_reconstructor = teleportation_fidelity(pair);
  r.f_tele_dealer_assistant = teleportation_fidelity(dealer_assistant_correlation(d, s));
  r.case_label = classify_case<Scalar>(pair, t, epsilon);
  r.qss = qss_check(d, s);
  r.qss_ok = r.qss.ok;
  // f_max > 2/3 exactly when theta > 1; compare theta to avoid rounding in f_max.
  r.quantum_advantage = r.theta > Scalar(1);
  return r;
}

template <typename Scalar>
FidelityReport<Scalar> full_report(const DensityMatrix3Q<Scalar>& rho, const Setting& s,
                                   double epsilon = kDefaultZeroEpsilon) {
  return full_report(decompose_state(rho), s, epsilon);
}

}  // namespace csr
