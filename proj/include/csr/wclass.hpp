#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "csr/state.hpp"

namespace csr::wclass {

class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Non-negative, unit-norm coefficients of
/// l0|000> + l1|100> + l2|101> + l3|110>.
class WClassParams {
 public:
  explicit WClassParams(const std::array<double, 4>& lambda);

  // Rescales to unit norm first; still rejects negative entries.
  static WClassParams normalized(std::array<double, 4> lambda);

  const std::array<double, 4>& lambda() const { return lambda_; }
  double operator[](int i) const { return lambda_[i]; }

 private:
  std::array<double, 4> lambda_;
};

PureState3Q<double> wclass_state(const WClassParams& p);

struct RT {
  Eigen::Matrix3d R;
  Eigen::Matrix3d T;
};

/// Closed-form dealer-reconstructor correlation R and sigma_x tensor slice T
/// for the (A, B, C) setting.
RT wclass_rt_closed_form(const WClassParams& p);

std::vector<WClassParams> sample_wclass(std::size_t n, std::uint64_t seed);

enum class Region { Orange, Blue };

inline const char* to_string(Region r) { return r == Region::Orange ? "orange" : "blue"; }

struct ScatterRecord {
  WClassParams params;
  double f_tele = 0;   // dealer-reconstructor teleportation fidelity
  double f_recon = 0;  // F_max for (A, B, C)
  Region region = Region::Blue;
};

/// f_tele <= 2/3 is orange, otherwise blue.
Region region_for(double f_tele);

ScatterRecord evaluate(const WClassParams& p);

std::vector<ScatterRecord> scatter_experiment(std::size_t n, std::uint64_t seed);

void write_csv_header(std::ostream& out);
void write_csv_record(std::ostream& out, const ScatterRecord& r);

}  // namespace csr::wclass
