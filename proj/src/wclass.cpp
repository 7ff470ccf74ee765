#include "csr/wclass.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "csr/fidelity.hpp"
#include "csr/montecarlo.hpp"

namespace csr::wclass {

WClassParams::WClassParams(const std::array<double, 4>& lambda) : lambda_(lambda) {
  double norm2 = 0;
  for (double l : lambda_) {
    if (!(l >= 0.0)) throw InvalidParams("W-class coefficients must be non-negative");
    norm2 += l * l;
  }
  if (!(std::abs(norm2 - 1.0) <= kNormTol)) throw InvalidParams("W-class coefficients must satisfy sum l_i^2 = 1");
}

WClassParams WClassParams::normalized(std::array<double, 4> lambda) {
  double norm2 = 0;
  for (double l : lambda) norm2 += l * l;
  if (!(norm2 > 0)) throw InvalidParams("W-class coefficients are all zero");
  const double n = std::sqrt(norm2);
  for (double& l : lambda) l /= n;
  return WClassParams(lambda);
}

PureState3Q<double> wclass_state(const WClassParams& p) {
  Vector8c<double> amp = Vector8c<double>::Zero();
  amp(0b000) = p[0];
  amp(0b100) = p[1];
  amp(0b101) = p[2];
  amp(0b110) = p[3];
  return PureState3Q<double>(amp);
}

RT wclass_rt_closed_form(const WClassParams& p) {
  const double l0 = p[0], l1 = p[1], l2 = p[2], l3 = p[3];
  RT rt;
  rt.R << l0 * l2, 0, l0 * l1,
          0, -l0 * l2, 0,
          -l1 * l2, 0, 0.5 - l1 * l1 - l3 * l3;
  rt.T << 0, 0, l0 * l3,
          0, 0, 0,
          -l2 * l3, 0, -l1 * l3;
  rt.R *= 2.0;
  rt.T *= 2.0;
  return rt;
}

std::vector<WClassParams> sample_wclass(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> normal;
  std::vector<WClassParams> out;
  out.reserve(n);
  while (out.size() < n) {
    std::array<double, 4> l{};
    double norm2 = 0;
    for (double& v : l) {
      v = std::abs(normal(rng));
      norm2 += v * v;
    }
    if (norm2 < 1e-24) continue;
    out.push_back(WClassParams::normalized(l));
  }
  return out;
}

Region region_for(double f_tele) { return f_tele <= 2.0 / 3.0 ? Region::Orange : Region::Blue; }

ScatterRecord evaluate(const WClassParams& p) {
  const auto d = decompose_state(pure_to_density(wclass_state(p)));
  const Setting s = Setting::canonical();
  ScatterRecord r{p};
  r.f_tele = teleportation_fidelity(pair_correlation_for_setting(d, s));
  r.f_recon = f_max(d, s);
  r.region = region_for(r.f_tele);
  return r;
}

std::vector<ScatterRecord> scatter_experiment(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  std::vector<ScatterRecord> out;
  out.reserve(n);
  for (const auto& p : sample_wclass(n, seed)) out.push_back(evaluate(p));
  return out;
}

void write_csv_header(std::ostream& out) { out << "lambda0,lambda1,lambda2,lambda3,f_tele,f_recon,region\n"; }

void write_csv_record(std::ostream& out, const ScatterRecord& r) {
  char buf[256];
  const auto& l = r.params.lambda();
  std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,", l[0], l[1], l[2], l[3], r.f_tele,
                r.f_recon);
  out << buf << to_string(r.region) << '\n';
}

}  // namespace csr::wclass
