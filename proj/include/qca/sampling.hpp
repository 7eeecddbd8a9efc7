#pragma once

// Ensemble generation: product initial states with m0x drawn uniformly from
// [0, 0.5], the remaining Bloch components uniform on the circle of radius
// sqrt(1/4 - m0x^2), plus the spin-flipped partner of every draw.
//
// Angle bookkeeping: a site is prepared as
//   |psi> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>,
// and with sigma_z|0> = -|0>, sigma_y = [[0, i], [-i, 0]] this state has
// Bloch vector (m) given by  theta = arccos(-2 m z), phi = atan2(-m_y, m_x),
// so that the measured magnetizations reproduce (m0x, m0y, m0z) exactly.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "qca/tensor_network.hpp"

namespace qca {

struct ProductStateSpec {
  std::uint64_t sample_id = 0;
  double m0x = 0.0, m0y = 0.0, m0z = 0.0;  // Bloch vector, |m| = 1/2
  double theta = 0.0;                      // in [0, pi]
  double phi = 0.0;                        // in (-pi, pi]
  bool is_partner = false;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// uniform double in [0, 1) with 53 random bits
inline double uniform_unit(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

// atan2 mapped onto (-pi, pi]
inline double principal_angle(double y, double x) {
  double a = std::atan2(y, x);
  if (a <= -M_PI) a += 2.0 * M_PI;
  return a;
}

}  // namespace detail

// preparation angles for a Bloch vector of length 1/2
inline void bloch_angles(double m0x, double m0y, double m0z, double& theta, double& phi) {
  const double c = std::clamp(-2.0 * m0z, -1.0, 1.0);
  theta = std::acos(c);
  phi = detail::principal_angle(-m0y, m0x);
}

inline ProductStateSpec spec_from_bloch(std::uint64_t sample_id, double m0x, double m0y,
                                        double m0z, bool is_partner = false) {
  ProductStateSpec s;
  s.sample_id = sample_id;
  s.m0x = m0x;
  s.m0y = m0y;
  s.m0z = m0z;
  s.is_partner = is_partner;
  bloch_angles(m0x, m0y, m0z, s.theta, s.phi);
  return s;
}

// spin flip: (m0x, m0y) negate, m0z invariant
inline ProductStateSpec z2_partner(const ProductStateSpec& s) {
  ProductStateSpec p = spec_from_bloch(s.sample_id + 1, -s.m0x, -s.m0y, s.m0z, true);
  return p;
}

inline ComplexVector bloch_ket(double theta, double phi) {
  ComplexVector psi(2);
  psi(0) = std::cos(0.5 * theta);
  psi(1) = std::exp(kI * phi) * std::sin(0.5 * theta);
  return psi;
}

inline ComplexMatrix site_density(const ProductStateSpec& s) {
  const ComplexVector psi = bloch_ket(s.theta, s.phi);
  return psi * psi.adjoint();
}

// 2n specs: draw i yields the base spec (sample_id 2i, m0x >= 0) immediately
// followed by its partner (sample_id 2i+1). Each draw uses an independent RNG
// substream keyed by seed ^ sample_id, so the ensemble is reproducible under
// any execution order.
inline std::vector<ProductStateSpec> sample_initial_states(std::size_t n_draws,
                                                           std::uint64_t seed) {
  if (n_draws < 1) throw std::invalid_argument("sample_initial_states: need n >= 1");
  std::vector<ProductStateSpec> out;
  out.reserve(2 * n_draws);
  for (std::size_t i = 0; i < n_draws; ++i) {
    const std::uint64_t id = 2 * std::uint64_t(i);
    std::mt19937_64 rng(detail::splitmix64(seed ^ id));
    const double m0x = 0.5 * detail::uniform_unit(rng);
    const double alpha = 2.0 * M_PI * detail::uniform_unit(rng);
    const double r = std::sqrt(0.25 - m0x * m0x);
    const ProductStateSpec base =
        spec_from_bloch(id, m0x, r * std::sin(alpha), r * std::cos(alpha));
    out.push_back(base);
    out.push_back(z2_partner(base));
  }
  return out;
}

// uniform product MPS of |psi><psi| over n_sites sites
inline MatrixProductState to_layer_state(const ProductStateSpec& s, std::size_t n_sites) {
  return MatrixProductState::product(std::vector<ComplexMatrix>(n_sites, site_density(s)));
}

// Kolmogorov-Smirnov statistic D against Uniform[lo, hi]; compare
// sqrt(n) * D to the critical value (1.628 at the 1% level).
inline double ks_uniform_statistic(std::vector<double> values, double lo, double hi) {
  if (values.empty()) throw std::invalid_argument("ks_uniform_statistic: empty sample");
  if (!(hi > lo)) throw std::invalid_argument("ks_uniform_statistic: bad interval");
  std::sort(values.begin(), values.end());
  const double n = double(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double cdf = std::clamp((values[i] - lo) / (hi - lo), 0.0, 1.0);
    d = std::max(d, std::abs(double(i + 1) / n - cdf));
    d = std::max(d, std::abs(cdf - double(i) / n));
  }
  return d;
}

}  // namespace qca
