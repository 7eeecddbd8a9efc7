#pragma once

// Nearest-neighbor correlation closure: twelve coupled moment equations for
// the on-site magnetizations m^mu and the symmetric-pair moments
// c^{mu nu} = <sigma^mu_k sigma^nu_{k+1}>/4. One bond is kept exact; the
// remaining q-1 neighbors of each site enter at mean-field level, which is
// what shrinks the ferromagnetic region relative to the pure mean-field
// phase diagram.

#include <cmath>

#include "qca/meanfield.hpp"

namespace qca {

// State layout: [mx, my, mz, cxx, cxy, cxz, cyx, cyy, cyz, czx, czy, czz].
using CorrState = OdeState<12>;

enum CorrIndex : int {
  kMx = 0, kMy, kMz, kCxx, kCxy, kCxz, kCyx, kCyy, kCyz, kCzx, kCzy, kCzz
};

// Moments of an uncorrelated product state: c^{mu nu} = m^mu m^nu.
inline CorrState corr_from_product(const Magnetization& m) {
  CorrState s;
  s << m[0], m[1], m[2],
       m[0] * m[0], m[0] * m[1], m[0] * m[2],
       m[1] * m[0], m[1] * m[1], m[1] * m[2],
       m[2] * m[0], m[2] * m[1], m[2] * m[2];
  return s;
}

inline CorrState corr_rhs(const CorrState& s, const ModelParams& p, double q = 2.0) {
  const double om = p.omega, v = p.v, k = p.kappa;
  const double vq1 = v * (q - 1.0);
  const double mx = s[kMx], my = s[kMy], mz = s[kMz];
  const double cxx = s[kCxx], cxy = s[kCxy], cxz = s[kCxz];
  const double cyx = s[kCyx], cyy = s[kCyy], cyz = s[kCyz];
  const double czx = s[kCzx], czy = s[kCzy], czz = s[kCzz];

  CorrState d;
  d[kMx] = -om * my - 0.5 * k * mx;
  d[kMy] = om * mx + vq1 * mx * mz + v * czx - 0.5 * k * my;
  d[kMz] = -vq1 * mx * my - v * cyx - k * (0.5 + mz);
  d[kCxx] = -om * (cyx + cxy) - 2.0 * k * cxx;
  d[kCxy] = -om * (cyy - cxx) + vq1 * mx * czx + 0.25 * v * mz - 2.0 * k * cxy;
  d[kCxz] = -om * cyz - vq1 * mx * cxy - 0.25 * v * my - 2.0 * k * cxz - 0.5 * k * mx;
  d[kCyx] = om * (cxx - cyy) + vq1 * mx * czx + 0.25 * v * mz - 2.0 * k * cyx;
  d[kCyy] = om * (cxy + cyx) + vq1 * mx * (cyz + czy) - 2.0 * k * cyy;
  d[kCyz] = om * cxz - vq1 * mx * (cyy - czz) - 2.0 * k * cyz - 0.5 * k * my;
  d[kCzx] = -om * czy - vq1 * mx * cyx - 0.25 * v * my - 2.0 * k * czx - 0.5 * k * mx;
  d[kCzy] = om * czx + vq1 * mx * (czz - cyy) - 2.0 * k * czy - 0.5 * k * my;
  d[kCzz] = -vq1 * mx * (czy + cyz) - k * (mz + 2.0 * czz);
  return d;
}

inline OdeTrajectory<12> corr_integrate(const CorrState& s0, const ModelParams& p, double t_final,
                                        double dt_ode, double q = 2.0) {
  return integrate_ode<12>([&](const CorrState& s) { return corr_rhs(s, p, q); }, s0, t_final,
                           dt_ode);
}

inline CorrState corr_seed() { return corr_from_product(mf_seed()); }

inline OrderParameterResult corr_stationary_order_parameter(const ModelParams& p, double q = 2.0,
                                                            const CorrState& seed = corr_seed(),
                                                            const OdeOptions* opts_in = nullptr) {
  const OdeOptions opts = opts_in ? *opts_in : OdeOptions::defaults(p.kappa);
  const auto res =
      integrate_to_stationary<12>([&](const CorrState& s) { return corr_rhs(s, p, q); }, seed, opts);
  return {std::abs(res.state[kMx]), res.converged, res.t_end,
          Magnetization(res.state[kMx], res.state[kMy], res.state[kMz])};
}

inline PhaseDiagramGrid corr_phase_diagram(const ModelParams& base,
                                           const std::vector<double>& omegas,
                                           const std::vector<double>& vs, double q = 2.0,
                                           const OdeOptions* opts = nullptr,
                                           std::size_t n_threads = 0) {
  PhaseDiagramGrid grid;
  grid.omegas = omegas;
  grid.vs = vs;
  grid.abs_mx.assign(omegas.size() * vs.size(), 0.0);
  grid.converged.assign(omegas.size() * vs.size(), 0);
  parallel_for(
      omegas.size() * vs.size(),
      [&](std::size_t idx) {
        ModelParams p = base;
        p.omega = omegas[idx / vs.size()];
        p.v = vs[idx % vs.size()];
        const auto r = corr_stationary_order_parameter(p, q, corr_seed(), opts);
        grid.abs_mx[idx] = r.converged ? r.abs_mx : std::nan("");
        grid.converged[idx] = r.converged ? 1 : 0;
      },
      n_threads);
  return grid;
}

}  // namespace qca
