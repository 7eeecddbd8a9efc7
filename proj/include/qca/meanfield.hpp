#pragma once

// Single-site mean-field closure of the dissipative Ising dynamics. The
// magnetizations m = (mx, my, mz) = <sigma^{x,y,z}>/2 obey
//
//   dmx/dt = -omega my - (kappa/2) mx
//   dmy/dt =  omega mx + v q mx mz - (kappa/2) my
//   dmz/dt = -v q mx my - kappa (mz + 1/2)
//
// with q the coordination number (q = 2 for the chain). The all-vacuum state
// (0, 0, -1/2) is the paramagnetic fixed point; for v beyond
// v_c = (4 omega^2 + kappa^2)/(2 omega q) a ferromagnetic pair with
// mx != 0 appears.

#include <cmath>

#include "qca/model.hpp"
#include "qca/ode.hpp"

namespace qca {

using Magnetization = OdeState<3>;  // (mx, my, mz)

inline Magnetization mf_rhs(const Magnetization& m, const ModelParams& p, double q = 2.0) {
  const double vq = p.v * q;
  Magnetization d;
  d[0] = -p.omega * m[1] - 0.5 * p.kappa * m[0];
  d[1] = p.omega * m[0] + vq * m[0] * m[2] - 0.5 * p.kappa * m[1];
  d[2] = -vq * m[0] * m[1] - p.kappa * (m[2] + 0.5);
  return d;
}

inline OdeTrajectory<3> mf_integrate(const Magnetization& m0, const ModelParams& p,
                                     double t_final, double dt_ode, double q = 2.0) {
  return integrate_ode<3>([&](const Magnetization& m) { return mf_rhs(m, p, q); }, m0, t_final,
                          dt_ode);
}

// Symmetry-broken seed biased toward the ferromagnetic branch.
inline Magnetization mf_seed() { return Magnetization(0.1, 0.0, -0.4); }

struct OrderParameterResult {
  double abs_mx = 0.0;
  bool converged = false;
  double t_end = 0.0;
  Magnetization state = Magnetization::Zero();
};

inline OrderParameterResult mf_stationary_order_parameter(const ModelParams& p, double q = 2.0,
                                                          const Magnetization& seed = mf_seed(),
                                                          const OdeOptions* opts_in = nullptr) {
  const OdeOptions opts = opts_in ? *opts_in : OdeOptions::defaults(p.kappa);
  const auto res =
      integrate_to_stationary<3>([&](const Magnetization& m) { return mf_rhs(m, p, q); }, seed, opts);
  return {std::abs(res.state[0]), res.converged, res.t_end, res.state};
}

inline PhaseDiagramGrid mf_phase_diagram(const ModelParams& base, const std::vector<double>& omegas,
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
        const auto r = mf_stationary_order_parameter(p, q, mf_seed(), opts);
        grid.abs_mx[idx] = r.converged ? r.abs_mx : std::nan("");
        grid.converged[idx] = r.converged ? 1 : 0;
      },
      n_threads);
  return grid;
}

}  // namespace qca
