#pragma once

// Fixed-step RK4 integration and stationary-state scanning shared by the
// mean-field and correlation-closure moment equations.

#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "qca/parallel.hpp"

namespace qca {

struct OdeOptions {
  double dt_ode = 1e-3;          // RK4 step
  double t_max = 200.0;          // integration horizon for stationary scans
  double stationary_tol = 1e-10; // converged when ||dstate/dt|| drops below this

  // Defaults expressed in units of the decay rate: dt = 1e-3/kappa, t_max = 200/kappa.
  static OdeOptions defaults(double kappa) { return {1e-3 / kappa, 200.0 / kappa, 1e-10}; }
};

template <int N>
using OdeState = Eigen::Matrix<double, N, 1>;

namespace detail {

template <int N, typename Rhs>
OdeState<N> rk4_step(const Rhs& rhs, const OdeState<N>& x, double h) {
  const OdeState<N> k1 = rhs(x);
  const OdeState<N> k2 = rhs(x + 0.5 * h * k1);
  const OdeState<N> k3 = rhs(x + 0.5 * h * k2);
  const OdeState<N> k4 = rhs(x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace detail

template <int N>
struct OdeTrajectory {
  std::vector<double> t;
  std::vector<OdeState<N>> x;
};

// Integrates to t_final with the trajectory sampled at every RK4 step.
template <int N, typename Rhs>
OdeTrajectory<N> integrate_ode(const Rhs& rhs, const OdeState<N>& x0, double t_final, double dt) {
  OdeTrajectory<N> traj;
  const std::size_t steps = static_cast<std::size_t>(std::ceil(t_final / dt - 1e-12));
  traj.t.reserve(steps + 1);
  traj.x.reserve(steps + 1);
  OdeState<N> x = x0;
  traj.t.push_back(0.0);
  traj.x.push_back(x);
  for (std::size_t i = 0; i < steps; ++i) {
    x = detail::rk4_step<N>(rhs, x, dt);
    traj.t.push_back(double(i + 1) * dt);
    traj.x.push_back(x);
  }
  return traj;
}

template <int N>
struct StationaryResult {
  OdeState<N> state = OdeState<N>::Zero();
  bool converged = false;  // ||rhs|| < stationary_tol reached before t_max
  double t_end = 0.0;
};

// Runs until the flow is stationary or t_max is hit. Non-convergence is a
// reported status, distinct from a genuine zero fixed point.
template <int N, typename Rhs>
StationaryResult<N> integrate_to_stationary(const Rhs& rhs, const OdeState<N>& x0,
                                            const OdeOptions& opts) {
  StationaryResult<N> res;
  OdeState<N> x = x0;
  double t = 0.0;
  while (t < opts.t_max) {
    const OdeState<N> k1 = rhs(x);
    if (k1.norm() < opts.stationary_tol) {
      res.state = x;
      res.converged = true;
      res.t_end = t;
      return res;
    }
    const double h = opts.dt_ode;
    const OdeState<N> k2 = rhs(x + 0.5 * h * k1);
    const OdeState<N> k3 = rhs(x + 0.5 * h * k2);
    const OdeState<N> k4 = rhs(x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h;
  }
  res.state = x;
  res.converged = false;
  res.t_end = t;
  return res;
}

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + (hi - lo) * double(i) / double(n - 1);
  return v;
}

// Stationary |m_x| over a parameter grid; rows iterate omega (outer), columns
// v (inner). NaN marks grid points that failed to reach stationarity.
struct PhaseDiagramGrid {
  std::vector<double> omegas;
  std::vector<double> vs;
  std::vector<double> abs_mx;     // size omegas.size() * vs.size(), omega-major
  std::vector<char> converged;    // same layout

  double value(std::size_t i, std::size_t j) const { return abs_mx[i * vs.size() + j]; }
  bool ok(std::size_t i, std::size_t j) const { return converged[i * vs.size() + j] != 0; }
};

}  // namespace qca
