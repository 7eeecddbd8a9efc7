#pragma once

// Model definition: the dissipative transverse-field Ising chain with local
// decay, its parametrized jump operators, and the three-qubit collision
// gates that propagate one layer of the automaton into the next.
//
// Sites are 0-based. Bond b couples sites (b, b+1); open boundaries. Every
// site contributes its field term exactly once: bond b carries the field of
// site b, and the last bond additionally carries the field of the final
// site. The gate for site k acts on (old k, old k+1, new k); the final site
// gets a two-qubit terminal gate (old N-1, new N-1) that only collides and
// swaps, since its field already rode along on the last bond.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qca/linalg.hpp"

namespace qca {

struct ModelParams {
  double omega = 3.0;   // transverse field strength
  double v = 15.0;      // Ising coupling
  double kappa = 1.0;   // decay rate (sets the unit of time)
  double dt = 0.1;      // physical time advanced per layer, in units of 1/kappa
  std::size_t n_sites = 10;
  std::size_t depth = 10;

  void validate() const {
    if (!(kappa > 0.0)) throw std::invalid_argument("ModelParams: kappa must be positive");
    if (!(dt > 0.0)) throw std::invalid_argument("ModelParams: dt must be positive");
    if (n_sites < 1) throw std::invalid_argument("ModelParams: n_sites must be >= 1");
    if (!std::isfinite(omega) || !std::isfinite(v))
      throw std::invalid_argument("ModelParams: couplings must be finite");
  }
};

// Jump operator parametrization J(a, b) = a*sigma_x + i*b*sigma_y, in units
// where sqrt(kappa) carries the overall scale. (1/2, -1/2) gives sigma_minus,
// the plain-decay (teacher) model; (1/2, 1/2) gives sigma_plus.
struct JumpParams {
  double a = 0.5;
  double b = -0.5;

  static JumpParams teacher() { return {0.5, -0.5}; }
};

inline ComplexMatrix build_jump_operator(const JumpParams& jp, double kappa) {
  if (!(kappa > 0.0)) throw std::invalid_argument("build_jump_operator: kappa must be positive");
  return std::sqrt(kappa) * (jp.a * pauli_x() + kI * jp.b * pauli_y());
}

// Two-site Hamiltonian for bond `bond` (0-based, bond < n_sites-1):
//   H_b = (omega/2) sigma_z^(b) - (v/4) sigma_x^(b) sigma_x^(b+1)
// plus (omega/2) sigma_z^(b+1) on the last bond.
inline ComplexMatrix build_local_hamiltonian(const ModelParams& p, std::size_t bond) {
  if (p.n_sites < 2 || bond >= p.n_sites - 1)
    throw std::out_of_range("build_local_hamiltonian: bond index out of range");
  ComplexMatrix h = 0.5 * p.omega * kron(pauli_z(), identity(2)) -
                    0.25 * p.v * kron(pauli_x(), pauli_x());
  if (bond == p.n_sites - 2) h += 0.5 * p.omega * kron(identity(2), pauli_z());
  return h;
}

struct LocalGate {
  std::size_t site = 0;
  bool terminal = false;    // two-qubit (old k, new k) form
  ComplexMatrix matrix;     // 8x8 on (old k, old k+1, new k), or 4x4 if terminal
};

namespace detail {

// Permutation swapping the first and third qubit of a three-qubit register.
inline ComplexMatrix swap_first_third() {
  ComplexMatrix p = ComplexMatrix::Zero(8, 8);
  for (Index i = 0; i < 8; ++i) {
    const Index a = (i >> 2) & 1, b = (i >> 1) & 1, n = i & 1;
    p((n << 2) | (b << 1) | a, i) = 1.0;
  }
  return p;
}

}  // namespace detail

// G_k = SWAP(old k, new k) * exp(-i sqrt(dt) (J (x) s+ + h.c.)) * exp(-i dt H_k (x) 1).
// The fresh-qubit raising operator s+ = |1><0| is half-normalized so that the
// dt -> 0 limit of one layer reproduces exp(L dt) with jump operator J.
inline LocalGate build_local_gate(const ModelParams& p, const JumpParams& jp, std::size_t site) {
  if (site >= p.n_sites) throw std::out_of_range("build_local_gate: site index out of range");
  const ComplexMatrix j = build_jump_operator(jp, p.kappa);
  const double root_dt = std::sqrt(p.dt);

  LocalGate g;
  g.site = site;
  if (p.n_sites == 1) {
    ComplexMatrix coupling = kron(j, sigma_plus());
    coupling += coupling.adjoint().eval();
    const ComplexMatrix h1 = 0.5 * p.omega * pauli_z();
    g.terminal = true;
    g.matrix = swap_gate() * matrix_exponential(-kI * root_dt * coupling) *
               matrix_exponential(-kI * p.dt * kron(h1, identity(2)));
  } else if (site == p.n_sites - 1) {
    ComplexMatrix coupling = kron(j, sigma_plus());
    coupling += coupling.adjoint().eval();
    g.terminal = true;
    g.matrix = swap_gate() * matrix_exponential(-kI * root_dt * coupling);
  } else {
    ComplexMatrix coupling = kron(kron(j, identity(2)), sigma_plus());
    coupling += coupling.adjoint().eval();
    const ComplexMatrix h = build_local_hamiltonian(p, site);
    g.terminal = false;
    g.matrix = detail::swap_first_third() * matrix_exponential(-kI * root_dt * coupling) *
               matrix_exponential(-kI * p.dt * kron(h, identity(2)));
  }
  return g;
}

// All gates of one layer in application order (ascending site).
inline std::vector<LocalGate> build_gate_sequence(const ModelParams& p, const JumpParams& jp) {
  p.validate();
  std::vector<LocalGate> gates;
  gates.reserve(p.n_sites);
  for (std::size_t k = 0; k < p.n_sites; ++k) gates.push_back(build_local_gate(p, jp, k));
  return gates;
}

}  // namespace qca
