#pragma once

// Exact dense form of the layer-to-layer channel, used as the oracle the
// tensor-network engine is validated against. Limited to n_sites <= 6.
//
// The channel is rho_t = Tr_old( G (rho_{t-1} (x) |vac><vac|) G^dag ) with
// G the ascending-site product of local gates. Equivalently, with
// K_j = (<j|_old (x) 1_new) G (1_old (x) |vac>_new), it is the Kraus map
// rho -> sum_j K_j rho K_j^dag, so the Choi rank is at most 2^N.
//
// Vectorization is row-major throughout: vec(rho)[i * 2^N + j] = rho(i, j),
// hence vec(A rho B) = (A (x) B^T) vec(rho).

#include <vector>

#include "qca/model.hpp"

namespace qca {

using DenseLayerState = ComplexMatrix;  // 2^N x 2^N density matrix

inline constexpr std::size_t kDenseMaxSites = 6;

namespace detail {

// Applies `gate` to the listed qubits (qubits[0] = gate's most significant
// leg) of an n-qubit statevector, site 0 most significant.
inline void apply_gate_statevector(ComplexVector& v, const ComplexMatrix& gate,
                                   const std::vector<std::size_t>& qubits, std::size_t n) {
  const std::size_t m = qubits.size();
  const std::size_t dim_gate = std::size_t(1) << m;
  std::vector<std::size_t> bit(m);
  for (std::size_t t = 0; t < m; ++t) bit[t] = std::size_t(1) << (n - 1 - qubits[t]);
  std::size_t gate_mask = 0;
  for (auto b : bit) gate_mask |= b;

  std::vector<Complex> amp(dim_gate);
  const std::size_t dim = std::size_t(1) << n;
  for (std::size_t base = 0; base < dim; ++base) {
    if (base & gate_mask) continue;
    for (std::size_t g = 0; g < dim_gate; ++g) {
      std::size_t idx = base;
      for (std::size_t t = 0; t < m; ++t)
        if (g & (dim_gate >> (t + 1))) idx |= bit[t];
      amp[g] = v(static_cast<Index>(idx));
    }
    for (std::size_t gp = 0; gp < dim_gate; ++gp) {
      Complex acc = 0.0;
      for (std::size_t g = 0; g < dim_gate; ++g) acc += gate(gp, g) * amp[g];
      std::size_t idx = base;
      for (std::size_t t = 0; t < m; ++t)
        if (gp & (dim_gate >> (t + 1))) idx |= bit[t];
      v(static_cast<Index>(idx)) = acc;
    }
  }
}

}  // namespace detail

struct DenseChannel {
  ModelParams params;
  JumpParams jump;
  std::vector<ComplexMatrix> kraus;  // 2^N operators, each 2^N x 2^N

  DenseLayerState apply(const DenseLayerState& rho) const {
    const Index d = rho.rows();
    DenseLayerState out = DenseLayerState::Zero(d, d);
    for (const auto& k : kraus) out.noalias() += k * rho * k.adjoint();
    return out;
  }

  double trace_preservation_defect() const {
    const Index d = kraus.front().rows();
    ComplexMatrix s = ComplexMatrix::Zero(d, d);
    for (const auto& k : kraus) s.noalias() += k.adjoint() * k;
    return (s - identity(d)).norm();
  }

  // 4^N x 4^N superoperator in row-major vec ordering.
  ComplexMatrix superop() const {
    const Index d = kraus.front().rows();
    ComplexMatrix s = ComplexMatrix::Zero(d * d, d * d);
    for (const auto& k : kraus) s.noalias() += kron(k, k.conjugate());
    return s;
  }

  // Choi matrix sum_a vec(K_a) vec(K_a)^dag; positive semidefinite iff the
  // map is completely positive.
  ComplexMatrix choi() const {
    const Index d = kraus.front().rows();
    ComplexMatrix c = ComplexMatrix::Zero(d * d, d * d);
    for (const auto& k : kraus) {
      ComplexVector vk(d * d);
      for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) vk(i * d + j) = k(i, j);
      c.noalias() += vk * vk.adjoint();
    }
    return c;
  }
};

inline DenseChannel build_dense_channel(const ModelParams& p, const JumpParams& jp) {
  p.validate();
  if (p.n_sites > kDenseMaxSites)
    throw std::invalid_argument("build_dense_channel: dense oracle limited to n_sites <= 6");
  const std::size_t n = p.n_sites;
  const std::size_t dim_layer = std::size_t(1) << n;
  const auto gates = build_gate_sequence(p, jp);

  DenseChannel chan;
  chan.params = p;
  chan.jump = jp;
  chan.kraus.assign(dim_layer, ComplexMatrix::Zero(dim_layer, dim_layer));

  // Propagate each old-layer basis state through the two-layer circuit; the
  // new layer starts in the all-vacuum state (index 0).
  for (std::size_t i = 0; i < dim_layer; ++i) {
    ComplexVector v = ComplexVector::Zero(Index(dim_layer * dim_layer));
    v(static_cast<Index>(i * dim_layer)) = 1.0;
    for (const auto& g : gates) {
      if (g.terminal)
        detail::apply_gate_statevector(v, g.matrix, {g.site, n + g.site}, 2 * n);
      else
        detail::apply_gate_statevector(v, g.matrix, {g.site, g.site + 1, n + g.site}, 2 * n);
    }
    for (std::size_t j = 0; j < dim_layer; ++j)
      for (std::size_t nn = 0; nn < dim_layer; ++nn)
        chan.kraus[j](static_cast<Index>(nn), static_cast<Index>(i)) =
            v(static_cast<Index>(j * dim_layer + nn));
  }
  return chan;
}

// ----- dense observables -----------------------------------------------------

inline DenseLayerState dense_product_state(const std::vector<ComplexMatrix>& site_rhos) {
  return kron_all(site_rhos);
}

inline DenseLayerState dense_all_vacuum(std::size_t n) {
  const Index d = Index(1) << n;
  DenseLayerState rho = DenseLayerState::Zero(d, d);
  rho(0, 0) = 1.0;
  return rho;
}

// m^mu = (1/2N) sum_k <sigma^mu_k>.
inline double dense_magnetization(const DenseLayerState& rho, const ComplexMatrix& pauli,
                                  std::size_t n) {
  Complex acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) acc += (op_on_site(pauli, k, n) * rho).trace();
  return acc.real() / (2.0 * double(n));
}

// ----- symmetry and Lindblad oracle ------------------------------------------

// Superoperator of rho -> P rho P with P = sigma_z^(x)N (the layer-wise Z2
// conjugation).
inline ComplexMatrix parity_superop(std::size_t n) {
  ComplexMatrix zall = ComplexMatrix::Identity(1, 1);
  for (std::size_t k = 0; k < n; ++k) zall = kron(zall, pauli_z());
  return kron(zall, zall.conjugate());
}

// Generator of the continuous-time reference dynamics,
//   L[rho] = -i[H, rho] + sum_k (J_k rho J_k^dag - 1/2 {J_k^dag J_k, rho}),
// as a 4^N x 4^N matrix in the same vec ordering as DenseChannel::superop().
inline ComplexMatrix lindblad_generator(const ModelParams& p, const JumpParams& jp) {
  p.validate();
  if (p.n_sites > kDenseMaxSites)
    throw std::invalid_argument("lindblad_generator: limited to n_sites <= 6");
  const std::size_t n = p.n_sites;
  const Index d = Index(1) << n;

  ComplexMatrix h = ComplexMatrix::Zero(d, d);
  for (std::size_t k = 0; k < n; ++k) h += 0.5 * p.omega * op_on_site(pauli_z(), k, n);
  for (std::size_t b = 0; b + 1 < n; ++b)
    h -= 0.25 * p.v * (op_on_site(pauli_x(), b, n) * op_on_site(pauli_x(), b + 1, n));

  const ComplexMatrix id = identity(d);
  ComplexMatrix gen = -kI * (kron(h, id) - kron(id, h.transpose()));
  const ComplexMatrix j1 = build_jump_operator(jp, p.kappa);
  for (std::size_t k = 0; k < n; ++k) {
    const ComplexMatrix jk = op_on_site(j1, k, n);
    const ComplexMatrix jdj = jk.adjoint() * jk;
    gen += kron(jk, jk.conjugate()) -
           0.5 * (kron(jdj, id) + kron(id, jdj.transpose()));
  }
  return gen;
}

}  // namespace qca
