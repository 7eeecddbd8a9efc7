#pragma once

// Tensor-train (MPS/MPO) machinery for layer states.
//
// A layer density matrix is stored as a matrix product state over the
// vectorized on-site index s = 2 i + j (row-major per site, dimension 4),
// site 0 leftmost. Expectation values are taken with on-site caps:
//   trace cap      [1, 0, 0, 1]
//   operator cap   cap_A[2 a + b] = A(b, a)   (so that sum_s cap_A[s] v[s]
//                                              = Tr(A rho) for v = vec(rho)).
//
// The layer-to-layer channel is a staircase MPO with raw bond dimension 16:
// the bond between sites k and k+1 fuses a 4-dimensional passthrough of the
// input physical leg of site k+1 (flowing left into gate k) with the
// 4-dimensional gate-to-gate line carrying the post-gate state of input
// site k+1 (flowing right into gate k+1).

#include <numeric>
#include <vector>

#include "qca/model.hpp"

namespace qca {

// physical-index-resolved site tensor: m[s] is the (bond_left x bond_right)
// matrix for physical index s
struct SiteTensor {
  std::vector<ComplexMatrix> m;

  Index bond_left() const { return m.empty() ? 0 : m.front().rows(); }
  Index bond_right() const { return m.empty() ? 0 : m.front().cols(); }
  std::size_t phys_dim() const { return m.size(); }
};

namespace detail {

// (d * bond_left) x bond_right, row index = s * bond_left + l
inline ComplexMatrix fuse_left(const SiteTensor& t) {
  const Index l = t.bond_left(), r = t.bond_right();
  const Index d = static_cast<Index>(t.phys_dim());
  ComplexMatrix out(d * l, r);
  for (Index s = 0; s < d; ++s) out.middleRows(s * l, l) = t.m[std::size_t(s)];
  return out;
}

inline SiteTensor split_left(const ComplexMatrix& mat, std::size_t d, Index bond_left) {
  SiteTensor t;
  t.m.resize(d);
  for (std::size_t s = 0; s < d; ++s)
    t.m[s] = mat.middleRows(Index(s) * bond_left, bond_left);
  return t;
}

// bond_left x (d * bond_right), column index = s * bond_right + r
inline ComplexMatrix fuse_right(const SiteTensor& t) {
  const Index l = t.bond_left(), r = t.bond_right();
  const Index d = static_cast<Index>(t.phys_dim());
  ComplexMatrix out(l, d * r);
  for (Index s = 0; s < d; ++s) out.middleCols(s * r, r) = t.m[std::size_t(s)];
  return out;
}

inline SiteTensor split_right(const ComplexMatrix& mat, std::size_t d, Index bond_right) {
  SiteTensor t;
  t.m.resize(d);
  for (std::size_t s = 0; s < d; ++s)
    t.m[s] = mat.middleCols(Index(s) * bond_right, bond_right);
  return t;
}

// Left-to-right QR sweep; afterwards every site but the last is a left
// isometry and the orthogonality centre sits on the last site.
inline void tt_left_canonicalize(std::vector<SiteTensor>& sites) {
  for (std::size_t k = 0; k + 1 < sites.size(); ++k) {
    const std::size_t d = sites[k].phys_dim();
    const Index bl = sites[k].bond_left(), br = sites[k].bond_right();
    const ComplexMatrix mat = fuse_left(sites[k]);
    const Index rank = std::min(mat.rows(), mat.cols());
    Eigen::HouseholderQR<ComplexMatrix> qr(mat);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(mat.rows(), rank);
    ComplexMatrix r = qr.matrixQR().topRows(rank).triangularView<Eigen::Upper>();
    sites[k] = split_left(q, d, bl);
    for (auto& a : sites[k + 1].m) a = (r * a).eval();
    (void)br;
  }
}

// Right-to-left SVD truncation sweep (call after tt_left_canonicalize so the
// cut bond is at the orthogonality centre). Returns the accumulated discarded
// weight sqrt(sum over bonds of discarded sigma^2). The centre ends on site 0.
inline double tt_truncate_right(std::vector<SiteTensor>& sites, Index chi, double rel_cutoff) {
  double dw2 = 0.0;
  for (std::size_t k = sites.size(); k-- > 1;) {
    const std::size_t d = sites[k].phys_dim();
    const Index br = sites[k].bond_right();
    const SvdResult svd = truncated_svd(fuse_right(sites[k]), chi, rel_cutoff);
    dw2 += svd.discarded_weight * svd.discarded_weight;
    sites[k] = split_right(svd.v.adjoint(), d, br);
    const ComplexMatrix carry =
        svd.u * svd.singular_values.cast<Complex>().asDiagonal();
    for (auto& a : sites[k - 1].m) a = (a * carry).eval();
  }
  return std::sqrt(dw2);
}

inline std::vector<Index> tt_bond_dims(const std::vector<SiteTensor>& sites) {
  std::vector<Index> dims;
  for (std::size_t k = 0; k + 1 < sites.size(); ++k) dims.push_back(sites[k].bond_right());
  return dims;
}

}  // namespace detail

// ----- expectation caps -------------------------------------------------------

inline ComplexVector trace_cap() {
  ComplexVector c(4);
  c << 1.0, 0.0, 0.0, 1.0;
  return c;
}

// cap such that sum_s cap[s] vec(rho)[s] = Tr(op * rho)
inline ComplexVector operator_cap(const ComplexMatrix& op) {
  ComplexVector c(4);
  c << op(0, 0), op(1, 0), op(0, 1), op(1, 1);
  return c;
}

// ----- matrix product state ----------------------------------------------------

class MatrixProductState {
 public:
  static constexpr std::size_t kPhysDim = 4;

  std::vector<SiteTensor> sites;

  std::size_t n_sites() const { return sites.size(); }
  std::vector<Index> bond_dims() const { return detail::tt_bond_dims(sites); }
  Index max_bond_dim() const {
    const auto dims = bond_dims();
    return dims.empty() ? 1 : *std::max_element(dims.begin(), dims.end());
  }

  // product state from per-site 2x2 density matrices
  static MatrixProductState product(const std::vector<ComplexMatrix>& site_rhos) {
    if (site_rhos.empty())
      throw std::invalid_argument("MatrixProductState::product: empty site list");
    MatrixProductState mps;
    mps.sites.reserve(site_rhos.size());
    for (const auto& rho : site_rhos) {
      if (rho.rows() != 2 || rho.cols() != 2)
        throw std::invalid_argument("MatrixProductState::product: sites must be 2x2");
      SiteTensor t;
      t.m.resize(kPhysDim);
      for (Index i = 0; i < 2; ++i)
        for (Index j = 0; j < 2; ++j) {
          ComplexMatrix cell(1, 1);
          cell(0, 0) = rho(i, j);
          t.m[std::size_t(2 * i + j)] = cell;
        }
      mps.sites.push_back(std::move(t));
    }
    return mps;
  }

  // sum_s cap[s] A_k[s], the transfer matrix of site k under a cap
  ComplexMatrix capped_site(std::size_t k, const ComplexVector& cap) const {
    const auto& t = sites[k];
    ComplexMatrix e = ComplexMatrix::Zero(t.bond_left(), t.bond_right());
    for (std::size_t s = 0; s < kPhysDim; ++s) e += cap(Index(s)) * t.m[s];
    return e;
  }

  Complex trace() const {
    const ComplexVector tc = trace_cap();
    ComplexMatrix l = ComplexMatrix::Identity(1, 1);
    for (std::size_t k = 0; k < sites.size(); ++k) l = (l * capped_site(k, tc)).eval();
    return l(0, 0);
  }

  // Tr(op_k rho) for every site k, normalized by the trace
  std::vector<Complex> site_expectations(const ComplexMatrix& op) const {
    const std::size_t n = sites.size();
    const ComplexVector tc = trace_cap();
    const ComplexVector oc = operator_cap(op);
    std::vector<ComplexMatrix> suffix(n + 1);
    suffix[n] = ComplexMatrix::Identity(1, 1);
    for (std::size_t k = n; k-- > 0;) suffix[k] = (capped_site(k, tc) * suffix[k + 1]).eval();
    const Complex tr = suffix[0](0, 0);

    std::vector<Complex> out(n);
    ComplexMatrix prefix = ComplexMatrix::Identity(1, 1);
    for (std::size_t k = 0; k < n; ++k) {
      out[k] = (prefix * capped_site(k, oc) * suffix[k + 1])(0, 0) / tr;
      prefix = (prefix * capped_site(k, tc)).eval();
    }
    return out;
  }

  // m = (1/2N) sum_k <op_k>
  double magnetization(const ComplexMatrix& op) const {
    const auto vals = site_expectations(op);
    const Complex sum = std::accumulate(vals.begin(), vals.end(), Complex(0.0));
    return sum.real() / (2.0 * double(sites.size()));
  }

  void scale(Complex factor) {
    for (auto& a : sites.front().m) a *= factor;
  }

  // divide out the trace so closed caps give exactly 1
  void normalize_trace() {
    const Complex tr = trace();
    if (std::abs(tr) < 1e-300)
      throw std::runtime_error("MatrixProductState::normalize_trace: vanishing trace");
    scale(1.0 / tr);
  }

  // spin-flipped partner: conjugation by sigma_z on every site, which negates
  // the off-diagonal vectorized components
  MatrixProductState z2_partner() const {
    MatrixProductState out = *this;
    for (auto& t : out.sites) {
      t.m[1] *= -1.0;
      t.m[2] *= -1.0;
    }
    return out;
  }

  // canonical compression; returns the discarded weight
  double truncate(Index chi, double rel_cutoff = 0.0) {
    detail::tt_left_canonicalize(sites);
    return detail::tt_truncate_right(sites, chi, rel_cutoff);
  }

  // full site-major vector (index s_0 * 4^{N-1} + ... + s_{N-1}), small N only
  ComplexVector to_dense_vec() const {
    const std::size_t n = sites.size();
    if (n > 10) throw std::invalid_argument("to_dense_vec: too many sites");
    std::size_t dim = 1;
    for (std::size_t k = 0; k < n; ++k) dim *= kPhysDim;
    ComplexVector out(static_cast<Index>(dim));
    for (std::size_t idx = 0; idx < dim; ++idx) {
      ComplexMatrix acc = ComplexMatrix::Identity(1, 1);
      std::size_t rem = idx;
      std::size_t div = dim / kPhysDim;
      for (std::size_t k = 0; k < n; ++k) {
        acc = (acc * sites[k].m[rem / div]).eval();
        rem %= div;
        if (k + 1 < n) div /= kPhysDim;
      }
      out(static_cast<Index>(idx)) = acc(0, 0);
    }
    return out;
  }
};

// ----- staircase channel MPO ---------------------------------------------------

namespace detail {

// Gate superoperator in per-site vectorized ordering, with the vacuum
// injected on the fresh-site input and the trace closed on the retired input
// line. Interior gates give a 16x16 map
//   (post-gate line of input site k+1, output site k) <- (line of input
//   site k, input site k+1);
// the terminal gate gives the 4x4 map (output site N-1) <- (line of input
// site N-1). These are the per-step kernels of both the MPO and the direct
// contraction engine.
inline ComplexMatrix capped_gate_superop(const LocalGate& gate) {
  if (gate.terminal) {
    // legs (old, new): old output traced, new input set to vacuum
    const ComplexMatrix s = superop_to_site_ordering(kron(gate.matrix, gate.matrix.conjugate()), 2);
    ComplexMatrix out(4, 4);
    const ComplexVector tc = trace_cap();
    for (Index n_out = 0; n_out < 4; ++n_out)
      for (Index o_in = 0; o_in < 4; ++o_in) {
        Complex acc = 0.0;
        for (Index o_out = 0; o_out < 4; ++o_out)
          acc += tc(o_out) * s(o_out * 4 + n_out, o_in * 4 + 0);
        out(n_out, o_in) = acc;
      }
    return out;
  }
  // legs (old_k, old_{k+1}, new_k): old_k output traced, new_k input vacuum
  const ComplexMatrix s = superop_to_site_ordering(kron(gate.matrix, gate.matrix.conjugate()), 3);
  ComplexMatrix out(16, 16);
  const ComplexVector tc = trace_cap();
  for (Index b_out = 0; b_out < 4; ++b_out)        // post-gate old_{k+1}
    for (Index n_out = 0; n_out < 4; ++n_out)      // output site k
      for (Index a_in = 0; a_in < 4; ++a_in)       // old_k line in
        for (Index b_in = 0; b_in < 4; ++b_in) {   // old_{k+1} in
          Complex acc = 0.0;
          for (Index o_out = 0; o_out < 4; ++o_out)
            acc += tc(o_out) * s((o_out * 4 + b_out) * 4 + n_out, (a_in * 4 + b_in) * 4 + 0);
          out(b_out * 4 + n_out, a_in * 4 + b_in) = acc;
        }
  return out;
}

}  // namespace detail

class MatrixProductOperator {
 public:
  static constexpr std::size_t kPhysDim = 16;  // s_out * 4 + s_in

  std::vector<SiteTensor> sites;

  std::size_t n_sites() const { return sites.size(); }
  std::vector<Index> bond_dims() const { return detail::tt_bond_dims(sites); }
  Index max_bond_dim() const {
    const auto dims = bond_dims();
    return dims.empty() ? 1 : *std::max_element(dims.begin(), dims.end());
  }

  double truncate(Index chi, double rel_cutoff = 0.0) {
    detail::tt_left_canonicalize(sites);
    return detail::tt_truncate_right(sites, chi, rel_cutoff);
  }

  // dense 4^N x 4^N superoperator in site-major ordering, small N only
  ComplexMatrix to_dense_superop() const {
    const std::size_t n = sites.size();
    if (n > 5) throw std::invalid_argument("to_dense_superop: too many sites");
    std::size_t dim = 1;
    for (std::size_t k = 0; k < n; ++k) dim *= 4;
    ComplexMatrix out(static_cast<Index>(dim), static_cast<Index>(dim));
    for (std::size_t row = 0; row < dim; ++row)
      for (std::size_t col = 0; col < dim; ++col) {
        ComplexMatrix acc = ComplexMatrix::Identity(1, 1);
        std::size_t r_rem = row, c_rem = col, div = dim / 4;
        for (std::size_t k = 0; k < n; ++k) {
          const std::size_t s_out = r_rem / div, s_in = c_rem / div;
          acc = (acc * sites[k].m[s_out * 4 + s_in]).eval();
          r_rem %= div;
          c_rem %= div;
          if (k + 1 < n) div /= 4;
        }
        out(static_cast<Index>(row), static_cast<Index>(col)) = acc(0, 0);
      }
    return out;
  }
};

// Staircase MPO of the full layer channel. Bond between sites k and k+1 is
// (passthrough alpha: input leg of site k+1 flowing left) x (gate line beta:
// post-gate input site k+1 flowing right), fused as alpha * 4 + beta, raw
// dimension 16. Site 0 consumes its input directly; interior sites forward
// their input left and host gate k; the last site hosts the terminal gate.
inline MatrixProductOperator build_channel_mpo(const ModelParams& p, const JumpParams& jp) {
  const auto gates = build_gate_sequence(p, jp);
  const std::size_t n = p.n_sites;
  MatrixProductOperator mpo;
  mpo.sites.resize(n);

  if (n == 1) {
    const ComplexMatrix t = detail::capped_gate_superop(gates[0]);
    SiteTensor& w = mpo.sites[0];
    w.m.assign(16, ComplexMatrix::Zero(1, 1));
    for (Index so = 0; so < 4; ++so)
      for (Index si = 0; si < 4; ++si) w.m[std::size_t(so * 4 + si)](0, 0) = t(so, si);
    return mpo;
  }

  // site 0: input consumed by gate 0 directly; right bond (alpha_r, beta_r)
  {
    const ComplexMatrix t = detail::capped_gate_superop(gates[0]);  // 16x16
    SiteTensor& w = mpo.sites[0];
    w.m.assign(16, ComplexMatrix::Zero(1, 16));
    for (Index so = 0; so < 4; ++so)
      for (Index si = 0; si < 4; ++si)
        for (Index ar = 0; ar < 4; ++ar)
          for (Index br = 0; br < 4; ++br)
            w.m[std::size_t(so * 4 + si)](0, ar * 4 + br) = t(br * 4 + so, si * 4 + ar);
  }
  // interior site k hosts gate k; forwards its own input left as alpha_l
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const ComplexMatrix t = detail::capped_gate_superop(gates[k]);
    SiteTensor& w = mpo.sites[k];
    w.m.assign(16, ComplexMatrix::Zero(16, 16));
    for (Index so = 0; so < 4; ++so)
      for (Index si = 0; si < 4; ++si)
        for (Index bl = 0; bl < 4; ++bl)
          for (Index ar = 0; ar < 4; ++ar)
            for (Index br = 0; br < 4; ++br)
              w.m[std::size_t(so * 4 + si)](si * 4 + bl, ar * 4 + br) = t(br * 4 + so, bl * 4 + ar);
  }
  // last site: forwards its input left, hosts the terminal gate
  {
    const ComplexMatrix t = detail::capped_gate_superop(gates[n - 1]);  // 4x4
    SiteTensor& w = mpo.sites[n - 1];
    w.m.assign(16, ComplexMatrix::Zero(16, 1));
    for (Index so = 0; so < 4; ++so)
      for (Index si = 0; si < 4; ++si)
        for (Index bl = 0; bl < 4; ++bl) w.m[std::size_t(so * 4 + si)](si * 4 + bl, 0) = t(so, bl);
  }
  return mpo;
}

// MPO application by exact bond fusion followed by a canonical truncation
// sweep. Returns the discarded weight through `discarded` when non-null.
inline MatrixProductState apply_mpo(const MatrixProductOperator& mpo,
                                    const MatrixProductState& mps, Index chi,
                                    double rel_cutoff = 0.0, double* discarded = nullptr) {
  if (mpo.n_sites() != mps.n_sites())
    throw std::invalid_argument("apply_mpo: site count mismatch");
  MatrixProductState out;
  out.sites.resize(mps.n_sites());
  for (std::size_t k = 0; k < mps.n_sites(); ++k) {
    const SiteTensor& w = mpo.sites[k];
    const SiteTensor& a = mps.sites[k];
    SiteTensor b;
    b.m.assign(MatrixProductState::kPhysDim,
               ComplexMatrix::Zero(w.bond_left() * a.bond_left(),
                                   w.bond_right() * a.bond_right()));
    for (std::size_t so = 0; so < 4; ++so)
      for (std::size_t si = 0; si < 4; ++si)
        b.m[so] += kron(w.m[so * 4 + si], a.m[si]);
    out.sites[k] = std::move(b);
  }
  const double dw = out.truncate(chi, rel_cutoff);
  if (discarded) *discarded = dw;
  return out;
}

}  // namespace qca
