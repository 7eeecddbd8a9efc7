#pragma once

// Dense complex linear algebra used by the whole library: Kronecker products,
// matrix exponentials, truncated SVD with explicit discarded-weight tracking,
// and the fixed 2x2 operator set.
//
// Basis convention (used everywhere): the local basis is (|0>, |1>) with |0>
// the vacuum, and sigma_z = diag(-1, +1), i.e. sigma_z|1> = +|1>. The
// lowering operator sigma_minus = |0><1| maps the excited state to the
// vacuum. Multi-site Kronecker products put site 0 in the most significant
// position: global index = i_0 * 2^(n-1) + ... + i_{n-1}.

#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace qca {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

// ----- fixed operator set ---------------------------------------------------

inline ComplexMatrix identity(Index dim) { return ComplexMatrix::Identity(dim, dim); }

inline ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, kI, -kI, 0;
  return m;
}

inline ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << -1, 0, 0, 1;
  return m;
}

// |1><0|: raises the vacuum into the excited state.
inline ComplexMatrix sigma_plus() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(1, 0) = 1;
  return m;
}

// |0><1|: local decay.
inline ComplexMatrix sigma_minus() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1;
  return m;
}

inline ComplexMatrix swap_gate() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 2) = 1;
  m(2, 1) = 1;
  m(3, 3) = 1;
  return m;
}

// ----- Kronecker product ----------------------------------------------------

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Index ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
  if (ar == 0 || ac == 0 || br == 0 || bc == 0)
    throw std::invalid_argument("kron: empty operand");
  if (ar > std::numeric_limits<Index>::max() / br || ac > std::numeric_limits<Index>::max() / bc)
    throw std::invalid_argument("kron: requested dimension overflows");
  ComplexMatrix out(ar * br, ac * bc);
  for (Index i = 0; i < ar; ++i)
    for (Index j = 0; j < ac; ++j) out.block(i * br, j * bc, br, bc) = a(i, j) * b;
  return out;
}

inline ComplexMatrix kron_all(const std::vector<ComplexMatrix>& factors) {
  if (factors.empty()) throw std::invalid_argument("kron_all: no factors");
  ComplexMatrix out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = kron(out, factors[k]);
  return out;
}

// Embeds a single-site operator at `site` (0-based, site 0 most significant)
// of an n-site chain.
inline ComplexMatrix op_on_site(const ComplexMatrix& op, std::size_t site, std::size_t n_sites) {
  if (site >= n_sites) throw std::invalid_argument("op_on_site: site index out of range");
  const Index left = Index(1) << site;
  const Index right = Index(1) << (n_sites - site - 1);
  return kron(kron(identity(left), op), identity(right));
}

// ----- matrix exponential ---------------------------------------------------

inline ComplexMatrix matrix_exponential(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix_exponential: matrix not square");
  if (a.rows() == 0) throw std::invalid_argument("matrix_exponential: empty matrix");
  return a.exp();
}

// ----- truncated SVD ----------------------------------------------------------

struct SvdError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A ~ u * diag(singular_values) * v.adjoint(), with at most `chi` singular
// values kept. discarded_weight = sqrt(sum of squared discarded singular
// values), so ||A - A_kept||_F == discarded_weight.
struct SvdResult {
  ComplexMatrix u;
  RealVector singular_values;
  ComplexMatrix v;
  double discarded_weight = 0.0;
};

namespace detail {

// Thin SVD via LAPACK divide-and-conquer; falls back to the QR-based driver
// if zgesdd fails to converge. Never returns unreported garbage.
inline void thin_svd(const ComplexMatrix& a, ComplexMatrix& u, RealVector& s, ComplexMatrix& vt) {
  const lapack_int m = static_cast<lapack_int>(a.rows());
  const lapack_int n = static_cast<lapack_int>(a.cols());
  const lapack_int k = std::min(m, n);
  ComplexMatrix work = a;  // destroyed by LAPACK
  u.resize(m, k);
  s.resize(k);
  vt.resize(k, n);
  lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'S', m, n, work.data(), m, s.data(),
                                   u.data(), m, vt.data(), k);
  if (info != 0) {
    work = a;
    RealVector superb(std::max<lapack_int>(1, k - 1));
    info = LAPACKE_zgesvd(LAPACK_COL_MAJOR, 'S', 'S', m, n, work.data(), m, s.data(), u.data(),
                          m, vt.data(), k, superb.data());
    if (info != 0)
      throw SvdError("SVD failed to converge (zgesdd/zgesvd info=" + std::to_string(info) + ")");
  }
}

}  // namespace detail

// rel_cutoff additionally drops singular values below rel_cutoff * s_max
// (rank-revealing mode); at least one singular value is always kept.
inline SvdResult truncated_svd(const ComplexMatrix& a, Index chi, double rel_cutoff = 0.0) {
  if (chi < 1) throw std::invalid_argument("truncated_svd: chi must be >= 1");
  if (a.rows() == 0 || a.cols() == 0) throw std::invalid_argument("truncated_svd: empty input");
  ComplexMatrix u, vt;
  RealVector s;
  detail::thin_svd(a, u, s, vt);
  const Index k = s.size();
  Index r = std::min(chi, k);
  if (rel_cutoff > 0.0 && s(0) > 0.0) {
    const double cut = rel_cutoff * s(0);
    while (r > 1 && s(r - 1) < cut) --r;
  }
  double disc2 = 0.0;
  for (Index i = r; i < k; ++i) disc2 += s(i) * s(i);
  SvdResult out;
  out.u = u.leftCols(r);
  out.singular_values = s.head(r);
  out.v = vt.topRows(r).adjoint();
  out.discarded_weight = std::sqrt(disc2);
  return out;
}

// ----- superoperator index reshuffle ------------------------------------------

// Converts a 4^n x 4^n superoperator from global row-major vec ordering
// (index i * 2^n + j over the full 2^n-dimensional space) to site-major
// ordering (per-site indices s_k = 2 i_k + j_k, site 0 most significant).
inline ComplexMatrix superop_to_site_ordering(const ComplexMatrix& s, std::size_t n) {
  const std::size_t d = std::size_t(1) << n;
  const std::size_t dd = d * d;
  if (s.rows() != Index(dd) || s.cols() != Index(dd))
    throw std::invalid_argument("superop_to_site_ordering: dimension mismatch");
  std::vector<Index> site_of_global(dd);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      std::size_t m = 0;
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t ik = (i >> (n - 1 - k)) & 1;
        const std::size_t jk = (j >> (n - 1 - k)) & 1;
        m = 4 * m + (2 * ik + jk);
      }
      site_of_global[i * d + j] = static_cast<Index>(m);
    }
  ComplexMatrix out(s.rows(), s.cols());
  for (std::size_t r = 0; r < dd; ++r)
    for (std::size_t c = 0; c < dd; ++c)
      out(site_of_global[r], site_of_global[c]) = s(Index(r), Index(c));
  return out;
}

// ----- small helpers ---------------------------------------------------------

inline double unitarity_defect(const ComplexMatrix& g) {
  return (g.adjoint() * g - identity(g.rows())).norm();
}

inline double hermiticity_defect(const ComplexMatrix& a) { return (a - a.adjoint()).norm(); }

}  // namespace qca
