#include <catch_amalgamated.hpp>

#include <cmath>

#include "qca/linalg.hpp"
#include "test_helpers.hpp"

using namespace qca;
using qca::testing::random_complex_matrix;
using qca::testing::random_unitary;

namespace {

double frob(const ComplexMatrix& m) { return m.norm(); }

}  // namespace

TEST_CASE("pauli matrices satisfy the algebra") {
  const ComplexMatrix sx = pauli_x();
  const ComplexMatrix sy = pauli_y();
  const ComplexMatrix sz = pauli_z();

  CHECK(frob(sx * sx - identity(2)) < 1e-15);
  CHECK(frob(sy * sy - identity(2)) < 1e-15);
  CHECK(frob(sz * sz - identity(2)) < 1e-15);
  CHECK(frob(sx * sy - kI * sz) < 1e-15);
  CHECK(frob(sy * sz - kI * sx) < 1e-15);
  CHECK(frob(sz * sx - kI * sy) < 1e-15);
  CHECK(frob(sx * sy + sy * sx) < 1e-15);

  // basis convention: index 0 is the vacuum with sigma_z eigenvalue -1
  CHECK(sz(0, 0) == Complex(-1.0, 0.0));
  CHECK(sz(1, 1) == Complex(1.0, 0.0));
  CHECK(sy(0, 1) == Complex(0.0, 1.0));
  CHECK(sy(1, 0) == Complex(0.0, -1.0));
}

TEST_CASE("raising and lowering operators match the basis convention") {
  // sigma_plus maps the vacuum |0> to the excited |1>
  const ComplexMatrix sp = sigma_plus();
  const ComplexMatrix sm = sigma_minus();
  CHECK(sp(1, 0) == Complex(1.0, 0.0));
  CHECK(sp(0, 0) == Complex(0.0, 0.0));
  CHECK(sp(0, 1) == Complex(0.0, 0.0));
  CHECK(sp(1, 1) == Complex(0.0, 0.0));
  CHECK(frob(sm - sp.adjoint()) < 1e-15);
  CHECK(frob(sp - 0.5 * (pauli_x() + kI * pauli_y())) < 1e-15);
  // commutator [s+, s-] = sigma_z
  CHECK(frob(sp * sm - sm * sp - pauli_z()) < 1e-15);
}

TEST_CASE("kron follows the row-major composite convention") {
  ComplexMatrix a(2, 2), b(2, 2);
  a << 1, 2, 3, 4;
  b << 0, 5, 6, 7;
  const ComplexMatrix k = kron(a, b);
  REQUIRE(k.rows() == 4);
  REQUIRE(k.cols() == 4);
  // block (i,j) of the result is a(i,j) * b
  CHECK(k(0, 1) == Complex(5.0, 0.0));    // a(0,0)*b(0,1)
  CHECK(k(1, 0) == Complex(6.0, 0.0));    // a(0,0)*b(1,0)
  CHECK(k(0, 2) == Complex(0.0, 0.0));    // a(0,1)*b(0,0)
  CHECK(k(0, 3) == Complex(10.0, 0.0));   // a(0,1)*b(0,1)
  CHECK(k(2, 2) == Complex(0.0, 0.0));    // a(1,1)*b(0,0)
  CHECK(k(3, 3) == Complex(28.0, 0.0));   // a(1,1)*b(1,1)

  // mixed-product property with random operands
  const ComplexMatrix c = random_complex_matrix(2, 2, 11);
  const ComplexMatrix d = random_complex_matrix(2, 2, 12);
  CHECK(frob(kron(a * c, b * d) - kron(a, b) * kron(c, d)) < 1e-12);
}

TEST_CASE("kron rejects empty operands") {
  const ComplexMatrix empty(0, 0);
  CHECK_THROWS_AS(kron(empty, identity(2)), std::invalid_argument);
  CHECK_THROWS_AS(kron(identity(2), empty), std::invalid_argument);
}

TEST_CASE("kron_all multiplies factors left to right") {
  const ComplexMatrix a = random_complex_matrix(2, 2, 1);
  const ComplexMatrix b = random_complex_matrix(2, 2, 2);
  const ComplexMatrix c = random_complex_matrix(2, 2, 3);
  const ComplexMatrix expected = kron(kron(a, b), c);
  CHECK(frob(kron_all({a, b, c}) - expected) < 1e-14);
}

TEST_CASE("op_on_site places a single-site operator with site 0 most significant") {
  const std::size_t n = 3;
  for (std::size_t site = 0; site < n; ++site) {
    const ComplexMatrix full = op_on_site(pauli_z(), site, n);
    REQUIRE(full.rows() == 8);
    for (Index i = 0; i < 8; ++i) {
      const int bit = (static_cast<int>(i) >> (n - 1 - site)) & 1;
      const double expected = bit ? 1.0 : -1.0;
      CHECK(std::abs(full(i, i) - expected) < 1e-15);
      for (Index j = 0; j < 8; ++j)
        if (i != j) CHECK(std::abs(full(i, j)) == 0.0);
    }
  }
  CHECK(frob(op_on_site(pauli_x(), 0, 2) - kron(pauli_x(), identity(2))) < 1e-15);
  CHECK(frob(op_on_site(pauli_x(), 1, 2) - kron(identity(2), pauli_x())) < 1e-15);
}

TEST_CASE("matrix_exponential reproduces analytic cases") {
  const double theta = 0.3;
  // exp(i theta sigma_x) = cos(theta) I + i sin(theta) sigma_x
  const ComplexMatrix ex = matrix_exponential(kI * theta * pauli_x());
  const ComplexMatrix expected =
      std::cos(theta) * identity(2) + kI * std::sin(theta) * pauli_x();
  CHECK(frob(ex - expected) < 1e-13);

  // nilpotent upper triangular case
  ComplexMatrix nil(2, 2);
  nil << 0, 1, 0, 0;
  ComplexMatrix nil_exp(2, 2);
  nil_exp << 1, 1, 0, 1;
  CHECK(frob(matrix_exponential(nil) - nil_exp) < 1e-14);

  // exponential of an anti-Hermitian matrix is unitary
  const ComplexMatrix h = random_complex_matrix(6, 6, 21);
  const ComplexMatrix anti = 0.5 * (h - h.adjoint());
  CHECK(unitarity_defect(matrix_exponential(anti)) < 1e-12);
}

TEST_CASE("truncated_svd reconstructs and reports discarded weight") {
  const Index dim = 6;
  const ComplexMatrix u = random_unitary(dim, 31);
  const ComplexMatrix v = random_unitary(dim, 32);
  Eigen::VectorXd s(dim);
  s << 5.0, 3.0, 2.0, 1.0, 0.5, 0.25;
  const ComplexMatrix a = u * s.asDiagonal() * v.adjoint();

  SECTION("full rank keep reconstructs the matrix") {
    const SvdResult r = truncated_svd(a, dim);
    REQUIRE(r.singular_values.size() == dim);
    const ComplexMatrix rebuilt =
        r.u * r.singular_values.asDiagonal() * r.v.adjoint();
    CHECK(frob(rebuilt - a) < 1e-12);
    CHECK(r.discarded_weight < 1e-14);
    for (Index i = 0; i < dim; ++i)
      CHECK(std::abs(r.singular_values(i) - s(i)) < 1e-12);
  }

  SECTION("chi truncation keeps the largest values") {
    const SvdResult r = truncated_svd(a, 3);
    REQUIRE(r.singular_values.size() == 3);
    CHECK(std::abs(r.singular_values(0) - 5.0) < 1e-12);
    CHECK(std::abs(r.singular_values(2) - 2.0) < 1e-12);
    const double expected_discard =
        std::sqrt(1.0 * 1.0 + 0.5 * 0.5 + 0.25 * 0.25);
    CHECK(std::abs(r.discarded_weight - expected_discard) < 1e-10);
    // best rank-3 approximation error in Frobenius norm equals the
    // discarded weight
    const ComplexMatrix rebuilt =
        r.u * r.singular_values.asDiagonal() * r.v.adjoint();
    CHECK(std::abs(frob(rebuilt - a) - expected_discard) < 1e-10);
    // isometry of the factors
    CHECK(frob(r.u.adjoint() * r.u - identity(3)) < 1e-12);
    CHECK(frob(r.v.adjoint() * r.v - identity(3)) < 1e-12);
  }

  SECTION("relative cutoff drops small values") {
    Eigen::VectorXd s2(3);
    s2 << 4.0, 2.0, 1e-9;
    const ComplexMatrix u3 = random_unitary(3, 41);
    const ComplexMatrix v3 = random_unitary(3, 42);
    const ComplexMatrix a2 = u3 * s2.asDiagonal() * v3.adjoint();
    const SvdResult r = truncated_svd(a2, 10, 1e-6);
    CHECK(r.singular_values.size() == 2);
  }

  SECTION("at least one singular value survives") {
    const SvdResult r = truncated_svd(a, 10, 1e6);
    CHECK(r.singular_values.size() == 1);
  }

  SECTION("non-square shapes") {
    const ComplexMatrix wide = random_complex_matrix(3, 7, 51);
    const SvdResult r = truncated_svd(wide, 10);
    REQUIRE(r.singular_values.size() == 3);
    CHECK(frob(r.u * r.singular_values.asDiagonal() * r.v.adjoint() - wide) <
          1e-12);
    const ComplexMatrix tall = random_complex_matrix(7, 3, 52);
    const SvdResult r2 = truncated_svd(tall, 10);
    REQUIRE(r2.singular_values.size() == 3);
    CHECK(frob(r2.u * r2.singular_values.asDiagonal() * r2.v.adjoint() - tall) <
          1e-12);
  }
}

TEST_CASE("superop_to_site_ordering permutes global vec indices to site-major") {
  SECTION("single site is unchanged") {
    const ComplexMatrix s = random_complex_matrix(4, 4, 61);
    CHECK(frob(superop_to_site_ordering(s, 1) - s) < 1e-15);
  }

  SECTION("product superoperators factorize after reordering") {
    // for a product map (A0 on site 0) (A1 on site 1) the site-major
    // superoperator is the kron of the per-site superoperators
    const ComplexMatrix a0 = random_complex_matrix(2, 2, 62);
    const ComplexMatrix a1 = random_complex_matrix(2, 2, 63);
    const ComplexMatrix g = kron(a0, a1);
    const ComplexMatrix global = kron(g, g.conjugate());
    const ComplexMatrix site = superop_to_site_ordering(global, 2);
    const ComplexMatrix expected =
        kron(kron(a0, a0.conjugate()), kron(a1, a1.conjugate()));
    CHECK(frob(site - expected) < 1e-12);
  }

  SECTION("hand-computed two-site permutation entry") {
    // global vec index g = i*4 + j with i = 2 i0 + i1, j = 2 j0 + j1;
    // site-major index m = (2 i0 + j0)*4 + (2 i1 + j1)
    ComplexMatrix s = ComplexMatrix::Zero(16, 16);
    // place a marker at global (row i=1,j=2 -> 1*4+2=6, col i=3,j=0 -> 12)
    s(6, 12) = Complex(7.0, 0.0);
    const ComplexMatrix m = superop_to_site_ordering(s, 2);
    // i=1 -> (i0,i1)=(0,1), j=2 -> (j0,j1)=(1,0): row (2*0+1)*4 + (2*1+0) = 6
    // i=3 -> (1,1), j=0 -> (0,0): col (2*1+0)*4 + (2*1+0) = 10
    CHECK(m(6, 10) == Complex(7.0, 0.0));
    CHECK(std::abs(m.sum() - Complex(7.0, 0.0)) < 1e-15);
  }

  SECTION("dimension mismatch throws") {
    CHECK_THROWS_AS(superop_to_site_ordering(ComplexMatrix::Zero(8, 8), 2),
                    std::invalid_argument);
  }
}

TEST_CASE("defect measures vanish exactly on conforming matrices") {
  CHECK(unitarity_defect(random_unitary(5, 71)) < 1e-13);
  const ComplexMatrix h = random_complex_matrix(5, 5, 72);
  const ComplexMatrix herm = 0.5 * (h + h.adjoint());
  CHECK(hermiticity_defect(herm) < 1e-15);
  CHECK(hermiticity_defect(herm + kI * identity(5)) > 1.0);
  CHECK(unitarity_defect(2.0 * identity(3)) > 1.0);
}
