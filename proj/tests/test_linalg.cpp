#include <gtest/gtest.h>

#include <random>

#include "qbic/linalg.hpp"

using namespace qbic;

namespace {

Elem random_elem(const Field& F, std::mt19937_64& rng) {
  return F.from_code(std::uniform_int_distribution<std::uint64_t>(0, F.size() - 1)(rng));
}

Matrix random_matrix(const FieldPtr& F, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  Matrix m(F, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = random_elem(*F, rng);
  return m;
}

Vec unit(const FieldPtr& F, std::size_t n, std::size_t i) {
  Vec v(n, F->zero());
  v[i] = F->one();
  return v;
}

Matrix jordan(const FieldPtr& F, std::size_t k) {
  Matrix m(F, k, k);
  for (std::size_t i = 0; i + 1 < k; ++i) m(i, i + 1) = F->one();
  return m;
}

// Every vector of a subspace over GF(p^d), d | s: all coefficient combinations.
std::vector<Vec> all_vectors(const Field& F, const std::vector<Vec>& basis, std::uint32_t d, std::size_t n) {
  const auto scalars = F.subfield_elements(d);
  std::vector<Vec> out{Vec(n, F.zero())};
  for (const Vec& b : basis) {
    std::vector<Vec> next;
    for (const Vec& v : out)
      for (Elem c : scalars) next.push_back(add(F, v, scale(F, c, b)));
    out = std::move(next);
  }
  return out;
}

}  // namespace

TEST(Rref, KernelOfIdentityIsZero) {
  auto F = make_field(2, 2);
  EXPECT_EQ(kernel(Matrix::identity(F, 4)).dim(), 0u);
}

TEST(Rref, JordanBlockKernel) {
  auto F = make_field(3, 2);
  const Matrix n3 = jordan(F, 3);
  EXPECT_EQ(rank(n3), 2u);
  const Subspace k = kernel(n3);
  ASSERT_EQ(k.dim(), 1u);
  EXPECT_TRUE(k.contains(unit(F, 3, 0)));
}

TEST(Rref, SolveJordan) {
  auto F = make_field(2, 2);
  auto x = solve(jordan(F, 2), unit(F, 2, 0));
  ASSERT_TRUE(x);
  EXPECT_EQ(jordan(F, 2) * *x, unit(F, 2, 0));
  EXPECT_EQ((*x)[1], F->one());
  EXPECT_FALSE(solve(jordan(F, 2), unit(F, 2, 1)));
}

TEST(Rref, RankAndKernelProperties) {
  std::mt19937_64 rng(2);
  auto F = make_field(3, 2);
  for (int t = 0; t < 100; ++t) {
    const Matrix m = random_matrix(F, 1 + t % 5, 1 + (t / 5) % 6, rng);
    const auto r = rref(m);
    EXPECT_EQ(rank(r.reduced), r.rank);
    const Subspace k = kernel(m);
    EXPECT_EQ(k.dim() + r.rank, m.cols());
    for (std::size_t i = 0; i < k.dim(); ++i) EXPECT_TRUE(is_zero(m * k.basis().row_vec(i)));
    EXPECT_EQ(image(m).dim(), r.rank);
  }
}

TEST(Rref, DimensionMismatch) {
  auto F = make_field(2, 1);
  EXPECT_THROW(solve(Matrix::identity(F, 2), Vec(3)), DimensionMismatch);
  EXPECT_THROW(Matrix::identity(F, 2) * Matrix::identity(F, 3), DimensionMismatch);
}

TEST(Determinant, InverseAndProduct) {
  std::mt19937_64 rng(4);
  auto F = make_field(2, 4);
  for (int t = 0; t < 50; ++t) {
    const Matrix a = random_matrix(F, 3, 3, rng), b = random_matrix(F, 3, 3, rng);
    EXPECT_EQ(determinant(a * b), F->mul(determinant(a), determinant(b)));
    auto inv = inverse(a);
    EXPECT_EQ(inv.has_value(), !determinant(a).is_zero());
    if (inv) {
      EXPECT_EQ(a * *inv, Matrix::identity(F, 3));
    }
  }
}

TEST(SubspaceLattice, Basics) {
  auto F = make_field(2, 2);
  const Subspace e0 = Subspace::span(F, std::vector<Vec>{unit(F, 2, 0)}, 2);
  const Subspace e1 = Subspace::span(F, std::vector<Vec>{unit(F, 2, 1)}, 2);
  EXPECT_EQ(subspace_intersect(e0, e1).dim(), 0u);
  EXPECT_EQ(subspace_intersect(e0, e0), e0);
  EXPECT_EQ(subspace_sum(e0, Subspace::zero(F, 2)), e0);
  EXPECT_EQ(subspace_sum(e0, e1), Subspace::full(F, 2));
  EXPECT_THROW(subspace_sum(e0, Subspace::zero(F, 3)), DimensionMismatch);
}

TEST(SubspaceLattice, ModularLawOnRandomPairs) {
  std::mt19937_64 rng(8);
  auto F = make_field(3, 2);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 5;
    const Subspace s = Subspace::span(random_matrix(F, t % 4, n, rng));
    const Subspace u = Subspace::span(random_matrix(F, (t / 4) % 4, n, rng));
    // Correlate the pair sometimes so intersections are nontrivial.
    const Subspace tt = t % 3 == 0 ? subspace_sum(u, Subspace::span(random_matrix(F, 1, n, rng))) : u;
    const Subspace i = subspace_intersect(s, tt);
    EXPECT_EQ(subspace_sum(s, tt).dim() + i.dim(), s.dim() + tt.dim());
    EXPECT_TRUE(s.contains(i));
    EXPECT_TRUE(tt.contains(i));
  }
}

TEST(Twist, PrimeFieldMatrixFixed) {
  auto F = make_field(3, 4);
  const Matrix m = Matrix::from_ints(F, {{1, 2, 0}, {0, 1, 1}});
  EXPECT_EQ(frobenius_twist(m, 1, 1), m);
}

TEST(Twist, InverseAndDeterminant) {
  std::mt19937_64 rng(12);
  auto F = make_field(2, 4);
  for (int t = 0; t < 50; ++t) {
    const Matrix m = random_matrix(F, 3, 3, rng);
    EXPECT_EQ(frobenius_twist(frobenius_twist(m, 1, 1), 1, -1), m);
    EXPECT_EQ(determinant(frobenius_twist(m, 1, 1)), F->qfrob(determinant(m), 1, 1));
  }
}

TEST(FrobeniusPreimage, CoordinateAndFull) {
  auto F = make_field(2, 4);
  EXPECT_EQ(frobenius_preimage(Subspace::full(F, 3), 1), Subspace::full(F, 3));
  const Subspace e1 = Subspace::span(F, std::vector<Vec>{unit(F, 3, 1)}, 3);
  EXPECT_EQ(frobenius_preimage(e1, 1), e1);
}

TEST(FrobeniusPreimage, MembershipBruteForce) {
  std::mt19937_64 rng(13);
  auto F = make_field(2, 4);
  for (int t = 0; t < 10; ++t) {
    const Subspace s = Subspace::span(random_matrix(F, 1 + t % 2, 3, rng));
    const Subspace pre = frobenius_preimage(s, 1);
    EXPECT_EQ(pre.dim(), s.dim());
    for (const Vec& v : all_vectors(*F, pre.basis_vectors(), 4, 3))
      ASSERT_TRUE(s.contains(frobenius_twist(*F, v, 1, 1)));
    EXPECT_EQ(frobenius_image(pre, 1), s);
  }
}

TEST(Semilinear, IdentityOverGF4) {
  auto F = make_field(2, 2);
  const Matrix id = Matrix::identity(F, 3);
  const auto sol = semilinear_kernel(id, id, 1, 2);
  EXPECT_EQ(sol.count(), 64u);
  EXPECT_EQ(sol.basis.size(), 3u);
}

TEST(Semilinear, ZeroSystemIsEverything) {
  auto F = make_field(2, 4);
  const Matrix z(F, 2, 2);
  EXPECT_EQ(semilinear_kernel(z, z, 1, 2).count(), 256u);
}

TEST(Semilinear, RandomSystemsAgreeWithBruteForce) {
  std::mt19937_64 rng(21);
  auto F = make_field(2, 4);
  const auto everything = all_vectors(*F, {unit(F, 2, 0), unit(F, 2, 1)}, 4, 2);
  ASSERT_EQ(everything.size(), 256u);
  for (int t = 0; t < 20; ++t) {
    Matrix a = random_matrix(F, 2, 2, rng);
    if (determinant(a).is_zero()) continue;
    const Matrix c = frobenius_twist(a, 1, 1).transpose();
    const auto sol = semilinear_kernel(a, c, 1, 2);
    std::uint64_t brute = 0;
    for (const Vec& v : everything)
      if (a * v == c * frobenius_twist(*F, v, 1, 2)) ++brute;
    EXPECT_EQ(sol.count(), brute);
    EXPECT_TRUE(brute == 1 || brute == 4 || brute == 16);
    // Every GF(4)-combination of the basis solves the system.
    EXPECT_EQ(sol.scalar_degree, 2u);
    for (const Vec& v : all_vectors(*F, sol.basis, 2, 2)) ASSERT_EQ(a * v, c * frobenius_twist(*F, v, 1, 2));
  }
}

TEST(Semilinear, SubfieldRestriction) {
  auto F = make_field(2, 4);
  const Matrix id = Matrix::identity(F, 2);
  // x = x^(q^2) has 256 solutions in GF(16)^2 with q = 2 (since x^4 = x only on GF(4): 16).
  EXPECT_EQ(semilinear_kernel(id, id, 1, 2).count(), 16u);
  const Matrix z(F, 2, 2);
  EXPECT_EQ(semilinear_kernel(z, z, 1, 2, 2).count(), 16u);
}
