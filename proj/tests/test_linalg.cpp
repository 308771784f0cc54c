#include <gtest/gtest.h>

#include "hermpir/linalg.hpp"
#include "oracles.hpp"

using namespace hermpir;
using linalg::Matrix;

namespace {

std::shared_ptr<const gf::Field> field(std::uint32_t p, std::uint32_t n) { return std::make_shared<gf::Field>(p, n); }

Matrix random_matrix(std::shared_ptr<const gf::Field> f, std::size_t r, std::size_t c, gf::Rng& rng,
                     double zero_bias = 0.0) {
  Matrix m(f, r, c);
  std::bernoulli_distribution z(zero_bias);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, z(rng) ? f->zero() : f->sample(rng));
  }
  return m;
}

std::vector<std::vector<std::uint32_t>> rows_of(const Matrix& m) {
  std::vector<std::vector<std::uint32_t>> out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<std::uint32_t> row;
    for (const auto e : m.row(r)) row.push_back(e.value);
    out.push_back(row);
  }
  return out;
}

oracle::NaiveField naive(const gf::Field& f) {
  return oracle::NaiveField(f.characteristic(), oracle::Poly(f.modulus().begin(), f.modulus().end()));
}

}  // namespace

TEST(Linalg, RankMatchesOracle) {
  gf::Rng rng(11);
  for (const auto& [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{7, 1}, {5, 2}, {2, 2}}) {
    const auto f = field(p, n);
    const auto o = naive(*f);
    for (int t = 0; t < 30; ++t) {
      const auto m = random_matrix(f, 1 + rng() % 8, 1 + rng() % 8, rng, 0.6);
      ASSERT_EQ(linalg::rank(m), oracle::rank(o, rows_of(m)));
    }
  }
}

TEST(Linalg, RrefPivotsAndIdentity) {
  const auto f = field(5, 2);
  const auto id = Matrix::identity(f, 4);
  const auto e = linalg::rref(id);
  EXPECT_EQ(e.pivots, (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(e.reduced, id);
  EXPECT_EQ(id.multiply(id), id);
  EXPECT_EQ(id.transpose(), id);
}

TEST(Linalg, SolvePrefixRecoversPlantedSolution) {
  const auto f = field(5, 2);
  gf::Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    // Full column rank on the first 3 columns, then 2 redundant columns.
    Matrix a = random_matrix(f, 8, 3, rng);
    if (linalg::rank(a) < 3) continue;
    Matrix b = random_matrix(f, 8, 2, rng);
    const Matrix m = a.hconcat(b);
    if (linalg::rank(m) < 5) continue;
    std::vector<gf::Element> x(5);
    for (auto& v : x) v = f->sample(rng);
    const auto rhs = m.multiply(x);
    const auto got = linalg::solve_prefix(m, rhs, 3);
    EXPECT_EQ(got, std::vector<gf::Element>(x.begin(), x.begin() + 3));
  }
}

TEST(Linalg, SolvePrefixErrors) {
  const auto f = field(3, 1);
  Matrix m(f, 2, 2);
  m.set(0, 0, f->one());
  m.set(0, 1, f->one());
  // Column 0 and column 1 only appear together, so x_0 is not determined.
  std::vector<gf::Element> rhs{f->one(), f->zero()};
  EXPECT_THROW(linalg::solve_prefix(m, rhs, 1), linalg::NonUniquePrefix);
  std::vector<gf::Element> bad{f->one(), f->one()};
  EXPECT_THROW(linalg::solve_prefix(m, bad, 1), linalg::InconsistentSystem);
}

TEST(Linalg, KernelBasis) {
  const auto f = field(7, 1);
  gf::Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const auto m = random_matrix(f, 4, 7, rng, 0.3);
    const auto k = linalg::kernel_basis(m);
    EXPECT_EQ(k.size(), m.cols() - linalg::rank(m));
    for (const auto& v : k) {
      for (const auto e : m.multiply(v)) EXPECT_TRUE(e.is_zero());
    }
  }
}

TEST(Linalg, SelectFullRankRows) {
  const auto f = field(5, 2);
  gf::Rng rng(9);
  const auto m = random_matrix(f, 12, 4, rng, 0.5);
  const auto r = linalg::rank(m);
  const auto idx = linalg::select_full_rank_rows(m, r, 10);
  ASSERT_EQ(idx.size(), 10u);
  EXPECT_TRUE(std::is_sorted(idx.begin(), idx.end()));
  EXPECT_EQ(linalg::rank(m.select_rows(idx)), r);
}

TEST(Linalg, ColumnSpace) {
  const auto f = field(5, 1);
  Matrix m(f, 3, 1);
  m.set(0, 0, f->one());
  m.set(1, 0, f->from_int(2));
  const std::vector<gf::Element> in{f->from_int(3), f->from_int(1), f->zero()};
  const std::vector<gf::Element> out{f->one(), f->one(), f->zero()};
  EXPECT_TRUE(linalg::in_column_space(m, in));
  EXPECT_FALSE(linalg::in_column_space(m, out));
}

TEST(Linalg, ShapeErrors) {
  const auto f = field(5, 1);
  Matrix a(f, 2, 3), b(f, 2, 2);
  EXPECT_THROW(a.multiply(b), InvalidArgument);
  EXPECT_THROW(a.vconcat(b), InvalidArgument);
}
