#include <map>

#include <matsemi/conjugacy.hpp>

#include "support.hpp"

using namespace matsemi;

namespace {

  // Transitive closure of {(xy, yx)} over the test's own matrix list.
  oracle::Classes brute_classes(std::vector<Matrix> const& all) {
    std::map<std::vector<Scalar>, int> index;
    for (std::size_t i = 0; i < all.size(); ++i) {
      index[all[i].entries()] = static_cast<int>(i);
    }
    oracle::Classes c(static_cast<int>(all.size()));
    for (auto const& x : all) {
      for (auto const& y : all) {
        c.join(index[(x * y).entries()], index[(y * x).entries()]);
      }
    }
    return c;
  }

}  // namespace

TEST(Core, StabilityIndexExamples) {
  Field const f = Field::make(2);
  EXPECT_EQ(stability_index(text::parse_matrix(f, "1,0;0,1")), 0);
  EXPECT_EQ(stability_index(text::parse_matrix(f, "0,0;0,0")), 1);
  EXPECT_EQ(stability_index(text::parse_matrix(f, "0,1,0;0,0,1;0,0,0")), 3);
  EXPECT_EQ(stability_index(text::parse_matrix(f, "1,1,0;0,0,1;0,0,0")), 2);
}

TEST(Core, DecompositionProperties) {
  std::mt19937 rng(29);
  for (int q : {2, 3, 5}) {
    Field const f = Field::make(q);
    for (int trial = 0; trial < 80; ++trial) {
      int const    n = 1 + trial % 4;
      Matrix const a = oracle::random_matrix(f, n, n, rng);
      auto const   d = core(a);
      Matrix const at = pow(a, static_cast<std::uint64_t>(d.t));
      EXPECT_EQ(rank(at), rank(at * a));
      if (d.t > 0) {
        Matrix const prev = pow(a, static_cast<std::uint64_t>(d.t - 1));
        EXPECT_GT(rank(prev), rank(at));
      }
      EXPECT_EQ(d.image_t, image(at));
      EXPECT_EQ(d.kernel_t, kernel(at));
      EXPECT_EQ(image(d.core), d.image_t);
      EXPECT_EQ(kernel(d.core), d.kernel_t);
      for (auto const& v : d.image_t.basis()) {
        EXPECT_EQ(d.core * v, a * v);
      }
      EXPECT_EQ(core(d.core).core, d.core);
      // A = core + nilpotent part, the two multiplying to zero
      Matrix nil = a;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          nil.set(i, j, f.sub(a(i, j), d.core(i, j)));
        }
      }
      EXPECT_TRUE(is_nilpotent(nil));
      EXPECT_TRUE((nil * d.core).is_zero() && (d.core * nil).is_zero());
    }
  }
}

TEST(Conjugacy, ChainIsValid) {
  std::mt19937 rng(31);
  for (int q : {2, 3}) {
    Field const f = Field::make(q);
    for (int trial = 0; trial < 100; ++trial) {
      int const    n = 2 + trial % 3;
      Matrix const a = oracle::random_matrix(f, n, n, rng);
      auto const   c = conjugacy_chain(a);
      EXPECT_TRUE(c.valid()) << text::format(a);
      EXPECT_EQ(c.steps.front(), a);
      EXPECT_TRUE(similar(c.steps.back(), core(a).core));
      EXPECT_EQ(static_cast<int>(c.witnesses.size()), stability_index(a));
    }
  }
}

TEST(Conjugacy, SgConjugateMatchesTransitiveClosure) {
  for (int q : {2, 3}) {
    Field const f   = Field::make(q);
    auto const  all = oracle::all_matrices(f, 2, 2);
    auto        bc  = brute_classes(all);
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = 0; j < all.size(); ++j) {
        ASSERT_EQ(sg_conjugate(all[i], all[j]),
                  bc.find(static_cast<int>(i)) == bc.find(static_cast<int>(j)))
            << text::format(all[i]) << " vs " << text::format(all[j]);
      }
    }
  }
}

TEST(Conjugacy, ClassesOfM2F2) {
  Field const f  = Field::make(2);
  auto const  th = sg_classes(f, 2, ClassMethod::theorem1);
  auto const  br = sg_classes(f, 2, ClassMethod::brute, 4);
  EXPECT_EQ(th.partition, br.partition);
  std::vector<std::size_t> sizes;
  for (auto const& c : th.partition.classes()) {
    sizes.push_back(c.size());
  }
  std::sort(sizes.begin(), sizes.end());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 2, 3, 4, 6}));
  Id const zero = th.elements.index_of(Matrix(f, 2, 2)).value();
  for (Id x = 0; x < th.elements.size(); ++x) {
    if (is_nilpotent(th.elements[x])) {
      EXPECT_TRUE(th.partition.same(x, zero));
    }
  }
}

TEST(Conjugacy, ThreadCountDoesNotMatter) {
  for (auto [n, q] : {std::pair{2, 3}, {3, 2}}) {
    Field const f = Field::make(q);
    auto const  a = sg_classes(f, n, ClassMethod::brute, 1).partition;
    auto const  b = sg_classes(f, n, ClassMethod::brute, 8).partition;
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, sg_classes(f, n, ClassMethod::theorem1).partition);
  }
}

TEST(Conjugacy, PrimaryWitness) {
  Field const  f = Field::make(2);
  Matrix const a = text::parse_matrix(f, "1,0;0,0");
  Matrix const b = text::parse_matrix(f, "0,0;0,1");
  auto const   w = primary_conjugate_witness(a, b);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->first * w->second, a);
  EXPECT_EQ(w->second * w->first, b);
  EXPECT_FALSE(primary_conjugate_witness(Matrix::identity(f, 2), Matrix(f, 2, 2)));
  // 0 and E12 are semigroup conjugate but not similar
  EXPECT_TRUE(sg_conjugate(Matrix(f, 2, 2), text::parse_matrix(f, "0,1;0,0")));
  EXPECT_FALSE(gl_conjugate(Matrix(f, 2, 2), text::parse_matrix(f, "0,1;0,0")));
}

TEST(Conjugacy, Caps) {
  Field const f = Field::make(2);
  EXPECT_EQ(oracle::thrown_kind([&] { sg_classes(f, 4, ClassMethod::brute); }), "CapExceeded");
  EXPECT_EQ(oracle::thrown_kind([&] { sg_classes(f, 4, ClassMethod::theorem1); }),
            "CapExceeded");
}
