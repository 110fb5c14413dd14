#include <set>

#include <matsemi/rank1.hpp>
#include <matsemi/similarity.hpp>
#include <matsemi/subspace.hpp>
#include <matsemi/text.hpp>

#include "support.hpp"

using namespace matsemi;

namespace {

  std::vector<Field> small_fields() {
    std::vector<Field> out;
    for (auto [p, k] : {std::pair{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}}) {
      out.push_back(Field::make(p, k));
    }
    return out;
  }

  std::vector<Field> all_fields() {
    std::vector<Field> out;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61}) {
      for (int k = 1; oracle::ipow(p, k) <= 64; ++k) {
        out.push_back(Field::make(p, k));
      }
    }
    return out;
  }

  // Remainder of a modulo b over F_p, coefficients low degree first.
  std::vector<int> poly_rem(std::vector<int> a, std::vector<int> const& b, int p) {
    int const lead_inv = [&] {
      for (int x = 1; x < p; ++x) {
        if (x * b.back() % p == 1) {
          return x;
        }
      }
      return 0;
    }();
    while (a.size() >= b.size()) {
      int const c     = a.back() * lead_inv % p;
      std::size_t const shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) {
        a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
      }
      while (!a.empty() && a.back() == 0) {
        a.pop_back();
      }
    }
    return a;
  }

  // Irreducible iff no monic polynomial of degree 1..deg/2 divides f.
  bool irreducible_by_trial(std::vector<int> const& f, int p) {
    int const deg = static_cast<int>(f.size()) - 1;
    for (int d = 1; 2 * d <= deg; ++d) {
      for (long c = 0; c < oracle::ipow(p, d); ++c) {
        std::vector<int> g(d + 1, 0);
        long             x = c;
        for (int i = 0; i < d; ++i, x /= p) {
          g[i] = static_cast<int>(x % p);
        }
        g[d] = 1;
        if (poly_rem(f, g, p).empty()) {
          return false;
        }
      }
    }
    return true;
  }

}  // namespace

TEST(Field, AxiomsExhaustive) {
  for (auto const& f : small_fields()) {
    int const q = f.q();
    for (int a = 0; a < q; ++a) {
      EXPECT_EQ(f.add(a, 0), a);
      EXPECT_EQ(f.mul(a, 1), a);
      EXPECT_EQ(f.add(a, f.neg(a)), 0);
      if (a != 0) {
        EXPECT_EQ(f.mul(a, f.inv(a)), 1);
      }
      for (int b = 0; b < q; ++b) {
        EXPECT_EQ(f.add(a, b), f.add(b, a));
        EXPECT_EQ(f.mul(a, b), f.mul(b, a));
        if (a != 0 && b != 0) {
          EXPECT_NE(f.mul(a, b), 0);
        }
        for (int c = 0; c < q; ++c) {
          ASSERT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
          ASSERT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
          ASSERT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
}

TEST(Field, FrobeniusIsAdditiveAndBijective) {
  for (auto const& f : all_fields()) {
    std::set<int> images;
    for (int a = 0; a < f.q(); ++a) {
      images.insert(f.pow(a, f.p()));
      for (int b = 0; b < f.q(); ++b) {
        ASSERT_EQ(f.pow(f.add(a, b), f.p()), f.add(f.pow(a, f.p()), f.pow(b, f.p())));
      }
    }
    EXPECT_EQ(static_cast<int>(images.size()), f.q()) << f.to_string();
  }
}

TEST(Field, MultiplicativeGroupIsCyclic) {
  for (auto const& f : all_fields()) {
    bool found = false;
    for (int g = 1; g < f.q() && !found; ++g) {
      int order = 1;
      for (int x = g; x != 1; x = f.mul(x, g)) {
        ++order;
      }
      found = order == f.q() - 1;
    }
    EXPECT_TRUE(found) << f.to_string();
  }
}

TEST(Field, ModulusIsSmallestMonicIrreducible) {
  for (auto const& f : all_fields()) {
    if (f.k() == 1) {
      continue;
    }
    auto const& m = f.modulus();
    ASSERT_EQ(static_cast<int>(m.size()), f.k() + 1);
    EXPECT_EQ(m.back(), 1);
    EXPECT_TRUE(irreducible_by_trial(m, f.p())) << f.to_string();
    long code = 0;
    for (int i = f.k() - 1; i >= 0; --i) {
      code = code * f.p() + m[i];
    }
    for (long c = 0; c < code; ++c) {
      std::vector<int> g(f.k() + 1, 0);
      long             x = c;
      for (int i = 0; i < f.k(); ++i, x /= f.p()) {
        g[i] = static_cast<int>(x % f.p());
      }
      g[f.k()] = 1;
      EXPECT_FALSE(irreducible_by_trial(g, f.p())) << f.to_string() << " candidate " << c;
    }
  }
}

TEST(Field, GF4Table) {
  Field const f = text::parse_field("2^2");
  EXPECT_EQ(f.q(), 4);
  // x^2 + x + 1: x * x = x + 1
  EXPECT_EQ(f.mul(2, 2), 3);
  EXPECT_EQ(f.mul(2, 3), 1);
  EXPECT_EQ(f.inv(3), 2);
}

TEST(Field, Errors) {
  EXPECT_EQ(oracle::thrown_kind([] { Field::make(6); }), "NotPrime");
  EXPECT_EQ(oracle::thrown_kind([] { Field::make(2, 7); }), "CapExceeded");
  EXPECT_EQ(oracle::thrown_kind([] { text::parse_field("x"); }), "ParseError");
  EXPECT_EQ(oracle::thrown_kind([] { text::parse_field("2^2^2"); }), "ParseError");
  Field const f = Field::make(5);
  EXPECT_EQ(oracle::thrown_kind([&] { f.inv(0); }), "DivisionByZero");
}

TEST(Matrix, RankMatchesEliminationAndInequalities) {
  std::mt19937 rng(7);
  for (auto const& f : small_fields()) {
    for (int trial = 0; trial < 60; ++trial) {
      int const    n = 1 + trial % 4;
      Matrix const a = oracle::random_matrix(f, n, n, rng);
      Matrix const b = oracle::random_matrix(f, n, n, rng);
      int const    ra = rank(a), rb = rank(b);
      ASSERT_EQ(ra, oracle::elimination_rank(a));
      EXPECT_LE(rank(a * b), std::min(ra, rb));
      EXPECT_LE(rank(a + b), ra + rb);
      EXPECT_GE(rank(a * b), ra + rb - n);  // Sylvester
      EXPECT_EQ(kernel(a).dim() + ra, n);
      EXPECT_EQ(image(a).dim(), ra);
      EXPECT_EQ(rank(transpose(a)), ra);
      Subspace const ker = kernel(a);
      for (auto const& v : ker.basis()) {
        EXPECT_EQ(a * v, Vector(n, 0));
      }
      if (is_invertible(a)) {
        EXPECT_EQ(a * inverse(a), Matrix::identity(f, n));
      } else {
        EXPECT_EQ(oracle::thrown_kind([&] { inverse(a); }), "NotInvertible");
      }
    }
  }
}

TEST(Matrix, ShapeErrors) {
  Field const  f = Field::make(2);
  Matrix const a(f, 2, 3);
  EXPECT_EQ(oracle::thrown_kind([&] { a * a; }), "DimMismatch");
  Matrix const b(Field::make(3), 2, 2);
  Matrix const c(f, 2, 2);
  EXPECT_EQ(oracle::thrown_kind([&] { b * c; }), "DimMismatch");
}

TEST(Subspace, GaussianBinomialCounts) {
  for (int q : {2, 3, 4}) {
    Field const f = q == 4 ? Field::make(2, 2) : Field::make(q);
    for (int n = 1; n <= 4; ++n) {
      for (int d = 0; d <= n; ++d) {
        auto const subs = enumerate_subspaces(f, n, d);
        EXPECT_EQ(static_cast<long>(subs.size()), oracle::gaussian_binomial(n, d, q))
            << "n=" << n << " d=" << d << " q=" << q;
        EXPECT_TRUE(std::is_sorted(subs.begin(), subs.end()));
        EXPECT_TRUE(std::adjacent_find(subs.begin(), subs.end()) == subs.end());
        for (auto const& u : subs) {
          EXPECT_EQ(u.dim(), d);
          EXPECT_EQ(Subspace::span(f, n, u.basis()), u);
        }
      }
    }
  }
}

TEST(Subspace, DimensionFormulaAndContainment) {
  std::mt19937 rng(11);
  for (auto const& f : small_fields()) {
    for (int trial = 0; trial < 50; ++trial) {
      int const      n = 2 + trial % 3;
      Subspace const u = image(oracle::random_matrix(f, n, 1 + trial % 2, rng));
      Subspace const w = image(oracle::random_matrix(f, n, 1 + trial % 3, rng));
      Subspace const s = sum(u, w);
      Subspace const i = intersect(u, w);
      EXPECT_EQ(s.dim() + i.dim(), u.dim() + w.dim());
      EXPECT_TRUE(s.contains(u) && s.contains(w));
      EXPECT_TRUE(u.contains(i) && w.contains(i));
      EXPECT_EQ(sum(u, w), sum(w, u));
      EXPECT_EQ(intersect(u, w), intersect(w, u));
    }
  }
}

TEST(Subspace, ProjectionIsIdempotentOntoAlong) {
  for (auto const& f : {Field::make(2), Field::make(3)}) {
    for (int d = 0; d <= 3; ++d) {
      for (auto const& v1 : enumerate_subspaces(f, 3, d)) {
        Subspace const v2 = Subspace::span(f, 3, standard_complement(v1));
        Matrix const   e  = projection(v1, v2);
        EXPECT_EQ(e * e, e);
        EXPECT_EQ(image(e), v1);
        EXPECT_EQ(kernel(e), v2);
      }
    }
  }
  Field const f = Field::make(2);
  auto const  line = text::parse_subspace(f, 2, "1,0");
  EXPECT_EQ(oracle::thrown_kind([&] { projection(line, line); }), "InvariantViolation");
}

TEST(Similarity, AgreesWithConjugationSearch) {
  for (int q : {2, 3}) {
    Field const f   = Field::make(q);
    auto const  all = oracle::all_matrices(f, 2, 2);
    std::vector<std::pair<Matrix, Matrix>> gl;
    for (auto const& g : all) {
      if (oracle::elimination_rank(g) == 2) {
        gl.emplace_back(g, inverse(g));
      }
    }
    ASSERT_EQ(static_cast<long>(gl.size()), oracle::gl_order(2, q));
    for (auto const& a : all) {
      std::set<std::vector<Scalar>> orbit;
      for (auto const& [g, gi] : gl) {
        orbit.insert((gi * a * g).entries());
      }
      for (auto const& b : all) {
        ASSERT_EQ(similar(a, b), orbit.count(b.entries()) == 1)
            << text::format(a) << " vs " << text::format(b);
      }
    }
  }
}

TEST(Similarity, InvariantFactorDegreesSumToN) {
  std::mt19937 rng(3);
  for (auto const& f : small_fields()) {
    for (int n = 1; n <= 4; ++n) {
      Matrix const a   = oracle::random_matrix(f, n, n, rng);
      auto const   inv = invariant_factors(a);
      std::size_t  deg = 0;
      for (auto const& p : inv) {
        deg += p.size() - 1;
        EXPECT_EQ(p.back(), 1);
      }
      EXPECT_EQ(deg, static_cast<std::size_t>(n));
    }
  }
}

TEST(Rank1, FactorizationIsABijection) {
  for (int q : {2, 3}) {
    Field const f = Field::make(q);
    for (auto [r, c] : {std::pair{2, 2}, {2, 3}}) {
      std::set<std::tuple<int, Vector, Vector>> seen;
      long                                      count = 0;
      for (auto const& m : oracle::all_matrices(f, r, c)) {
        if (oracle::elimination_rank(m) != 1) {
          EXPECT_EQ(oracle::thrown_kind([&] { rank1_factor(m); }), "RankNotOne");
          continue;
        }
        ++count;
        auto const t = rank1_factor(m);
        EXPECT_EQ(t.reassemble(f), m);
        EXPECT_TRUE(is_hat_normalized(t.v) && is_hat_normalized(t.w));
        EXPECT_NE(t.lambda, 0);
        EXPECT_TRUE(seen.emplace(t.lambda, t.v, t.w).second);
      }
      // (q^r - 1)(q^c - 1)/(q - 1) rank-1 matrices
      EXPECT_EQ(count, (oracle::ipow(q, r) - 1) * (oracle::ipow(q, c) - 1) / (q - 1));
    }
  }
}

TEST(Text, RoundTrips) {
  std::mt19937 rng(5);
  for (auto const& f : small_fields()) {
    for (int trial = 0; trial < 20; ++trial) {
      Matrix const m = oracle::random_matrix(f, 1 + trial % 3, 1 + trial % 4, rng);
      EXPECT_EQ(text::parse_matrix(f, text::format(m)), m);
      Subspace const u = image(m);
      EXPECT_EQ(text::parse_subspace(f, m.rows(), text::format(u)), u);
    }
  }
  Field const f = Field::make(2);
  EXPECT_EQ(text::format(Subspace::zero(f, 3)), "-");
  EXPECT_EQ(text::format(text::parse_matrix(f, "0,1;0,0")), "0,1;0,0");
  EXPECT_EQ(text::parse_matrix_list(f, " 0,1;0,0  1,0;0,1 ").size(), 2u);
}

TEST(Text, ParseErrors) {
  Field const f = Field::make(2);
  EXPECT_EQ(oracle::thrown_kind([&] { text::parse_matrix(f, "0,2;0,0"); }), "ParseError");
  EXPECT_EQ(oracle::thrown_kind([&] { text::parse_matrix(f, "0,1;0"); }), "ParseError");
  EXPECT_EQ(oracle::thrown_kind([&] { text::parse_matrix(f, "a,1"); }), "ParseError");
  EXPECT_EQ(oracle::thrown_kind([&] { text::parse_subspace(f, 3, "1,0"); }), "AmbientMismatch");
}
