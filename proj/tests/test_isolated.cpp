#include <map>
#include <set>

#include <matsemi/isolated.hpp>

#include "support.hpp"

using namespace matsemi;

namespace {

  // Isolated by definition: x^m in S for some m >= 1 forces x in S.
  bool isolated_by_powers(std::vector<Matrix> const& all, std::set<std::vector<Scalar>> const& s) {
    for (auto const& x : all) {
      if (s.count(x.entries())) {
        continue;
      }
      std::set<std::vector<Scalar>> seen;
      Matrix                        p = x;
      while (seen.insert(p.entries()).second) {
        if (s.count(p.entries())) {
          return false;
        }
        p = p * x;
      }
    }
    return true;
  }

  std::set<std::vector<Scalar>> keys(MatSet const& s) {
    std::set<std::vector<Scalar>> out;
    for (auto const& m : s) {
      out.insert(m.entries());
    }
    return out;
  }

}  // namespace

TEST(Strata, SizesMatchCountingFormula) {
  for (auto [n, q] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
    Field const f   = Field::make(q);
    long        sum = 0;
    for (int i = 0; i <= n; ++i) {
      long const expect = oracle::rank_count(n, i, q);
      EXPECT_EQ(static_cast<long>(rank_stratum(f, n, i).size()), expect);
      sum += expect;
      EXPECT_EQ(static_cast<long>(ideal(f, n, i).size()), sum);
    }
    EXPECT_EQ(sum, oracle::ipow(q, n * n));
  }
}

TEST(Strata, StratumGeneratesIdeal) {
  for (auto [n, q] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
    Field const f = Field::make(q);
    for (int k = 1; k < n; ++k) {
      EXPECT_EQ(ideal_generated_by_stratum(f, n, k), ideal(f, n, k));
    }
    EXPECT_EQ(oracle::thrown_kind([&] { ideal_generated_by_stratum(f, n, 0); }), "BadK");
    EXPECT_EQ(oracle::thrown_kind([&] { ideal_generated_by_stratum(f, n, n); }), "BadK");
  }
  EXPECT_EQ(ideal_generated_by_stratum(Field::make(2), 3, 2).size(), 344u);
}

TEST(Idempotents, CountAndShape) {
  for (auto [n, q] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
    Field const f    = Field::make(q);
    auto const  idem = idempotents(f, n);
    std::map<int, long> by_rank;
    for (auto const& p : idem) {
      EXPECT_EQ(p.e * p.e, p.e);
      EXPECT_EQ(image(p.e), p.v1);
      EXPECT_EQ(kernel(p.e), p.v2);
      EXPECT_EQ(idempotent_of(p.v1, p.v2).e, p.e);
      ++by_rank[p.v1.dim()];
    }
    for (int i = 0; i <= n; ++i) {
      // one per complementary pair: [n, i]_q q^(i(n-i))
      EXPECT_EQ(by_rank[i], oracle::gaussian_binomial(n, i, q) * oracle::ipow(q, i * (n - i)));
    }
  }
}

TEST(Families, ValidationErrors) {
  Field const f = Field::make(2);
  auto const  l1 = text::parse_subspace(f, 2, "1,0");
  auto const  l2 = text::parse_subspace(f, 2, "0,1");
  EXPECT_EQ(oracle::thrown_kind([&] { SubspacePairFamily({}, {l1}); }), "EmptyFamily");
  EXPECT_EQ(oracle::thrown_kind([&] { SubspacePairFamily({l1}, {l1}); }), "ContainmentViolation");
  auto const plane = Subspace::full(f, 2);
  EXPECT_EQ(oracle::thrown_kind([&] { SubspacePairFamily({plane}, {l1}); }), "InvariantViolation");
  SubspacePairFamily const ok({l1, l1}, {l2});
  EXPECT_EQ(ok.a_family().size(), 1u);
}

TEST(Families, SabSizes) {
  for (auto [n, q] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
    Field const f    = Field::make(q);
    auto const  fams = enumerate_families(f, n);
    for (std::size_t i = 0; i < fams.size(); i += 7) {
      MatSet const s = s_ab_make(fams[i]);
      long pairs     = 0;
      for (auto const& h : fams[i].a_family()) {
        for (auto const& l : fams[i].b_family()) {
          pairs += !h.contains(l);
        }
      }
      EXPECT_EQ(static_cast<long>(s.size()), pairs * oracle::gl_order(n - 1, q));
      EXPECT_TRUE(is_closed(s));
      for (auto const& m : s) {
        EXPECT_EQ(rank(m), n - 1);
      }
    }
  }
}

TEST(Families, CountForPlanes) {
  // n = 2: A a nonempty set of lines, B a nonempty set of the other lines
  for (int q : {2, 3}) {
    long const lines = q + 1;
    long       expect = 0;
    long       binom  = 1;
    for (long a = 1; a <= lines; ++a) {
      binom = binom * (lines - a + 1) / a;
      expect += binom * (oracle::ipow(2, lines - a) - 1);
    }
    EXPECT_EQ(static_cast<long>(enumerate_families(Field::make(q), 2).size()), expect);
  }
}

TEST(Isolation, PredicatesAgreeWithDefinition) {
  Field const f   = Field::make(2);
  auto const  all = oracle::all_matrices(f, 2, 2);
  std::vector<MatSet> samples;
  samples.push_back(ideal(f, 2, 2));
  samples.push_back(rank_stratum(f, 2, 2));
  samples.push_back(ideal(f, 2, 1));
  samples.push_back(ideal(f, 2, 0));
  samples.push_back(MatSet(f, 2, {Matrix::identity(f, 2), text::parse_matrix(f, "0,1;1,0")}));
  samples.push_back(MatSet(f, 2, {Matrix::identity(f, 2)}));
  for (auto const& s : samples) {
    EXPECT_EQ(is_isolated(s), isolated_by_powers(all, keys(s))) << s.size();
  }
  EXPECT_TRUE(is_completely_isolated(rank_stratum(f, 2, 2)));
  EXPECT_TRUE(is_completely_isolated(ideal(f, 2, 1)));
  EXPECT_FALSE(is_completely_isolated(ideal(f, 2, 0)));
  MatSet const open(f, 2, {text::parse_matrix(f, "0,1;0,0"), text::parse_matrix(f, "0,0;1,0")});
  EXPECT_EQ(oracle::thrown_kind([&] { is_isolated(open); }), "NotClosed");
}

TEST(Isolation, ExhaustiveM2F2) {
  Field const f   = Field::make(2);
  auto const  rep = enumerate_isolated(f, 2, IsolatedMode::exhaustive, 2);
  EXPECT_TRUE(rep.complete);
  EXPECT_TRUE(rep.lists_agree);
  EXPECT_EQ(rep.subsemigroups, 233u);
  EXPECT_EQ(rep.entries.size(), 15u);
  std::size_t complete = 0, sab = 0;
  auto const  all = oracle::all_matrices(f, 2, 2);
  for (auto const& e : rep.entries) {
    complete += e.completely_isolated;
    sab += e.kind == "SAB";
    EXPECT_TRUE(isolated_by_powers(all, keys(e.elements)));
  }
  EXPECT_EQ(complete, 3u);
  EXPECT_EQ(sab, 12u);
  auto const l27 = lemma27_check(rep, f, 2);
  EXPECT_TRUE(l27.violations.empty());
  EXPECT_EQ(l27.checked, 15u);
  EXPECT_EQ(l27.triggered, 2u);  // M and I_1, the ones holding 0
}

TEST(Isolation, TheoremListOverF3) {
  auto const rep = enumerate_isolated(Field::make(3), 2, IsolatedMode::theorem_list);
  EXPECT_EQ(rep.entries.size(), 53u);
  EXPECT_TRUE(rep.lists_agree);
  EXPECT_FALSE(rep.complete);
  EXPECT_EQ(oracle::thrown_kind(
                [] { enumerate_isolated(Field::make(3), 2, IsolatedMode::exhaustive); }),
            "CapExceeded");
}
